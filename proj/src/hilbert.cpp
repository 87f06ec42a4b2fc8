#include "hsf/hilbert.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace hsf {

namespace {

using Num = std::vector<BigInt>;

void trim(Num& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Num mul(const Num& a, const Num& b) {
  if (a.empty() || b.empty()) return {};
  Num c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

Num add_shift(const Num& a, const Num& b, int s) {
  Num c = a;
  if (c.size() < b.size() + s) c.resize(b.size() + s, 0);
  for (std::size_t j = 0; j < b.size(); ++j) c[j + s] += b[j];
  trim(c);
  return c;
}

void minimalize(std::vector<Monomial>& g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (int k = 0; k < 4; ++k)
      if (a.w[k] != b.w[k]) return a.w[k] < b.w[k];
    return false;
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Monomial> out;
  for (auto& m : g) {
    bool red = false;
    for (auto& o : out)
      if (mono_divides(o, m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  g = std::move(out);
}

struct KeyHash {
  std::size_t operator()(const std::vector<Monomial>& v) const {
    std::size_t h = v.size();
    MonomialHash mh;
    for (auto& m : v) h = h * 1000003u ^ mh(m);
    return h;
  }
};

// per-call memo table
class Memo {
 public:
  bool get(const std::vector<Monomial>& k, Num& out) const {
    auto it = map_.find(k);
    if (it == map_.end()) return false;
    out = it->second;
    return true;
  }
  void put(const std::vector<Monomial>& k, const Num& v) {
    if (map_.size() > 200000) map_.clear();
    map_.emplace(k, v);
  }

 private:
  std::unordered_map<std::vector<Monomial>, Num, KeyHash> map_;
};

// numerator for minimal generators g
Num rec(std::vector<Monomial> g, int nvars, Memo& memo) {
  if (g.empty()) return {1};
  for (auto& m : g)
    if (m.is_one()) return {};
  // coprime generators: product formula
  bool coprime = true;
  for (std::size_t i = 0; i < g.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!mono_coprime(g[i], g[j])) {
        coprime = false;
        break;
      }
  if (coprime) {
    Num r = {1};
    for (auto& m : g) {
      Num f(m.deg + 1, 0);
      f[0] = 1;
      f[m.deg] = -1;
      r = mul(r, f);
    }
    return r;
  }
  Num cached;
  if (g.size() > 3 && memo.get(g, cached)) return cached;
  // pivot: variable occurring in most generators, power = smallest positive exponent
  int best = -1, cnt = -1;
  for (int v = 0; v < nvars; ++v) {
    int c = 0;
    for (auto& m : g)
      if (m.exp(v)) ++c;
    if (c > cnt) cnt = c, best = v;
  }
  int e = 1 << 30;
  for (auto& m : g)
    if (m.exp(best)) e = std::min(e, m.exp(best));
  std::vector<int> pe(nvars, 0);
  pe[best] = e;
  Monomial p = Monomial::from_exps(pe);
  // I + (p)
  std::vector<Monomial> a{p};
  for (auto& m : g)
    if (!mono_divides(p, m)) a.push_back(m);
  minimalize(a);
  // I : p
  std::vector<Monomial> b;
  for (auto& m : g) {
    std::vector<int> ex = m.exps(nvars);
    ex[best] = std::max(0, ex[best] - e);
    b.push_back(Monomial::from_exps(ex));
  }
  minimalize(b);
  Num r = add_shift(rec(std::move(a), nvars, memo), rec(std::move(b), nvars, memo), e);
  if (g.size() > 3) memo.put(g, r);
  return r;
}

BigRat binom_poly_eval(long s, long k, int D) {
  // C(s - k + D - 1, D - 1) as a polynomial identity in s
  BigRat r = 1;
  for (int j = 1; j <= D - 1; ++j) r = r * BigRat(BigInt(s - k + j)) / BigRat(BigInt(j));
  return r;
}

}  // namespace

std::vector<BigInt> hilbert_numerator(const std::vector<Monomial>& gens, int nvars) {
  std::vector<Monomial> g = gens;
  minimalize(g);
  Memo memo;
  return rec(std::move(g), nvars, memo);
}

HilbertData hilbert_from_numerator(std::vector<BigInt> num, int nvars) {
  HilbertData h;
  h.nvars = nvars;
  trim(num);
  h.numerator = num;
  if (num.empty()) return h;
  // divide by (1-t) as long as possible
  Num q = num;
  int D = nvars;
  while (D > 0) {
    BigInt s = 0;
    for (auto& c : q) s += c;
    if (s != 0) break;
    // synthetic division by (1 - t): q = (1-t) * r, r_k = sum_{i<=k} q_i
    Num r(q.size() - 1, 0);
    BigInt acc = 0;
    for (std::size_t k = 0; k + 1 < q.size(); ++k) {
      acc += q[k];
      r[k] = acc;
    }
    trim(r);
    q = r;
    --D;
  }
  h.dim = D - 1;
  if (D == 0) {
    h.degree = 0;
    return h;
  }
  BigInt deg = 0;
  for (auto& c : q) deg += c;
  h.degree = deg;
  // HP(s) = sum_k q_k C(s-k+D-1, D-1); interpolate at s = 0..D-1
  std::vector<BigRat> vals(D);
  for (int s = 0; s < D; ++s) {
    BigRat v = 0;
    for (std::size_t k = 0; k < q.size(); ++k) v += BigRat(q[k]) * binom_poly_eval(s, static_cast<long>(k), D);
    vals[s] = v;
  }
  // Newton interpolation to monomial coefficients
  std::vector<BigRat> coef(D, 0);
  std::vector<BigRat> dd = vals;
  for (int j = 1; j < D; ++j)
    for (int i = D - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / BigRat(BigInt(j));
  // p(s) = sum dd[j] * s(s-1)...(s-j+1)
  std::vector<BigRat> basis = {1};
  for (int j = 0; j < D; ++j) {
    for (std::size_t k = 0; k < basis.size(); ++k) coef[k] += dd[j] * basis[k];
    std::vector<BigRat> nb(basis.size() + 1, 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      nb[k + 1] += basis[k];
      nb[k] -= basis[k] * BigRat(BigInt(j));
    }
    basis = nb;
    if (static_cast<int>(coef.size()) < static_cast<int>(basis.size())) coef.resize(basis.size(), 0);
  }
  while (!coef.empty() && coef.back() == 0) coef.pop_back();
  h.hilbert_polynomial = coef;
  return h;
}

BigRat HilbertData::hp(long t) const {
  BigRat v = 0, p = 1;
  for (auto& c : hilbert_polynomial) {
    v += c * p;
    p *= BigRat(BigInt(t));
  }
  return v;
}

BigInt HilbertData::hf(long t) const {
  if (t < 0) return 0;
  BigInt v = 0;
  for (std::size_t k = 0; k < numerator.size() && static_cast<long>(k) <= t; ++k)
    v += numerator[k] * binomial(BigInt(t - static_cast<long>(k) + nvars - 1), nvars - 1);
  return v;
}

int HilbertData::regularity_index() const {
  // hf agrees with hp once t exceeds deg(numerator) - nvars
  return std::max<int>(0, static_cast<int>(numerator.size()) - nvars);
}

HilbertData hilbert(const GroebnerBasis& G) {
  if (!G.ring()) throw MathError("hilbert: no ring");
  for (int w : G.ring()->grading())
    if (w != 1) throw MathError("hilbert: standard grading required");
  for (auto& g : G.gens())
    if (!g.is_homogeneous()) throw MathError("hilbert: homogeneous ideal required");
  int n = G.ring()->nvars();
  return hilbert_from_numerator(hilbert_numerator(G.leading_monomials(), n), n);
}

HilbertData hilbert(const std::vector<Poly>& gens) { return hilbert(buchberger(gens)); }

std::string poly_string(const std::vector<BigRat>& c, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k] == 0) continue;
    BigRat a = c[k];
    bool negv = a < 0;
    if (negv) a = -a;
    if (!first) os << (negv ? "-" : "+");
    else if (negv) os << "-";
    first = false;
    bool one = a == 1;
    if (!one || k == 0) os << a;
    if (k > 0) {
      if (!one) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace hsf
