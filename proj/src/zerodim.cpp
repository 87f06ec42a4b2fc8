#include "hsf/zerodim.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace hsf {

bool is_zero_dimensional(const GroebnerBasis& G) {
  if (G.is_unit()) return true;
  if (!G.ring()) return false;
  int n = G.ring()->nvars();
  std::vector<bool> has(n, false);
  for (auto& g : G.gens()) {
    u64 s = mono_support(g.lm());
    if (std::popcount(s) == 1) has[std::countr_zero(s)] = true;
  }
  return std::all_of(has.begin(), has.end(), [](bool b) { return b; });
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& G) {
  if (G.is_unit()) return {};
  if (!is_zero_dimensional(G)) throw MathError("positive-dimensional ideal");
  const PolyRing& R = *G.ring();
  int n = R.nvars();
  auto lms = G.leading_monomials();
  auto in_lt = [&](const Monomial& m) {
    for (auto& l : lms)
      if (mono_divides(l, m)) return true;
    return false;
  };
  std::vector<Monomial> out;
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> q;
  Monomial one = Monomial::from_exps(std::vector<int>(n, 0));
  q.push_back(one);
  seen.insert(one);
  while (!q.empty()) {
    Monomial m = q.front();
    q.pop_front();
    out.push_back(m);
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      Monomial mi = mono_mul(m, Monomial::from_exps(e));
      if (seen.count(mi) || in_lt(mi)) continue;
      seen.insert(mi);
      q.push_back(mi);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return R.cmp(a, b) < 0; });
  return out;
}

long affine_length(const GroebnerBasis& G) { return static_cast<long>(standard_monomials(G).size()); }

Mat multiplication_matrix(const GroebnerBasis& G, const std::vector<Monomial>& basis, const Poly& h) {
  std::unordered_map<Monomial, int, MonomialHash> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
  int N = static_cast<int>(basis.size());
  Mat M(N, N);
  for (int j = 0; j < N; ++j) {
    Poly r = normal_form(h.mul_term(basis[j], 1), G);
    for (auto& t : r.terms()) {
      auto it = idx.find(t.m);
      if (it == idx.end()) throw MathError("multiplication_matrix: basis is not a staircase");
      M(it->second, j) = t.c;
    }
  }
  return M;
}

namespace {

Poly random_linear(const RingPtr& R, Rng& rng) {
  const PrimeField& F = R->field();
  Poly u(R);
  for (int i = 0; i < R->nvars(); ++i) u += Poly::var(R, i).scaled(static_cast<u32>(1 + rng.below(F.p() - 1)));
  return u;
}

// element q(M)^m * e_1 of the quotient algebra, as a polynomial
Poly power_element(const Mat& M, const UPoly& q, int m, const std::vector<Monomial>& basis, const RingPtr& R,
                   int one_index) {
  const PrimeField& F = R->field();
  int N = M.rows();
  std::vector<u32> w(N, 0);
  w[one_index] = 1;
  for (int rep = 0; rep < m; ++rep) {
    // Horner: acc = q_d w; acc = M acc + q_k w
    std::vector<u32> acc(N, 0);
    for (int k = upoly::deg(q); k >= 0; --k) {
      acc = mat_vec(M, acc, F);
      for (int i = 0; i < N; ++i) acc[i] = F.add(acc[i], F.mul(q[k], w[i]));
    }
    w = acc;
  }
  std::vector<Term> t;
  for (int i = 0; i < N; ++i)
    if (w[i]) t.push_back({basis[i], w[i]});
  return Poly::from_terms(R, t);
}

}  // namespace

std::vector<ZeroDimCluster> decompose_zero_dim(const std::vector<Poly>& gens, Rng& rng) {
  GroebnerBasis G = buchberger(gens);
  if (G.is_unit()) return {};
  RingPtr R = G.ring();
  const PrimeField& F = R->field();
  auto basis = standard_monomials(G);
  int one_index = -1;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].is_one()) one_index = static_cast<int>(i);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Poly u = random_linear(R, rng);
    Mat M = multiplication_matrix(G, basis, u);
    auto fs = factor(charpoly(M, F), F);
    std::vector<ZeroDimCluster> out;
    bool ok = true;
    for (auto& f : fs) {
      std::vector<Poly> jg = G.gens();
      jg.push_back(power_element(M, f.f, f.mult, basis, R, one_index));
      GroebnerBasis J = buchberger(jg);
      int r = upoly::deg(f.f);
      auto bj = standard_monomials(J);
      if (static_cast<long>(bj.size()) != static_cast<long>(r) * f.mult) {
        ok = false;
        break;
      }
      // a second form must see a single orbit of the same size
      Poly u2 = random_linear(R, rng);
      auto f2 = factor(charpoly(multiplication_matrix(J, bj, u2), F), F);
      if (f2.size() != 1 || upoly::deg(f2[0].f) != r) {
        ok = false;
        break;
      }
      out.push_back({J, r, f.mult, f.f, u});
    }
    if (ok) return out;
  }
  throw RetryExhausted("decompose_zero_dim: no separating linear form found");
}

std::vector<u32> rational_point(const ZeroDimCluster& c) {
  if (c.residue_degree != 1) throw MathError("rational_point: cluster is not rational");
  RingPtr R = c.ideal.ring();
  const PrimeField& F = R->field();
  auto basis = standard_monomials(c.ideal);
  long L = static_cast<long>(basis.size());
  std::vector<u32> pt(R->nvars());
  for (int i = 0; i < R->nvars(); ++i) {
    Mat M = multiplication_matrix(c.ideal, basis, Poly::var(R, i));
    u32 tr = 0;
    for (int k = 0; k < M.rows(); ++k) tr = F.add(tr, M(k, k));
    pt[i] = F.mul(tr, F.inv(F.from_int(L)));
  }
  return pt;
}

}  // namespace hsf
