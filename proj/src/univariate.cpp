#include "hsf/univariate.hpp"

#include <algorithm>

namespace hsf {
namespace upoly {

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const UPoly& f) { return static_cast<int>(f.size()) - 1; }

UPoly add(const UPoly& a, const UPoly& b, const PrimeField& F) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b, const PrimeField& F) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

UPoly mul(const UPoly& a, const UPoly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  const u64 p = F.p();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
  }
  UPoly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

UPoly scale(const UPoly& a, u32 c, const PrimeField& F) {
  UPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r, const PrimeField& F) {
  if (b.empty()) throw MathError("polynomial division by zero");
  r = a;
  trim(r);
  int db = deg(b);
  if (deg(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  u32 inv = F.inv(b.back());
  const u64 p = F.p();
  for (int k = deg(r); k >= db; --k) {
    u32 c = F.mul(r[k], inv);
    q[k - db] = c;
    if (!c) continue;
    u64 nc = p - c;
    for (int j = 0; j <= db; ++j) r[k - db + j] = static_cast<u32>((r[k - db + j] + nc * b[j]) % p);
  }
  r.resize(db);
  trim(r);
  trim(q);
}

UPoly rem(const UPoly& a, const UPoly& b, const PrimeField& F) {
  UPoly q, r;
  divmod(a, b, q, r, F);
  return r;
}

UPoly quo(const UPoly& a, const UPoly& b, const PrimeField& F) {
  UPoly q, r;
  divmod(a, b, q, r, F);
  return q;
}

UPoly monic(const UPoly& a, const PrimeField& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

UPoly gcd(UPoly a, UPoly b, const PrimeField& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

UPoly derivative(const UPoly& a, const PrimeField& F) {
  if (a.size() <= 1) return {};
  UPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_int(static_cast<i64>(i)));
  trim(r);
  return r;
}

UPoly powmod(const UPoly& base, u64 e, const UPoly& m, const PrimeField& F) {
  UPoly r = {1}, b = rem(base, m, F);
  r = rem(r, m, F);
  while (e) {
    if (e & 1) r = rem(mul(r, b, F), m, F);
    e >>= 1;
    if (e) b = rem(mul(b, b, F), m, F);
  }
  return r;
}

u32 eval(const UPoly& f, u32 x, const PrimeField& F) {
  u32 v = 0;
  for (int i = deg(f); i >= 0; --i) v = F.add(F.mul(v, x), f[i]);
  return v;
}

}  // namespace upoly

namespace {

using namespace upoly;

// squarefree, monic f: distinct degree factorization
std::vector<std::pair<UPoly, int>> ddf(UPoly f, const PrimeField& F) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly h = {0, 1};
  int d = 0;
  while (deg(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, F.p(), f, F);
    UPoly g = gcd(sub(h, UPoly{0, 1}, F), f, F);
    if (deg(g) > 0) {
      out.push_back({g, d});
      f = quo(f, g, F);
      h = rem(h, f, F);
    }
  }
  if (deg(f) > 0) out.push_back({f, deg(f)});
  return out;
}

// f monic squarefree, product of irreducibles of degree d
void edf(const UPoly& f, int d, const PrimeField& F, Rng& rng, std::vector<UPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  const u32 p = F.p();
  for (;;) {
    UPoly a(deg(f));
    for (auto& c : a) c = static_cast<u32>(rng.below(p));
    trim(a);
    if (deg(a) < 1) continue;
    UPoly g;
    if (p == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      UPoly t = a, s = a;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t, F), f, F);
        s = add(s, t, F);
      }
      g = gcd(s, f, F);
    } else {
      // (p^d - 1)/2 = (p - 1)/2 * (1 + p + ... + p^(d-1))
      UPoly acc = {1};
      UPoly cur = rem(a, f, F);
      for (int i = 0; i < d; ++i) {
        acc = rem(mul(acc, cur, F), f, F);
        cur = powmod(cur, p, f, F);
      }
      UPoly b = powmod(acc, (p - 1) / 2, f, F);
      g = gcd(sub(b, UPoly{1}, F), f, F);
    }
    if (deg(g) > 0 && deg(g) < deg(f)) {
      edf(g, d, F, rng, out);
      edf(quo(f, g, F), d, F, rng, out);
      return;
    }
  }
}

// p-th root of a polynomial whose derivative vanishes
UPoly pth_root(const UPoly& f, const PrimeField& F) {
  const u32 p = F.p();
  UPoly r;
  for (std::size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);  // a^p = a in F_p
  trim(r);
  return r;
}

void squarefree(const UPoly& f, int mult, const PrimeField& F, std::vector<std::pair<UPoly, int>>& out) {
  // f monic
  if (deg(f) < 1) return;
  UPoly df = derivative(f, F);
  if (df.empty()) {
    squarefree(pth_root(f, F), mult * static_cast<int>(F.p()), F, out);
    return;
  }
  UPoly c = gcd(f, df, F);
  UPoly w = quo(f, c, F);
  int i = 1;
  while (deg(w) > 0) {
    UPoly y = gcd(w, c, F);
    UPoly z = quo(w, y, F);
    if (deg(z) > 0) out.push_back({z, i * mult});
    ++i;
    w = y;
    c = quo(c, y, F);
  }
  if (deg(c) > 0) squarefree(pth_root(c, F), mult * static_cast<int>(F.p()), F, out);
}

}  // namespace

std::vector<UFactor> factor(const UPoly& f0, const PrimeField& F, u32* lead) {
  UPoly f = f0;
  trim(f);
  if (f.empty()) throw MathError("factor of the zero polynomial");
  if (lead) *lead = f.back();
  f = monic(f, F);
  std::vector<std::pair<UPoly, int>> sqf;
  squarefree(f, 1, F, sqf);
  Rng rng(0x5eed ^ (static_cast<u64>(f.size()) << 32) ^ F.p());
  std::vector<UFactor> out;
  for (auto& [g, m] : sqf) {
    for (auto& [h, d] : ddf(g, F)) {
      std::vector<UPoly> parts;
      edf(h, d, F, rng, parts);
      for (auto& q : parts) out.push_back({q, m});
    }
  }
  // merge equal factors (possible across p-th root levels) and sort
  std::sort(out.begin(), out.end(), [](const UFactor& a, const UFactor& b) {
    if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
    return std::lexicographical_compare(a.f.rbegin(), a.f.rend(), b.f.rbegin(), b.f.rend());
  });
  std::vector<UFactor> merged;
  for (auto& u : out) {
    if (!merged.empty() && merged.back().f == u.f) merged.back().mult += u.mult;
    else merged.push_back(u);
  }
  return merged;
}

std::vector<u32> roots(const UPoly& f, const PrimeField& F) {
  std::vector<u32> r;
  for (auto& u : factor(f, F))
    if (deg(u.f) == 1) r.push_back(F.neg(u.f[0]));
  std::sort(r.begin(), r.end());
  return r;
}

UPoly to_upoly(const Poly& f, int var) {
  UPoly u;
  for (auto& t : f.terms()) {
    for (int i = 0; i < f.ring()->nvars(); ++i)
      if (i != var && t.m.exp(i)) throw MathError("polynomial is not univariate");
    int e = t.m.exp(var);
    if (static_cast<int>(u.size()) <= e) u.resize(e + 1, 0);
    u[e] = t.c;
  }
  upoly::trim(u);
  return u;
}

Poly from_upoly(const UPoly& u, const RingPtr& r, int var) {
  std::vector<Term> terms;
  for (int e = upoly::deg(u); e >= 0; --e) {
    if (!u[e]) continue;
    Monomial m;
    if (e) m.set_exp(var, e);
    terms.push_back({m, u[e]});
  }
  return Poly::from_terms(r, std::move(terms));
}

std::vector<PolyFactor> univar_factor(const Poly& f) {
  if (f.is_zero()) throw MathError("univar_factor: zero input");
  int var = -1;
  for (auto& t : f.terms())
    for (int i = 0; i < f.ring()->nvars(); ++i)
      if (t.m.exp(i)) {
        if (var >= 0 && var != i) throw MathError("univar_factor: more than one variable");
        var = i;
      }
  if (var < 0) return {};
  std::vector<PolyFactor> out;
  for (auto& u : factor(to_upoly(f, var), f.ring()->field())) out.push_back({from_upoly(u.f, f.ring(), var), u.mult});
  return out;
}

}  // namespace hsf
