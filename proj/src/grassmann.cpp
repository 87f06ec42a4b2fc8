#include "hsf/grassmann.hpp"

#include <map>

#include "hsf/parse.hpp"

namespace hsf {

namespace {

const int kPairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

std::vector<u32> unit(int n, int i) {
  std::vector<u32> e(n, 0);
  e[i] = 1;
  return e;
}

std::vector<u32> random_vec(int n, Rng& rng, const PrimeField& F) {
  std::vector<u32> v(n);
  for (auto& x : v) x = static_cast<u32>(rng.below(F.p()));
  return v;
}

u32 eval_linear(const Poly& l, const Point& p) { return l.eval(p); }

}  // namespace

int pl_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 10; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  throw MathError("pl_index: bad pair");
}

RingPtr pluecker_ring(const PrimeField& F) {
  std::vector<std::string> names;
  for (auto& pr : kPairs) names.push_back("p" + std::to_string(pr[0]) + std::to_string(pr[1]));
  return PolyRing::make(F, names);
}

std::vector<Poly> pluecker_relations(const RingPtr& R) {
  auto p = [&](int a, int b) { return Poly::var(R, pl_index(a, b)); };
  std::vector<Poly> out;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k)
        for (int l = k + 1; l < 5; ++l) out.push_back(p(i, j) * p(k, l) - p(i, k) * p(j, l) + p(i, l) * p(j, k));
  return out;
}

ProjVariety pluecker_g14(const PrimeField& F) {
  auto R = pluecker_ring(F);
  Rng dummy(0);
  auto S = [F](Rng& rng) {
    for (;;) {
      Point p = wedge(random_vec(5, rng, F), random_vec(5, rng, F), F);
      if (!is_zero_point(p)) return p;
    }
  };
  return ProjVariety(R, pluecker_relations(R)).with_sampler(S);
}

Point wedge(const std::vector<u32>& u, const std::vector<u32>& v, const PrimeField& F) {
  Point p(10);
  for (int k = 0; k < 10; ++k) {
    int i = kPairs[k][0], j = kPairs[k][1];
    p[k] = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]));
  }
  return p;
}

Mat pluecker_matrix(const Point& p, const PrimeField& F) {
  Mat A(5, 5);
  for (int k = 0; k < 10; ++k) {
    int i = kPairs[k][0], j = kPairs[k][1];
    A(i, j) = p[k];
    A(j, i) = F.neg(p[k]);
  }
  return A;
}

std::pair<std::vector<u32>, std::vector<u32>> decompose_pluecker(const Point& p, const PrimeField& F) {
  Mat A = pluecker_matrix(p, F);
  Mat B = row_basis(A, F);
  if (B.rows() != 2) throw MathError("decompose_pluecker: not a point of G(1,4)");
  return {B.row_vec(0), B.row_vec(1)};
}

Mat induced_action(const Mat& g, const PrimeField& F) {
  Mat L(10, 10);
  for (int k = 0; k < 10; ++k) {
    int i = kPairs[k][0], j = kPairs[k][1];
    std::vector<u32> ci(5), cj(5);
    for (int r = 0; r < 5; ++r) ci[r] = g(r, i), cj[r] = g(r, j);
    Point w = wedge(ci, cj, F);
    for (int r = 0; r < 10; ++r) L(r, k) = w[r];
  }
  return L;
}

Mat random_invertible(int n, Rng& rng, const PrimeField& F) {
  for (;;) {
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = static_cast<u32>(rng.below(F.p()));
    if (det(g, F) != 0) return g;
  }
}

Schubert parse_schubert(const std::string& s) {
  if (s == "1,1" || s == "11" || s == "{1,1}") return Schubert::S11;
  if (s == "2" || s == "{2}") return Schubert::S2;
  if (s == "3,1" || s == "31" || s == "{3,1}") return Schubert::S31;
  if (s == "2,2" || s == "22" || s == "{2,2}") return Schubert::S22;
  throw InputError("unsupported Schubert cycle '" + s + "'");
}

std::string schubert_name(Schubert s) {
  switch (s) {
    case Schubert::S11: return "s_(1,1)";
    case Schubert::S2: return "s_2";
    case Schubert::S31: return "s_(3,1)";
    case Schubert::S22: return "s_(2,2)";
  }
  return "";
}

std::vector<Poly> schubert_conditions(Schubert s, const Mat& g, const RingPtr& R) {
  const PrimeField& F = R->field();
  std::vector<int> zero;
  switch (s) {
    case Schubert::S11: zero = {pl_index(0, 4), pl_index(1, 4), pl_index(2, 4), pl_index(3, 4)}; break;
    case Schubert::S2: zero = {pl_index(2, 3), pl_index(2, 4), pl_index(3, 4)}; break;
    case Schubert::S31:
      for (int k = 0; k < 10; ++k)
        if (k != pl_index(0, 1) && k != pl_index(0, 2) && k != pl_index(0, 3)) zero.push_back(k);
      break;
    case Schubert::S22:
      for (int k = 0; k < 10; ++k)
        if (k != pl_index(0, 1) && k != pl_index(0, 2) && k != pl_index(1, 2)) zero.push_back(k);
      break;
  }
  auto gi = inverse(g, F);
  if (!gi) throw MathError("schubert_conditions: singular flag matrix");
  Mat L = induced_action(*gi, F);
  std::vector<Poly> out;
  for (int r : zero) {
    Poly l(R);
    for (int c = 0; c < 10; ++c)
      if (L(r, c)) l += Poly::var(R, c).scaled(L(r, c));
    out.push_back(l);
  }
  return out;
}

ProjVariety schubert_ideal(Schubert s, Rng& rng, const PrimeField& F) {
  auto R = pluecker_ring(F);
  Mat g = random_invertible(5, rng, F);
  auto gens = pluecker_relations(R);
  for (auto& l : schubert_conditions(s, g, R)) gens.push_back(l);
  return ProjVariety(R, buchberger(gens).gens());
}

std::string class_string(const GrassClass& c) {
  auto term = [](long k, const char* s) {
    if (k == 1) return std::string(s);
    return std::to_string(k) + "*" + s;
  };
  std::string out;
  if (c.a) out += term(c.a, "s_(3,1)");
  if (c.b) out += (out.empty() ? "" : "+") + term(c.b, "s_(2,2)");
  return out.empty() ? "0" : out;
}

GrassClass class_in_g14(const ProjVariety& S, const Mat& E, Rng& rng) {
  const PrimeField& F = S.ring()->field();
  auto R9 = pluecker_ring(F);
  long deg = S.degree();
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      auto c11 = pullback_linear(schubert_conditions(Schubert::S11, random_invertible(5, rng, F), R9), E, S.ring());
      auto c2 = pullback_linear(schubert_conditions(Schubert::S2, random_invertible(5, rng, F), R9), E, S.ring());
      std::vector<Poly> g1 = S.gens(), g2 = S.gens();
      g1.insert(g1.end(), c11.begin(), c11.end());
      g2.insert(g2.end(), c2.begin(), c2.end());
      GrassClass c;
      c.b = count_points(g1, {}, rng);
      c.a = count_points(g2, {}, rng);
      if (c.a + c.b == deg) return c;
    } catch (const MathError&) {
    }
  }
  throw RetryExhausted("class_in_g14: excess intersection with Schubert cycles");
}

// ---------------------------------------------------------------------------

RingPtr p6_ring(const PrimeField& F) { return PolyRing::make(F, 7, "x"); }

ProjVariety segre_sigma3(const PrimeField& F) {
  auto R = p6_ring(F);
  auto gens = parse_polys({"x6", "x0*x4-x1*x3", "x0*x5-x2*x3", "x1*x5-x2*x4"}, R);
  auto S = [F](Rng& rng) {
    for (;;) {
      Point p = sigma3_point(random_vec(2, rng, F), random_vec(3, rng, F), F);
      if (!is_zero_point(p)) return p;
    }
  };
  return ProjVariety(R, gens).with_sampler(S);
}

std::vector<Poly> psi_forms(const RingPtr& R6) {
  return parse_polys({"x6^2", "x6*x0", "x6*x1", "x6*x2", "x6*x3", "x6*x4", "x6*x5", "x0*x4-x1*x3", "x0*x5-x2*x3",
                      "x1*x5-x2*x4"},
                     R6);
}

Point sigma3_point(const std::vector<u32>& a, const std::vector<u32>& b, const PrimeField& F) {
  Point p(7, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) p[3 * i + j] = F.mul(a[i], b[j]);
  return p;
}

// ---------------------------------------------------------------------------

Point DelPezzoFivefold::to_p9(const Point& y) const { return mat_vec(E, y, ring->field()); }

Point DelPezzoFivefold::to_p8(const Point& p9) const { return solve(E, p9, ring->field()); }

namespace {

// coefficients of v -> H(u ^ v)
std::vector<u32> hyperplane_functional(const Poly& H, const std::vector<u32>& u, const PrimeField& F) {
  std::vector<u32> c(5);
  for (int j = 0; j < 5; ++j) c[j] = eval_linear(H, wedge(u, unit(5, j), F));
  return c;
}

u32 dot(const std::vector<u32>& a, const std::vector<u32>& b, const PrimeField& F) {
  u32 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

// a vector v with c.v = target (c nonzero), otherwise random
std::vector<u32> solve_functional(const std::vector<u32>& c, u32 target, Rng& rng, const PrimeField& F) {
  std::vector<u32> v = random_vec(5, rng, F);
  int j0 = -1;
  for (int j = 0; j < 5; ++j)
    if (c[j]) j0 = j;
  if (j0 < 0) {
    if (target != 0) throw MathError("hyperplane condition cannot be met");
    return v;
  }
  v[j0] = 0;
  u32 rest = dot(c, v, F);
  v[j0] = F.mul(F.sub(target, rest), F.inv(c[j0]));
  return v;
}

}  // namespace

Point DelPezzoFivefold::random_point(Rng& rng) const {
  const PrimeField& F = ring->field();
  for (;;) {
    auto u = random_vec(5, rng, F);
    auto c = hyperplane_functional(hyperplane, u, F);
    auto v = solve_functional(c, 0, rng, F);
    Point p = wedge(u, v, F);
    if (!is_zero_point(p)) return to_p8(p);
  }
}

GermFn DelPezzoFivefold::germs() const {
  Poly H = hyperplane;
  Mat Em = E;
  PrimeField F = ring->field();
  return [H, Em, F](const Point& s, int order, Rng& rng) {
    Point p = mat_vec(Em, s, F);
    auto [u, v] = decompose_pluecker(p, F);
    // rescale so that the constant term is the given point
    Point w0 = wedge(u, v, F);
    for (int r = 0; r < 10; ++r)
      if (p[r]) {
        u32 lam = F.mul(p[r], F.inv(w0[r]));
        for (auto& x : u) x = F.mul(x, lam);
        break;
      }
    std::vector<std::vector<u32>> a{u}, b{v};
    std::vector<Point> coef{wedge(u, v, F)};
    auto cu = hyperplane_functional(H, u, F);
    for (int k = 1; k < order; ++k) {
      a.push_back(random_vec(5, rng, F));
      b.push_back(std::vector<u32>(5, 0));
      // H(sum_{i+j=k} a_i ^ b_j) = 0, linear in b_k through u ^ b_k
      Point rest(10, 0);
      for (int i = 1; i <= k; ++i) {
        Point w = wedge(a[i], b[k - i], F);
        for (int r = 0; r < 10; ++r) rest[r] = F.add(rest[r], w[r]);
      }
      b[k] = solve_functional(cu, F.neg(eval_linear(H, rest)), rng, F);
      Point pk(10, 0);
      for (int i = 0; i <= k; ++i) {
        Point w = wedge(a[i], b[k - i], F);
        for (int r = 0; r < 10; ++r) pk[r] = F.add(pk[r], w[r]);
      }
      coef.push_back(pk);
    }
    Germ g(9, std::vector<u32>(order, 0));
    for (int k = 0; k < order; ++k) {
      Point y = solve(Em, coef[k], F);
      for (int i = 0; i < 9; ++i) g[i][k] = y[i];
    }
    return g;
  };
}

DelPezzoFivefold del_pezzo_fivefold(const Poly& H) {
  const PrimeField& F = H.ring()->field();
  DelPezzoFivefold Y;
  Y.hyperplane = H;
  Y.E = linear_kernel_embedding({H}, 10);
  Y.ring = PolyRing::make(F, 9, "y");
  Y.ideal = buchberger(pullback_linear(pluecker_relations(H.ring()), Y.E, Y.ring)).gens();
  DelPezzoFivefold copy = Y;
  Y.Y = ProjVariety(Y.ring, Y.ideal).with_sampler([copy](Rng& rng) { return copy.random_point(rng); });
  return Y;
}

namespace {

bool smooth_hyperplane(const Poly& H, const PrimeField& F) {
  Point c(10, 0);
  for (auto& t : H.terms())
    for (int k = 0; k < 10; ++k)
      if (t.m.exp(k)) c[k] = t.c;
  return rank(pluecker_matrix(c, F), F) == 4;
}

}  // namespace

DelPezzoFivefold random_del_pezzo_fivefold(Rng& rng, const PrimeField& F) {
  auto R = pluecker_ring(F);
  for (;;) {
    Poly H = random_linear_form(R, rng);
    if (smooth_hyperplane(H, F)) return del_pezzo_fivefold(H);
  }
}

DelPezzoFivefold del_pezzo_containing(const std::vector<Point>& pts9, Rng& rng, const PrimeField& F) {
  auto R = pluecker_ring(F);
  auto forms = linear_forms_through(R, pts9);
  if (forms.empty()) throw MathError("del_pezzo_containing: points span P^9");
  for (int attempt = 0; attempt < 50; ++attempt) {
    Poly H = forms.size() == 1 ? forms[0] : random_combination(forms, rng);
    if (smooth_hyperplane(H, F)) return del_pezzo_fivefold(H);
    if (forms.size() == 1) break;
  }
  throw RetryExhausted("del_pezzo_containing: every hyperplane through the span gives a singular fivefold");
}

ProjVariety restrict_to_fivefold(const ProjVariety& S9, const DelPezzoFivefold& Y) {
  auto gens = pullback_linear(S9.gens(), Y.E, Y.ring);
  std::vector<Poly> nz;
  for (auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  ProjVariety S(Y.ring, buchberger(nz).gens());
  if (S9.has_sampler()) {
    DelPezzoFivefold Yc = Y;
    S = S.with_sampler([S9, Yc](Rng& rng) { return Yc.to_p8(S9.sample(rng)); });
  }
  return S;
}

// ---------------------------------------------------------------------------

Point hodge_star_point(const Point& p, const PrimeField& F) {
  Point q = p;
  q[pl_index(0, 1)] = p[pl_index(2, 3)];
  q[pl_index(2, 3)] = p[pl_index(0, 1)];
  q[pl_index(0, 2)] = F.neg(p[pl_index(1, 3)]);
  q[pl_index(1, 3)] = F.neg(p[pl_index(0, 2)]);
  q[pl_index(0, 3)] = p[pl_index(1, 2)];
  q[pl_index(1, 2)] = p[pl_index(0, 3)];
  return q;
}

std::vector<Poly> hodge_star_g13(const std::vector<Poly>& gens) {
  if (gens.empty()) return {};
  RingPtr R = gens[0].ring();
  std::vector<Poly> img;
  for (int k = 0; k < 10; ++k) img.push_back(Poly::var(R, k));
  auto v = [&](int a, int b) { return Poly::var(R, pl_index(a, b)); };
  img[pl_index(0, 1)] = v(2, 3);
  img[pl_index(2, 3)] = v(0, 1);
  img[pl_index(0, 2)] = -v(1, 3);
  img[pl_index(1, 3)] = -v(0, 2);
  img[pl_index(0, 3)] = v(1, 2);
  img[pl_index(1, 2)] = v(0, 3);
  std::vector<Poly> out;
  for (auto& g : gens) out.push_back(g.substitute(img));
  return out;
}

std::vector<std::string> named_surface_list() { return {"tau-quadric", "quintic-del-pezzo", "cubic-scroll", "sigma-plane"}; }

namespace {

Point transform(const Mat& L, const Point& p, const PrimeField& F) { return mat_vec(L, p, F); }

ProjVariety interpolate_in_p9(const Sampler& s, Rng& rng, const PrimeField& F, int maxdeg) {
  auto R = pluecker_ring(F);
  std::vector<Point> pts;
  long need = binomial_l(9 + maxdeg, maxdeg) + 20;
  for (long i = 0; i < need; ++i) pts.push_back(s(rng));
  std::vector<Poly> gens = linear_forms_through(R, pts);
  for (int d = 2; d <= maxdeg; ++d) {
    auto f = forms_through_points(R, pts, d);
    gens.insert(gens.end(), f.begin(), f.end());
  }
  return ProjVariety(R, buchberger(gens).gens()).with_sampler(s);
}

}  // namespace

G14Surface named_surface(const std::string& name, Rng& rng, const PrimeField& F) {
  auto R = pluecker_ring(F);
  Mat g = random_invertible(5, rng, F);
  Mat L = induced_action(g, F);
  G14Surface out;
  out.name = name;
  if (name == "tau-quadric") {
    // lines of a P^3 = g<e0..e3> satisfying two linear conditions
    auto conds = schubert_conditions(Schubert::S11, g, R);
    Poly l1 = random_linear_form(R, rng), l2 = random_linear_form(R, rng);
    auto gens = pluecker_relations(R);
    gens.insert(gens.end(), conds.begin(), conds.end());
    gens.push_back(l1);
    gens.push_back(l2);
    out.sampler = [g, l1, l2, F](Rng& r) {
      for (;;) {
        // u, v in g<e0..e3>; v restricted by l1, l2
        std::vector<u32> cu(4), base(5, 0);
        auto a = random_vec(4, r, F);
        std::vector<u32> u(5, 0);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 4; ++j) u[i] = F.add(u[i], F.mul(g(i, j), a[j]));
        Mat A(2, 4);
        for (int j = 0; j < 4; ++j) {
          std::vector<u32> ej(5);
          for (int i = 0; i < 5; ++i) ej[i] = g(i, j);
          Point w = wedge(u, ej, F);
          A(0, j) = l1.eval(w);
          A(1, j) = l2.eval(w);
        }
        Mat K = kernel(A, F);
        if (K.rows() < 2) continue;
        std::vector<u32> coef(4, 0);
        for (int k = 0; k < K.rows(); ++k) {
          u32 c = static_cast<u32>(r.below(F.p()));
          for (int j = 0; j < 4; ++j) coef[j] = F.add(coef[j], F.mul(c, K(k, j)));
        }
        std::vector<u32> v(5, 0);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 4; ++j) v[i] = F.add(v[i], F.mul(g(i, j), coef[j]));
        Point p = wedge(u, v, F);
        if (!is_zero_point(p)) return p;
      }
    };
    out.S = ProjVariety(R, buchberger(gens).gens()).with_sampler(out.sampler);
  } else if (name == "quintic-del-pezzo") {
    auto gens = pluecker_relations(R);
    for (int k = 0; k < 4; ++k) gens.push_back(random_linear_form(R, rng));
    out.S = ProjVariety(R, buchberger(gens).gens());
    ProjVariety S = out.S;
    out.sampler = [S](Rng& r) { return S.sample(r); };
  } else if (name == "sigma-plane") {
    out.sampler = [g, F](Rng& r) {
      for (;;) {
        std::vector<u32> x(5), v(5, 0);
        for (int i = 0; i < 5; ++i) x[i] = g(i, 0);
        auto c = random_vec(3, r, F);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 3; ++j) v[i] = F.add(v[i], F.mul(g(i, j + 1), c[j]));
        Point p = wedge(x, v, F);
        if (!is_zero_point(p)) return p;
      }
    };
    auto gens = pluecker_relations(R);
    auto conds = schubert_conditions(Schubert::S31, g, R);
    gens.insert(gens.end(), conds.begin(), conds.end());
    out.S = ProjVariety(R, buchberger(gens).gens()).with_sampler(out.sampler);
  } else if (name == "cubic-scroll") {
    // lines joining a conic and a line meeting it once, dualized inside G(1,3)
    out.sampler = [L, F](Rng& r) {
      for (;;) {
        u32 s0 = static_cast<u32>(r.below(F.p())), s1 = static_cast<u32>(r.below(F.p()));
        u32 t0 = static_cast<u32>(r.below(F.p())), t1 = static_cast<u32>(r.below(F.p()));
        std::vector<u32> q = {F.mul(s0, s0), F.mul(s0, s1), F.mul(s1, s1), 0, 0};
        std::vector<u32> l = {t0, 0, 0, t1, 0};
        Point p = wedge(q, l, F);
        if (is_zero_point(p)) continue;
        return transform(L, hodge_star_point(p, F), F);
      }
    };
    out.S = interpolate_in_p9(out.sampler, rng, F, 2);
  } else {
    throw InputError("unknown surface '" + name + "'");
  }
  return out;
}

}  // namespace hsf
