#include "hsf/planemodel.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "hsf/bigint.hpp"
#include "hsf/groebner.hpp"
#include "hsf/linalg.hpp"

namespace hsf {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    char* end = nullptr;
    long v = std::strtol(cur.c_str(), &end, 10);
    if (*end != '\0' || v < 0 || v > 1000) throw InputError("bad integer '" + cur + "' in list '" + s + "'");
    out.push_back(static_cast<int>(v));
    cur.clear();
  };
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
      cur += ch;
    } else if (ch == ',' || ch == ' ' || ch == '[' || ch == ']' || ch == '{' || ch == '}' || ch == '(' || ch == ')') {
      flush();
    } else {
      throw InputError("unexpected character in list '" + s + "'");
    }
  }
  flush();
  if (out.empty()) throw InputError("empty list '" + s + "'");
  return out;
}

PlaneModelSpec model_spec_from_list(const std::vector<int>& v) {
  if (v.empty()) throw InputError("model list needs a degree");
  PlaneModelSpec m{v[0], {v.begin() + 1, v.end()}};
  if (m.a < 1) throw InputError("model degree must be positive");
  return m;
}

CurveSpec curve_spec_from_list(const std::vector<int>& v) {
  if (v.empty()) throw InputError("curve list needs a degree");
  CurveSpec c{v[0], {v.begin() + 1, v.end()}};
  if (c.e < 1) throw InputError("curve degree must be positive");
  return c;
}

std::string list_string(int head, const std::vector<int>& tail) {
  std::string s = "[" + std::to_string(head);
  for (int x : tail) s += "," + std::to_string(x);
  return s + "]";
}

ModelNumerics model_numerics(const PlaneModelSpec& m) {
  ModelNumerics r;
  long a = m.a;
  r.degree = a * a;
  r.genus = (a - 1) * (a - 2) / 2;
  r.K2 = 9;
  r.N = binomial_l(a + 2, 2) - 1;
  for (std::size_t k = 0; k < m.counts.size(); ++k) {
    long mult = static_cast<long>(k) + 1, cnt = m.counts[k];
    r.degree -= mult * mult * cnt;
    r.genus -= mult * (mult - 1) / 2 * cnt;
    r.K2 -= cnt;
    r.N -= mult * (mult + 1) / 2 * cnt;
  }
  if (r.N < 3) throw InputError("linear system of dimension " + std::to_string(r.N) + " < 3 does not give a surface");
  return r;
}

CurveNumerics curve_numerics(const PlaneModelSpec& m, const CurveSpec& c) {
  if (c.through.size() > m.counts.size()) throw InputError("curve passes through more kinds of points than the model has");
  CurveNumerics r;
  r.degree = static_cast<long>(c.e) * m.a;
  for (std::size_t k = 0; k < c.through.size(); ++k) {
    if (c.through[k] > m.counts[k]) throw InputError("curve passes through more points than exist");
    r.degree -= static_cast<long>(k + 1) * c.through[k];
  }
  r.genus = static_cast<long>(c.e - 1) * (c.e - 2) / 2;
  return r;
}

SurfaceNumerics expected_surface_numerics(const PlaneModelSpec& m, const CurveSpec& c) {
  auto mn = model_numerics(m);
  auto cn = curve_numerics(m, c);
  long npass = 0, summ = 0;
  for (int x : c.through) npass += x;
  for (std::size_t k = 0; k < m.counts.size(); ++k) summ += static_cast<long>(k + 1) * m.counts[k];
  long C2 = static_cast<long>(c.e) * c.e - npass;
  long D2 = 4 * mn.degree - 4 * cn.degree + C2;
  long KH = -3L * m.a + summ, KC = -3L * c.e + npass;
  long KD = 2 * KH - KC;
  return {D2, 1 + (D2 + KD) / 2};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> multi_indices(int n, int d) {
  std::vector<std::vector<int>> out;
  for (auto& m : monomials_of_degree(n, d)) {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = m.exp(i);
    out.push_back(e);
  }
  return out;
}

// rows: all derivatives of order m-1 at p, applied to the degree-d monomials
void multiplicity_rows(Mat& A, const std::vector<Monomial>& monos, const Point& p, int m, const PrimeField& F) {
  for (auto& beta : multi_indices(3, m - 1)) {
    std::vector<u32> row(monos.size(), 0);
    for (std::size_t c = 0; c < monos.size(); ++c) {
      u32 v = 1;
      for (int i = 0; i < 3 && v; ++i) {
        int a = monos[c].exp(i), b = beta[i];
        if (a < b) {
          v = 0;
          break;
        }
        for (int k = 0; k < b; ++k) v = F.mul(v, F.from_int(a - k));
        v = F.mul(v, F.pow(p[i], a - b));
      }
      row[c] = v;
    }
    A.append_row(row);
  }
}

}  // namespace

PlaneModel build_model_map(const PlaneModelSpec& spec, Rng& rng) {
  auto num = model_numerics(spec);
  PrimeField F;
  RingPtr P2 = PolyRing::make(F, {"s0", "s1", "s2"});
  auto monos = monomials_of_degree(3, spec.a);
  for (int attempt = 0; attempt < 8; ++attempt) {
    PlaneModel M;
    M.spec = spec;
    M.plane = P2;
    Mat A(0, static_cast<int>(monos.size()));
    for (std::size_t k = 0; k < spec.counts.size(); ++k)
      for (int c = 0; c < spec.counts[k]; ++c) {
        Point p = random_point(3, rng, F);
        M.base_points.push_back(p);
        M.multiplicity.push_back(static_cast<int>(k) + 1);
        multiplicity_rows(A, monos, p, static_cast<int>(k) + 1, F);
      }
    Mat K = A.rows() ? kernel(A, F) : Mat::identity(static_cast<int>(monos.size()));
    if (K.rows() != num.N + 1) continue;  // special position
    for (int r = 0; r < K.rows(); ++r) M.system.push_back(form_from_vector(P2, monos, K.row_vec(r)));
    M.map = map_from_system(ProjVariety(P2, {}), M.system);
    return M;
  }
  throw RetryExhausted("build_model_map: base points keep landing in special position");
}

ProjVariety model_image(const PlaneModel& M, int maxdeg, Rng& rng) {
  auto gens = image_ideal_by_interpolation(M.map, maxdeg, rng);
  RationalMap phi = M.map;
  return ProjVariety(M.map.target_ring(), gens).with_sampler([phi](Rng& r) {
    for (;;) {
      Point q = phi(phi.source().sample(r));
      if (!is_zero_point(q)) return q;
    }
  });
}

// ---------------------------------------------------------------------------

Point eval_curve(const CurveParam& c, u32 t, const PrimeField& F) {
  Point p(c.coords.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = upoly::eval(c.coords[i], t, F);
  return p;
}

std::vector<UPoly> eval_on_curve(const std::vector<Poly>& forms, const std::vector<UPoly>& x, const PrimeField& F) {
  std::vector<UPoly> out;
  for (auto& f : forms) {
    UPoly acc;
    for (auto& t : f.terms()) {
      UPoly m{t.c};
      for (int i = 0; i < static_cast<int>(x.size()); ++i)
        for (int e = 0; e < t.m.exp(i); ++e) m = upoly::mul(m, x[i], F);
      acc = upoly::add(acc, m, F);
    }
    out.push_back(acc);
  }
  return out;
}

namespace {

std::vector<UPoly> linear_param(const Point& p0, const Point& p1) {
  std::vector<UPoly> g(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) {
    g[i] = {p0[i], p1[i]};
    upoly::trim(g[i]);
  }
  return g;
}

// parameterize the conic Q through q by lines q + lambda * w(t)
std::vector<UPoly> conic_param(const Poly& Q, const Point& q, Rng& rng, const PrimeField& F) {
  auto w = linear_param(random_point(3, rng, F), random_point(3, rng, F));
  UPoly Qw = eval_on_curve({Q}, w, F)[0];
  UPoly lin;
  for (int i = 0; i < 3; ++i) lin = upoly::add(lin, upoly::scale(w[i], Q.derivative(i).eval(q), F), F);
  std::vector<UPoly> g(3);
  for (int i = 0; i < 3; ++i) g[i] = upoly::sub(upoly::scale(Qw, q[i], F), upoly::mul(lin, w[i], F), F);
  return g;
}

}  // namespace

PlaneCurve build_curve(const PlaneModel& M, const CurveSpec& c, Rng& rng) {
  auto cn = curve_numerics(M.spec, c);
  if (cn.genus == 1) throw Unimplemented("elliptic matching unimplemented");
  if (cn.genus > 1) throw Unimplemented("matching for curves of genus " + std::to_string(cn.genus) + " unimplemented");
  const PrimeField& F = M.plane->field();
  std::vector<Point> req;
  {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < M.spec.counts.size(); ++k) {
      int need = k < c.through.size() ? c.through[k] : 0;
      for (int j = 0; j < M.spec.counts[k]; ++j, ++idx)
        if (j < need) req.push_back(M.base_points[idx]);
    }
  }
  int npts = c.e == 1 ? 2 : 5;
  if (static_cast<int>(req.size()) > npts)
    throw InputError("a plane curve of degree " + std::to_string(c.e) + " cannot pass through " +
                     std::to_string(req.size()) + " general points");
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Point> pts = req;
    while (static_cast<int>(pts.size()) < npts) pts.push_back(random_point(3, rng, F));
    PlaneCurve C;
    C.spec = c;
    if (c.e == 1) {
      C.gamma.coords = linear_param(pts[0], pts[1]);
      C.gamma.degree = 1;
    } else {
      auto conics = forms_through_points(M.plane, pts, 2);
      if (conics.size() != 1) continue;
      const Poly& Q = conics[0];
      Mat H(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) H(i, j) = Q.derivative(i).derivative(j).eval({0, 0, 0});
      if (det(H, F) == 0) continue;  // singular conic
      C.gamma.coords = conic_param(Q, pts.back(), rng, F);
      C.gamma.degree = 2;
    }
    auto img = eval_on_curve(M.system, C.gamma.coords, F);
    UPoly g;
    for (auto& u : img)
      if (!u.empty()) g = g.empty() ? u : upoly::gcd(g, u, F);
    int deg = 0;
    for (auto& u : img) {
      if (!u.empty()) u = upoly::quo(u, g, F);
      deg = std::max(deg, upoly::deg(u));
    }
    if (deg != cn.degree) continue;
    C.image.coords = img;
    C.image.degree = deg;
    return C;
  }
  throw RetryExhausted("build_curve: could not realize the plane curve");
}

// ---------------------------------------------------------------------------

std::vector<std::pair<int, int>> splittings(int d) {
  std::vector<std::pair<int, int>> s;
  for (int d1 = 1; d1 < d; ++d1) s.push_back({d1, d - d1});
  std::stable_sort(s.begin(), s.end(), [](auto x, auto y) {
    int bx = std::abs(x.first - x.second), by = std::abs(y.first - y.second);
    if (bx != by) return bx < by;
    return x.first < y.first;
  });
  return s;
}

namespace {

UPoly random_upoly(int d, Rng& rng, const PrimeField& F) {
  UPoly u(d + 1);
  for (auto& c : u) c = static_cast<u32>(rng.below(F.p()));
  upoly::trim(u);
  return u;
}

bool contained_in_sigma3(const Mat& sigma, const CurveParam& C, const PrimeField& F) {
  std::vector<UPoly> y(7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c)
      if (sigma(r, c)) y[r] = upoly::add(y[r], upoly::scale(C.coords[c], sigma(r, c), F), F);
  auto S3 = segre_sigma3(F);
  for (auto& u : eval_on_curve(S3.gens(), y, F))
    if (!u.empty()) return false;
  return true;
}

}  // namespace

Projectivity find_projectivity(const CurveParam& C, Rng& rng, const PrimeField& F) {
  if (C.coords.size() != 7) throw InputError("find_projectivity expects a curve in P^6");
  const int kSamples = 9;
  int d = C.degree;
  if (d < 1) throw InputError("find_projectivity: curve of degree 0");
  // a line goes to a ruling line
  auto splits = d == 1 ? std::vector<std::pair<int, int>>{{0, 1}, {1, 0}} : splittings(d);
  for (auto [d1, d2] : splits) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::vector<UPoly> al{random_upoly(d1, rng, F), random_upoly(d1, rng, F)};
      std::vector<UPoly> be{random_upoly(d2, rng, F), random_upoly(d2, rng, F), random_upoly(d2, rng, F)};
      Mat A(7 * kSamples, 49 + kSamples);
      for (int i = 0; i < kSamples; ++i) {
        u32 t = static_cast<u32>(rng.below(F.p()));
        Point f = eval_curve(C, t, F);
        std::vector<u32> a2{upoly::eval(al[0], t, F), upoly::eval(al[1], t, F)};
        std::vector<u32> b3{upoly::eval(be[0], t, F), upoly::eval(be[1], t, F), upoly::eval(be[2], t, F)};
        Point g = sigma3_point(a2, b3, F);
        for (int r = 0; r < 7; ++r) {
          for (int c = 0; c < 7; ++c) A(7 * i + r, 7 * r + c) = f[c];
          A(7 * i + r, 49 + i) = F.neg(g[r]);
        }
      }
      Mat K = kernel(A, F);
      if (K.rows() == 0) continue;
      for (int tries = 0; tries < 4; ++tries) {
        std::vector<u32> v(49 + kSamples, 0);
        for (int k = 0; k < K.rows(); ++k) {
          u32 c = static_cast<u32>(rng.below(F.p()));
          for (int j = 0; j < 49 + kSamples; ++j) v[j] = F.add(v[j], F.mul(c, K(k, j)));
        }
        bool lam_ok = true;
        for (int i = 0; i < kSamples; ++i) lam_ok = lam_ok && v[49 + i] != 0;
        if (!lam_ok) continue;
        Mat sigma(7, 7);
        for (int r = 0; r < 7; ++r)
          for (int c = 0; c < 7; ++c) sigma(r, c) = v[7 * r + c];
        if (det(sigma, F) == 0) continue;
        if (!contained_in_sigma3(sigma, C, F)) continue;
        return {sigma, d1, d2};
      }
    }
  }
  throw RetryExhausted("find_projectivity: no projectivity sends the curve into Sigma_3");
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Poly> interpolate(const RingPtr& R, const std::vector<Point>& pts, int maxdeg) {
  std::vector<Poly> gens = linear_forms_through(R, pts);
  for (int d = 2; d <= maxdeg; ++d) {
    auto f = forms_through_points(R, pts, d);
    gens.insert(gens.end(), f.begin(), f.end());
  }
  return gens;
}

}  // namespace

SurfaceBuild build_surface_in_g14(const PlaneModelSpec& m, const CurveSpec& c, Rng& rng, const BuildOptions& opt) {
  SurfaceBuild B;
  B.model_num = model_numerics(m);
  B.curve_num = curve_numerics(m, c);
  B.expected = expected_surface_numerics(m, c);
  if (B.model_num.N > 6) throw InputError("the model surface spans P^" + std::to_string(B.model_num.N) + ", not inside P^6");
  PrimeField F;
  B.model = build_model_map(m, rng);
  B.curve = build_curve(B.model, c, rng);
  CurveParam C6 = B.curve.image;
  C6.coords.resize(7);
  B.sigma = find_projectivity(C6, rng, F);

  auto R6 = p6_ring(F);
  auto psi = psi_forms(R6);
  std::vector<Poly> sys = B.model.system;
  Mat sigma = B.sigma.sigma;
  B.sample_p9 = [sys, sigma, psi, F](Rng& r) {
    for (;;) {
      Point x = eval_forms(sys, random_point(3, r, F));
      x.resize(7, 0);
      Point y = eval_forms(psi, mat_vec(sigma, x, F));
      if (!is_zero_point(y)) return y;
    }
  };

  int maxdeg = std::max(2, opt.max_generator_degree);
  long need = binomial_l(8 + maxdeg, maxdeg) + 40;
  std::vector<Point> pts9;
  for (long i = 0; i < need; ++i) pts9.push_back(B.sample_p9(rng));
  B.Y = del_pezzo_containing(pts9, rng, F);
  std::vector<Point> pts8;
  for (auto& p : pts9) pts8.push_back(B.Y.to_p8(p));

  auto build = [&](int d) { return ProjVariety(B.Y.ring, buchberger(interpolate(B.Y.ring, pts8, d)).gens()); };
  ProjVariety S = build(2);
  B.generator_degree = 2;
  if (maxdeg >= 3) {
    if (S.dim() != 2 || S.degree() != B.expected.degree) {
      ProjVariety S3 = build(3);
      if (S3.dim() != S.dim() || S3.degree() != S.degree()) {
        S = S3;
        B.generator_degree = 3;
      }
    }
  }
  if (S.dim() != 2) throw MathError("build_surface_in_g14: the image is not a surface");
  DelPezzoFivefold Y = B.Y;
  Sampler s9 = B.sample_p9;
  B.S = S.with_sampler([Y, s9](Rng& r) { return Y.to_p8(s9(r)); });
  B.degree = B.S.degree();
  B.genus = invariants(B.S, rng).genus;
  B.isomorphic_image = B.degree == B.expected.degree && B.genus == B.expected.genus;
  if (B.isomorphic_image) B.K2 = B.model_num.K2;
  return B;
}

}  // namespace hsf
