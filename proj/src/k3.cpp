#include <algorithm>
#include <map>
#include <sstream>

#include "hsf/fourfolds.hpp"
#include "hsf/groebner.hpp"
#include "hsf/linalg.hpp"
#include "hsf/univariate.hpp"
#include "hsf/zerodim.hpp"

namespace hsf {

namespace {

// F_p[a]/(mu), mu monic irreducible of degree k; elements are coordinate
// vectors in the basis 1, a, ..., a^(k-1).
class ExtField {
 public:
  using Elt = std::vector<u32>;

  ExtField(const PrimeField& F, const UPoly& mu) : F_(F), mu_(upoly::monic(mu, F)), k_(upoly::deg(mu_)) {}

  int k() const { return k_; }
  const PrimeField& base() const { return F_; }
  Elt zero() const { return Elt(k_, 0); }
  Elt scalar(u32 c) const {
    Elt e = zero();
    e[0] = c;
    return e;
  }
  bool is_zero(const Elt& a) const {
    return std::all_of(a.begin(), a.end(), [](u32 c) { return c == 0; });
  }
  Elt add(const Elt& a, const Elt& b) const {
    Elt c(k_);
    for (int i = 0; i < k_; ++i) c[i] = F_.add(a[i], b[i]);
    return c;
  }
  Elt sub(const Elt& a, const Elt& b) const {
    Elt c(k_);
    for (int i = 0; i < k_; ++i) c[i] = F_.sub(a[i], b[i]);
    return c;
  }
  Elt scale(const Elt& a, u32 s) const {
    Elt c(k_);
    for (int i = 0; i < k_; ++i) c[i] = F_.mul(a[i], s);
    return c;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    if (k_ == 1) return {F_.mul(a[0], b[0])};
    const u64 p = F_.p();
    std::vector<u64> acc(2 * k_ - 1, 0);
    for (int i = 0; i < k_; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < k_; ++j) acc[i + j] += static_cast<u64>(a[i]) * b[j] % p;
    }
    for (int d = 2 * k_ - 2; d >= k_; --d) {
      u64 c = acc[d] % p;
      if (!c) continue;
      for (int i = 0; i < k_; ++i)
        if (mu_[i]) acc[d - k_ + i] += c * (p - mu_[i]) % p;
    }
    Elt out(k_);
    for (int i = 0; i < k_; ++i) out[i] = static_cast<u32>(acc[i] % p);
    return out;
  }
  // column j is a * alpha^j
  Mat mult_matrix(const Elt& a) const {
    Mat M(k_, k_);
    Elt cur = a;
    Elt alpha = zero();
    if (k_ > 1) alpha[1] = 1;
    for (int j = 0; j < k_; ++j) {
      for (int i = 0; i < k_; ++i) M(i, j) = cur[i];
      cur = k_ > 1 ? mul(cur, alpha) : cur;
    }
    return M;
  }
  Elt inv(const Elt& a) const {
    Elt e0 = scalar(1);
    return solve(mult_matrix(a), e0, F_);
  }

 private:
  PrimeField F_;
  UPoly mu_;
  int k_;
};

using Elt = ExtField::Elt;
using Series = std::vector<Elt>;  // t^0, t^1, ...

Series ser_mul(const ExtField& K, const Series& a, const Series& b, int n) {
  Series c(n, K.zero());
  for (int i = 0; i < n && i < static_cast<int>(a.size()); ++i) {
    if (K.is_zero(a[i])) continue;
    for (int j = 0; i + j < n && j < static_cast<int>(b.size()); ++j) c[i + j] = K.add(c[i + j], K.mul(a[i], b[j]));
  }
  return c;
}

// polynomial evaluation on truncated series, powers cached per variable
class SeriesEvaluator {
 public:
  SeriesEvaluator(const ExtField& K, const std::vector<Series>& x, int n) : K_(K), x_(x), n_(n), pw_(x.size()) {}

  const Series& power(int i, int e) {
    auto& v = pw_[i];
    if (v.empty()) {
      Series one(n_, K_.zero());
      one[0] = K_.scalar(1);
      v.push_back(one);
    }
    while (static_cast<int>(v.size()) <= e) v.push_back(ser_mul(K_, v.back(), x_[i], n_));
    return v[e];
  }

  Series eval(const Poly& f) {
    int nv = f.ring()->nvars();
    Series out(n_, K_.zero());
    for (auto& t : f.terms()) {
      Series prod;
      bool first = true;
      for (int i = 0; i < nv; ++i) {
        int e = t.m.exp(i);
        if (!e) continue;
        if (first) {
          prod = power(i, e);
          first = false;
        } else {
          prod = ser_mul(K_, prod, power(i, e), n_);
        }
      }
      if (first) {
        prod.assign(n_, K_.zero());
        prod[0] = K_.scalar(1);
      }
      for (int k = 0; k < n_; ++k) out[k] = K_.add(out[k], K_.scale(prod[k], t.c));
    }
    return out;
  }

 private:
  const ExtField& K_;
  const std::vector<Series>& x_;
  int n_;
  std::vector<std::vector<Series>> pw_;
};

Elt eval_poly(const ExtField& K, const Poly& f, const std::vector<Elt>& x) {
  std::vector<Series> s;
  for (auto& c : x) s.push_back({c});
  SeriesEvaluator ev(K, s, 1);
  return ev.eval(f)[0];
}

// F_p-expansion of an F_q row vector: rows alpha^a * v for a < k
void append_expanded(Mat& M, const ExtField& K, const std::vector<Elt>& v) {
  int k = K.k();
  int n = static_cast<int>(v.size());
  Elt alpha = K.zero();
  if (k > 1) alpha[1] = 1;
  std::vector<Elt> cur = v;
  for (int a = 0; a < k; ++a) {
    std::vector<u32> row(static_cast<std::size_t>(n) * k);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k; ++b) row[static_cast<std::size_t>(i) * k + b] = cur[i][b];
    M.append_row(row);
    if (k > 1)
      for (auto& c : cur) c = K.mul(c, alpha);
  }
}

// rows of the F_p system for sum_i c_i x_i (x_i in F_q as k coordinates):
// output coordinate b
void append_equation(Mat& M, const ExtField& K, const std::vector<Elt>& c) {
  int k = K.k();
  int n = static_cast<int>(c.size());
  std::vector<Mat> mm;
  for (auto& ci : c) mm.push_back(K.mult_matrix(ci));
  for (int b = 0; b < k; ++b) {
    std::vector<u32> row(static_cast<std::size_t>(n) * k);
    for (int i = 0; i < n; ++i)
      for (int cc = 0; cc < k; ++cc) row[static_cast<std::size_t>(i) * k + cc] = mm[i](b, cc);
    M.append_row(row);
  }
}

struct ExtPoint {
  ExtField K;
  std::vector<Elt> x;
};

Poly eval_upoly_at(const UPoly& mu, const Poly& u) {
  RingPtr R = u.ring();
  Poly acc(R);
  for (int i = upoly::deg(mu); i >= 0; --i) acc = acc * u + Poly::constant(R, mu[i]);
  return acc;
}

// coordinates of one point of a cluster, over the residue field given by the
// minimal polynomial of the primitive form
ExtPoint cluster_point(const ZeroDimCluster& c) {
  RingPtr R = c.primitive.ring();
  const PrimeField& Fp = R->field();
  int n = R->nvars();
  int k = c.residue_degree;
  std::vector<Poly> gens = c.ideal.gens();
  gens.push_back(eval_upoly_at(c.minpoly, c.primitive));
  GroebnerBasis red = buchberger(gens);
  std::vector<Poly> nf_pow;
  Poly up = Poly::constant(R, 1);
  for (int j = 0; j < k; ++j) {
    nf_pow.push_back(normal_form(up, red));
    up = up * c.primitive;
  }
  std::vector<Poly> nf_x;
  for (int i = 0; i < n; ++i) nf_x.push_back(normal_form(Poly::var(R, i), red));
  std::vector<Monomial> monos;
  auto collect = [&](const Poly& f) {
    for (auto& t : f.terms())
      if (std::find(monos.begin(), monos.end(), t.m) == monos.end()) monos.push_back(t.m);
  };
  for (auto& f : nf_pow) collect(f);
  for (auto& f : nf_x) collect(f);
  auto coeff = [&](const Poly& f, const Monomial& m) -> u32 {
    for (auto& t : f.terms())
      if (t.m == m) return t.c;
    return 0;
  };
  Mat A(static_cast<int>(monos.size()), k);
  for (std::size_t r = 0; r < monos.size(); ++r)
    for (int j = 0; j < k; ++j) A(static_cast<int>(r), j) = coeff(nf_pow[j], monos[r]);
  ExtPoint P{ExtField(Fp, c.minpoly), {}};
  for (int i = 0; i < n; ++i) {
    std::vector<u32> b(monos.size());
    for (std::size_t r = 0; r < monos.size(); ++r) b[r] = coeff(nf_x[i], monos[r]);
    P.x.push_back(solve(A, b, Fp));
  }
  return P;
}

// Germ x(t) of the affine cone of a curve at P, normalized by lambda(x) = 1 and
// nu(x) = nu(P) + t, from codim-many local equations. Empty when the local
// equations are singular at P.
std::vector<Series> curve_germ(const std::vector<Poly>& eqs, const ExtPoint& P, const Poly& lambda, const Poly& nu,
                               int order) {
  const ExtField& K = P.K;
  RingPtr R = lambda.ring();
  int n = R->nvars();
  int k = K.k();
  // constant linear system: J(P) v = rhs, lambda v = 0, nu v = delta
  Mat M(0, n * k);
  for (auto& g : eqs) {
    std::vector<Elt> row;
    for (int i = 0; i < n; ++i) row.push_back(eval_poly(K, g.derivative(i), P.x));
    append_equation(M, K, row);
  }
  for (const Poly* l : {&lambda, &nu}) {
    std::vector<Elt> row;
    for (int i = 0; i < n; ++i) row.push_back(K.scalar(l->derivative(i).eval(std::vector<u32>(n, 0))));
    append_equation(M, K, row);
  }
  if (rank(M, K.base()) != n * k) return {};
  std::vector<Series> x(n, Series(order, K.zero()));
  for (int i = 0; i < n; ++i) x[i][0] = P.x[i];
  for (int j = 1; j < order; ++j) {
    SeriesEvaluator ev(K, x, j + 1);
    std::vector<u32> rhs;
    for (auto& g : eqs) {
      Elt c = ev.eval(g)[j];
      for (int b = 0; b < k; ++b) rhs.push_back(K.base().neg(c[b]));
    }
    for (int which = 0; which < 2; ++which)
      for (int b = 0; b < k; ++b) rhs.push_back(which == 1 && j == 1 && b == 0 ? 1 : 0);
    auto sol = solve(M, rhs, K.base());
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k; ++b) x[i][j][b] = sol[static_cast<std::size_t>(i) * k + b];
  }
  return x;
}

std::vector<Poly> ambient_part(const ProjVariety& V, int d) {
  return V.gens().empty() ? std::vector<Poly>{} : degree_part(V.gens(), d);
}

// codim-many random combinations of the generators, brought to a common degree
std::vector<Poly> local_equations(const std::vector<Poly>& gens, int codim, Rng& rng) {
  RingPtr R = gens.front().ring();
  int top = 0;
  for (auto& g : gens) top = std::max(top, g.degree());
  std::vector<Poly> eqs;
  for (int c = 0; c < codim; ++c) {
    Poly s(R);
    for (auto& g : gens) {
      Poly m = Poly::constant(R, 1);
      for (int d = g.degree(); d < top; ++d) m = m * random_linear_form(R, rng);
      s += (g * m).scaled(static_cast<u32>(1 + rng.below(R->field().p() - 1)));
    }
    eqs.push_back(s);
  }
  return eqs;
}

Poly poly_det(std::vector<std::vector<Poly>> A) {
  int m = static_cast<int>(A.size());
  if (m == 1) return A[0][0];
  RingPtr R = A[0][0].ring();
  Poly out(R);
  for (int j = 0; j < m; ++j) {
    if (A[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (int i = 1; i < m; ++i) {
      std::vector<Poly> row;
      for (int l = 0; l < m; ++l)
        if (l != j) row.push_back(A[i][l]);
      sub.push_back(row);
    }
    Poly t = A[0][j] * poly_det(sub);
    out = (j % 2) ? out - t : out + t;
  }
  return out;
}

// maximal minors of the Jacobian of codim local equations
std::vector<Poly> jacobian_minors(const std::vector<Poly>& eqs, int n) {
  int m = static_cast<int>(eqs.size());
  std::vector<std::vector<Poly>> jac(m);
  for (int i = 0; i < m; ++i)
    for (int v = 0; v < n; ++v) jac[i].push_back(eqs[i].derivative(v));
  std::vector<Poly> out;
  std::vector<int> cols(m);
  for (int i = 0; i < m; ++i) cols[i] = i;
  while (true) {
    std::vector<std::vector<Poly>> A(m);
    for (int i = 0; i < m; ++i)
      for (int c : cols) A[i].push_back(jac[i][c]);
    Poly d = poly_det(A);
    if (!d.is_zero()) out.push_back(d);
    int i = m - 1;
    while (i >= 0 && cols[i] == n - m + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int l = i + 1; l < m; ++l) cols[l] = cols[l - 1] + 1;
  }
  return out;
}

constexpr int kCutForms = 6;
constexpr int kUnionMaxDegree = 6;

// the degree-s form on W through mu(X cap G), unique modulo I_W
Poly divisor_form(const HodgeSpecialFourfold& F, const FanoMapReport& fm, const Poly& G, int s, Rng& rng) {
  RingPtr Rw = fm.mu.target_ring();
  auto Ws = ambient_part(fm.W, s);
  long free = static_cast<long>(monomials_of_degree(Rw->nvars(), s).size()) - static_cast<long>(Ws.size());
  std::vector<Poly> gens = F.V.gens();
  gens.push_back(F.X_form);
  gens.push_back(G);
  ProjVariety XG(F.S.ring(), gens);
  std::vector<Point> pts;
  int misses = 0;
  while (static_cast<long>(pts.size()) < free + 20) {
    Point q = fm.mu(XG.sample(rng));
    if (is_zero_point(q)) {
      if (++misses > 200) throw RetryExhausted("surface U: sampled points of X cap G lie in the base locus");
      continue;
    }
    pts.push_back(q);
  }
  auto rel = forms_modulo(forms_through_points(Rw, pts, s), Ws, s);
  if (rel.size() != 1)
    throw MathError("surface U: the image of X cap G lies on " + std::to_string(rel.size()) +
                    " independent forms of degree " + std::to_string(s) + " modulo W");
  return rel[0];
}

std::vector<Poly> u_ideal(const HodgeSpecialFourfold& F, const FanoMapReport& fm, Rng& rng,
                          std::vector<Poly>* cutting) {
  int s = fm.kind.index;
  int r = F.r();
  RingPtr Rw = fm.mu.target_ring();
  auto base = ambient_part(F.V, r);
  base.push_back(F.X_form);
  auto beyond = forms_modulo(degree_part(F.S.gb().gens(), r), base, r);
  if (beyond.empty()) throw MathError("surface U: S is cut out in X by X itself");
  int k = std::min<int>(kCutForms, static_cast<int>(beyond.size()));
  std::vector<Poly> forms;
  for (int i = 0; i < k; ++i) forms.push_back(divisor_form(F, fm, random_combination(beyond, rng), s, rng));
  if (cutting) *cutting = forms;
  std::vector<Poly> gens = fm.W.gens();
  gens.insert(gens.end(), forms.begin(), forms.end());
  return saturate_irrelevant(gens, rng);
}

struct SliceOrbit {
  ExtPoint P;
  std::vector<Series> germ;
  int residue = 0;
  int span_degree = 0;
};

int span_degree(const ExtField& K, const std::vector<Series>& x, int order) {
  int n = static_cast<int>(x.size());
  Mat M(0, n * K.k());
  for (int j = 0; j < order; ++j) {
    std::vector<Elt> v;
    for (int i = 0; i < n; ++i) v.push_back(x[i][j]);
    append_expanded(M, K, v);
  }
  return rank(M, K.base()) / K.k() - 1;
}

// forms of degree d over F_p vanishing on the curves through the orbits
std::vector<Poly> forms_on_orbits(const RingPtr& R, const std::vector<const SliceOrbit*>& orbits, int d) {
  auto monos = monomials_of_degree(R->nvars(), d);
  Mat M(0, static_cast<int>(monos.size()));
  for (auto* o : orbits) {
    const ExtField& K = o->P.K;
    int len = d * o->span_degree + 1;
    SeriesEvaluator ev(K, o->germ, len);
    std::vector<Series> vals;
    for (auto& m : monos) vals.push_back(ev.eval(Poly::monomial(R, m)));
    for (int l = 0; l < len; ++l)
      for (int b = 0; b < K.k(); ++b) {
        std::vector<u32> row(monos.size());
        for (std::size_t c = 0; c < monos.size(); ++c) row[c] = vals[c][l][b];
        M.append_row(row);
      }
  }
  Mat ker = kernel(M, R->field());
  std::vector<Poly> out;
  for (int i = 0; i < ker.rows(); ++i) out.push_back(form_from_vector(R, monos, ker.row_vec(i)));
  return out;
}

std::vector<Poly> union_ideal(const RingPtr& R, const std::vector<const SliceOrbit*>& orbits, long degree, Rng& rng) {
  std::vector<Poly> gens;
  for (int d = 1; d <= kUnionMaxDegree; ++d) {
    auto f = forms_on_orbits(R, orbits, d);
    auto mine = gens.empty() ? f : forms_modulo(f, degree_part(gens, d), d);
    gens.insert(gens.end(), mine.begin(), mine.end());
    if (gens.empty()) continue;
    ProjVariety C(R, gens);
    if (C.dim() == 1 && C.degree() == degree) return saturate_irrelevant(gens, rng);
  }
  throw MathError("surface U: could not interpolate the exceptional curves of degree " + std::to_string(degree));
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Ideal containing I_U whose zero set on U is Sing(U): all codim-size minors
// of the Jacobian when there are few, otherwise two sets of local equations
// (possibly adding finitely many further points)
std::vector<Poly> singular_support(const std::vector<Poly>& IU, int codim, Rng& rng) {
  int n = IU.front().ring()->nvars();
  int m = static_cast<int>(IU.size());
  std::vector<Poly> gens = IU;
  if (binom(m, codim) * binom(n, codim) <= 2000) {
    std::vector<int> rows(codim);
    for (int i = 0; i < codim; ++i) rows[i] = i;
    while (true) {
      std::vector<Poly> eqs;
      for (int r : rows) eqs.push_back(IU[r]);
      auto mm = jacobian_minors(eqs, n);
      gens.insert(gens.end(), mm.begin(), mm.end());
      int i = codim - 1;
      while (i >= 0 && rows[i] == m - codim + i) --i;
      if (i < 0) break;
      ++rows[i];
      for (int l = i + 1; l < codim; ++l) rows[l] = rows[l - 1] + 1;
    }
  } else {
    for (int k = 0; k < 2; ++k) {
      auto mm = jacobian_minors(local_equations(IU, codim, rng), n);
      gens.insert(gens.end(), mm.begin(), mm.end());
    }
  }
  return buchberger(gens).gens();
}

}  // namespace

SurfaceU surface_U(const HodgeSpecialFourfold& F, const FanoMapReport& fm, Rng& rng, std::vector<std::string>* log) {
  if (fm.kind.index <= 0) throw MathError("surface U: the image W of the Fano map is not recognized");
  RingPtr Rw = fm.mu.target_ring();
  SurfaceU out;
  if (log) log->push_back("-- computing the surface U corresponding to the fourfold X");
  auto IU = u_ideal(F, fm, rng, &out.cutting_forms);
  out.U = ProjVariety(Rw, IU);
  if (out.U.dim() != 2)
    throw MathError("surface U: the base locus has dimension " + std::to_string(out.U.dim()) + ", not 2");
  out.inv = invariants(out.U, rng);

  if (log) log->push_back("-- computing the surface U' corresponding to another fourfold X'");
  auto F2 = with_other_fourfold(F, rng);
  auto IU2 = u_ideal(F2, fm, rng, nullptr);
  auto cap = ideal_sum(IU, IU2);
  ProjVariety C(Rw, cap);
  if (C.dim() != 1)
    throw MathError("surface U: U cap U' has dimension " + std::to_string(C.dim()) + ", expected a curve");
  out.scheme_degree = C.degree();

  // one general hyperplane section; each orbit of points sits on curves whose
  // degree is read off the span of the germ (rational normal curves)
  int n = Rw->nvars();
  int codim = n - 2;
  int order = static_cast<int>(out.scheme_degree) + 2;
  std::vector<SliceOrbit> orbits;
  bool ok = false;
  for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
    orbits.clear();
    Poly H = random_linear_form(Rw, rng);
    Poly L = random_linear_form(Rw, rng);
    std::vector<Poly> gens = cap;
    gens.push_back(H);
    gens.push_back(L - Poly::constant(Rw, 1));
    auto eqs = local_equations(cap, codim, rng);
    ok = true;
    for (auto& c : decompose_zero_dim(gens, rng)) {
      SliceOrbit o{cluster_point(c), {}, c.residue_degree, 0};
      o.germ = curve_germ(eqs, o.P, L, H, order);
      if (o.germ.empty()) {
        ok = false;
        break;
      }
      o.span_degree = span_degree(o.P.K, o.germ, order);
      // long enough for the interpolation of the curve ideals
      if (kUnionMaxDegree * o.span_degree + 1 > order)
        o.germ = curve_germ(eqs, o.P, L, H, kUnionMaxDegree * o.span_degree + 1);
      orbits.push_back(std::move(o));
    }
  }
  if (!ok) throw RetryExhausted("surface U: U cap U' is singular at every sampled slice point");

  std::map<int, long> points;
  for (auto& o : orbits) points[o.span_degree] += o.residue;
  long reduced = 0;
  for (auto& [j, pts] : points) {
    if (j <= 0 || pts % j != 0)
      throw MathError("surface U: inconsistent exceptional curves (" + std::to_string(pts) + " points on curves spanning P^" +
                      std::to_string(j) + ")");
    out.exceptional.push_back({j, pts / j});
    reduced += pts;
  }
  out.reduced_degree = reduced;
  if (log) {
    std::ostringstream os;
    os << "-- computing the ";
    for (std::size_t i = 0; i < out.exceptional.size(); ++i) {
      os << (i ? " and " : "") << out.exceptional[i].count << " exceptional ";
      if (out.exceptional[i].degree == 1)
        os << "line(s)";
      else
        os << "curve(s) of degree " << out.exceptional[i].degree;
    }
    os << " in U ∩ U'";
    log->push_back(os.str());
    log->push_back("-- computing the top components of U ∩ U'");
  }
  for (auto& g : out.exceptional) {
    std::vector<const SliceOrbit*> mine;
    for (auto& o : orbits)
      if (o.span_degree == g.degree) mine.push_back(&o);
    out.exceptional_components.push_back(union_ideal(Rw, mine, g.degree * g.count, rng));
  }
  std::vector<const SliceOrbit*> all;
  for (auto& o : orbits) all.push_back(&o);
  out.exceptional_ideal = union_ideal(Rw, all, reduced, rng);
  return out;
}

std::string exceptional_string(const SurfaceU& U) {
  std::ostringstream os;
  for (std::size_t i = 0; i < U.exceptional.size(); ++i) {
    auto& g = U.exceptional[i];
    if (i) os << ", ";
    os << g.count << " curve" << (g.count == 1 ? "" : "s") << " of degree " << g.degree;
  }
  return os.str();
}

K3Report k3_model(const HodgeSpecialFourfold& F, const SurfaceU& SU, Rng& rng, std::vector<std::string>* log) {
  auto disc = discriminant(F.kind, F.inv);
  long d = disc.d;
  long want = d / 2 + 2;
  RingPtr R = SU.U.ring();
  const auto& IU = SU.U.gb().gens();
  int codimU = R->nvars() - 3;
  auto sing = singular_support(IU, codimU, rng);
  if (ProjVariety(R, sing).dim() > 0)
    throw MathError("k3 model: U is singular along a curve (not normal); desingularization is not implemented");
  if (log) log->push_back("-- computing the map f from U to the minimal K3 surface of degree " + std::to_string(d));

  // F0 = product of general members f_j of I(C_j) raised to deg C_j vanishes
  // on sum deg(C_j) C_j; E = div(F0) - sum deg(C_j) C_j
  Poly F0 = Poly::constant(R, 1);
  for (std::size_t g = 0; g < SU.exceptional.size(); ++g) {
    const auto& I = SU.exceptional_components[g];
    int low = 1 << 20;
    for (auto& f : I) low = std::min(low, f.degree());
    std::vector<Poly> lowest;
    for (auto& f : degree_part(I, low)) lowest.push_back(f);
    auto cand = forms_modulo(lowest, ambient_part(SU.U, low), low);
    if (cand.empty()) throw MathError("k3 model: exceptional curves not separated from U in degree " + std::to_string(low));
    F0 = F0 * random_combination(cand, rng).pow(static_cast<int>(SU.exceptional[g].degree));
  }
  // isolated non-normal points (improper double points of a projection):
  // F0 in the conductor makes every section on the normalization descend
  const bool sing_empty = ProjVariety(R, sing).empty();
  if (!sing_empty) {
    for (int d = 1;; ++d) {
      auto cand = forms_modulo(degree_part(sing, d), degree_part(IU, d), d);
      if (cand.empty()) continue;
      F0 = F0 * random_combination(cand, rng);
      break;
    }
  }
  // twisting F0 by a general linear form adds H to E and keeps the class of
  // tH - E; large twists make quadric-normality failures of U irrelevant
  std::vector<Poly> sections;
  Poly ell = random_linear_form(R, rng);
  for (int a = 0; a <= 4; ++a) {
    Poly Fa = F0 * ell.pow(a);
    std::vector<Poly> J = IU;
    J.push_back(Fa);
    for (std::size_t g = 0; g < SU.exceptional.size(); ++g) {
      std::vector<Poly> IC = ideal_sum(IU, SU.exceptional_components[g]);
      for (long i = 0; i < SU.exceptional[g].degree; ++i) J = ideal_colon(J, IC);
    }
    // embedded points of div(F0) at the singular points are not part of E;
    // V(sing) is finite, so one general element of sing saturates them away
    std::vector<Poly> IE =
        sing_empty ? saturate_irrelevant(J, rng) : saturate_principal(J, random_combination(sing, rng));
    int t = Fa.degree() + 1;
    sections = forms_modulo(degree_part(IE, t), degree_part(IU, t), t);
    if (static_cast<long>(sections.size()) >= want) break;
  }
  if (static_cast<long>(sections.size()) != want)
    throw MathError("k3 model: h^0(O_U(H + sum deg(C_i) C_i)) computed as " + std::to_string(sections.size()) +
                    ", expected d/2 + 2 = " + std::to_string(want));

  K3Report rep;
  rep.k3_map = map_from_system(SU.U, sections);
  if (log) log->push_back("-- computing the image of f");
  RingPtr Rk = rep.k3_map.target_ring();
  long need = static_cast<long>(monomials_of_degree(Rk->nvars(), 2).size()) + 30;
  std::vector<Point> pts;
  int misses = 0;
  while (static_cast<long>(pts.size()) < need) {
    Point q = rep.k3_map(SU.U.sample(rng));
    if (is_zero_point(q)) {
      if (++misses > 200) throw RetryExhausted("k3 model: sampled points lie in the base locus");
      continue;
    }
    pts.push_back(q);
  }
  auto quadrics = forms_through_points(Rk, pts, 2);
  rep.quadrics = static_cast<long>(quadrics.size());
  rep.k3 = ProjVariety(Rk, quadrics);
  if (rep.k3.dim() != 2) throw MathError("k3 model: the quadrics through the image do not cut a surface");
  rep.inv = invariants(rep.k3, rng);
  return rep;
}

}  // namespace hsf
