#include "hsf/varieties.hpp"

#include <algorithm>
#include <mutex>

#include "hsf/zerodim.hpp"

namespace hsf {

// ---------------------------------------------------------------------------
// ProjVariety

struct ProjVariety::State {
  RingPtr ring;
  std::vector<Poly> gens;
  Sampler sampler;
  std::mutex mu;
  std::optional<GroebnerBasis> gb;
  std::optional<HilbertData> hilb;
};

ProjVariety::ProjVariety(RingPtr ring, std::vector<Poly> gens) : st_(std::make_shared<State>()) {
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_homogeneous()) throw MathError("ProjVariety: generators must be homogeneous");
    st_->gens.push_back(g);
  }
  st_->ring = std::move(ring);
}

const RingPtr& ProjVariety::ring() const { return st_->ring; }
const std::vector<Poly>& ProjVariety::gens() const { return st_->gens; }

const GroebnerBasis& ProjVariety::gb() const {
  std::lock_guard<std::mutex> lk(st_->mu);
  if (!st_->gb) {
    if (st_->gens.empty()) st_->gb = GroebnerBasis(st_->ring, {}, true);
    else st_->gb = buchberger(st_->gens);
  }
  return *st_->gb;
}

const HilbertData& ProjVariety::hilbert() const {
  const GroebnerBasis& G = gb();
  std::lock_guard<std::mutex> lk(st_->mu);
  if (!st_->hilb) st_->hilb = hsf::hilbert(G);
  return *st_->hilb;
}

long ProjVariety::degree() const { return static_cast<long>(hilbert().degree); }

ProjVariety ProjVariety::with_sampler(Sampler s) const {
  ProjVariety v(ring(), gens());
  {
    std::lock_guard<std::mutex> lk(st_->mu);
    v.st_->gb = st_->gb;
    v.st_->hilb = st_->hilb;
  }
  v.st_->sampler = std::move(s);
  return v;
}

bool ProjVariety::has_sampler() const { return static_cast<bool>(st_->sampler); }

Point ProjVariety::sample(Rng& rng) const {
  if (st_->sampler) return st_->sampler(rng);
  const int n = ring()->nvars();
  const PrimeField& F = ring()->field();
  int d = dim();
  if (d < 0) throw MathError("sample: empty variety");
  bool linear = true;
  for (auto& g : gb().gens()) linear = linear && g.degree() == 1;
  if (linear) {
    Mat E = gb().gens().empty() ? Mat::identity(n) : linear_kernel_embedding(gb().gens(), n);
    for (;;) {
      Point p = mat_vec(E, random_point(E.cols(), rng, F), F);
      if (!is_zero_point(p)) return p;
    }
  }
  for (int attempt = 0; attempt < 20; ++attempt) {
    int k = n - d;
    Mat E(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) E(i, j) = static_cast<u32>(rng.below(F.p()));
    RingPtr Rk = PolyRing::make(F, k, "y");
    auto pulled = pullback_linear(gens(), E, Rk);
    std::vector<Point> pts;
    try {
      pts = rational_points(pulled, {}, rng);
    } catch (const MathError&) {
      continue;
    }
    if (pts.empty()) continue;
    return mat_vec(E, pts[rng.below(pts.size())], F);
  }
  throw RetryExhausted("sample: no rational point found on random linear sections");
}

// ---------------------------------------------------------------------------
// ideal operations

namespace {

RingPtr ring_of_polys(const std::vector<Poly>& a, const std::vector<Poly>& b = {}) {
  for (auto& f : a)
    if (f.ring()) return f.ring();
  for (auto& f : b)
    if (f.ring()) return f.ring();
  return nullptr;
}

std::vector<Poly> nonzero(std::vector<Poly> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](const Poly& f) { return f.is_zero(); }), v.end());
  return v;
}

// exact division h / g (throws if not divisible)
Poly exact_divide(const Poly& h, const Poly& g) {
  RingPtr R = h.ring();
  const PrimeField& F = R->field();
  Poly r = h, q(R);
  u32 inv = F.inv(g.lc());
  while (!r.is_zero()) {
    if (!mono_divides(g.lm(), r.lm())) throw MathError("exact_divide: not divisible");
    Monomial m = mono_div(r.lm(), g.lm());
    u32 c = F.mul(r.lc(), inv);
    q += Poly::monomial(R, m, c);
    r = r.sub_mul(c, m, g);
  }
  return q;
}

// ring with extra variables appended (names t0_, t1_, ...)
RingPtr extended_ring(const RingPtr& R, int extra) {
  auto names = R->names();
  for (int i = 0; i < extra; ++i) names.push_back("t" + std::to_string(i) + "_");
  return PolyRing::make(R->field(), names);
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  return m;
}

}  // namespace

std::vector<Poly> eliminate(const std::vector<Poly>& I, const std::vector<int>& vars) {
  RingPtr R = ring_of_polys(I);
  if (!R) return {};
  int n = R->nvars();
  std::vector<bool> el(n, false);
  for (int v : vars) el.at(v) = true;
  // reorder: eliminated variables first
  std::vector<int> perm;  // new position of old variable
  perm.assign(n, -1);
  std::vector<std::string> names;
  int pos = 0;
  for (int i = 0; i < n; ++i)
    if (el[i]) perm[i] = pos++, names.push_back(R->names()[i]);
  int k = pos;
  for (int i = 0; i < n; ++i)
    if (!el[i]) perm[i] = pos++, names.push_back(R->names()[i]);
  std::vector<int> inv(n);
  for (int i = 0; i < n; ++i) inv[perm[i]] = i;
  RingPtr RB = PolyRing::make(R->field(), names, MonomialOrder::block(n, k));
  std::vector<Poly> g;
  for (auto& f : I)
    if (!f.is_zero()) g.push_back(f.embed(RB, perm));
  auto G = buchberger(g);
  std::vector<Poly> out;
  for (auto& f : G.gens()) {
    bool free = true;
    for (auto& t : f.terms())
      for (int j = 0; j < k && free; ++j)
        if (t.m.exp(j)) free = false;
    if (free) out.push_back(f.embed(R, inv));
  }
  if (out.empty()) return {};
  return buchberger(out).gens();
}

std::vector<Poly> ideal_sum(const std::vector<Poly>& I, const std::vector<Poly>& J) {
  std::vector<Poly> g = nonzero(I);
  for (auto& f : J)
    if (!f.is_zero()) g.push_back(f);
  if (g.empty()) return {};
  return buchberger(g).gens();
}

std::vector<Poly> ideal_intersect(const std::vector<Poly>& I, const std::vector<Poly>& J) {
  RingPtr R = ring_of_polys(I, J);
  if (!R) return {};
  if (nonzero(I).empty() || nonzero(J).empty()) return {};
  int n = R->nvars();
  RingPtr RT = extended_ring(R, 1);
  auto id = identity_map(n);
  Poly t = Poly::var(RT, n);
  Poly one_minus_t = Poly::constant(RT, 1) - t;
  std::vector<Poly> g;
  for (auto& f : I)
    if (!f.is_zero()) g.push_back(t * f.embed(RT, id));
  for (auto& f : J)
    if (!f.is_zero()) g.push_back(one_minus_t * f.embed(RT, id));
  auto e = eliminate(g, {n});
  std::vector<int> back(n + 1, 0);
  for (int i = 0; i < n; ++i) back[i] = i;
  std::vector<Poly> out;
  for (auto& f : e) {
    // t does not occur; drop the variable
    std::vector<Term> terms;
    for (auto& tm : f.terms()) terms.push_back(tm);
    Poly h(RT, terms);
    std::vector<Poly> img;
    for (int i = 0; i < n; ++i) img.push_back(Poly::var(R, i));
    img.push_back(Poly(R));
    out.push_back(h.substitute(img));
  }
  return out.empty() ? out : buchberger(out).gens();
}

std::vector<Poly> ideal_colon(const std::vector<Poly>& I, const std::vector<Poly>& J) {
  RingPtr R = ring_of_polys(I, J);
  std::vector<Poly> res;
  bool first = true;
  for (auto& g : J) {
    if (g.is_zero()) continue;
    auto inter = ideal_intersect(I, {g});
    std::vector<Poly> q;
    for (auto& h : inter) q.push_back(exact_divide(h, g));
    q = q.empty() ? q : buchberger(q).gens();
    res = first ? q : ideal_intersect(res, q);
    first = false;
  }
  if (first) return {Poly::constant(R, 1)};  // I : 0 = R
  return res;
}

std::vector<Poly> saturate_principal(const std::vector<Poly>& I, const Poly& g) {
  RingPtr R = g.ring();
  int n = R->nvars();
  RingPtr RT = extended_ring(R, 1);
  auto id = identity_map(n);
  std::vector<Poly> gens;
  for (auto& f : I)
    if (!f.is_zero()) gens.push_back(f.embed(RT, id));
  gens.push_back(Poly::constant(RT, 1) - Poly::var(RT, n) * g.embed(RT, id));
  auto e = eliminate(gens, {n});
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) img.push_back(Poly::var(R, i));
  img.push_back(Poly(R));
  std::vector<Poly> out;
  for (auto& f : e) out.push_back(f.substitute(img));
  return out.empty() ? out : buchberger(out).gens();
}

std::vector<Poly> ideal_saturate(const std::vector<Poly>& I, const std::vector<Poly>& J) {
  RingPtr R = ring_of_polys(I, J);
  std::vector<Poly> res;
  bool first = true;
  for (auto& g : J) {
    if (g.is_zero()) continue;
    auto s = saturate_principal(I, g);
    res = first ? s : ideal_intersect(res, s);
    first = false;
  }
  if (first) return {Poly::constant(R, 1)};
  return res;
}

std::vector<Poly> ideal_op(const std::vector<Poly>& I, const std::vector<Poly>& J, IdealOp op) {
  switch (op) {
    case IdealOp::Sum: return ideal_sum(I, J);
    case IdealOp::Intersect: return ideal_intersect(I, J);
    case IdealOp::Colon: return ideal_colon(I, J);
    case IdealOp::Saturate: return ideal_saturate(I, J);
  }
  return {};
}

std::vector<Poly> saturate_irrelevant(const std::vector<Poly>& I, Rng& rng) {
  RingPtr R = ring_of_polys(I);
  if (!R) return {};
  const PrimeField& F = R->field();
  int n = R->nvars();
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = static_cast<u32>(rng.below(F.p()));
    auto Minv = inverse(M, F);
    if (!Minv) continue;
    auto moved = pullback_linear(I, M, R);
    auto G = buchberger(moved);
    if (G.is_unit()) return G.gens();
    std::vector<Poly> divided;
    for (auto& g : G.gens()) {
      int e = 1 << 30;
      for (auto& t : g.terms()) e = std::min(e, t.m.exp(n - 1));
      Monomial m;
      m.set_exp(n - 1, e);
      std::vector<Term> terms;
      for (auto& t : g.terms()) terms.push_back({mono_div(t.m, m), t.c});
      divided.emplace_back(R, terms);
    }
    auto back = pullback_linear(divided, *Minv, R);
    return buchberger(back).gens();
  }
  throw RetryExhausted("saturate_irrelevant: no invertible change of coordinates");
}

// ---------------------------------------------------------------------------
// linear algebra on forms

std::vector<u32> coefficient_vector(const Poly& f, const std::vector<Monomial>& monos) {
  std::vector<u32> v(monos.size(), 0);
  const PolyRing& R = *f.ring();
  // monos sorted decreasing in the ring order, like the terms
  std::size_t j = 0;
  for (auto& t : f.terms()) {
    while (j < monos.size() && monos[j] != t.m) {
      if (R.cmp(monos[j], t.m) < 0) throw MathError("coefficient_vector: monomial not in basis");
      ++j;
    }
    if (j == monos.size()) throw MathError("coefficient_vector: monomial not in basis");
    v[j] = t.c;
  }
  return v;
}

Poly form_from_vector(const RingPtr& R, const std::vector<Monomial>& monos, const std::vector<u32>& v) {
  std::vector<Term> t;
  for (std::size_t j = 0; j < monos.size(); ++j)
    if (v[j]) t.push_back({monos[j], v[j]});
  return Poly(R, std::move(t));
}

namespace {

std::vector<Monomial> sorted_monos(const RingPtr& R, int d) {
  auto m = monomials_of_degree(R->nvars(), d);
  std::sort(m.begin(), m.end(), [&](const Monomial& a, const Monomial& b) { return R->cmp(a, b) > 0; });
  return m;
}

}  // namespace

std::vector<Poly> forms_basis(const std::vector<Poly>& forms, int d) {
  RingPtr R = ring_of_polys(forms);
  if (!R) return {};
  auto monos = sorted_monos(R, d);
  Mat A(0, static_cast<int>(monos.size()));
  for (auto& f : forms)
    if (!f.is_zero()) A.append_row(coefficient_vector(f, monos));
  Mat B = row_basis(A, R->field());
  std::vector<Poly> out;
  for (int i = 0; i < B.rows(); ++i) out.push_back(form_from_vector(R, monos, B.row_vec(i)));
  return out;
}

std::vector<Poly> degree_part(const std::vector<Poly>& gens, int d) {
  RingPtr R = ring_of_polys(gens);
  if (!R || d < 0) return {};
  std::vector<Poly> prods;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    int e = d - g.degree();
    if (e < 0) continue;
    for (auto& m : monomials_of_degree(R->nvars(), e)) prods.push_back(g.mul_term(m, 1));
  }
  return forms_basis(prods, d);
}

Mat evaluation_matrix(const std::vector<Monomial>& monos, const std::vector<Point>& pts, const PrimeField& F) {
  Mat A(static_cast<int>(pts.size()), static_cast<int>(monos.size()));
  int maxe = 0;
  for (auto& m : monos) maxe = std::max<int>(maxe, m.deg);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    int n = static_cast<int>(p.size());
    std::vector<std::vector<u32>> pw(n, std::vector<u32>(maxe + 1, 1));
    for (int v = 0; v < n; ++v)
      for (int e = 1; e <= maxe; ++e) pw[v][e] = F.mul(pw[v][e - 1], p[v]);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      u32 val = 1;
      for (int v = 0; v < n && val; ++v)
        if (int e = monos[j].exp(v)) val = F.mul(val, pw[v][e]);
      A(static_cast<int>(i), static_cast<int>(j)) = val;
    }
  }
  return A;
}

std::vector<Poly> forms_through_points(const RingPtr& R, const std::vector<Point>& pts, int d) {
  auto monos = sorted_monos(R, d);
  Mat K = kernel(evaluation_matrix(monos, pts, R->field()), R->field());
  std::vector<Poly> out;
  for (int i = 0; i < K.rows(); ++i) out.push_back(form_from_vector(R, monos, K.row_vec(i)));
  return forms_basis(out, d);
}

long evaluation_rank(const RingPtr& R, const std::vector<Point>& pts, int d) {
  auto monos = sorted_monos(R, d);
  return rank(evaluation_matrix(monos, pts, R->field()), R->field());
}

Point random_point(int n, Rng& rng, const PrimeField& F) {
  Point p(n);
  do {
    for (auto& x : p) x = static_cast<u32>(rng.below(F.p()));
  } while (is_zero_point(p));
  return p;
}

Poly random_linear_form(const RingPtr& R, Rng& rng) {
  const PrimeField& F = R->field();
  std::vector<Term> t;
  for (auto& m : sorted_monos(R, 1)) t.push_back({m, static_cast<u32>(1 + rng.below(F.p() - 1))});
  return Poly(R, t);
}

Poly random_combination(const std::vector<Poly>& forms, Rng& rng) {
  RingPtr R = ring_of_polys(forms);
  if (!R) throw MathError("random_combination: no forms");
  const PrimeField& F = R->field();
  int D = 0;
  for (auto& f : forms)
    if (!f.is_zero()) D = std::max(D, f.degree());
  Poly h(R);
  for (auto& f : forms) {
    if (f.is_zero()) continue;
    Poly c = Poly::constant(R, static_cast<u32>(1 + rng.below(F.p() - 1)));
    for (int k = f.degree(); k < D; ++k) c = c * random_linear_form(R, rng);
    h += c * f;
  }
  return h;
}

std::vector<Poly> linear_forms_through(const RingPtr& R, const std::vector<Point>& pts) {
  return forms_through_points(R, pts, 1);
}

std::vector<Poly> pullback_linear(const std::vector<Poly>& forms, const Mat& E, const RingPtr& target) {
  int n = E.rows(), k = E.cols();
  std::vector<Poly> img;
  for (int i = 0; i < n; ++i) {
    std::vector<Term> t;
    for (int j = 0; j < k; ++j)
      if (E(i, j)) {
        Monomial m;
        m.set_exp(j, 1);
        t.push_back({m, E(i, j)});
      }
    img.push_back(Poly::from_terms(target, t));
  }
  std::vector<Poly> out;
  for (auto& f : forms) {
    if (f.ring()->nvars() != n) throw MathError("pullback_linear: dimension mismatch");
    out.push_back(f.substitute(img));
  }
  return out;
}

Mat linear_kernel_embedding(const std::vector<Poly>& linear_forms, int nvars) {
  const PrimeField& F = linear_forms.empty() ? PrimeField() : linear_forms[0].ring()->field();
  Mat A(0, nvars);
  for (auto& l : linear_forms) {
    if (l.is_zero()) continue;
    if (l.degree() != 1 || !l.is_homogeneous()) throw MathError("linear_kernel_embedding: not a linear form");
    std::vector<u32> row(nvars, 0);
    for (auto& t : l.terms())
      for (int i = 0; i < nvars; ++i)
        if (t.m.exp(i)) row[i] = t.c;
    A.append_row(row);
  }
  if (A.rows() == 0) return Mat::identity(nvars);
  return kernel(A, F).transpose();
}

// ---------------------------------------------------------------------------
// counting

namespace {

struct AffineSetup {
  RingPtr ring;
  std::vector<Poly> gens;
  int n;
};

AffineSetup affine_setup(const std::vector<Poly>& gens, const std::vector<Poly>& avoid, Rng& rng) {
  RingPtr R = ring_of_polys(gens, avoid);
  if (!R) throw MathError("count_points: no ring");
  int n = R->nvars();
  bool use_t = !nonzero(avoid).empty();
  RingPtr RA = extended_ring(R, use_t ? 1 : 0);
  auto id = identity_map(n);
  AffineSetup s{RA, {}, n};
  for (auto& f : gens)
    if (!f.is_zero()) s.gens.push_back(f.embed(RA, id));
  s.gens.push_back(random_linear_form(R, rng).embed(RA, id) - Poly::constant(RA, 1));
  if (use_t) {
    Poly h = random_combination(nonzero(avoid), rng).embed(RA, id);
    s.gens.push_back(Poly::constant(RA, 1) - Poly::var(RA, n) * h);
  }
  return s;
}

}  // namespace

long count_points(const std::vector<Poly>& gens, const std::vector<Poly>& avoid, Rng& rng) {
  auto s = affine_setup(gens, avoid, rng);
  auto G = buchberger(s.gens);
  if (G.is_unit()) return 0;
  if (!is_zero_dimensional(G)) throw MathError("count_points: scheme is not finite");
  return affine_length(G);
}

std::vector<Point> rational_points(const std::vector<Poly>& gens, const std::vector<Poly>& avoid, Rng& rng) {
  auto s = affine_setup(gens, avoid, rng);
  auto cl = decompose_zero_dim(s.gens, rng);
  std::vector<Point> out;
  for (auto& c : cl) {
    if (c.residue_degree != 1) continue;
    auto p = rational_point(c);
    p.resize(s.n);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// invariants

std::vector<Poly> random_section(const std::vector<Poly>& gens, int k, Rng& rng) {
  RingPtr R = ring_of_polys(gens);
  if (!R) return {};
  const PrimeField& F = R->field();
  int n = R->nvars();
  if (k >= n) throw MathError("random_section: too many hyperplanes");
  Mat E(n, n - k);
  for (int i = 0; i < n - k; ++i) E(i, i) = 1;
  for (int i = n - k; i < n; ++i)
    for (int j = 0; j < n - k; ++j) E(i, j) = static_cast<u32>(rng.below(F.p()));
  std::vector<std::string> names(R->names().begin(), R->names().begin() + (n - k));
  RingPtr Rk = PolyRing::make(F, names);
  return nonzero(pullback_linear(gens, E, Rk));
}

namespace {

long to_long(const BigRat& r, const char* what) {
  if (denominator(r) != 1) throw MathError(std::string(what) + ": non-integral value");
  return static_cast<long>(numerator(r));
}

}  // namespace

VarietyInvariants invariants(const ProjVariety& V, Rng& rng) {
  VarietyInvariants inv;
  const HilbertData& H = V.hilbert();
  if (H.empty()) throw MathError("invariants: empty variety");
  inv.dim = H.dim;
  inv.degree = static_cast<long>(H.degree);
  inv.chi = to_long(H.hp(0), "chi");
  if (inv.dim >= 1) {
    auto curve = random_section(V.gens(), inv.dim - 1, rng);
    RingPtr Rc = ring_of_polys(curve);
    HilbertData Hc = curve.empty() ? hsf::hilbert(GroebnerBasis(PolyRing::make(V.ring()->field(), 2), {}, true))
                                   : hsf::hilbert(curve);
    if (Hc.dim != 1) throw MathError("invariants: curve section has wrong dimension");
    inv.genus = 1 - to_long(Hc.hp(0), "genus");
  }
  return inv;
}

BigInt euler_char_twist(const ProjVariety& V, long t) {
  BigRat v = V.hilbert().hp(t);
  if (denominator(v) != 1) throw MathError("euler_char_twist: non-integral value");
  return numerator(v);
}

long graded_piece_dim(const std::vector<Poly>& gens, int d) {
  if (d < 0) throw MathError("graded_piece_dim: negative degree");
  RingPtr R = ring_of_polys(gens);
  if (!R) return 0;
  int n = R->nvars();
  auto G = nonzero(gens).empty() ? GroebnerBasis(R, {}, true) : buchberger(gens);
  HilbertData H = hsf::hilbert(G);
  BigInt total = binomial(BigInt(d + n - 1), n - 1);
  return static_cast<long>(total - H.hf(d));
}

long graded_piece_dim_relative(const std::vector<Poly>& I, const std::vector<Poly>& IV, int d) {
  return graded_piece_dim(I, d) - (nonzero(IV).empty() ? 0 : graded_piece_dim(IV, d));
}

long degree_by_slicing(const ProjVariety& V, Rng& rng) {
  int d = V.dim();
  if (d < 0) return 0;
  return count_points(random_section(V.gens(), d, rng), {}, rng);
}

// ---------------------------------------------------------------------------
// singular locus

namespace {

Poly det_poly(const std::vector<std::vector<Poly>>& M) {
  std::size_t n = M.size();
  if (n == 1) return M[0][0];
  if (n == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
  Poly acc(M[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      sub.push_back(row);
    }
    Poly t = M[0][j] * det_poly(sub);
    acc = (j % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

struct SpanRestriction {
  RingPtr ring;
  std::vector<Poly> gens;
};

// restrict to the linear span (drop linear forms of the ideal)
SpanRestriction restrict_to_span(const std::vector<Poly>& gens) {
  RingPtr R = ring_of_polys(gens);
  auto lin = degree_part(gens, 1);
  if (lin.empty()) return {R, nonzero(gens)};
  Mat E = linear_kernel_embedding(lin, R->nvars());
  RingPtr Rk = PolyRing::make(R->field(), E.cols(), "y");
  auto pulled = nonzero(pullback_linear(gens, E, Rk));
  return {Rk, pulled.empty() ? pulled : buchberger(pulled).gens()};
}

// image of a generic linear projection to P^{m-1} (graph elimination)
std::vector<Poly> generic_projection(const std::vector<Poly>& gens, const RingPtr& R, int m, Rng& rng) {
  const PrimeField& F = R->field();
  int n = R->nvars();
  auto names = R->names();
  for (int i = 0; i < m; ++i) names.push_back("z" + std::to_string(i) + "_");
  RingPtr RG = PolyRing::make(F, names);
  auto id = identity_map(n);
  std::vector<Poly> g;
  for (auto& f : gens) g.push_back(f.embed(RG, id));
  for (int i = 0; i < m; ++i) {
    Poly l = random_linear_form(R, rng).embed(RG, id);
    g.push_back(Poly::var(RG, n + i) - l);
  }
  std::vector<int> el;
  for (int i = 0; i < n; ++i) el.push_back(i);
  auto e = eliminate(g, el);
  RingPtr Rz = PolyRing::make(F, m, "z");
  std::vector<Poly> img(n + m, Poly(Rz));
  for (int i = 0; i < m; ++i) img[n + i] = Poly::var(Rz, i);
  std::vector<Poly> out;
  for (auto& f : e) out.push_back(f.substitute(img));
  return out;
}

}  // namespace

SingularLocus singular_delta(const ProjVariety& S, Rng& rng) {
  if (S.dim() != 2) throw MathError("singular_delta: not a surface");
  auto sr = restrict_to_span(S.gb().gens());
  RingPtr R = sr.ring;
  std::vector<Poly> gens = sr.gens;
  int n = R->nvars();
  int c = n - 3;
  if (c > 3) {
    gens = generic_projection(gens, R, 6, rng);
    R = ring_of_polys(gens);
    n = 6;
    c = 3;
  }
  const PrimeField& F = R->field();
  SingularLocus res;
  if (c <= 0) return res;
  int rows = c + 2, cols = std::min(n, c + 2);
  // rows: random combinations of the generators, homogenized by random forms
  std::vector<Poly> f;
  for (int a = 0; a < rows; ++a) f.push_back(random_combination(gens, rng));
  Mat B(n, cols);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < cols; ++j) B(i, j) = static_cast<u32>(rng.below(F.p()));
  std::vector<std::vector<Poly>> M(rows, std::vector<Poly>(cols, Poly(R)));
  for (int a = 0; a < rows; ++a) {
    std::vector<Poly> grad;
    for (int i = 0; i < n; ++i) grad.push_back(f[a].derivative(i));
    for (int b = 0; b < cols; ++b) {
      Poly s(R);
      for (int i = 0; i < n; ++i)
        if (B(i, b)) s += grad[i].scaled(B(i, b));
      M[a][b] = s;
    }
  }
  std::vector<std::vector<int>> rs, cs;
  std::vector<int> cur;
  subsets(rows, c, 0, cur, rs);
  subsets(cols, c, 0, cur, cs);
  std::vector<Poly> ideal = gens;
  for (auto& r : rs)
    for (auto& cc : cs) {
      std::vector<std::vector<Poly>> sub;
      for (int i : r) {
        std::vector<Poly> row;
        for (int j : cc) row.push_back(M[i][j]);
        sub.push_back(row);
      }
      Poly d = det_poly(sub);
      if (!d.is_zero()) ideal.push_back(d);
    }
  try {
    res.delta = count_points(ideal, {}, rng);
  } catch (const MathError&) {
    res.finite = false;
  }
  return res;
}

// ---------------------------------------------------------------------------
// K^2 through Segre classes

ChernData chern_k2(const ProjVariety& S, Rng& rng) {
  if (S.dim() != 2) throw MathError("chern_k2: not a surface");
  auto sr = restrict_to_span(S.gb().gens());
  RingPtr R = sr.ring;
  int N = R->nvars() - 1;
  ProjVariety T(R, sr.gens);
  const HilbertData& HT = T.hilbert();
  if (N == 2) {
    // S is a plane
    ChernData plane;
    plane.c2 = 3;
    plane.k2 = 9;
    plane.projective_degrees = {1, 0, 0};
    return plane;
  }
  // smallest degree k whose forms cut S scheme-theoretically
  int maxdeg = 0;
  for (auto& g : T.gb().gens()) maxdeg = std::max(maxdeg, g.degree());
  int k = maxdeg;
  std::vector<Poly> forms;
  for (int d = 1; d <= maxdeg; ++d) {
    auto part = degree_part(T.gb().gens(), d);
    if (part.empty()) continue;
    auto Hd = hsf::hilbert(part);
    if (Hd.dim == HT.dim && Hd.hilbert_polynomial == HT.hilbert_polynomial) {
      k = d;
      forms = part;
      break;
    }
  }
  if (forms.empty()) forms = degree_part(T.gb().gens(), k);
  int M = static_cast<int>(forms.size()) - 1;
  int codim = N - 2;
  ChernData out;
  out.generator_degree = k;
  std::vector<long> g(N + 1, 0);
  g[0] = 1;
  const PrimeField& F = R->field();
  for (int i = 1; i <= N; ++i) {
    if (i > M) {
      g[i] = 0;
    } else if (i < codim) {
      long v = 1;
      for (int j = 0; j < i; ++j) v *= k;
      g[i] = v;
    } else {
      Mat E(N + 1, i + 1);
      for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= i; ++b) E(a, b) = static_cast<u32>(rng.below(F.p()));
      RingPtr Ry = PolyRing::make(F, i + 1, "y");
      auto pf = pullback_linear(forms, E, Ry);
      std::vector<Poly> combos;
      for (int j = 0; j < i; ++j) combos.push_back(random_combination(pf, rng));
      g[i] = count_points(combos, pf, rng);
    }
  }
  out.projective_degrees = g;
  // s = 1 - sum g_i H^i (1+kH)^{-i-1}, integer series mod H^{N+1}
  std::vector<BigInt> s(N + 1, 0);
  s[0] = 1;
  for (int i = 0; i <= N; ++i) {
    BigInt kp = 1;
    for (int j = 0; i + j <= N; ++j) {
      BigInt term = BigInt(g[i]) * binomial(BigInt(i + j), j) * kp;
      if (j % 2) term = -term;
      s[i + j] -= term;
      kp *= k;
    }
  }
  std::vector<BigInt> c(N + 1, 0);
  for (int a = 0; a <= N; ++a)
    for (int b = 0; a + b <= N; ++b) c[a + b] += binomial(BigInt(N + 1), a) * s[b];
  if (c[N - 2] != HT.degree) throw MathError("chern_k2: Segre class inconsistent with the degree");
  out.c2 = static_cast<long>(c[N]);
  long chi = to_long(HT.hp(0), "chi");
  out.k2 = 12 * chi - out.c2;
  return out;
}

// ---------------------------------------------------------------------------
// multiplicity systems via jets

GermFn projective_space_germs(int nvars, const PrimeField& F) {
  return [nvars, F](const Point& s, int order, Rng& rng) {
    Germ g(nvars, std::vector<u32>(order, 0));
    for (int i = 0; i < nvars; ++i) {
      g[i][0] = s[i];
      for (int k = 1; k < order; ++k) g[i][k] = static_cast<u32>(rng.below(F.p()));
    }
    return g;
  };
}

namespace {

std::vector<u32> series_mul(const std::vector<u32>& a, const std::vector<u32>& b, int order, const PrimeField& F) {
  std::vector<u32> c(order, 0);
  for (int i = 0; i < order; ++i)
    if (a[i])
      for (int j = 0; i + j < order; ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  return c;
}

}  // namespace

std::vector<Poly> multiplicity_system(const ProjVariety& S, const std::vector<Poly>& ambient_ideal,
                                      const GermFn& germs, int e, int m, Rng& rng) {
  if (e < 1 || m < 1) throw MathError("multiplicity_system: e, m >= 1 required");
  RingPtr R = S.ring();
  const PrimeField& F = R->field();
  int n = R->nvars();
  auto monos = sorted_monos(R, m);
  int N = static_cast<int>(monos.size());
  long germs_per_point = binomial_l(n - 1 + e - 1, e - 1) + 1;
  if (e == 1) germs_per_point = 1;
  Mat C(0, N);
  long last_rank = -1;
  int stable = 0;
  int points = 0;
  while (stable < 3) {
    Point s = S.sample(rng);
    ++points;
    for (long gi = 0; gi < germs_per_point; ++gi) {
      Germ g = germs(s, e, rng);
      // powers of each coordinate series
      std::vector<std::vector<std::vector<u32>>> pw(n);
      for (int v = 0; v < n; ++v) {
        std::vector<u32> one(e, 0);
        one[0] = 1;
        pw[v].push_back(one);
      }
      std::vector<std::vector<u32>> rows(e, std::vector<u32>(N, 0));
      for (int j = 0; j < N; ++j) {
        std::vector<u32> val(e, 0);
        val[0] = 1;
        for (int v = 0; v < n; ++v) {
          int ex = monos[j].exp(v);
          if (!ex) continue;
          while (static_cast<int>(pw[v].size()) <= ex) pw[v].push_back(series_mul(pw[v].back(), g[v], e, F));
          val = series_mul(val, pw[v][ex], e, F);
        }
        for (int k = 0; k < e; ++k) rows[k][j] = val[k];
      }
      for (auto& r : rows) C.append_row(r);
    }
    if (points % 4 == 0 || C.rows() >= N) {
      C = row_basis(C, F);
      long rk = C.rows();
      if (rk == last_rank) ++stable;
      else stable = 0;
      last_rank = rk;
      if (rk == N) break;
    }
    if (points > 20 * N + 100) throw MathError("multiplicity_system: rank did not stabilize");
  }
  Mat K = kernel(C, F);
  // reduce modulo the ambient ideal's degree-m part
  auto amb = nonzero(ambient_ideal).empty() ? std::vector<Poly>{} : degree_part(ambient_ideal, m);
  Mat A(0, N);
  for (auto& f : amb) A.append_row(coefficient_vector(f, monos));
  auto piv = rref(A, F);
  Mat Red(0, N);
  for (int i = 0; i < K.rows(); ++i) {
    std::vector<u32> v = K.row_vec(i);
    for (std::size_t r = 0; r < piv.size(); ++r) {
      u32 c = v[piv[r]];
      if (!c) continue;
      for (int j = 0; j < N; ++j) v[j] = F.sub(v[j], F.mul(c, A(static_cast<int>(r), j)));
    }
    Red.append_row(v);
  }
  Mat B = row_basis(Red, F);
  std::vector<Poly> out;
  for (int i = 0; i < B.rows(); ++i) out.push_back(form_from_vector(R, monos, B.row_vec(i)));
  return out;
}

// ---------------------------------------------------------------------------

Point scale_point(const Point& p, u32 c, const PrimeField& F) {
  Point q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = F.mul(p[i], c);
  return q;
}

bool is_zero_point(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](u32 x) { return x == 0; });
}

Point eval_forms(const std::vector<Poly>& forms, const Point& p) {
  Point out;
  out.reserve(forms.size());
  for (auto& f : forms) out.push_back(f.eval(p));
  return out;
}

}  // namespace hsf
