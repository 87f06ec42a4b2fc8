#include <algorithm>
#include <map>
#include <sstream>

#include "hsf/fourfolds.hpp"
#include "hsf/zerodim.hpp"

namespace hsf {

namespace {

std::vector<Poly> ambient_part(const ProjVariety& V, int d) {
  return V.gens().empty() ? std::vector<Poly>{} : degree_part(V.gens(), d);
}

// the gradient of g at z, as a linear form in the same ring
Poly polar_form(const Poly& g, const Point& z) {
  RingPtr R = g.ring();
  Poly l(R);
  for (int i = 0; i < R->nvars(); ++i) {
    u32 c = g.derivative(i).eval(z);
    if (c) l += Poly::var(R, i).scaled(c);
  }
  return l;
}

Point random_point_on(const RationalMap& phi, Rng& rng, Point* src = nullptr) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Point p = phi.source().sample(rng);
    Point q = phi(p);
    if (!is_zero_point(q)) {
      if (src) *src = p;
      return q;
    }
  }
  throw RetryExhausted("sampled points all lie in the base locus");
}

// homogenize f with respect to the linear form L (f is affine on L = 1)
Poly homogenize_by(const Poly& f, const Poly& L) {
  int D = f.degree();
  RingPtr R = f.ring();
  Poly out(R);
  for (int k = 0; k <= D; ++k) {
    Poly part = f.homogeneous_part(k);
    if (part.is_zero()) continue;
    out += part * L.pow(D - k);
  }
  return out;
}

Poly linear_from_row(const RingPtr& R, const std::vector<u32>& row) {
  Poly l(R);
  for (int i = 0; i < R->nvars(); ++i)
    if (row[i]) l += Poly::var(R, i).scaled(row[i]);
  return l;
}

const char* ordinal_curve(int e) {
  switch (e) {
    case 1: return "lines";
    case 2: return "conics";
    case 3: return "cubics";
    case 4: return "quartics";
    case 5: return "quintics";
  }
  return "curves";
}

}  // namespace

RationalMap phi_map(const HodgeSpecialFourfold& F) {
  int r = F.r();
  auto forms = forms_modulo(degree_part(F.S.gb().gens(), r), ambient_part(F.V, r), r);
  return map_from_system(F.V, forms);
}

long direct_secant_line_count(const HodgeSpecialFourfold& F, Rng& rng, Point* witness) {
  if (F.kind != FourfoldKind::GM)
    throw Unimplemented("direct secant count: only the GM case (1-secant lines in Y) is implemented");
  for (int attempt = 0; attempt < 5; ++attempt) {
    Point p = F.V.sample(rng);
    bool on_S = true;
    for (auto& g : F.S.gens()) on_S = on_S && g.eval(p) == 0;
    if (on_S) continue;
    // lines of Y through p meet S exactly at the points of S in T_pY
    std::vector<Poly> gens = F.S.gens();
    for (auto& q : F.V.gens()) {
      Poly l = polar_form(q, p);
      if (!l.is_zero()) gens.push_back(l);
    }
    if (witness) *witness = p;
    return count_points(gens, {}, rng);
  }
  throw RetryExhausted("direct secant count: sampled points lie on S");
}

CongruenceReport detect_congruence(const HodgeSpecialFourfold& F, Rng& rng, int e_max, int z_degree) {
  CongruenceReport rep;
  rep.seed = global_seed();
  rep.method = "lines on Z";
  rep.e_counts.assign(e_max, 0);
  int r = F.r();
  RationalMap phi = phi_map(F);
  const PrimeField& K = F.S.ring()->field();
  auto fd = generic_fiber_degree(phi, rng);
  if (fd.degree != 1)
    throw MathError("detect_congruence: phi is not birational (fiber degree " + std::to_string(fd.degree) + ")");
  RingPtr Ry = phi.target_ring();
  int N1 = Ry->nvars();

  // Z through interpolation; only forms of degree <= z_degree are used
  long need = 0;
  for (int d = 1; d <= z_degree; ++d) need = std::max<long>(need, static_cast<long>(monomials_of_degree(N1, d).size()));
  need += 30;
  std::vector<Point> pts;
  while (static_cast<long>(pts.size()) < need) pts.push_back(random_point_on(phi, rng));
  std::vector<Poly> Z;
  for (int d = 1; d <= z_degree; ++d) {
    auto f = forms_through_points(Ry, pts, d);
    Z.insert(Z.end(), f.begin(), f.end());
  }

  Point p;
  Point z = random_point_on(phi, rng, &p);
  rep.witness = p;

  // T_z Z and a basis with z first
  Mat Gv(0, N1);
  for (auto& g : Z) {
    std::vector<u32> grad(N1);
    for (int i = 0; i < N1; ++i) grad[i] = g.derivative(i).eval(z);
    Gv.append_row(grad);
  }
  Gv = row_basis(Gv, K);
  Mat T = Gv.rows() ? kernel(Gv, K) : Mat::identity(N1);
  int m1 = T.rows();
  if (m1 <= 1) {
    rep.lines_total = 0;
    return rep;
  }
  Mat E(N1, 0);
  {
    Mat cols(0, N1);
    cols.append_row(z);
    for (int i = 0; i < T.rows() && cols.rows() < m1; ++i) {
      Mat trial = cols;
      trial.append_row(T.row_vec(i));
      if (rank(trial, K) > cols.rows()) cols = trial;
    }
    E = cols.transpose();
  }
  RingPtr Rt = PolyRing::make(K, m1, "t");
  RingPtr Ru = PolyRing::make(K, m1 - 1, "u");
  std::vector<Poly> L;
  for (auto& g : pullback_linear(Z, E, Rt)) {
    std::map<int, std::vector<Term>> by_power;
    for (auto& t : g.terms()) {
      auto ex = t.m.exps(m1);
      int j = ex[0];
      std::vector<int> rest(ex.begin() + 1, ex.end());
      by_power[j].push_back({Monomial::from_exps(rest), t.c});
    }
    for (auto& [j, terms] : by_power) {
      Poly c = Poly::from_terms(Ru, terms);
      if (!c.is_zero()) L.push_back(c);
    }
  }
  ProjVariety lines(Ru, L);
  if (lines.empty()) {
    rep.lines_total = 0;
    return rep;
  }
  if (lines.dim() != 0) throw MathError("detect_congruence: the scheme of lines through the point is not finite");
  rep.lines_total = lines.degree();

  // decompose on the affine chart H = 1
  Poly H = random_linear_form(Ru, rng);
  std::vector<Poly> aff = lines.gb().gens();
  aff.push_back(H - Poly::constant(Ru, 1));
  auto clusters = decompose_zero_dim(aff, rng);

  // u-coordinates as linear forms in y: rows 1.. of a left inverse of E
  Mat Rm(m1, N1);
  for (int i = 0; i < m1; ++i)
    for (int j = 0; j < N1; ++j) Rm(i, j) = static_cast<u32>(rng.below(K.p()));
  auto inv = inverse(mat_mul(Rm, E, K), K);
  if (!inv) throw RetryExhausted("detect_congruence: degenerate chart");
  Mat Linv = mat_mul(*inv, Rm, K);
  std::vector<Poly> u_of_y(m1 - 1, Poly(Ry));
  for (int i = 1; i < m1; ++i) u_of_y[i - 1] = linear_from_row(Ry, Linv.row_vec(i));
  std::vector<Poly> Tperp;
  for (int i = 0; i < Gv.rows(); ++i) Tperp.push_back(linear_from_row(Ry, Gv.row_vec(i)));

  Poly sat = random_combination(phi.forms(), rng);
  for (auto& c : clusters) {
    LineCluster lc;
    lc.residue_degree = c.residue_degree;
    lc.multiplicity = c.multiplicity;
    std::vector<Poly> cone = Tperp;
    for (auto& g : c.ideal.gens()) {
      Poly h = homogenize_by(g, H);
      if (!h.is_zero()) cone.push_back(h.substitute(u_of_y));
    }
    std::vector<Poly> J = F.V.gens();
    for (auto& g : cone) {
      Poly pb = g.substitute(phi.forms());
      if (!pb.is_zero()) J.push_back(pb);
    }
    auto Js = ideal_saturate(J, {sat});
    ProjVariety C(F.S.ring(), Js);
    if (C.dim() != 1) {
      lc.note = "preimage is not a curve (dim " + std::to_string(C.dim()) + ")";
      rep.clusters.push_back(lc);
      continue;
    }
    lc.curve_degree = C.degree();
    std::vector<Poly> meet = Js;
    meet.insert(meet.end(), F.S.gens().begin(), F.S.gens().end());
    ProjVariety CS(F.S.ring(), meet);
    lc.secancy = CS.empty() ? 0 : (CS.dim() == 0 ? CS.degree() : -1);
    int k = c.residue_degree;
    if (lc.curve_degree % k == 0) {
      lc.e = static_cast<int>(lc.curve_degree / k);
      lc.consistent = lc.secancy == static_cast<long>(k) * (r * lc.e - 1) && c.multiplicity == 1;
    }
    if (!lc.consistent) lc.note = "secancy differs from r*e-1";
    if (lc.consistent && lc.e >= 1 && lc.e <= e_max) rep.e_counts[lc.e - 1] += k;
    rep.clusters.push_back(lc);
  }
  for (int e = 1; e <= e_max; ++e)
    if (rep.e_counts[e - 1] == 1) {
      rep.detected_e = e;
      break;
    }
  return rep;
}

std::vector<std::string> congruence_lines(const CongruenceReport& c, FourfoldKind kind) {
  int r = kind == FourfoldKind::Cubic ? 3 : 2;
  std::vector<std::string> out;
  out.push_back("number lines contained in the image and passing through a general point: " +
                std::to_string(c.lines_total));
  for (std::size_t i = 0; i < c.e_counts.size(); ++i) {
    if (!c.e_counts[i]) continue;
    int e = static_cast<int>(i) + 1;
    out.push_back("number " + std::to_string(r * e - 1) + "-secant " + ordinal_curve(e) + " = " +
                  std::to_string(c.e_counts[i]));
  }
  for (auto& cl : c.clusters)
    if (!cl.consistent)
      out.push_back("unclassified cluster of " + std::to_string(cl.residue_degree) + " line(s): " + cl.note);
  if (c.detected_e) {
    int e = *c.detected_e;
    out.push_back(std::string("Congruence of ") + std::to_string(r * e - 1) + "-secant " + ordinal_curve(e) +
                  " to surface in " + (kind == FourfoldKind::GM ? "a Del Pezzo fivefold" : "PP^5"));
  } else {
    out.push_back("no congruence detected");
  }
  return out;
}

nlohmann::json to_json(const CongruenceReport& c) {
  nlohmann::json j;
  j["e_counts"] = c.e_counts;
  j["detected_e"] = c.detected_e ? nlohmann::json(*c.detected_e) : nlohmann::json(nullptr);
  j["lines_total"] = c.lines_total;
  j["method"] = c.method;
  j["witness"] = c.witness;
  j["seed"] = c.seed;
  nlohmann::json cl = nlohmann::json::array();
  for (auto& x : c.clusters)
    cl.push_back({{"residue_degree", x.residue_degree},
                  {"multiplicity", x.multiplicity},
                  {"curve_degree", x.curve_degree},
                  {"secancy", x.secancy},
                  {"e", x.e},
                  {"consistent", x.consistent},
                  {"note", x.note}});
  j["clusters"] = cl;
  return j;
}

// ---------------------------------------------------------------------------
// Fano map

FanoRecognition recognize_prime_fano(const ProjVariety& W) {
  FanoRecognition f;
  f.dim = W.dim();
  f.degree = W.degree();
  f.ambient = W.ambient_dim();
  if (f.dim == 4 && f.degree == 1 && f.ambient == 4) {
    f.index = 5;
    f.name = "PP^4";
  } else if (f.dim == 4 && f.degree == 2 && f.ambient == 5) {
    f.index = 4;
    f.name = "quadric fourfold in PP^5";
  } else if (f.dim == 4 && f.degree == 5 && f.ambient == 7) {
    f.index = 3;
    f.name = "del Pezzo fourfold G(1,4) cap PP^7";
  } else {
    f.name = "unrecognized";
  }
  return f;
}

FanoMapReport fano_map(const HodgeSpecialFourfold& F, int e, Rng& rng, bool check_X) {
  if (e < 1) throw InputError("fano_map: e >= 1 required");
  int r = F.r();
  int m = r * e - 1;
  FanoMapReport rep;
  rep.e = e;
  std::vector<Poly> forms;
  if (e == 1) forms = forms_modulo(degree_part(F.S.gb().gens(), m), ambient_part(F.V, m), m);
  else forms = multiplicity_system(F.S, F.V.gens(), F.V_germs, e, m, rng);
  if (forms.size() < 2) throw MathError("fano_map: the linear system is too small");
  rep.mu = map_from_system(F.V, forms);
  std::ostringstream os;
  os << "-- computing the Fano map mu from "
     << (F.kind == FourfoldKind::GM ? "the fivefold in PP^8" : std::string("PP^5")) << " to PP^"
     << forms.size() - 1 << " defined by the hypersurfaces of degree " << m << " with points of multiplicity " << e
     << " along the surface S of degree " << F.inv.degree << " and genus " << F.inv.genus;
  rep.progress = os.str();
  auto Wg = image_ideal_by_interpolation(rep.mu, 2, rng);
  rep.W = ProjVariety(rep.mu.target_ring(), Wg);
  rep.kind = recognize_prime_fano(rep.W);
  if (rep.kind.index == 0)
    throw MathError("fano_map: image is not a recognized prime Fano fourfold (dim " + std::to_string(rep.kind.dim) +
                    ", degree " + std::to_string(rep.kind.degree) + ", in PP^" + std::to_string(rep.kind.ambient) +
                    ")");
  // fiber of mu through a general point of V, closure away from S
  Point p;
  Point q = random_point_on(rep.mu, rng, &p);
  std::vector<Poly> J = F.V.gens();
  for (auto& l : linear_forms_through(rep.mu.target_ring(), {q})) {
    Poly g = l.substitute(forms);
    if (!g.is_zero()) J.push_back(g);
  }
  ProjVariety fib(F.S.ring(), ideal_saturate(J, {random_combination(forms, rng)}));
  rep.fiber_curve_degree = fib.dim() == 1 ? fib.degree() : -1;
  if (check_X) {
    RationalMap muX = map_from_system(F.X, forms);
    rep.fiber_degree_X = generic_fiber_degree(muX, rng).degree;
  }
  return rep;
}

}  // namespace hsf
