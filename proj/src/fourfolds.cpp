#include "hsf/fourfolds.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hsf/zerodim.hpp"

namespace hsf {

std::string k2_source_name(K2Source s) {
  switch (s) {
    case K2Source::Computed: return "computed";
    case K2Source::PlaneModel: return "plane-model";
    case K2Source::User: return "user";
    case K2Source::Missing: return "missing";
  }
  return "missing";
}

long self_intersection(FourfoldKind kind, const SurfaceInvariants& s) {
  if (!s.K2) throw InputError("self_intersection: K^2 is not known for this surface");
  long K2 = *s.K2;
  if (kind == FourfoldKind::Cubic)
    return 3 * s.degree + 6 * s.genus - 12 * s.chi + 2 * K2 + 2 * s.delta - 6;
  if (!s.cls) throw InputError("self_intersection: class in G(1,4) missing");
  return s.cls->a + 2 * s.cls->b + 4 * s.genus - 12 * s.chi + 2 * K2 + 2 * s.delta - 4;
}

DiscriminantReport discriminant(FourfoldKind kind, const SurfaceInvariants& s) {
  DiscriminantReport r;
  r.self_intersection = self_intersection(kind, s);
  long S2 = r.self_intersection;
  if (kind == FourfoldKind::Cubic) {
    r.d = 3 * S2 - s.degree * s.degree;
    return r;
  }
  long a = s.cls->a, b = s.cls->b;
  r.d = 4 * S2 - 2 * a * a + 4 * a * b - 4 * b * b;
  if (((r.d % 8) + 8) % 8 == 2) {
    bool p1 = (a + b) % 2 == 0, p2 = b % 2 == 0;
    if (p1 == p2) r.consistent = false;
    else r.label = p1 ? "'" : "''";
  }
  return r;
}

// ---------------------------------------------------------------------------
// generators

namespace {

std::vector<Poly> nonzero_polys(const std::vector<Poly>& v) {
  std::vector<Poly> out;
  for (auto& f : v)
    if (!f.is_zero()) out.push_back(f);
  return out;
}

RingPtr ring_from(const std::vector<Poly>& a) {
  for (auto& f : a)
    if (f.ring()) return f.ring();
  return nullptr;
}

std::vector<Monomial> monos_in_order(const RingPtr& R, int d) {
  auto m = monomials_of_degree(R->nvars(), d);
  std::sort(m.begin(), m.end(), [&](const Monomial& a, const Monomial& b) { return R->cmp(a, b) > 0; });
  return m;
}

}  // namespace

std::vector<Poly> forms_modulo(const std::vector<Poly>& forms, const std::vector<Poly>& base, int d) {
  RingPtr R = ring_from(forms);
  if (!R) return {};
  const PrimeField& F = R->field();
  auto monos = monos_in_order(R, d);
  Mat A(0, static_cast<int>(monos.size()));
  for (auto& b : base)
    if (!b.is_zero() && b.degree() == d) A.append_row(coefficient_vector(b, monos));
  A = row_basis(A, F);
  int r0 = A.rows();
  std::vector<Poly> out;
  for (auto& f : forms) {
    Mat B = A;
    B.append_row(coefficient_vector(f, monos));
    B = row_basis(B, F);
    if (B.rows() > r0) {
      A = B;
      r0 = B.rows();
      out.push_back(f);
    }
  }
  return out;
}

std::vector<Poly> extra_generators(const std::vector<Poly>& gb, const std::vector<Poly>& base) {
  auto G = nonzero_polys(gb);
  RingPtr R = ring_from(G);
  if (!R) return {};
  const PrimeField& F = R->field();
  int n = R->nvars();
  int maxdeg = 0;
  for (auto& g : G) maxdeg = std::max(maxdeg, g.degree());
  std::vector<Poly> cur = nonzero_polys(base);
  std::vector<Poly> extra;
  for (int d = 1; d <= maxdeg; ++d) {
    auto Id = degree_part(G, d);
    if (Id.empty()) continue;
    auto monos = monos_in_order(R, d);
    Mat A(0, static_cast<int>(monos.size()));
    for (auto& g : cur) {
      int k = d - g.degree();
      if (k < 0) continue;
      for (auto& m : monomials_of_degree(n, k)) A.append_row(coefficient_vector(g.mul_term(m, 1), monos));
    }
    A = row_basis(A, F);
    int r0 = A.rows();
    for (auto& f : Id) {
      Mat B = A;
      B.append_row(coefficient_vector(f, monos));
      B = row_basis(B, F);
      if (B.rows() > r0) {
        A = std::move(B);
        r0 = A.rows();
        extra.push_back(f);
        cur.push_back(f);
      }
    }
  }
  return extra;
}

std::vector<int> minimal_generator_degrees(const std::vector<Poly>& gb) {
  std::vector<int> out;
  for (auto& f : extra_generators(gb, {})) out.push_back(f.degree());
  return out;
}

// ---------------------------------------------------------------------------
// smoothness spot check

namespace {

Poly det_of(const std::vector<std::vector<Poly>>& M) {
  int n = static_cast<int>(M.size());
  if (n == 1) return M[0][0];
  RingPtr R = M[0][0].ring();
  Poly acc(R);
  for (int j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (int i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (int k = 0; k < n; ++k)
        if (k != j) row.push_back(M[i][k]);
      sub.push_back(row);
    }
    Poly t = M[0][j] * det_of(sub);
    acc = (j % 2) ? acc - t : acc + t;
  }
  return acc;
}

void choose(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Poly> maximal_minors(const std::vector<std::vector<Poly>>& J, int c) {
  int rows = static_cast<int>(J.size()), cols = static_cast<int>(J[0].size());
  std::vector<std::vector<int>> rs, cs;
  std::vector<int> cur;
  choose(rows, c, 0, cur, rs);
  choose(cols, c, 0, cur, cs);
  std::vector<Poly> out;
  for (auto& r : rs)
    for (auto& cc : cs) {
      std::vector<std::vector<Poly>> sub;
      for (int i : r) {
        std::vector<Poly> row;
        for (int j : cc) row.push_back(J[i][j]);
        sub.push_back(row);
      }
      Poly d = det_of(sub);
      if (!d.is_zero()) out.push_back(d);
    }
  return out;
}

}  // namespace

bool spot_check_smooth(const std::vector<Poly>& gens0, int codim, int slices, Rng& rng) {
  auto gens = slices > 0 ? random_section(gens0, slices, rng) : nonzero_polys(gens0);
  gens = nonzero_polys(gens);
  if (gens.empty()) return true;
  RingPtr R = gens[0].ring();
  const PrimeField& F = R->field();
  int n = R->nvars();
  int m = static_cast<int>(gens.size());
  std::vector<std::vector<Poly>> J(m, std::vector<Poly>(n, Poly(R)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) J[i][j] = gens[i].derivative(j);
  std::vector<Poly> ideal = gens;
  if (m == codim) {
    auto mm = maximal_minors(J, codim);
    ideal.insert(ideal.end(), mm.begin(), mm.end());
  } else {
    // two random sets of c combinations of the generators, lifted to a common
    // degree; their degeneracy loci away from Sing(X) are disjoint in general
    int top = 0;
    for (auto& g : gens) top = std::max(top, g.degree());
    for (int k = 0; k < 2; ++k) {
      std::vector<std::vector<Poly>> AJ;
      for (int a = 0; a < codim; ++a) {
        Poly f(R);
        for (auto& g : gens) {
          Poly lift = g.scaled(static_cast<u32>(rng.below(F.p())));
          for (int d = g.degree(); d < top; ++d) lift = lift * random_linear_form(R, rng);
          f += lift;
        }
        std::vector<Poly> row;
        for (int j = 0; j < n; ++j) row.push_back(f.derivative(j));
        AJ.push_back(row);
      }
      auto mm = maximal_minors(AJ, codim);
      ideal.insert(ideal.end(), mm.begin(), mm.end());
    }
  }
  return ProjVariety(R, ideal).empty();
}

// ---------------------------------------------------------------------------
// construction

std::vector<std::string> named_fourfold_surfaces(FourfoldKind kind) {
  if (kind == FourfoldKind::GM) return named_surface_list();
  return {"quintic-del-pezzo", "c38-surface"};
}

HodgeSpecialFourfold special_fourfold_from_surface(FourfoldKind kind, std::optional<DelPezzoFivefold> Y,
                                                   const ProjVariety& S, const std::string& source, Rng& rng,
                                                   const FourfoldOptions& opt, std::optional<long> model_K2) {
  HodgeSpecialFourfold F;
  F.kind = kind;
  F.source = source;
  F.seed = global_seed();
  const PrimeField& K = S.ring()->field();
  if (kind == FourfoldKind::GM) {
    if (!Y) throw InputError("GM fourfold needs its del Pezzo fivefold");
    F.Y = Y;
    F.V = Y->Y;
    F.V_germs = Y->germs();
  } else {
    if (S.ring()->nvars() != 6) throw InputError("cubic fourfold: surface must lie in P^5");
    F.V = ProjVariety(S.ring(), {});
    F.V_germs = projective_space_germs(6, K);
  }
  if (S.dim() != 2) throw MathError("the special variety is not a surface");
  for (auto& g : F.V.gens())
    if (!ideal_contains(S.gb(), g)) throw MathError("surface is not contained in the ambient fivefold");
  F.S = S;
  int r = F.r();
  auto Ir = degree_part(S.gb().gens(), r);
  auto Vr = F.V.gens().empty() ? std::vector<Poly>{} : degree_part(F.V.gens(), r);
  auto beyond = forms_modulo(Ir, Vr, r);
  if (beyond.empty()) throw MathError("no hypersurface of degree " + std::to_string(r) + " contains S");
  int n = S.ring()->nvars();
  int codimX = n - 1 - 4;
  bool found = false;
  for (int attempt = 0; attempt < std::max(1, opt.smooth_retries); ++attempt) {
    Poly q = random_combination(beyond, rng);
    if (q.is_zero()) continue;
    std::vector<Poly> xg = F.V.gens();
    xg.push_back(q);
    ProjVariety X(S.ring(), xg);
    if (X.dim() != 4) continue;
    if (!spot_check_smooth(xg, codimX, opt.thorough ? 0 : 3, rng)) continue;
    F.X = X;
    F.X_form = q;
    found = true;
    break;
  }
  if (!found) throw RetryExhausted("no smooth fourfold through S found after retries");
  F.X_spot_checked = true;

  auto vi = invariants(S, rng);
  F.inv.degree = vi.degree;
  F.inv.genus = vi.genus;
  F.inv.chi = vi.chi;
  if (opt.compute_delta) {
    auto sl = singular_delta(S, rng);
    if (!sl.finite) throw MathError("singular locus of S is not finite");
    F.inv.delta = sl.delta;
    F.smooth_surface = sl.delta == 0;
  }
  if (F.smooth_surface) {
    F.inv.K2 = chern_k2(S, rng).k2;
    F.inv.k2_source = K2Source::Computed;
  } else if (model_K2) {
    F.inv.K2 = model_K2;
    F.inv.k2_source = K2Source::PlaneModel;
  } else if (opt.user_K2) {
    F.inv.K2 = opt.user_K2;
    F.inv.k2_source = K2Source::User;
  }
  if (kind == FourfoldKind::GM) F.inv.cls = class_in_g14(S, Y->E, rng);
  F.cut_degrees = minimal_generator_degrees(S.gb().gens());
  return F;
}

HodgeSpecialFourfold special_gm_fourfold(const std::string& name, Rng& rng, const FourfoldOptions& opt) {
  const PrimeField K;
  G14Surface g = named_surface(name, rng, K);
  ProjVariety S9 = g.S.with_sampler(g.sampler);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(g.sampler(rng));
  DelPezzoFivefold Y = del_pezzo_containing(pts, rng, K);
  ProjVariety S = restrict_to_fivefold(S9, Y);
  return special_fourfold_from_surface(FourfoldKind::GM, Y, S, name, rng, opt);
}

HodgeSpecialFourfold special_gm_fourfold(const PlaneModelSpec& m, const CurveSpec& c, Rng& rng,
                                         const FourfoldOptions& opt) {
  auto b = build_surface_in_g14(m, c, rng);
  std::string src = list_string(m.a, m.counts) + "," + list_string(c.e, c.through);
  return special_fourfold_from_surface(FourfoldKind::GM, b.Y, b.S, src, rng, opt, b.K2);
}

HodgeSpecialFourfold special_cubic_fourfold(const PlaneModelSpec& m, Rng& rng, const FourfoldOptions& opt) {
  auto num = model_numerics(m);
  if (num.N != 5) throw InputError("plane model does not map to P^5 (N = " + std::to_string(num.N) + ")");
  auto M = build_model_map(m, rng);
  ProjVariety T = model_image(M, 3, rng);
  if (T.dim() != 2 || T.degree() != num.degree)
    throw MathError("image of the plane model is not cut out by cubics");
  return special_fourfold_from_surface(FourfoldKind::Cubic, std::nullopt, T, list_string(m.a, m.counts), rng, opt,
                                       num.K2);
}

HodgeSpecialFourfold special_cubic_fourfold(const std::string& name, Rng& rng, const FourfoldOptions& opt) {
  if (name == "quintic-del-pezzo") {
    auto F = special_cubic_fourfold(PlaneModelSpec{3, {4}}, rng, opt);
    F.source = name;
    return F;
  }
  if (name == "c38-surface") {
    auto F = special_cubic_fourfold(PlaneModelSpec{10, {0, 0, 10}}, rng, opt);
    F.source = name;
    return F;
  }
  throw InputError("unknown surface for cubic fourfolds: " + name);
}

HodgeSpecialFourfold with_other_fourfold(const HodgeSpecialFourfold& F, Rng& rng) {
  HodgeSpecialFourfold G = F;
  int r = F.r();
  auto Ir = degree_part(F.S.gb().gens(), r);
  auto Vr = F.V.gens().empty() ? std::vector<Poly>{} : degree_part(F.V.gens(), r);
  auto beyond = forms_modulo(Ir, Vr, r);
  Poly q = random_combination(beyond, rng);
  std::vector<Poly> xg = F.V.gens();
  xg.push_back(q);
  G.X = ProjVariety(F.S.ring(), xg);
  G.X_form = q;
  G.X_spot_checked = false;
  return G;
}

// ---------------------------------------------------------------------------
// describe

namespace {

std::string cut_string(const std::vector<int>& degs) {
  std::ostringstream os;
  os << degs.size() << " hypersurface" << (degs.size() == 1 ? "" : "s") << " of degree";
  bool same = std::all_of(degs.begin(), degs.end(), [&](int d) { return d == degs[0]; });
  if (degs.empty()) return "0 hypersurfaces";
  if (same && !degs.empty()) {
    os << " " << degs[0];
  } else {
    os << "s (";
    for (std::size_t i = 0; i < degs.size(); ++i) os << (i ? "," : "") << degs[i];
    os << ")";
  }
  return os.str();
}

std::string surface_adjective(const HodgeSpecialFourfold& F) {
  if (F.inv.delta > 0) return std::to_string(F.inv.delta) + "-nodal surface";
  return F.smooth_surface ? "smooth surface" : "surface";
}

}  // namespace

std::string describe(const HodgeSpecialFourfold& F) {
  std::ostringstream os;
  std::string disc = "unknown (K^2 missing)";
  if (F.inv.K2) {
    auto d = discriminant(F.kind, F.inv);
    disc = d.display();
    if (!d.consistent) disc += " (inconsistent class parities)";
  }
  if (F.kind == FourfoldKind::GM) {
    os << "Special Gushel-Mukai fourfold of discriminant " << disc << "\n";
    os << "containing a " << surface_adjective(F) << " in PP^8 of degree " << F.inv.degree << " and sectional genus "
       << F.inv.genus << "\n";
    os << "cut out by " << cut_string(F.cut_degrees) << "\n";
    os << "and with class in G(1,4) given by " << class_string(*F.inv.cls) << "\n";
    os << "Type: ordinary\n";
  } else {
    os << "Special cubic fourfold of discriminant " << disc << "\n";
    os << "containing a " << surface_adjective(F) << " of degree " << F.inv.degree << " and sectional genus "
       << F.inv.genus << "\n";
    os << "cut out by " << cut_string(F.cut_degrees) << "\n";
  }
  return os.str();
}

nlohmann::json describe_json(const HodgeSpecialFourfold& F) {
  nlohmann::json j;
  j["kind"] = kind_name(F.kind);
  j["source"] = F.source;
  nlohmann::json s;
  s["degree"] = F.inv.degree;
  s["sectional_genus"] = F.inv.genus;
  s["chi"] = F.inv.chi;
  s["K2"] = F.inv.K2 ? nlohmann::json(*F.inv.K2) : nlohmann::json(nullptr);
  s["K2_source"] = k2_source_name(F.inv.k2_source);
  s["delta"] = F.inv.delta;
  s["smooth"] = F.smooth_surface;
  s["ambient"] = F.kind == FourfoldKind::GM ? "PP^8" : "PP^5";
  s["cut_degrees"] = F.cut_degrees;
  j["surface"] = s;
  if (F.inv.cls) j["class"] = {{"a", F.inv.cls->a}, {"b", F.inv.cls->b}, {"string", class_string(*F.inv.cls)}};
  if (F.inv.K2) {
    auto d = discriminant(F.kind, F.inv);
    j["discriminant"] = {{"self_intersection", d.self_intersection},
                         {"d", d.d},
                         {"label", d.label},
                         {"display", d.display()},
                         {"consistent", d.consistent}};
  } else {
    j["discriminant"] = nullptr;
  }
  if (F.kind == FourfoldKind::GM) j["type"] = "ordinary";
  j["fourfold_equation"] = F.X_form.str();
  j["fourfold_spot_checked_smooth"] = F.X_spot_checked;
  j["text"] = describe(F);
  return j;
}

// ---------------------------------------------------------------------------
// parameter count

long codim_bound(long ambient_system_dim, long h0_I, long h0_N_V, long h0_N_X) {
  return ambient_system_dim - (h0_N_V + h0_I - h0_N_X - 1);
}

std::string ParameterCountReport::tuple_string() const {
  std::ostringstream os;
  os << "(" << codim_bound << ", (" << h0_I << ", " << h0_N_V << ", " << h0_N_X << "))";
  return os.str();
}

ParameterCountReport parameter_count_from(FourfoldKind kind, long h0_I, long h0_N_V, long h0_N_X) {
  ParameterCountReport p;
  p.h0_I = h0_I;
  p.h0_N_V = h0_N_V;
  p.h0_N_X = h0_N_X;
  // cubics: P(H^0(O_P5(3))) = P^55; GM: P(H^0(O_Y(2))) = P^39
  p.h0_OV_r = kind == FourfoldKind::Cubic ? 56 : 40;
  p.ambient_system_dim = p.h0_OV_r - 1;
  p.codim_bound = hsf::codim_bound(p.ambient_system_dim, h0_I, h0_N_V, h0_N_X);
  return p;
}

long normal_sections(const ProjVariety& S, const std::vector<Poly>& base0) {
  const GroebnerBasis& G = S.gb();
  RingPtr R = S.ring();
  const PrimeField& F = R->field();
  auto base = nonzero_polys(base0);
  auto extra = extra_generators(G.gens(), base);
  std::vector<Poly> gens = base;
  gens.insert(gens.end(), extra.begin(), extra.end());
  int nb = static_cast<int>(base.size());
  auto syz = syzygies(gens);
  auto lms = G.leading_monomials();
  std::map<int, std::vector<Monomial>> stdm;
  auto standard = [&](int d) -> const std::vector<Monomial>& {
    auto it = stdm.find(d);
    if (it != stdm.end()) return it->second;
    std::vector<Monomial> out;
    for (auto& m : monos_in_order(R, d)) {
      bool div = false;
      for (auto& l : lms)
        if (mono_divides(l, m)) {
          div = true;
          break;
        }
      if (!div) out.push_back(m);
    }
    return stdm[d] = out;
  };
  // unknowns: phi(g_i) for the extra generators, in the standard basis of (R/I)_{deg g_i}
  std::vector<int> offset(gens.size(), -1);
  int nunk = 0;
  for (int i = nb; i < static_cast<int>(gens.size()); ++i) {
    offset[i] = nunk;
    nunk += static_cast<int>(standard(gens[i].degree()).size());
  }
  if (nunk == 0) return 0;
  Mat A(0, nunk);
  for (auto& s : syz) {
    int D = -1;
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
      if (!s[i].is_zero()) {
        D = s[i].degree() + gens[i].degree();
        break;
      }
    if (D < 0) continue;
    const auto& target = standard(D);
    std::unordered_map<Monomial, int, MonomialHash> idx;
    for (std::size_t k = 0; k < target.size(); ++k) idx[target[k]] = static_cast<int>(k);
    Mat block(static_cast<int>(target.size()), nunk);
    bool any = false;
    for (int i = nb; i < static_cast<int>(gens.size()); ++i) {
      if (s[i].is_zero()) continue;
      const auto& src = standard(gens[i].degree());
      for (std::size_t b = 0; b < src.size(); ++b) {
        Poly p = normal_form(s[i].mul_term(src[b], 1), G);
        for (auto& t : p.terms()) {
          auto it = idx.find(t.m);
          if (it == idx.end()) throw MathError("normal_sections: normal form outside the standard basis");
          u32& e = block(it->second, offset[i] + static_cast<int>(b));
          e = F.add(e, t.c);
          any = true;
        }
      }
    }
    if (!any) continue;
    for (int k = 0; k < block.rows(); ++k) A.append_row(block.row_vec(k));
    if (A.rows() > 4 * nunk) A = row_basis(A, F);
  }
  return nunk - (A.rows() ? rank(A, F) : 0);
}

ParameterCountReport parameter_count(const HodgeSpecialFourfold& F, std::vector<std::string>* log) {
  if (!F.smooth_surface) throw MathError("parameter_count: S is not smooth (or smoothness was not verified)");
  int r = F.r();
  ParameterCountReport p;
  p.h0_OV_r = static_cast<long>(euler_char_twist(F.V, r));
  p.ambient_system_dim = p.h0_OV_r - 1;
  p.chi_OS_r = static_cast<long>(euler_char_twist(F.S, r));
  p.h0_I = graded_piece_dim_relative(F.S.gb().gens(), F.V.gens(), r);
  p.minimal = p.h0_I == p.h0_OV_r - p.chi_OS_r;
  p.h0_N_V = normal_sections(F.S, F.V.gens());
  std::vector<Poly> xb = F.V.gens();
  xb.push_back(F.X_form);
  p.h0_N_X = normal_sections(F.S, xb);
  p.codim_bound = codim_bound(p.ambient_system_dim, p.h0_I, p.h0_N_V, p.h0_N_X);
  if (log) *log = parameter_count_lines(p, F.kind);
  return p;
}

std::vector<std::string> parameter_count_lines(const ParameterCountReport& p, FourfoldKind kind) {
  bool gm = kind == FourfoldKind::GM;
  std::string V = gm ? "Y" : "P^5";
  std::string r = gm ? "2" : "3";
  std::string OV = gm ? "O_Y(2)" : "O_{P^5}(3)";
  std::vector<std::string> out;
  out.push_back("-- h^1(N_{S," + V + "}) = 0 (assumed, not computed)");
  out.push_back("-- h^0(N_{S," + V + "}) = " + std::to_string(p.h0_N_V));
  std::string cond = "-- h^1(O_S(" + r + ")) = 0 (assumed), and h^0(I_{S," + V + "}(" + r +
                     ")) = " + std::to_string(p.h0_I) + (p.minimal ? " = " : " != ") + "h^0(" + OV +
                     ") - \\chi(O_S(" + r + "));";
  out.push_back(cond);
  if (p.minimal) out.push_back("-- in particular, h^0(I_{S," + V + "}(" + r + ")) is minimal");
  out.push_back("-- h^0(N_{S,X}) = " + std::to_string(p.h0_N_X));
  out.push_back("-- codim{[X] : S ⊂ X ⊂ " + V + "} <= " + std::to_string(p.codim_bound));
  return out;
}

}  // namespace hsf
