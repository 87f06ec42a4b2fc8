#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "hsf/grassmann.hpp"
#include "hsf/nlarith.hpp"
#include "hsf/planemodel.hpp"
#include "hsf/ratmaps.hpp"

namespace hsf {

enum class K2Source { Computed, PlaneModel, User, Missing };
std::string k2_source_name(K2Source s);

struct SurfaceInvariants {
  long degree = 0;
  long genus = 0;
  long chi = 1;
  std::optional<long> K2;
  long delta = 0;
  std::optional<GrassClass> cls;  // GM only
  K2Source k2_source = K2Source::Missing;
};

// (S)^2 in X; throws InputError when K^2 is missing
long self_intersection(FourfoldKind kind, const SurfaceInvariants& s);

struct DiscriminantReport {
  long self_intersection = 0;
  long d = 0;
  std::string label;        // "", "'" or "''"
  bool consistent = true;   // false when both or neither parity rule applies
  std::string display() const { return std::to_string(d) + (label.empty() ? "" : "(" + label + ")"); }
};
DiscriminantReport discriminant(FourfoldKind kind, const SurfaceInvariants& s);

// Degrees of a minimal generating set of a homogeneous ideal, ascending.
std::vector<int> minimal_generator_degrees(const std::vector<Poly>& gb);
// Members of `forms` (all of degree d) independent modulo span(base).
std::vector<Poly> forms_modulo(const std::vector<Poly>& forms, const std::vector<Poly>& base, int d);
// Forms completing `base` to a generating set of the ideal with basis `gb`,
// degree by degree.
std::vector<Poly> extra_generators(const std::vector<Poly>& gb, const std::vector<Poly>& base);

struct HodgeSpecialFourfold {
  FourfoldKind kind = FourfoldKind::GM;
  std::optional<DelPezzoFivefold> Y;  // GM kind
  ProjVariety V;                      // P^5 or Y
  GermFn V_germs;
  ProjVariety S;                      // with a sampler
  ProjVariety X;
  Poly X_form;                        // the degree-r form cutting X in V
  SurfaceInvariants inv;
  std::vector<int> cut_degrees;
  bool smooth_surface = false;        // singular locus computed empty
  bool X_spot_checked = false;
  std::string source;                 // fixture name or model/curve spec
  u64 seed = 0;

  int r() const { return kind == FourfoldKind::Cubic ? 3 : 2; }
  const std::vector<Poly>& ambient_ideal() const { return V.gens(); }
};

struct FourfoldOptions {
  bool thorough = false;          // full singular locus of X instead of slices
  int smooth_retries = 5;
  std::optional<long> user_K2;
  bool compute_delta = true;
};

std::vector<std::string> named_fourfold_surfaces(FourfoldKind kind);

// S must already lie in the ambient (Y for GM, P^5 for cubics) with a sampler.
HodgeSpecialFourfold special_fourfold_from_surface(FourfoldKind kind, std::optional<DelPezzoFivefold> Y,
                                                   const ProjVariety& S, const std::string& source, Rng& rng,
                                                   const FourfoldOptions& opt = {},
                                                   std::optional<long> model_K2 = std::nullopt);
HodgeSpecialFourfold special_gm_fourfold(const std::string& name, Rng& rng, const FourfoldOptions& opt = {});
HodgeSpecialFourfold special_gm_fourfold(const PlaneModelSpec& m, const CurveSpec& c, Rng& rng,
                                         const FourfoldOptions& opt = {});
HodgeSpecialFourfold special_cubic_fourfold(const std::string& name, Rng& rng, const FourfoldOptions& opt = {});
// surface in P^5 as the image of a plane model with N = 5
HodgeSpecialFourfold special_cubic_fourfold(const PlaneModelSpec& m, Rng& rng, const FourfoldOptions& opt = {});
// another general member X' through the same S
HodgeSpecialFourfold with_other_fourfold(const HodgeSpecialFourfold& F, Rng& rng);

// Singular locus of X inside `slices` general hyperplane sections is empty.
bool spot_check_smooth(const std::vector<Poly>& gens, int codim, int slices, Rng& rng);

std::string describe(const HodgeSpecialFourfold& F);
nlohmann::json describe_json(const HodgeSpecialFourfold& F);

// ---- parameter count

struct ParameterCountReport {
  long h0_I = 0;
  long h0_N_V = 0;
  long h0_N_X = 0;
  long ambient_system_dim = 0;
  long h0_OV_r = 0;
  long chi_OS_r = 0;
  bool minimal = false;  // h0_I == h0(O_V(r)) - chi(O_S(r))
  long codim_bound = 0;
  bool h1_N_assumed = true;
  std::string tuple_string() const;  // "(1, (12, 27, 0))"
};
long codim_bound(long ambient_system_dim, long h0_I, long h0_N_V, long h0_N_X);
// arithmetic only, ambient_system_dim = 39 (GM) or 55 (cubic)
ParameterCountReport parameter_count_from(FourfoldKind kind, long h0_I, long h0_N_V, long h0_N_X);
// dim Hom(I_S / I_B, O_S)_0 from syzygies, where I_B is generated by `base`
long normal_sections(const ProjVariety& S, const std::vector<Poly>& base);
ParameterCountReport parameter_count(const HodgeSpecialFourfold& F, std::vector<std::string>* log = nullptr);
std::vector<std::string> parameter_count_lines(const ParameterCountReport& p, FourfoldKind kind);

// ---- congruences

struct LineCluster {
  int residue_degree = 0;
  int multiplicity = 0;
  long curve_degree = -1;  // total over the orbit
  long secancy = -1;       // total over the orbit
  int e = 0;               // per curve, 0 when unclassified
  bool consistent = false;
  std::string note;
};
struct CongruenceReport {
  std::vector<long> e_counts;  // index e-1
  std::optional<int> detected_e;
  long lines_total = 0;
  std::vector<LineCluster> clusters;
  Point witness;
  u64 seed = 0;
  std::string method;
};
// phi by the degree-r forms through S (basis modulo I_V)
RationalMap phi_map(const HodgeSpecialFourfold& F);
// 1-secant lines through a general point of Y, counted as S cap T_pY
long direct_secant_line_count(const HodgeSpecialFourfold& F, Rng& rng, Point* witness = nullptr);
CongruenceReport detect_congruence(const HodgeSpecialFourfold& F, Rng& rng, int e_max = 5, int z_degree = 2);
std::vector<std::string> congruence_lines(const CongruenceReport& c, FourfoldKind kind);
nlohmann::json to_json(const CongruenceReport& c);

// ---- Fano map

struct FanoRecognition {
  int dim = -1;
  long degree = 0;
  int ambient = 0;
  int index = 0;  // 0 when unrecognized
  std::string name;
};
FanoRecognition recognize_prime_fano(const ProjVariety& W);

struct FanoMapReport {
  int e = 0;
  RationalMap mu;
  ProjVariety W;
  FanoRecognition kind;
  long fiber_degree_X = -1;   // of mu restricted to X
  long fiber_curve_degree = -1;  // degree of the fiber of mu on V through a general point
  std::string progress;
};
FanoMapReport fano_map(const HodgeSpecialFourfold& F, int e, Rng& rng, bool check_X = true);

// ---- associated K3

struct CurveGroup {
  long degree = 0;
  long count = 0;
};
struct SurfaceU {
  ProjVariety U;
  std::vector<Poly> cutting_forms;
  VarietyInvariants inv;
  std::vector<Poly> exceptional_ideal;  // top-dimensional part of U cap U'
  std::vector<CurveGroup> exceptional;
  std::vector<std::vector<Poly>> exceptional_components;  // one per degree group
  long scheme_degree = 0;   // of U cap U'
  long reduced_degree = 0;  // sum of the curve degrees found on a slice
};
SurfaceU surface_U(const HodgeSpecialFourfold& F, const FanoMapReport& mu, Rng& rng,
                   std::vector<std::string>* log = nullptr);
struct K3Report {
  RationalMap k3_map;
  ProjVariety k3;
  VarietyInvariants inv;
  long quadrics = 0;
};
std::string exceptional_string(const SurfaceU& U);
K3Report k3_model(const HodgeSpecialFourfold& F, const SurfaceU& U, Rng& rng, std::vector<std::string>* log = nullptr);

// ---- projection to cubic fourfolds

struct ProjectionReport {
  ProjVariety R;
  SurfaceInvariants inv;
  HodgeSpecialFourfold cubic;
  DiscriminantReport disc;
};
// three spanning points (P^8 coordinates) of a general sigma_{2,2} plane in Y
std::vector<Point> sigma22_plane(const DelPezzoFivefold& Y, Rng& rng);
// projection of S from a general sigma_{2,2} plane of Y
ProjectionReport project_to_cubic(const HodgeSpecialFourfold& F, Rng& rng);

}  // namespace hsf
