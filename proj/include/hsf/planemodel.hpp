#pragma once

#include <string>
#include <vector>

#include "hsf/grassmann.hpp"
#include "hsf/ratmaps.hpp"
#include "hsf/univariate.hpp"

namespace hsf {

// Plane curves of degree a with counts[k] general base points of multiplicity k+1.
struct PlaneModelSpec {
  int a = 0;
  std::vector<int> counts;
};
// Plane curve of degree e through through[k] of the base points of multiplicity k+1 (simply).
struct CurveSpec {
  int e = 0;
  std::vector<int> through;
};

// "4,5,1" or "[4,5,1]"
std::vector<int> parse_int_list(const std::string& s);
PlaneModelSpec model_spec_from_list(const std::vector<int>& v);
CurveSpec curve_spec_from_list(const std::vector<int>& v);
std::string list_string(int head, const std::vector<int>& tail);  // "[4,5,1]"

struct ModelNumerics {
  long degree = 0, genus = 0, K2 = 0, N = 0;
};
struct CurveNumerics {
  long degree = 0, genus = 0;
};
ModelNumerics model_numerics(const PlaneModelSpec& m);
CurveNumerics curve_numerics(const PlaneModelSpec& m, const CurveSpec& c);
// (2H - C)^2 and the genus of 2H - C on the blown-up plane
struct SurfaceNumerics {
  long degree = 0, genus = 0;
};
SurfaceNumerics expected_surface_numerics(const PlaneModelSpec& m, const CurveSpec& c);

struct PlaneModel {
  PlaneModelSpec spec;
  RingPtr plane;                  // P^2, variables s0 s1 s2
  std::vector<Point> base_points; // grouped by multiplicity, ascending
  std::vector<int> multiplicity;
  std::vector<Poly> system;       // basis, N+1 forms of degree a
  RationalMap map;                // P^2 --> P^N
};
PlaneModel build_model_map(const PlaneModelSpec& spec, Rng& rng);
// T by interpolation of forms of degree <= maxdeg through sampled image points
ProjVariety model_image(const PlaneModel& M, int maxdeg, Rng& rng);

// A rational curve t -> (c_0(t), ..., c_n(t)) in affine parameter form (t1 = 1).
struct CurveParam {
  std::vector<UPoly> coords;
  int degree = 0;
};
Point eval_curve(const CurveParam& c, u32 t, const PrimeField& F);
std::vector<UPoly> eval_on_curve(const std::vector<Poly>& forms, const std::vector<UPoly>& x, const PrimeField& F);

struct PlaneCurve {
  CurveSpec spec;
  CurveParam gamma;  // in P^2
  CurveParam image;  // in P^N, common factors removed
};
PlaneCurve build_curve(const PlaneModel& M, const CurveSpec& c, Rng& rng);

// sigma in GL(7) with sigma(C) inside Sigma_3, C given in P^6.
struct Projectivity {
  Mat sigma;
  int d1 = 0, d2 = 0;  // bidegree of the target curve on P^1 x P^2
};
Projectivity find_projectivity(const CurveParam& C, Rng& rng, const PrimeField& F);
// balanced first: (2,3) (3,2) (1,4) (4,1) for degree 5
std::vector<std::pair<int, int>> splittings(int d);

struct SurfaceBuild {
  PlaneModel model;
  PlaneCurve curve;
  Projectivity sigma;
  ModelNumerics model_num;
  CurveNumerics curve_num;
  SurfaceNumerics expected;
  DelPezzoFivefold Y;
  ProjVariety S;         // in the P^8 of Y, with a sampler
  Sampler sample_p9;     // points of S in Pluecker coordinates
  long degree = 0, genus = 0;
  bool isomorphic_image = false;
  std::optional<long> K2;  // known when the image is isomorphic
  int generator_degree = 2;
};
struct BuildOptions {
  int max_generator_degree = 3;
};
SurfaceBuild build_surface_in_g14(const PlaneModelSpec& m, const CurveSpec& c, Rng& rng,
                                  const BuildOptions& opt = {});

}  // namespace hsf
