#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsf/groebner.hpp"
#include "hsf/hilbert.hpp"
#include "hsf/linalg.hpp"
#include "hsf/rng.hpp"

namespace hsf {

using Point = std::vector<u32>;
using Sampler = std::function<Point(Rng&)>;

// Truncated curve germ through a point: coords[i][k] is the t^k coefficient
// of coordinate i.
using Germ = std::vector<std::vector<u32>>;
// Random germ inside an ambient variety through a given point, to order < n.
using GermFn = std::function<Germ(const Point&, int order, Rng&)>;

// A projective subscheme given by homogeneous generators. Caches are filled
// lazily under a per-object lock; copies share them.
class ProjVariety {
 public:
  ProjVariety() = default;
  ProjVariety(RingPtr ring, std::vector<Poly> gens);

  const RingPtr& ring() const;
  const std::vector<Poly>& gens() const;
  int ambient_dim() const { return ring()->nvars() - 1; }

  const GroebnerBasis& gb() const;
  const HilbertData& hilbert() const;
  int dim() const { return hilbert().dim; }
  long degree() const;
  bool empty() const { return hilbert().empty(); }

  // Optional point sampler (parameterizations, etc); without one, points are
  // found on random linear sections.
  ProjVariety with_sampler(Sampler s) const;
  bool has_sampler() const;
  Point sample(Rng& rng) const;

 private:
  struct State;
  std::shared_ptr<State> st_;
};

struct VarietyInvariants {
  int dim = -1;
  long degree = 0;
  long genus = 0;  // arithmetic genus of the curve section (dim >= 1)
  long chi = 0;    // HP(0)
};

// ---- ideal-level operations (generators in one ring, results are reduced GBs)

enum class IdealOp { Sum, Intersect, Colon, Saturate };
std::vector<Poly> ideal_sum(const std::vector<Poly>& I, const std::vector<Poly>& J);
std::vector<Poly> ideal_intersect(const std::vector<Poly>& I, const std::vector<Poly>& J);
std::vector<Poly> ideal_colon(const std::vector<Poly>& I, const std::vector<Poly>& J);
std::vector<Poly> ideal_saturate(const std::vector<Poly>& I, const std::vector<Poly>& J);
// I : g^infinity, one Rabinowitsch elimination
std::vector<Poly> saturate_principal(const std::vector<Poly>& I, const Poly& g);
std::vector<Poly> ideal_op(const std::vector<Poly>& I, const std::vector<Poly>& J, IdealOp op);
// Eliminate the listed variables; result lives in the same ring.
std::vector<Poly> eliminate(const std::vector<Poly>& I, const std::vector<int>& vars);
// Saturation by the irrelevant ideal (through a generic linear form).
std::vector<Poly> saturate_irrelevant(const std::vector<Poly>& I, Rng& rng);

// ---- linear algebra on forms

// basis of degree-d monomials (sorted decreasing) and coefficient vectors
std::vector<u32> coefficient_vector(const Poly& f, const std::vector<Monomial>& monos);
Poly form_from_vector(const RingPtr& R, const std::vector<Monomial>& monos, const std::vector<u32>& v);
// basis (rref) of the span of homogeneous forms of degree d
std::vector<Poly> forms_basis(const std::vector<Poly>& forms, int d);
// basis of the degree-d piece of the ideal generated by gens
std::vector<Poly> degree_part(const std::vector<Poly>& gens, int d);
// forms of degree d vanishing at all points (at least as many points as monomials are needed)
std::vector<Poly> forms_through_points(const RingPtr& R, const std::vector<Point>& pts, int d);
// rank of the degree-d evaluation matrix: the Hilbert function of the points' closure
long evaluation_rank(const RingPtr& R, const std::vector<Point>& pts, int d);
Mat evaluation_matrix(const std::vector<Monomial>& monos, const std::vector<Point>& pts, const PrimeField& F);

// random linear forms / points / linear subspaces
Point random_point(int n, Rng& rng, const PrimeField& F);
Poly random_linear_form(const RingPtr& R, Rng& rng);
Poly random_combination(const std::vector<Poly>& forms, Rng& rng);
// basis of the linear forms vanishing on the points
std::vector<Poly> linear_forms_through(const RingPtr& R, const std::vector<Point>& pts);
// Pull forms back along x = E y (E is (nvars) x k); target ring has k variables.
std::vector<Poly> pullback_linear(const std::vector<Poly>& forms, const Mat& E, const RingPtr& target);
// E whose columns span the common zero set of linear forms
Mat linear_kernel_embedding(const std::vector<Poly>& linear_forms, int nvars);

// ---- counting

// Length of V(gens) in P^n outside V(avoid), through a random affine chart
// (and a Rabinowitsch variable when avoid is nonempty). Throws MathError when
// the scheme is not finite.
long count_points(const std::vector<Poly>& gens, const std::vector<Poly>& avoid, Rng& rng);
// Points with residue degree 1 of such a finite scheme (projective coordinates).
std::vector<Point> rational_points(const std::vector<Poly>& gens, const std::vector<Poly>& avoid, Rng& rng);

// ---- invariants

// Section by k random hyperplanes, expressed in a ring with k fewer variables.
std::vector<Poly> random_section(const std::vector<Poly>& gens, int k, Rng& rng);
VarietyInvariants invariants(const ProjVariety& V, Rng& rng);
BigInt euler_char_twist(const ProjVariety& V, long t);
// dim of the degree-d piece of the ideal
long graded_piece_dim(const std::vector<Poly>& gens, int d);
// dim (I / I_V)_d for I containing I_V
long graded_piece_dim_relative(const std::vector<Poly>& I, const std::vector<Poly>& IV, int d);
// degree via slicing: length of V cut with dim-many random hyperplanes
long degree_by_slicing(const ProjVariety& V, Rng& rng);

struct SingularLocus {
  bool finite = true;
  long delta = 0;  // length of the singular subscheme when finite
};
SingularLocus singular_delta(const ProjVariety& S, Rng& rng);

// K^2 of a smooth surface from the projective degrees of the map given by the
// top-degree generators (Segre class route).
struct ChernData {
  long c2 = 0;
  long k2 = 0;
  std::vector<long> projective_degrees;
  int generator_degree = 0;
};
ChernData chern_k2(const ProjVariety& S, Rng& rng);

// Forms of degree m on the ambient variety (given by ambient_ideal and a germ
// generator) vanishing to order >= e along S, sampled at points of S. The
// result is a basis independent modulo the ambient ideal.
std::vector<Poly> multiplicity_system(const ProjVariety& S, const std::vector<Poly>& ambient_ideal,
                                      const GermFn& germs, int e, int m, Rng& rng);
GermFn projective_space_germs(int nvars, const PrimeField& F);

// sampling helpers
Point scale_point(const Point& p, u32 c, const PrimeField& F);
bool is_zero_point(const Point& p);
Point eval_forms(const std::vector<Poly>& forms, const Point& p);

}  // namespace hsf
