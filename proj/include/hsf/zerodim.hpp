#pragma once

#include <vector>

#include "hsf/groebner.hpp"
#include "hsf/linalg.hpp"
#include "hsf/rng.hpp"
#include "hsf/univariate.hpp"

namespace hsf {

// Affine zero-dimensionality: each variable has a pure power among the leading monomials.
bool is_zero_dimensional(const GroebnerBasis& G);
// Monomials outside the leading-term ideal, sorted increasing; throws MathError
// for positive-dimensional input.
std::vector<Monomial> standard_monomials(const GroebnerBasis& G);
// vector-space dimension of R/I (affine length); 0 for the unit ideal
long affine_length(const GroebnerBasis& G);

// M(i, j) = coefficient of basis[i] in normal_form(h * basis[j])
Mat multiplication_matrix(const GroebnerBasis& G, const std::vector<Monomial>& basis, const Poly& h);

struct ZeroDimCluster {
  GroebnerBasis ideal;  // primary component (a Galois orbit of points)
  int residue_degree;   // number of conjugate points / degree of their field
  int multiplicity;     // local length at each point
  UPoly minpoly;        // irreducible polynomial of the primitive form on the orbit
  Poly primitive;       // the separating linear form used
  long length() const { return static_cast<long>(residue_degree) * multiplicity; }
};

// Primary decomposition of an affine zero-dimensional ideal through a random
// separating linear form; at most 8 attempts, then RetryExhausted.
std::vector<ZeroDimCluster> decompose_zero_dim(const std::vector<Poly>& gens, Rng& rng);

// Coordinates of the point of a cluster of residue degree 1.
std::vector<u32> rational_point(const ZeroDimCluster& c);

}  // namespace hsf
