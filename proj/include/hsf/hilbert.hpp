#pragma once

#include <vector>

#include "hsf/bigint.hpp"
#include "hsf/groebner.hpp"

namespace hsf {

// Hilbert data of R/I for a homogeneous ideal I in a standard graded ring.
struct HilbertData {
  int nvars = 0;
  std::vector<BigInt> numerator;  // HS(t) = numerator(t) / (1-t)^nvars
  int dim = -1;                   // projective dimension, -1 if empty
  BigInt degree = 0;
  std::vector<BigRat> hilbert_polynomial;  // coefficients in t, low to high
  bool empty() const { return dim < 0; }

  BigRat hp(long t) const;          // Hilbert polynomial at t
  BigInt hf(long t) const;          // Hilbert function dim (R/I)_t, exact for every t >= 0
  int regularity_index() const;     // hf(t) == hp(t) for t >= this value
};

// Numerator of the Hilbert series of R/(monomials), by pivot recursion.
std::vector<BigInt> hilbert_numerator(const std::vector<Monomial>& gens, int nvars);

HilbertData hilbert_from_numerator(std::vector<BigInt> num, int nvars);

// From a Groebner basis (truncated bases give hf correct up to the truncation degree).
HilbertData hilbert(const GroebnerBasis& G);
HilbertData hilbert(const std::vector<Poly>& gens);

std::string poly_string(const std::vector<BigRat>& coeffs, const std::string& var = "t");

}  // namespace hsf
