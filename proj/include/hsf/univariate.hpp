#pragma once

#include <vector>

#include "hsf/field.hpp"
#include "hsf/poly.hpp"
#include "hsf/rng.hpp"

namespace hsf {

// Dense univariate polynomial over F_p, coefficients from degree 0 upward,
// no trailing zeros.
using UPoly = std::vector<u32>;

namespace upoly {
void trim(UPoly& f);
int deg(const UPoly& f);
UPoly add(const UPoly& a, const UPoly& b, const PrimeField& F);
UPoly sub(const UPoly& a, const UPoly& b, const PrimeField& F);
UPoly mul(const UPoly& a, const UPoly& b, const PrimeField& F);
UPoly scale(const UPoly& a, u32 c, const PrimeField& F);
// quotient and remainder
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r, const PrimeField& F);
UPoly rem(const UPoly& a, const UPoly& b, const PrimeField& F);
UPoly quo(const UPoly& a, const UPoly& b, const PrimeField& F);
UPoly gcd(UPoly a, UPoly b, const PrimeField& F);
UPoly monic(const UPoly& a, const PrimeField& F);
UPoly derivative(const UPoly& a, const PrimeField& F);
UPoly powmod(const UPoly& base, u64 e, const UPoly& m, const PrimeField& F);
u32 eval(const UPoly& f, u32 x, const PrimeField& F);
}  // namespace upoly

struct UFactor {
  UPoly f;  // monic irreducible
  int mult;
};

// Factorization of a nonzero polynomial into monic irreducibles with
// multiplicities; the leading coefficient is returned separately.
std::vector<UFactor> factor(const UPoly& f, const PrimeField& F, u32* lead = nullptr);
std::vector<u32> roots(const UPoly& f, const PrimeField& F);

// Poly interface: f must involve at most one variable.
struct PolyFactor {
  Poly f;
  int mult;
};
std::vector<PolyFactor> univar_factor(const Poly& f);
UPoly to_upoly(const Poly& f, int var);
Poly from_upoly(const UPoly& u, const RingPtr& r, int var);

}  // namespace hsf
