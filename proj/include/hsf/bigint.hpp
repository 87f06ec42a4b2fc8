#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace hsf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using IntMatrix = std::vector<std::vector<BigInt>>;

// exact determinant by fraction-free (Bareiss) elimination
BigInt int_det(IntMatrix M);

BigInt binomial(const BigInt& n, long k);  // C(n, k), n may be negative
long binomial_l(long n, long k);

}  // namespace hsf
