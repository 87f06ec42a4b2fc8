#include "doctest.h"

#include "hsf/hilbert.hpp"
#include "hsf/parse.hpp"
#include "hsf/zerodim.hpp"

using namespace hsf;

TEST_CASE("hilbert of the zero ideal in P^8") {
  auto R = PolyRing::make(PrimeField(), 9);
  auto H = hilbert(GroebnerBasis(R, {}, true));
  CHECK(H.dim == 8);
  CHECK(H.degree == 1);
  for (long t = 0; t < 6; ++t) CHECK(H.hp(t) == BigRat(binomial(BigInt(t + 8), 8)));
  CHECK(H.hf(3) == 165);
}

TEST_CASE("hilbert of the unit ideal is empty") {
  auto R = PolyRing::make(PrimeField(), 3);
  auto H = hilbert({Poly::constant(R, 5)});
  CHECK(H.empty());
  CHECK(H.hf(2) == 0);
}

TEST_CASE("hilbert of a twisted cubic and a plane conic") {
  auto R = PolyRing::make(PrimeField(), 4);
  auto H = hilbert(parse_polys({"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}, R));
  CHECK(H.dim == 1);
  CHECK(H.degree == 3);
  CHECK(poly_string(H.hilbert_polynomial) == "3*t+1");
  auto C = hilbert(parse_polys({"x3", "x0^2+x1^2+x2^2"}, R));
  CHECK(C.dim == 1);
  CHECK(C.degree == 2);
  CHECK(C.hf(0) == 1);
  CHECK(C.hf(5) == 11);
}

TEST_CASE("hilbert numerators: product formula vs recursion") {
  // complete intersection of degrees 2, 3, 3 in 5 variables
  std::vector<Monomial> g = {Monomial::from_exps({2, 0, 0, 0, 0}), Monomial::from_exps({0, 3, 0, 0, 0}),
                             Monomial::from_exps({0, 0, 3, 0, 0})};
  auto n = hilbert_numerator(g, 5);
  auto H = hilbert_from_numerator(n, 5);
  CHECK(H.degree == 18);
  CHECK(H.dim == 1);
  // non-coprime monomial ideal: (xy, xz, yz) has HF 1, 3, 3, ...
  auto m = hilbert_numerator({Monomial::from_exps({1, 1, 0}), Monomial::from_exps({1, 0, 1}), Monomial::from_exps({0, 1, 1})}, 3);
  auto M = hilbert_from_numerator(m, 3);
  CHECK(M.dim == 0);
  CHECK(M.degree == 3);
  for (long t = 1; t < 6; ++t) CHECK(M.hf(t) == 3);
}

TEST_CASE("decompose_zero_dim examples") {
  Rng rng(1);
  auto R7 = PolyRing::make(PrimeField(7), {"x"});
  auto a = decompose_zero_dim({parse_poly("x^2-1", R7)}, rng);
  REQUIRE(a.size() == 2);
  for (auto& c : a) {
    CHECK(c.residue_degree == 1);
    CHECK(c.multiplicity == 1);
  }
  std::vector<u32> pts = {rational_point(a[0])[0], rational_point(a[1])[0]};
  std::sort(pts.begin(), pts.end());
  CHECK(pts == std::vector<u32>{1, 6});
  auto b = decompose_zero_dim({parse_poly("x^2+1", R7)}, rng);
  REQUIRE(b.size() == 1);
  CHECK(b[0].residue_degree == 2);
  CHECK(b[0].multiplicity == 1);
}

TEST_CASE("decompose_zero_dim in several variables") {
  Rng rng(2);
  auto R = PolyRing::make(PrimeField(), {"x", "y"});
  // (x^2 - y) meets (y - 1)^2 * (y - 4): points (+-1,1) double, (+-2,4) simple
  auto cl = decompose_zero_dim(parse_polys({"x^2-y", "(y-1)^2*(y-4)"}, R), rng);
  long total = 0;
  int doubles = 0;
  for (auto& c : cl) {
    total += c.length();
    if (c.multiplicity == 2) ++doubles;
    CHECK(c.residue_degree == 1);
  }
  CHECK(total == 6);
  CHECK(doubles == 2);
  CHECK(cl.size() == 4);
  auto G = buchberger(parse_polys({"x^2-y", "(y-1)^2*(y-4)"}, R));
  CHECK(affine_length(G) == 6);
  CHECK_THROWS_AS(standard_monomials(buchberger({parse_poly("x*y", R)})), MathError);
}
