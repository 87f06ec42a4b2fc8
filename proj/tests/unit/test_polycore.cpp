#include "doctest.h"

#include "hsf/bigint.hpp"
#include "hsf/linalg.hpp"
#include "hsf/parse.hpp"
#include "hsf/poly.hpp"
#include "hsf/rng.hpp"
#include "hsf/univariate.hpp"

using namespace hsf;

TEST_CASE("field axioms on samples") {
  PrimeField F;
  Rng r(7);
  for (int k = 0; k < 2000; ++k) {
    u32 a = r.below(F.p()), b = r.below(F.p()), c = r.below(F.p());
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.add(a, F.neg(a)) == 0);
    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
    if (a) CHECK(F.mul(a, F.inv(a)) == 1);
  }
  CHECK_THROWS_AS(F.inv(0), MathError);
  CHECK_THROWS(PrimeField(65520));
}

TEST_CASE("monomial order totality and multiplicativity") {
  Rng r(11);
  std::vector<MonomialOrder> orders = {MonomialOrder::grevlex(5), MonomialOrder::lex(5), MonomialOrder::block(5, 2),
                                       MonomialOrder::weighted({1, 2, 1, 3, 1})};
  auto rnd = [&] {
    std::vector<int> e(5);
    for (auto& x : e) x = static_cast<int>(r.below(4));
    return Monomial::from_exps(e);
  };
  for (auto& o : orders) {
    Monomial one = Monomial::from_exps({0, 0, 0, 0, 0});
    for (int k = 0; k < 300; ++k) {
      Monomial a = rnd(), b = rnd(), m = rnd();
      int c = o.cmp(a, b);
      CHECK(c == -o.cmp(b, a));
      CHECK((c == 0) == (a == b));
      CHECK(o.cmp(mono_mul(a, m), mono_mul(b, m)) == c);
      CHECK(o.cmp(a, one) >= 0);
      CHECK(o.cmp(a, b) == o.cmp_slow(a, b));
    }
  }
}

TEST_CASE("parse examples") {
  auto R = PolyRing::make(PrimeField(), {"a", "b", "c", "d", "e", "f", "g", "h", "i"});
  Poly q = parse_poly("e*g-d*h+b*i", R);
  CHECK(q.size() == 3);
  CHECK(q.is_homogeneous());
  CHECK(q.degree() == 2);
  CHECK(q.str() == "e*g-d*h+b*i");
  CHECK(parse_poly("0", R).is_zero());
  CHECK(parse_poly("0", R).terms().empty());
  CHECK(parse_poly("(a+b)^2 - a^2 - 2*a*b", R) == parse_poly("b^2", R));
  CHECK(parse_poly("1/2*a", R).scaled(2) == parse_poly("a", R));
  CHECK_THROWS_AS(parse_poly("a*z", R), InputError);
  CHECK_THROWS_AS(parse_poly("a b", R), InputError);
  CHECK_THROWS_AS(parse_poly("a+*b", R), InputError);
  CHECK_THROWS_AS(parse_poly("(a+b", R), InputError);
  CHECK_THROWS_AS(parse_poly("a/65521", R), InputError);
}

TEST_CASE("parse(print(f)) = f on random polynomials") {
  auto R = PolyRing::make(PrimeField(), 6);
  Rng r(5);
  for (int k = 0; k < 200; ++k) {
    std::vector<Term> t;
    int n = 1 + static_cast<int>(r.below(8));
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(6);
      for (auto& x : e) x = static_cast<int>(r.below(4));
      t.push_back({Monomial::from_exps(e), static_cast<u32>(1 + r.below(65520))});
    }
    Poly f = Poly::from_terms(R, t);
    CHECK(parse_poly(f.str(), R) == f);
  }
}

TEST_CASE("int_det examples") {
  CHECK(int_det({{3, 5}, {5, 13}}) == 14);
  CHECK(int_det({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 1);
  // GM lattice Gram matrix with (a, b, (S)^2) = (1, 1, 3)
  IntMatrix gm = {{2, 2, 1}, {2, 4, 1}, {1, 1, 3}};
  CHECK(int_det(gm) == 10);
  CHECK_THROWS(int_det({{1, 2}}));
}

TEST_CASE("int_det agrees with cofactor expansion on random 3x3") {
  Rng r(3);
  for (int k = 0; k < 500; ++k) {
    long m[3][3];
    IntMatrix M(3, std::vector<BigInt>(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m[i][j] = static_cast<long>(r.below(19)) - 9;
        M[i][j] = m[i][j];
      }
    long d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(int_det(M) == d);
  }
}

TEST_CASE("univariate factorization examples") {
  PrimeField F7(7);
  auto fs = factor({6, 0, 1}, F7);  // x^2 - 1
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].f.size() == 2);
  CHECK(fs[1].f.size() == 2);
  auto g = factor({1, 0, 1}, F7);  // x^2 + 1
  REQUIRE(g.size() == 1);
  CHECK(upoly::deg(g[0].f) == 2);
  // exhaustive root search oracle
  for (u32 x = 0; x < 7; ++x) CHECK(upoly::eval({1, 0, 1}, x, F7) != 0);

  auto R = PolyRing::make(PrimeField(), {"x"});
  auto h = univar_factor(parse_poly("(x-2)^3", R));
  REQUIRE(h.size() == 1);
  CHECK(h[0].mult == 3);
  CHECK(h[0].f == parse_poly("x-2", R));
  CHECK_THROWS(univar_factor(Poly(R)));
}

TEST_CASE("univariate factorization reproduces input") {
  PrimeField F(101);
  Rng r(9);
  for (int k = 0; k < 60; ++k) {
    UPoly f(1 + r.below(12));
    for (auto& c : f) c = r.below(101);
    f.push_back(1 + r.below(100));
    // force some repeated factors
    if (k % 3 == 0) f = upoly::mul(f, {static_cast<u32>(r.below(101)), 1}, F), f = upoly::mul(f, {f[0], 1}, F);
    upoly::trim(f);
    u32 lead;
    auto fs = factor(f, F, &lead);
    UPoly prod = {lead};
    for (auto& x : fs)
      for (int m = 0; m < x.mult; ++m) prod = upoly::mul(prod, x.f, F);
    CHECK(prod == f);
    for (std::size_t a = 0; a < fs.size(); ++a) {
      CHECK(fs[a].f.back() == 1);
      // irreducible: no factor of degree <= deg/2 over F_101 by root test for small degrees
      if (upoly::deg(fs[a].f) >= 2 && upoly::deg(fs[a].f) <= 3) CHECK(roots(fs[a].f, F).empty());
      for (std::size_t b = a + 1; b < fs.size(); ++b) CHECK(fs[a].f != fs[b].f);
    }
  }
}

TEST_CASE("solve_linear examples") {
  PrimeField F;
  CHECK(solve_linear(Mat(2, 3), SolveMode::Kernel, F).kernel.rows() == 3);
  CHECK(solve_linear(Mat::identity(4), SolveMode::Kernel, F).kernel.rows() == 0);
  // conics through 5 random points
  Rng r(1);
  Mat A(5, 6);
  for (int i = 0; i < 5; ++i) {
    u32 x = r.below(F.p()), y = r.below(F.p()), z = r.below(F.p());
    u32 v[6] = {F.mul(x, x), F.mul(x, y), F.mul(x, z), F.mul(y, y), F.mul(y, z), F.mul(z, z)};
    for (int j = 0; j < 6; ++j) A(i, j) = v[j];
  }
  Mat K = solve_linear(A, SolveMode::Kernel, F).kernel;
  REQUIRE(K.rows() == 1);
  CHECK(mat_vec(A, K.row_vec(0), F) == std::vector<u32>(5, 0));
  Mat Z(2, 2);
  Z(0, 0) = 1;
  CHECK_THROWS_AS(solve(Z, {0, 1}, F), MathError);
  auto s = solve_linear(Mat::identity(2), SolveMode::Solve, F, {3, 4});
  CHECK(s.particular == std::vector<u32>{3, 4});
}

TEST_CASE("charpoly and det") {
  PrimeField F;
  Rng r(2);
  Mat A(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) A(i, j) = r.below(F.p());
  auto cp = charpoly(A, F);
  REQUIRE(cp.size() == 6);
  // constant term = (-1)^5 det
  CHECK(cp[0] == F.neg(det(A, F)));
  auto inv = inverse(A, F);
  REQUIRE(inv);
  CHECK(mat_mul(A, *inv, F) == Mat::identity(5));
}

TEST_CASE("binomials") {
  CHECK(binomial(BigInt(8), 3) == 56);
  CHECK(binomial(BigInt(-1), 3) == -1);
  CHECK(binomial(BigInt(2), 3) == 0);
  CHECK(binomial_l(10, 5) == 252);
}

TEST_CASE("monomial support bit i is variable i") {
  for (int i = 0; i < 32; ++i) {
    std::vector<int> e(32, 0);
    e[i] = 3;
    CHECK(mono_support(Monomial::from_exps(e)) == (u64(1) << i));
  }
}
