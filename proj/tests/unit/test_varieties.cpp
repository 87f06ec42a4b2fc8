#include "doctest.h"

#include "hsf/parse.hpp"
#include "hsf/varieties.hpp"

using namespace hsf;

namespace {

RingPtr P(int n) { return PolyRing::make(PrimeField(), n + 1); }

ProjVariety twisted_cubic() {
  auto R = P(3);
  return ProjVariety(R, parse_polys({"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}, R));
}

ProjVariety veronese() {
  // 2x2 minors of the symmetric matrix [[x0,x1,x2],[x1,x3,x4],[x2,x4,x5]]
  auto R = P(5);
  return ProjVariety(R, parse_polys({"x0*x3-x1^2", "x0*x4-x1*x2", "x0*x5-x2^2", "x1*x4-x2*x3", "x1*x5-x2*x4",
                                     "x3*x5-x4^2"},
                                    R));
}

ProjVariety cubic_scroll() {
  // 2x2 minors of [[x0,x1,x3],[x1,x2,x4]]
  auto R = P(4);
  return ProjVariety(R, parse_polys({"x0*x2-x1^2", "x0*x4-x1*x3", "x1*x4-x2*x3"}, R));
}

}  // namespace

TEST_CASE("ideal_op examples") {
  auto R = PolyRing::make(PrimeField(), {"x", "y"});
  auto s = ideal_saturate(parse_polys({"x*y"}, R), parse_polys({"x"}, R));
  REQUIRE(s.size() == 1);
  CHECK(s[0] == parse_poly("y", R));
  auto i = ideal_intersect(parse_polys({"x"}, R), parse_polys({"y"}, R));
  REQUIRE(i.size() == 1);
  CHECK(i[0] == parse_poly("x*y", R));
  auto c = ideal_colon(parse_polys({"x^2*y", "y^3"}, R), parse_polys({"y"}, R));
  CHECK(c == buchberger(parse_polys({"x^2", "y^2"}, R)).gens());
  auto sum = ideal_op(parse_polys({"x"}, R), parse_polys({"y"}, R), IdealOp::Sum);
  CHECK(sum.size() == 2);
}

TEST_CASE("saturation is idempotent and equals iterated colon") {
  auto R = PolyRing::make(PrimeField(), 3);
  auto I = parse_polys({"x0^3*x1", "x0^2*x2^2", "x1^2*x2-x0*x2^2"}, R);
  auto J = parse_polys({"x0"}, R);
  auto s1 = ideal_saturate(I, J);
  auto s2 = ideal_saturate(s1, J);
  CHECK(s1 == s2);
  auto cur = buchberger(I).gens();
  for (int k = 0; k < 6; ++k) cur = ideal_colon(cur, J);
  CHECK(cur == s1);
}

TEST_CASE("saturate_irrelevant removes an embedded point") {
  Rng rng(3);
  auto R = P(2);
  // (x0) intersected with the irrelevant ideal squared
  auto I = parse_polys({"x0^2", "x0*x1", "x0*x2"}, R);
  auto S = saturate_irrelevant(I, rng);
  REQUIRE(S.size() == 1);
  CHECK(S[0] == parse_poly("x0", R));
}

TEST_CASE("eliminate the parameter of a rational normal curve") {
  auto R = PolyRing::make(PrimeField(), {"s", "t", "x0", "x1", "x2"});
  auto e = eliminate(parse_polys({"x0-s^2", "x1-s*t", "x2-t^2"}, R), {0, 1});
  REQUIRE(e.size() == 1);
  CHECK(e[0] == parse_poly("x1^2-x0*x2", R).monic());
}

TEST_CASE("invariants of curves and surfaces") {
  Rng rng(5);
  auto tc = invariants(twisted_cubic(), rng);
  CHECK(tc.dim == 1);
  CHECK(tc.degree == 3);
  CHECK(tc.genus == 0);
  auto ver = invariants(veronese(), rng);
  CHECK(ver.dim == 2);
  CHECK(ver.degree == 4);
  CHECK(ver.genus == 0);
  CHECK(ver.chi == 1);
  CHECK(euler_char_twist(veronese(), 2) == 15);
  // plane quartic: genus 3
  auto R = P(2);
  auto q = invariants(ProjVariety(R, parse_polys({"x0^4+x1^4+x2^4"}, R)), rng);
  CHECK(q.genus == 3);
  // genus stable across slices
  for (int k = 0; k < 3; ++k) CHECK(invariants(cubic_scroll(), rng).genus == 0);
  CHECK(degree_by_slicing(veronese(), rng) == 4);
  CHECK(degree_by_slicing(cubic_scroll(), rng) == 3);
}

TEST_CASE("graded pieces") {
  auto R = P(8);
  CHECK(graded_piece_dim({Poly::constant(R, 1)}, 1) == 9);
  auto R3 = P(3);
  CHECK(graded_piece_dim(twisted_cubic().gens(), 2) == 3);
  CHECK(graded_piece_dim(twisted_cubic().gens(), 3) == 20 - 10);
  CHECK_THROWS(graded_piece_dim(twisted_cubic().gens(), -1));
  (void)R3;
}

TEST_CASE("euler_char_twist agrees with the coordinate ring beyond regularity") {
  for (auto V : {twisted_cubic(), veronese(), cubic_scroll()}) {
    const auto& H = V.hilbert();
    for (long t = H.regularity_index(); t < H.regularity_index() + 4; ++t)
      CHECK(BigRat(H.hf(t)) == BigRat(euler_char_twist(V, t)));
  }
}

TEST_CASE("count_points and interpolation") {
  Rng rng(7);
  auto R = P(2);
  // conic and line: 2 points; avoiding one of them leaves 1
  auto pts = parse_polys({"x0^2+x1^2-x2^2", "x0"}, R);
  CHECK(count_points(pts, {}, rng) == 2);
  CHECK(count_points(pts, parse_polys({"x1-x2"}, R), rng) == 1);
  CHECK_THROWS_AS(count_points(parse_polys({"x0"}, R), {}, rng), MathError);
  // conic through 5 random points is unique
  std::vector<Point> p5;
  for (int i = 0; i < 5; ++i) p5.push_back(random_point(3, rng, R->field()));
  CHECK(forms_through_points(R, p5, 2).size() == 1);
  // interpolating the twisted cubic from parameterized points
  auto R3 = P(3);
  std::vector<Point> tc;
  for (int i = 0; i < 30; ++i) {
    u32 s = static_cast<u32>(rng.below(65521)), t = static_cast<u32>(rng.below(65521));
    PrimeField F;
    tc.push_back({F.mul(F.mul(s, s), s), F.mul(F.mul(s, s), t), F.mul(F.mul(s, t), t), F.mul(F.mul(t, t), t)});
  }
  auto q = forms_through_points(R3, tc, 2);
  CHECK(q.size() == 3);
  for (auto& f : q) CHECK(ideal_contains(twisted_cubic().gb(), f));
  CHECK(evaluation_rank(R3, tc, 4) == 13);
  auto rp = rational_points(pts, {}, rng);
  CHECK(rp.size() == 2);
  for (auto& p : rp)
    for (auto& f : pts) CHECK(f.eval(p) == 0);
}

TEST_CASE("sampling points from equations") {
  Rng rng(9);
  auto V = cubic_scroll();
  for (int k = 0; k < 3; ++k) {
    Point p = V.sample(rng);
    for (auto& f : V.gens()) CHECK(f.eval(p) == 0);
  }
}

TEST_CASE("singular_delta") {
  Rng rng(11);
  auto R = P(3);
  ProjVariety cayley(R, parse_polys({"x0*x1*x2+x0*x1*x3+x0*x2*x3+x1*x2*x3"}, R));
  auto s = singular_delta(cayley, rng);
  CHECK(s.finite);
  CHECK(s.delta == 4);
  ProjVariety fermat(R, parse_polys({"x0^3+x1^3+x2^3+x3^3"}, R));
  CHECK(singular_delta(fermat, rng).delta == 0);
  CHECK(singular_delta(veronese(), rng).delta == 0);
  ProjVariety cone(R, parse_polys({"x0^2+x1^2+x2^2"}, R));
  CHECK(singular_delta(cone, rng).delta == 1);
  ProjVariety nonnormal(R, parse_polys({"x0^2*x2-x1^2*x3"}, R));
  CHECK_FALSE(singular_delta(nonnormal, rng).finite);
}

TEST_CASE("chern_k2 of classical surfaces") {
  Rng rng(13);
  auto R = P(3);
  CHECK(chern_k2(ProjVariety(R, parse_polys({"x0*x3-x1*x2"}, R)), rng).k2 == 8);
  CHECK(chern_k2(ProjVariety(R, parse_polys({"x0^3+x1^3+x2^3+x3^3"}, R)), rng).k2 == 3);
  auto v = chern_k2(veronese(), rng);
  CHECK(v.k2 == 9);
  CHECK(v.c2 == 3);
  CHECK(chern_k2(cubic_scroll(), rng).k2 == 8);
  // quadric surface spanning a P^3 inside P^5
  auto R5 = P(5);
  CHECK(chern_k2(ProjVariety(R5, parse_polys({"x4", "x5", "x0*x3-x1*x2"}, R5)), rng).k2 == 8);
}

TEST_CASE("multiplicity_system") {
  Rng rng(17);
  auto V = twisted_cubic();
  auto R = V.ring();
  auto sampled = V.with_sampler([](Rng& r) {
    PrimeField F;
    u32 s = static_cast<u32>(r.below(F.p())), t = static_cast<u32>(r.below(F.p()));
    return Point{F.mul(F.mul(s, s), s), F.mul(F.mul(s, s), t), F.mul(F.mul(s, t), t), F.mul(F.mul(t, t), t)};
  });
  auto germs = projective_space_germs(4, R->field());
  CHECK(multiplicity_system(sampled, {}, germs, 1, 2, rng).size() == 3);
  CHECK(multiplicity_system(sampled, {}, germs, 2, 2, rng).empty());
  // squares of the ideal, computed independently
  std::vector<Poly> sq;
  for (std::size_t i = 0; i < V.gens().size(); ++i)
    for (std::size_t j = i; j < V.gens().size(); ++j) sq.push_back(V.gens()[i] * V.gens()[j]);
  auto sys = multiplicity_system(sampled, {}, germs, 2, 4, rng);
  CHECK(sys.size() == forms_basis(sq, 4).size());
  // relative to an ambient quadric containing the curve
  auto amb = std::vector<Poly>{V.gens()[0]};
  CHECK(multiplicity_system(sampled, amb, germs, 1, 2, rng).size() == 2);
}
