#include "doctest.h"

#include "hsf/grassmann.hpp"
#include "hsf/groebner.hpp"
#include "hsf/parse.hpp"
#include "hsf/ratmaps.hpp"

using namespace hsf;

namespace {

bool same_ideal(const std::vector<Poly>& I, const std::vector<Poly>& J) {
  auto GI = buchberger(I), GJ = buchberger(J);
  for (auto& f : J)
    if (!ideal_contains(GI, f)) return false;
  for (auto& f : I)
    if (!ideal_contains(GJ, f)) return false;
  return true;
}

}  // namespace

TEST_CASE("psi is birational onto G(1,4)") {
  PrimeField F;
  Rng rng(21);
  auto R6 = p6_ring(F);
  ProjVariety P6(R6, {});
  auto psi = map_from_system(P6, psi_forms(R6), pluecker_ring(F));
  const auto& G = psi.image();
  CHECK(G.dim() == 6);
  CHECK(G.degree() == 5);
  CHECK(same_ideal(G.gens(), pluecker_relations(psi.target_ring())));
  CHECK(same_ideal(image_ideal_by_interpolation(psi, 2, rng), G.gens()));
  auto fd = generic_fiber_degree(psi, rng);
  CHECK(fd.degree == 1);
  // invariant across sample points
  CHECK(generic_fiber_degree(psi, rng).degree == 1);
  CHECK(generic_fiber_degree(psi, rng).degree == 1);

  // pulled-back image generators vanish modulo the source ideal
  for (auto& g : G.gens()) CHECK(g.substitute(psi.forms()).is_zero());

  // preimage of a general hyperplane is a quadric through Sigma_3
  Poly h = random_linear_form(psi.target_ring(), rng);
  auto Q = preimage(psi, {h});
  CHECK(Q.gens().size() == 1);
  CHECK(Q.gens()[0].degree() == 2);
  auto S3 = segre_sigma3(F);
  for (int i = 0; i < 5; ++i) CHECK(Q.gens()[0].eval(S3.sample(rng)) == 0);
}

TEST_CASE("double cover of P^1 and the identity") {
  auto R = ring_of({"s", "t"});
  ProjVariety P1(R, {});
  Rng rng(22);
  auto sq = map_from_system(P1, parse_polys({"s^2", "t^2"}, R));
  CHECK(generic_fiber_degree(sq, rng).degree == 2);
  CHECK(sq.image().gens().empty());

  auto R3 = PolyRing::make(PrimeField(), 4);
  ProjVariety C(R3, parse_polys({"x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"}, R3));
  std::vector<Poly> id;
  for (int i = 0; i < 4; ++i) id.push_back(Poly::var(R3, i));
  auto phi = map_from_system(C, id, R3);
  CHECK(same_ideal(phi.image().gens(), C.gens()));
  CHECK(same_ideal(preimage(phi, {}).gens(), C.gens()));
  CHECK(generic_fiber_degree(phi, rng).degree == 1);
  CHECK_THROWS_AS(map_from_system(C, parse_polys({"x0*x2-x1^2"}, R3)), MathError);
}

TEST_CASE("projectivities preserve Hilbert data") {
  PrimeField F;
  Rng rng(23);
  auto S = segre_sigma3(F);
  Mat M = random_invertible(7, rng, F);
  auto T = apply_projectivity(S, M);
  CHECK(T.hilbert().numerator == S.hilbert().numerator);
  CHECK(T.degree() == 3);
  Point p = T.sample(rng);
  for (auto& g : T.gens()) CHECK(g.eval(p) == 0);
  auto U = apply_projectivity(S, Mat::identity(7));
  CHECK(same_ideal(U.gens(), S.gens()));
  CHECK_THROWS_AS(apply_projectivity(S, Mat(7, 7)), MathError);
}

TEST_CASE("map JSON") {
  auto R = ring_of({"s", "t"});
  ProjVariety P1(R, {});
  auto sq = map_from_system(P1, parse_polys({"s^2", "s*t", "t^2"}, R));
  (void)sq.image();
  auto j = to_json(sq, "P1", 1, 7);
  CHECK(j["degree_of_forms"] == 2);
  CHECK(j["forms"].size() == 3);
  CHECK(j["image_invariants"]["degree"] == 2);
  CHECK(j["seed"] == 7);
}
