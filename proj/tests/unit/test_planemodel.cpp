#include "doctest.h"

#include "hsf/planemodel.hpp"

using namespace hsf;

namespace {

PlaneModelSpec M(std::vector<int> v) { return model_spec_from_list(v); }
CurveSpec Cv(std::vector<int> v) { return curve_spec_from_list(v); }

}  // namespace

TEST_CASE("model and curve numerics") {
  auto a = model_numerics(M({4, 5, 1}));
  CHECK(a.degree == 7);
  CHECK(a.genus == 2);
  CHECK(a.K2 == 3);
  CHECK(a.N == 6);
  auto b = model_numerics(M({6, 4, 6}));
  CHECK(b.degree == 8);
  CHECK(b.genus == 4);
  CHECK(b.N == 5);
  CHECK_THROWS_AS(model_numerics(M({1})), InputError);

  auto c = curve_numerics(M({4, 5, 1}), Cv({2, 3, 0}));
  CHECK(c.degree == 5);
  CHECK(c.genus == 0);
  c = curve_numerics(M({7, 0, 6, 2}), Cv({2, 0, 5, 0}));
  CHECK(c.degree == 4);
  c = curve_numerics(M({6, 4, 6}), Cv({3, 3, 5}));
  CHECK(c.degree == 5);
  CHECK(c.genus == 1);
  CHECK_THROWS_AS(curve_numerics(M({4, 5, 1}), Cv({2, 6, 0})), InputError);

  auto s = expected_surface_numerics(M({4, 5, 1}), Cv({2, 3, 0}));
  CHECK(s.degree == 9);
  CHECK(s.genus == 2);
  s = expected_surface_numerics(M({7, 0, 6, 2}), Cv({2, 0, 5, 0}));
  CHECK(s.degree == 11);
  CHECK(s.genus == 4);

  CHECK(parse_int_list("[4,5,1]") == std::vector<int>{4, 5, 1});
  CHECK(parse_int_list("2, 3,0") == std::vector<int>{2, 3, 0});
  CHECK_THROWS_AS(parse_int_list("4;5"), InputError);
  CHECK(list_string(4, {5, 1}) == "[4,5,1]");
  CHECK(splittings(5) == std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {1, 4}, {4, 1}});
}

TEST_CASE("plane model images") {
  Rng rng(31);
  struct Row {
    std::vector<int> spec;
    long deg, g, N;
  };
  for (Row r : {Row{{2}, 4, 0, 5}, Row{{3, 0, 1}, 5, 0, 6}, Row{{4, 5, 1}, 7, 2, 6}}) {
    auto Mo = build_model_map(M(r.spec), rng);
    CHECK(static_cast<long>(Mo.system.size()) == r.N + 1);
    auto T = model_image(Mo, 3, rng);
    auto inv = invariants(T, rng);
    CHECK(inv.dim == 2);
    CHECK(inv.degree == r.deg);
    CHECK(inv.genus == r.g);
  }
}

TEST_CASE("curves on the model and the projectivity") {
  Rng rng(32);
  PrimeField F;
  auto Mo = build_model_map(M({4, 5, 1}), rng);
  auto C = build_curve(Mo, Cv({2, 3, 0}), rng);
  CHECK(C.image.degree == 5);
  // the image curve lies on T
  for (int i = 0; i < 5; ++i) {
    u32 t = static_cast<u32>(rng.below(F.p()));
    Point s = eval_curve(C.gamma, t, F);
    Point x = eval_curve(C.image, t, F);
    Point y = eval_forms(Mo.system, s);
    Mat P(2, 7);
    for (int k = 0; k < 7; ++k) P(0, k) = x[k], P(1, k) = y[k];
    CHECK(rank(P, F) == 1);
  }
  auto pj = find_projectivity(C.image, rng, F);
  CHECK(det(pj.sigma, F) != 0);
  CHECK(pj.d1 + pj.d2 == 5);
  auto S3 = segre_sigma3(F);
  for (int i = 0; i < 5; ++i) {
    Point x = mat_vec(pj.sigma, eval_curve(C.image, static_cast<u32>(rng.below(F.p())), F), F);
    for (auto& g : S3.gens()) CHECK(g.eval(x) == 0);
  }
  CHECK_THROWS_AS(build_curve(build_model_map(M({6, 4, 6}), rng), Cv({3, 3, 5}), rng), Unimplemented);
  try {
    build_curve(build_model_map(M({6, 4, 6}), rng), Cv({3, 3, 5}), rng);
  } catch (const Unimplemented& e) {
    CHECK(std::string(e.what()) == "elliptic matching unimplemented");
  }
}

TEST_CASE("surfaces in G(1,4) from plane models") {
  Rng rng(33);
  struct Row {
    std::vector<int> m, c;
    long deg, g, a, b;
  };
  for (Row r : {Row{{4, 5, 1}, {2, 3, 0}, 9, 2, 5, 4}, Row{{3, 0, 1}, {2, 0, 1}, 7, 0, 4, 3},
                Row{{7, 0, 6, 2}, {2, 0, 5, 0}, 11, 4, 6, 5}}) {
    auto B = build_surface_in_g14(M(r.m), Cv(r.c), rng);
    CAPTURE(B.sigma.d1);
    CHECK(B.degree == r.deg);
    CHECK(B.genus == r.g);
    auto cl = class_in_g14(B.S, B.Y.E, rng);
    CHECK(cl.a == r.a);
    CHECK(cl.b == r.b);
    Point p = B.S.sample(rng);
    for (auto& g : B.S.gens()) CHECK(g.eval(p) == 0);
  }
}
