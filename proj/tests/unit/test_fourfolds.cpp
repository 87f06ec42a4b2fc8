#include "doctest.h"

#include "hsf/fourfolds.hpp"

using namespace hsf;

namespace {

struct GMRow {
  long deg, g, chi, K2, delta, a, b;
  long d;
  const char* label;
};

struct CubicRow {
  long deg, g, chi, K2, delta;
  long d;
};

SurfaceInvariants gm_inv(const GMRow& r) {
  SurfaceInvariants s;
  s.degree = r.deg;
  s.genus = r.g;
  s.chi = r.chi;
  s.K2 = r.K2;
  s.delta = r.delta;
  s.cls = GrassClass{r.a, r.b};
  return s;
}

}  // namespace

TEST_CASE("GM discriminants of the tabulated surfaces") {
  // degree, genus, chi, K^2, delta, class (a, b) -> d and label
  const std::vector<GMRow> rows = {
      {2, 0, 1, 8, 0, 1, 1, 10, "'"},      {5, 1, 1, 5, 0, 3, 2, 10, "''"},    {3, 0, 1, 8, 0, 2, 1, 12, ""},
      {10, 4, 1, 0, 0, 6, 4, 16, ""},      {12, 5, 1, -1, 0, 7, 5, 18, "'"},   {9, 3, 1, 2, 0, 5, 4, 18, "''"},
      {9, 2, 1, 5, 0, 6, 3, 20, ""},       {10, 3, 1, 3, 0, 6, 4, 24, ""},     {12, 5, 1, 0, 0, 7, 5, 26, "'"},
      {13, 6, 1, -1, 0, 8, 5, 28, ""},     {11, 4, 1, 2, 0, 6, 5, 28, ""},     {14, 8, 2, 0, 0, 9, 5, 10, "'"},
      {1, 0, 1, 9, 0, 1, 0, 10, "''"},     {13, 6, 1, -2, 0, 8, 5, 20, ""},    {7, 0, 1, 8, 0, 4, 3, 20, ""},
      {17, 11, 2, -1, 0, 11, 6, 26, "''"}, {9, 2, 1, 5, 0, 5, 4, 26, "''"},    {11, 3, 1, 3, 1, 7, 4, 26, "''"},
      {14, 7, 1, -1, 0, 9, 5, 34, "'"},
  };
  for (auto& r : rows) {
    CAPTURE(r.deg);
    CAPTURE(r.g);
    auto rep = discriminant(FourfoldKind::GM, gm_inv(r));
    CHECK(rep.d == r.d);
    CHECK(rep.label == r.label);
    CHECK(rep.consistent);
  }
}

TEST_CASE("cubic discriminants of the tabulated surfaces") {
  const std::vector<CubicRow> rows = {{5, 1, 1, 5, 0, 14},  {4, 0, 1, 8, 0, 14},   {7, 1, 1, 7, 1, 26}, {7, 0, 1, 8, 3, 26},
                                      {10, 6, 1, -1, 0, 38}, {8, 0, 1, 8, 6, 38}, {9, 2, 1, 5, 5, 42}};
  for (auto& r : rows) {
    SurfaceInvariants s;
    s.degree = r.deg;
    s.genus = r.g;
    s.chi = r.chi;
    s.K2 = r.K2;
    s.delta = r.delta;
    auto rep = discriminant(FourfoldKind::Cubic, s);
    CHECK(rep.d == r.d);
    CHECK(rep.label.empty());
  }
}

TEST_CASE("GM labels: exactly one parity rule applies when d = 2 mod 8") {
  Rng rng(7);
  int labelled = 0;
  for (int it = 0; it < 4000; ++it) {
    SurfaceInvariants s;
    s.degree = 1 + static_cast<long>(rng.below(30));
    s.genus = static_cast<long>(rng.below(20));
    s.chi = 1 + static_cast<long>(rng.below(2));
    s.K2 = static_cast<long>(rng.below(20)) - 10;
    s.delta = static_cast<long>(rng.below(4));
    s.cls = GrassClass{static_cast<long>(rng.below(15)), static_cast<long>(rng.below(15))};
    auto rep = discriminant(FourfoldKind::GM, s);
    CHECK(rep.consistent);
    bool two_mod_eight = ((rep.d % 8) + 8) % 8 == 2;
    CHECK(rep.label.empty() == !two_mod_eight);
    labelled += !rep.label.empty();
  }
  CHECK(labelled > 0);
}

TEST_CASE("self-intersection needs K^2") {
  SurfaceInvariants s;
  s.degree = 2;
  s.cls = GrassClass{1, 1};
  CHECK_THROWS_AS(self_intersection(FourfoldKind::GM, s), InputError);
}

TEST_CASE("parameter count arithmetic") {
  struct Row {
    FourfoldKind k;
    long I, NV, NX, bound;
  };
  const std::vector<Row> rows = {
      {FourfoldKind::GM, 12, 27, 0, 1},   {FourfoldKind::GM, 14, 24, 0, 2},   {FourfoldKind::GM, 31, 8, 0, 1},
      {FourfoldKind::GM, 24, 18, 3, 1},   {FourfoldKind::GM, 34, 4, 0, 2},    {FourfoldKind::GM, 16, 21, 0, 3},
      {FourfoldKind::GM, 28, 11, 0, 1},   {FourfoldKind::GM, 15, 29, 5, 1},   {FourfoldKind::GM, 11, 32, 4, 1},
      {FourfoldKind::GM, 16, 26, 3, 1},   {FourfoldKind::GM, 14, 25, 0, 1},   {FourfoldKind::GM, 13, 27, 1, 1},
      {FourfoldKind::GM, 11, 30, 2, 1},   {FourfoldKind::GM, 10, 31, 2, 1},   {FourfoldKind::Cubic, 25, 35, 5, 1},
      {FourfoldKind::Cubic, 28, 29, 2, 1}, {FourfoldKind::Cubic, 14, 42, 1, 1}, {FourfoldKind::Cubic, 13, 44, 2, 1},
      {FourfoldKind::Cubic, 10, 47, 2, 1}, {FourfoldKind::Cubic, 9, 48, 2, 1},
  };
  for (auto& r : rows) {
    CAPTURE(r.I);
    CAPTURE(r.NV);
    auto p = parameter_count_from(r.k, r.I, r.NV, r.NX);
    CHECK(p.codim_bound == r.bound);
    CHECK(p.ambient_system_dim == (r.k == FourfoldKind::GM ? 39 : 55));
  }
  CHECK(parameter_count_from(FourfoldKind::GM, 12, 27, 0).tuple_string() == "(1, (12, 27, 0))");
}

TEST_CASE("minimal generator degrees") {
  RingPtr R = ring_of({"x", "y", "z", "w"});
  auto x = Poly::var(R, 0), y = Poly::var(R, 1), z = Poly::var(R, 2), w = Poly::var(R, 3);
  // twisted cubic plus a redundant multiple
  std::vector<Poly> g = {x * z - y * y, y * w - z * z, x * w - y * z, (x * z - y * y) * w};
  auto gb = buchberger(g);
  CHECK(minimal_generator_degrees(gb.gens()) == std::vector<int>{2, 2, 2});
  std::vector<Poly> h = {x, y * y, x * z + y * y * z, z * z * z};
  CHECK(minimal_generator_degrees(buchberger(h).gens()) == std::vector<int>{1, 2, 3});
}

TEST_CASE("tau-quadric GM fourfold") {
  Rng rng(20211004);
  auto F = special_gm_fourfold("tau-quadric", rng);
  CHECK(F.inv.degree == 2);
  CHECK(F.inv.genus == 0);
  CHECK(F.smooth_surface);
  REQUIRE(F.inv.K2);
  CHECK(*F.inv.K2 == 8);
  CHECK(F.inv.k2_source == K2Source::Computed);
  CHECK(F.cut_degrees == std::vector<int>{1, 1, 1, 1, 1, 2});
  REQUIRE(F.inv.cls);
  CHECK(class_string(*F.inv.cls) == "s_(3,1)+s_(2,2)");
  CHECK(discriminant(F.kind, F.inv).display() == "10(')");
  auto text = describe(F);
  CHECK(text.find("discriminant 10(')") != std::string::npos);
  CHECK(text.find("Type: ordinary") != std::string::npos);

  SUBCASE("parameter count") {
    auto p = parameter_count(F);
    CHECK(p.tuple_string() == "(1, (31, 8, 0))");
    CHECK(p.minimal);
  }
  SUBCASE("congruence of 1-secant lines") {
    CHECK(direct_secant_line_count(F, rng) == 1);
    auto c = detect_congruence(F, rng);
    CHECK(c.e_counts == std::vector<long>{1, 0, 0, 0, 0});
    REQUIRE(c.detected_e);
    CHECK(*c.detected_e == 1);
    for (auto& cl : c.clusters)
      if (cl.e) CHECK(cl.secancy == 2L * cl.e - 1);
  }
  SUBCASE("Fano map is the projection from the span") {
    auto m = fano_map(F, 1, rng);
    CHECK(m.kind.name == "PP^4");
    CHECK(m.kind.index == 5);
    CHECK(m.fiber_degree_X == 1);
    CHECK(m.mu.forms().size() == 5);
    for (auto& f : m.mu.forms()) CHECK(f.degree() == 1);
  }
  SUBCASE("sigma_{2,2} planes lie in Y") {
    auto pl = sigma22_plane(*F.Y, rng);
    const PrimeField& K = F.Y->ring->field();
    for (int it = 0; it < 5; ++it) {
      Point p(9, 0);
      for (auto& q : pl) {
        u32 c = static_cast<u32>(rng.below(K.p()));
        for (int i = 0; i < 9; ++i) p[i] = K.add(p[i], K.mul(c, q[i]));
      }
      for (auto& g : F.Y->ideal) CHECK(g.eval(p) == 0);
    }
    CHECK(linear_forms_through(F.Y->ring, pl).size() == 6);
  }
  SUBCASE("projection from a plane avoiding S keeps the degree") {
    auto pr = project_to_cubic(F, rng);
    CHECK(pr.R.degree() == F.inv.degree);
    CHECK(pr.cubic.kind == FourfoldKind::Cubic);
  }
  SUBCASE("another fourfold through S") {
    auto G = with_other_fourfold(F, rng);
    CHECK(G.X_form != F.X_form);
    CHECK(ideal_contains(G.S.gb(), G.X_form));
  }
}

TEST_CASE("constructions are deterministic for a fixed seed") {
  Rng a(99), b(99);
  auto F = special_gm_fourfold("tau-quadric", a);
  auto G = special_gm_fourfold("tau-quadric", b);
  CHECK(describe_json(F).dump() == describe_json(G).dump());
}

TEST_CASE("quintic del Pezzo cubic fourfold") {
  Rng rng(5);
  auto F = special_cubic_fourfold("quintic-del-pezzo", rng);
  CHECK(F.inv.degree == 5);
  CHECK(F.inv.genus == 1);
  REQUIRE(F.inv.K2);
  CHECK(*F.inv.K2 == 5);
  CHECK(discriminant(F.kind, F.inv).d == 14);
  CHECK(describe(F).find("Special cubic fourfold of discriminant 14") == 0);
  CHECK(parameter_count(F).tuple_string() == "(1, (25, 35, 5))");
}

TEST_CASE("input errors") {
  Rng rng(1);
  CHECK_THROWS_AS(special_gm_fourfold("no-such-surface", rng), InputError);
  CHECK_THROWS_AS(special_cubic_fourfold(PlaneModelSpec{4, {5, 1}}, rng), InputError);
}

TEST_CASE("projecting the GM quintic del Pezzo gives a cubic of discriminant 14") {
  Rng rng(20211004);
  auto F = special_gm_fourfold("quintic-del-pezzo", rng);
  auto pr = project_to_cubic(F, rng);
  CHECK(pr.R.degree() == 5);
  CHECK(pr.inv.genus == 1);
  CHECK(pr.inv.delta == 0);
  CHECK(pr.disc.d == 14);
}

TEST_CASE("elliptic plane-model curves are refused") {
  Rng rng(3);
  CHECK_THROWS_AS(special_gm_fourfold(PlaneModelSpec{6, {4, 6}}, CurveSpec{3, {1, 6}}, rng), Unimplemented);
}

TEST_CASE("the C14 associated K3 surface") {
  Rng rng(20211004);
  auto F = special_cubic_fourfold("quintic-del-pezzo", rng);
  auto m = fano_map(F, 1, rng, false);
  CHECK(m.kind.name == "PP^4");
  auto U = surface_U(F, m, rng);
  CHECK(U.inv.degree == 9);
  CHECK(U.inv.genus == 8);
  REQUIRE(U.exceptional.size() == 1);
  CHECK(U.exceptional[0].degree == 1);
  CHECK(U.exceptional[0].count == 5);
  auto K = k3_model(F, U, rng);
  CHECK(K.inv.degree == 14);
  CHECK(K.inv.genus == 8);
  CHECK(K.k3.ambient_dim() == 8);
}
