#include "doctest.h"

#include "hsf/grassmann.hpp"

using namespace hsf;

namespace {

std::vector<u32> series_eval(const Poly& f, const Germ& g, int order, const PrimeField& F) {
  std::vector<u32> total(order, 0);
  for (auto& t : f.terms()) {
    std::vector<u32> acc(order, 0);
    acc[0] = t.c;
    for (int i = 0; i < static_cast<int>(g.size()); ++i)
      for (int e = 0; e < static_cast<int>(t.m.exp(i)); ++e) {
        std::vector<u32> nxt(order, 0);
        for (int a = 0; a < order; ++a)
          for (int b = 0; a + b < order; ++b) nxt[a + b] = F.add(nxt[a + b], F.mul(acc[a], g[i][b]));
        acc = nxt;
      }
    for (int k = 0; k < order; ++k) total[k] = F.add(total[k], acc[k]);
  }
  return total;
}

}  // namespace

TEST_CASE("G(1,4) and random points") {
  PrimeField F;
  Rng rng(11);
  auto G = pluecker_g14(F);
  CHECK(G.gens().size() == 5);
  CHECK(G.dim() == 6);
  CHECK(G.degree() == 5);
  for (int i = 0; i < 5; ++i) {
    Point p = G.sample(rng);
    CHECK(rank(pluecker_matrix(p, F), F) == 2);
    for (auto& r : G.gens()) CHECK(r.eval(p) == 0);
    auto [u, v] = decompose_pluecker(p, F);
    Point q = wedge(u, v, F);
    // q is a nonzero multiple of p
    Mat M(2, 10);
    for (int k = 0; k < 10; ++k) M(0, k) = p[k], M(1, k) = q[k];
    CHECK(rank(M, F) == 1);
  }
}

TEST_CASE("induced action is multiplicative on wedges") {
  PrimeField F;
  Rng rng(12);
  Mat g = random_invertible(5, rng, F);
  Mat L = induced_action(g, F);
  std::vector<u32> u(5), v(5);
  for (int i = 0; i < 5; ++i) u[i] = rng.below(F.p()), v[i] = rng.below(F.p());
  CHECK(mat_vec(L, wedge(u, v, F), F) == wedge(mat_vec(g, u, F), mat_vec(g, v, F), F));
}

TEST_CASE("psi maps P^6 into G(1,4) and Sigma_3 is a Segre threefold") {
  PrimeField F;
  Rng rng(13);
  auto R6 = p6_ring(F);
  auto psi = psi_forms(R6);
  auto rel = pluecker_relations(pluecker_ring(F));
  for (int i = 0; i < 5; ++i) {
    Point x = random_point(7, rng, F);
    Point y = eval_forms(psi, x);
    for (auto& r : rel) CHECK(r.eval(y) == 0);
  }
  auto S = segre_sigma3(F);
  CHECK(S.dim() == 3);
  CHECK(S.degree() == 3);
  std::vector<Point> pts;
  for (int i = 0; i < 60; ++i) pts.push_back(S.sample(rng));
  CHECK(forms_through_points(R6, pts, 2).size() == 10);
}

TEST_CASE("Schubert cycles") {
  PrimeField F;
  Rng rng(14);
  auto s11 = schubert_ideal(Schubert::S11, rng, F);
  CHECK(s11.dim() == 4);
  CHECK(s11.degree() == 2);
  auto s2 = schubert_ideal(Schubert::S2, rng, F);
  CHECK(s2.dim() == 4);
  CHECK(s2.degree() == 3);
  auto s31 = schubert_ideal(Schubert::S31, rng, F);
  CHECK(s31.dim() == 2);
  CHECK(s31.degree() == 1);
  auto s22 = schubert_ideal(Schubert::S22, rng, F);
  CHECK(s22.dim() == 2);
  CHECK(s22.degree() == 1);
  CHECK(parse_schubert("3,1") == Schubert::S31);
  CHECK_THROWS(parse_schubert("4"));
}

TEST_CASE("classes of fixture surfaces") {
  PrimeField F;
  Rng rng(15);
  struct Row {
    const char* name;
    long deg, a, b;
  };
  for (Row r : {Row{"tau-quadric", 2, 1, 1}, Row{"quintic-del-pezzo", 5, 3, 2}, Row{"cubic-scroll", 3, 2, 1},
                Row{"sigma-plane", 1, 1, 0}}) {
    CAPTURE(r.name);
    auto S = named_surface(r.name, rng, F);
    CHECK(S.S.dim() == 2);
    CHECK(S.S.degree() == r.deg);
    Point p = S.sampler(rng);
    for (auto& g : S.S.gens()) CHECK(g.eval(p) == 0);
    auto c = class_in_g14(S.S, Mat::identity(10), rng);
    CHECK(c.a == r.a);
    CHECK(c.b == r.b);
  }
  CHECK(class_string({6, 5}) == "6*s_(3,1)+5*s_(2,2)");
  CHECK(class_string({1, 0}) == "s_(3,1)");
}

TEST_CASE("class does not depend on the flags") {
  PrimeField F;
  Rng rng(16);
  auto S = named_surface("cubic-scroll", rng, F);
  auto c1 = class_in_g14(S.S, Mat::identity(10), rng);
  auto c2 = class_in_g14(S.S, Mat::identity(10), rng);
  CHECK(c1 == c2);
}

TEST_CASE("del Pezzo fivefold sampling, germs and restriction") {
  PrimeField F;
  Rng rng(17);
  auto Y = random_del_pezzo_fivefold(rng, F);
  CHECK(Y.Y.dim() == 5);
  CHECK(Y.Y.degree() == 5);
  Point y = Y.random_point(rng);
  for (auto& g : Y.ideal) CHECK(g.eval(y) == 0);
  auto germ = Y.germs()(y, 4, rng);
  // the truncated germ satisfies the quadrics modulo t^4
  for (auto& g : Y.ideal) CHECK(series_eval(g, germ, 4, F) == std::vector<u32>(4, 0));
  CHECK(germ.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(germ[i][0] == y[i]);

  // a quadric surface inside Y
  auto S = named_surface("tau-quadric", rng, F);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(S.sampler(rng));
  auto Y2 = del_pezzo_containing(pts, rng, F);
  auto S8 = restrict_to_fivefold(S.S, Y2);
  CHECK(S8.dim() == 2);
  CHECK(S8.degree() == 2);
  CHECK(class_in_g14(S8, Y2.E, rng) == GrassClass{1, 1});
}
