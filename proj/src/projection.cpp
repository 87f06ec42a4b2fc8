#include "hsf/fourfolds.hpp"
#include "hsf/linalg.hpp"

namespace hsf {

namespace {

// skew form of the hyperplane: H(u ^ v) = u^T A v
Mat skew_form(const Poly& H) {
  const PrimeField& F = H.ring()->field();
  Mat A(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      u32 c = H.derivative(pl_index(i, j)).eval(Point(10, 0));
      A(i, j) = c;
      A(j, i) = F.neg(c);
    }
  return A;
}

// random vector in the kernel of the rows u^T A (u in us), outside span(us)
std::vector<u32> isotropic_partner(const Mat& A, const std::vector<std::vector<u32>>& us, Rng& rng,
                                   const PrimeField& F) {
  Mat C(0, 5);
  for (auto& u : us) {
    std::vector<u32> row(5, 0);
    for (int j = 0; j < 5; ++j)
      for (int i = 0; i < 5; ++i) row[j] = F.add(row[j], F.mul(u[i], A(i, j)));
    C.append_row(row);
  }
  Mat K = kernel(C, F);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<u32> v(5, 0);
    for (int r = 0; r < K.rows(); ++r) {
      u32 c = static_cast<u32>(rng.below(F.p()));
      for (int j = 0; j < 5; ++j) v[j] = F.add(v[j], F.mul(c, K(r, j)));
    }
    Mat span(0, 5);
    for (auto& u : us) span.append_row(u);
    span.append_row(v);
    if (rank(span, F) == static_cast<int>(us.size()) + 1) return v;
  }
  throw RetryExhausted("sigma_{2,2} plane: no isotropic vector found");
}

}  // namespace

std::vector<Point> sigma22_plane(const DelPezzoFivefold& Y, Rng& rng) {
  const PrimeField& F = Y.ring->field();
  Mat A = skew_form(Y.hyperplane);
  std::vector<u32> u1 = random_point(5, rng, F);
  auto u2 = isotropic_partner(A, {u1}, rng, F);
  auto u3 = isotropic_partner(A, {u1, u2}, rng, F);
  return {Y.to_p8(wedge(u1, u2, F)), Y.to_p8(wedge(u1, u3, F)), Y.to_p8(wedge(u2, u3, F))};
}

ProjectionReport project_to_cubic(const HodgeSpecialFourfold& F, Rng& rng) {
  if (F.kind != FourfoldKind::GM || !F.Y) throw InputError("projection to a cubic fourfold needs a GM fourfold");
  if (!F.inv.K2) throw InputError("projection to a cubic fourfold: K^2 of S is unknown");
  RingPtr R8 = F.Y->ring;
  auto plane = sigma22_plane(*F.Y, rng);
  auto forms = linear_forms_through(R8, plane);
  if (forms.size() != 6) throw MathError("sigma_{2,2} plane does not span a P^2");
  RingPtr R5 = PolyRing::make(R8->field(), 6, "x");
  RationalMap pi(F.S, forms, R5);
  auto fib = generic_fiber_degree(pi, rng);
  if (fib.degree != 1)
    throw MathError("projection of S is not birational onto its image (fiber degree " + std::to_string(fib.degree) + ")");

  ProjectionReport rep;
  auto IR = image_ideal_by_interpolation(pi, 3, rng);
  Sampler sampler = [pi](Rng& g) {
    for (int i = 0; i < 100; ++i) {
      Point q = pi(pi.source().sample(g));
      if (!is_zero_point(q)) return q;
    }
    throw RetryExhausted("projection sampler: points lie on the plane");
  };
  rep.R = ProjVariety(R5, IR).with_sampler(sampler);
  if (rep.R.dim() != 2) throw MathError("the projected surface is not cut out by cubics");
  if (rep.R.degree() != F.inv.degree)
    throw MathError("projection drops the degree: " + std::to_string(F.inv.degree) + " -> " +
                    std::to_string(rep.R.degree()));
  rep.cubic = special_fourfold_from_surface(FourfoldKind::Cubic, std::nullopt, rep.R,
                                            "projection of " + F.source, rng, {}, F.inv.K2);
  // chi and K^2 are birational invariants; the nodes enter through delta
  rep.cubic.inv.chi = F.inv.chi;
  rep.cubic.inv.K2 = F.inv.K2;
  rep.cubic.inv.k2_source = F.inv.k2_source;
  rep.inv = rep.cubic.inv;
  rep.disc = discriminant(FourfoldKind::Cubic, rep.inv);
  return rep;
}

}  // namespace hsf
