#pragma once

#include <string>
#include <vector>

#include "hsf/varieties.hpp"

namespace hsf {

// Pluecker coordinates of G(1,4) in P^9, ordered p01 p02 p03 p04 p12 p13 p14 p23 p24 p34.
int pl_index(int i, int j);
RingPtr pluecker_ring(const PrimeField& F);
std::vector<Poly> pluecker_relations(const RingPtr& R);
ProjVariety pluecker_g14(const PrimeField& F);

Point wedge(const std::vector<u32>& u, const std::vector<u32>& v, const PrimeField& F);
// rank-2 decomposition of a point of G(1,4): two vectors spanning the line
std::pair<std::vector<u32>, std::vector<u32>> decompose_pluecker(const Point& p, const PrimeField& F);
// antisymmetric 5x5 matrix of a Pluecker vector
Mat pluecker_matrix(const Point& p, const PrimeField& F);
// 10x10 matrix of the induced action of g in GL(5) on Pluecker coordinates
Mat induced_action(const Mat& g, const PrimeField& F);
Mat random_invertible(int n, Rng& rng, const PrimeField& F);

enum class Schubert { S11, S2, S31, S22 };
Schubert parse_schubert(const std::string& s);  // "1,1" "2" "3,1" "2,2"
std::string schubert_name(Schubert s);
// linear conditions (forms on P^9) cutting the cycle out of G(1,4) for the flag moved by g
std::vector<Poly> schubert_conditions(Schubert s, const Mat& g, const RingPtr& R);
ProjVariety schubert_ideal(Schubert s, Rng& rng, const PrimeField& F);

struct GrassClass {
  long a = 0;  // coefficient of s_(3,1)
  long b = 0;  // coefficient of s_(2,2)
  bool operator==(const GrassClass& o) const { return a == o.a && b == o.b; }
};
std::string class_string(const GrassClass& c);  // "6*s_(3,1)+5*s_(2,2)"

// Class of a surface given in coordinates y with p = E y (E is 10 x k; identity
// when S is given in Pluecker coordinates). b = #(S . s_(1,1)), a = #(S . s_2).
GrassClass class_in_g14(const ProjVariety& S, const Mat& E, Rng& rng);

// Segre threefold P^1 x P^2 in the hyperplane x6 = 0 of P^6, and the map psi
// given by the quadrics through it.
RingPtr p6_ring(const PrimeField& F);
ProjVariety segre_sigma3(const PrimeField& F);
std::vector<Poly> psi_forms(const RingPtr& R6);
Point sigma3_point(const std::vector<u32>& a2, const std::vector<u32>& b3, const PrimeField& F);

// Y = G(1,4) cut by a hyperplane, in P^8 coordinates y with p = E y.
struct DelPezzoFivefold {
  Poly hyperplane;   // linear form on P^9
  Mat E;             // 10 x 9
  RingPtr ring;      // P^8
  std::vector<Poly> ideal;
  ProjVariety Y;
  Point to_p8(const Point& p9) const;
  Point to_p9(const Point& y) const;
  Point random_point(Rng& rng) const;  // in P^8 coordinates
  GermFn germs() const;
};
DelPezzoFivefold del_pezzo_fivefold(const Poly& hyperplane);
DelPezzoFivefold random_del_pezzo_fivefold(Rng& rng, const PrimeField& F);
// random Y containing the given points of G(1,4) (their span must be a proper subspace of a hyperplane)
DelPezzoFivefold del_pezzo_containing(const std::vector<Point>& pts9, Rng& rng, const PrimeField& F);

// Named fixture surfaces inside G(1,4) (Pluecker coordinates) with a point sampler.
struct G14Surface {
  std::string name;
  ProjVariety S;  // in P^9
  Sampler sampler;
};
G14Surface named_surface(const std::string& name, Rng& rng, const PrimeField& F);
std::vector<std::string> named_surface_list();
// Hodge star on lines of the P^3 spanned by e0..e3 (swaps the two rulings of classes)
std::vector<Poly> hodge_star_g13(const std::vector<Poly>& gens);
Point hodge_star_point(const Point& p, const PrimeField& F);

// Restrict a P^9 surface to the P^8 coordinates of Y (S must lie in the hyperplane).
ProjVariety restrict_to_fivefold(const ProjVariety& S9, const DelPezzoFivefold& Y);

}  // namespace hsf
