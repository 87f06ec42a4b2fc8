#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hsf/field.hpp"
#include "hsf/monomial.hpp"

namespace hsf {

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(PrimeField field, std::vector<std::string> names, MonomialOrder order);

  static RingPtr make(PrimeField field, std::vector<std::string> names);
  static RingPtr make(PrimeField field, std::vector<std::string> names, MonomialOrder order);
  // variables x0..x{n-1}
  static RingPtr make(PrimeField field, int n, const std::string& prefix = "x");

  const PrimeField& field() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  // grading used for homogeneity and sugar: the order's weights
  const std::vector<int>& grading() const { return order_.weights(); }
  int var_index(const std::string& name) const;  // -1 if absent

  int cmp(const Monomial& a, const Monomial& b) const { return order_.cmp(a, b); }
  long wdeg(const Monomial& m) const;

  RingPtr with_order(const MonomialOrder& o) const;

  bool same_as(const PolyRing& o) const {
    return field_ == o.field_ && names_ == o.names_ && order_ == o.order_;
  }

 private:
  PrimeField field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
  bool unit_grading_ = true;
};

struct Term {
  Monomial m;
  u32 c;
};

// Sparse polynomial; terms strictly decreasing in the ring's order, no zero
// coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr r) : ring_(std::move(r)) {}
  Poly(RingPtr r, std::vector<Term> sorted_terms) : ring_(std::move(r)), t_(std::move(sorted_terms)) {}

  static Poly constant(RingPtr r, u32 c);
  static Poly var(RingPtr r, int i);
  static Poly monomial(RingPtr r, const Monomial& m, u32 c = 1);
  // sorts and combines
  static Poly from_terms(RingPtr r, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return t_; }
  std::vector<Term>& mutable_terms() { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  const Term& lt() const { return t_.front(); }
  const Monomial& lm() const { return t_.front().m; }
  u32 lc() const { return t_.front().c; }

  int degree() const;  // total degree, -1 for zero
  long wdegree() const;  // grading degree, -1 for zero
  bool is_homogeneous() const;
  Poly homogeneous_part(int d) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(u32 c) const;
  Poly mul_term(const Monomial& m, u32 c) const;
  Poly pow(int e) const;
  Poly monic() const;
  // this - c*m*g
  Poly sub_mul(u32 c, const Monomial& m, const Poly& g) const;

  u32 eval(const std::vector<u32>& pt) const;
  Poly derivative(int var) const;
  // compose: variable i -> images[i] (all in one target ring)
  Poly substitute(const std::vector<Poly>& images) const;
  // same variables, different ring object (e.g. other order): re-sort
  Poly in_ring(const RingPtr& r) const;
  // embed into a ring with more variables: var i -> var map[i]
  Poly embed(const RingPtr& r, const std::vector<int>& map) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_ring(const Poly& o) const;
  RingPtr ring_;
  std::vector<Term> t_;
};

std::string mono_str(const PolyRing& r, const Monomial& m);

// ring from a list of names with the default order
RingPtr ring_of(std::initializer_list<const char*> names, u32 p = default_characteristic());

// all monomials of total degree d in n variables, in decreasing grevlex order
std::vector<Monomial> monomials_of_degree(int n, int d);

}  // namespace hsf
