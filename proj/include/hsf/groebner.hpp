#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "hsf/poly.hpp"

namespace hsf {

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr r, std::vector<Poly> g, bool reduced, long truncated_at = -1)
      : ring_(std::move(r)), gens_(std::move(g)), reduced_(reduced), truncated_(truncated_at) {}

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool reduced() const { return reduced_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_constant() && !gens_[0].is_zero(); }
  bool is_zero_ideal() const { return gens_.empty(); }
  // -1 for a complete basis; otherwise valid only up to this degree
  long truncated_at() const { return truncated_; }
  std::vector<Monomial> leading_monomials() const;

 private:
  RingPtr ring_;
  std::vector<Poly> gens_;
  bool reduced_ = false;
  long truncated_ = -1;
};

struct GBOptions {
  enum class Selection { Sugar, Normal };
  Selection selection = Selection::Sugar;
  // homogeneous input: stop once all remaining pairs exceed this degree
  long max_degree = -1;
  // wall-clock budget; MathError("time budget exceeded") when passed
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

GroebnerBasis buchberger(const std::vector<Poly>& gens, const GBOptions& opt = {});
Poly normal_form(const Poly& f, const GroebnerBasis& G);
bool ideal_contains(const GroebnerBasis& G, const Poly& f);

// Process-wide default budget applied when a call passes no deadline.
void set_gb_deadline(std::optional<std::chrono::steady_clock::time_point> d);
std::optional<std::chrono::steady_clock::time_point> gb_deadline();

// Syzygies of homogeneous generators: vectors v with sum v_i g_i = 0,
// generating the first syzygy module (Schreyer-style, from the S-pair
// reductions of a cofactor-tracking basis computation).
std::vector<std::vector<Poly>> syzygies(const std::vector<Poly>& gens);

// Reduced basis together with cofactors expressing every basis element in
// the input generators.
struct TrackedBasis {
  GroebnerBasis gb;
  std::vector<std::vector<Poly>> cofactors;  // cofactors[k][i]: coefficient of input i in gb[k]
  std::vector<std::vector<Poly>> syzygies;
};
TrackedBasis buchberger_tracked(const std::vector<Poly>& gens);

}  // namespace hsf
