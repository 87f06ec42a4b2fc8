#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "hsf/varieties.hpp"

namespace hsf {

// phi: V --> P^m given by forms of one degree on V.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(ProjVariety source, std::vector<Poly> forms, RingPtr target);

  const ProjVariety& source() const { return st_->source; }
  const std::vector<Poly>& forms() const { return st_->forms; }
  const RingPtr& target_ring() const { return st_->target; }
  int target_dim() const { return target_ring()->nvars() - 1; }
  int forms_degree() const { return st_->degree; }

  Point operator()(const Point& p) const { return eval_forms(forms(), p); }

  // Closure of the image by elimination on the graph (lazily cached).
  const ProjVariety& image() const;
  bool image_cached() const;
  // Base locus ideal: I_V + forms.
  std::vector<Poly> base_locus() const;

 private:
  struct State {
    ProjVariety source;
    std::vector<Poly> forms;
    RingPtr target;
    int degree = 0;
    std::mutex mu;
    std::optional<ProjVariety> image;
  };
  std::shared_ptr<State> st_;
};

// Target coordinates y0..y{m} unless a target ring is passed.
RationalMap map_from_system(const ProjVariety& V, const std::vector<Poly>& forms, RingPtr target = nullptr);

// Kernel of k[y] -> k[x]/I_V, y_i -> f_i, via a weighted block order.
std::vector<Poly> image_ideal_by_elimination(const RationalMap& phi);
// Forms of degree <= maxdeg through sampled image points (source needs points).
std::vector<Poly> image_ideal_by_interpolation(const RationalMap& phi, int maxdeg, Rng& rng);

// Closure of phi^{-1}(Z minus base locus).
ProjVariety preimage(const RationalMap& phi, const std::vector<Poly>& Z);

// Length of the fiber through a random source point, outside the base locus.
struct FiberDegree {
  long degree = 0;
  Point witness;  // the sampled source point
};
FiberDegree generic_fiber_degree(const RationalMap& phi, Rng& rng);

// x -> M x: the ideal of M(V) is {f(M^{-1} x)}.
ProjVariety apply_projectivity(const ProjVariety& V, const Mat& M);
std::vector<Poly> apply_projectivity(const std::vector<Poly>& I, const Mat& M);
// phi followed by M on the target
RationalMap compose_projectivity(const RationalMap& phi, const Mat& M);

// Image invariants are included only when the image is already cached.
nlohmann::json to_json(const RationalMap& phi, const std::string& source_ref, std::optional<long> fiber_degree,
                       std::optional<u64> seed);

}  // namespace hsf
