#pragma once

#include <cstdint>
#include <string_view>

namespace hsf {

// splitmix64 streams; every randomized operation derives its own stream
// from the global seed and a label, so results do not depend on call order.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : s_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = next(); while (v >= lim);
    return v % n;
  }
  Rng split(std::string_view label);
  Rng split(std::uint64_t tag);

  std::uint64_t state() const { return s_; }

 private:
  std::uint64_t s_;
};

std::uint64_t global_seed();
void set_global_seed(std::uint64_t seed);
// a fresh stream for a named operation, derived from the global seed
Rng stream(std::string_view label);

}  // namespace hsf
