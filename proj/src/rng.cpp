#include "hsf/rng.hpp"

#include <atomic>

namespace hsf {

namespace {
std::atomic<std::uint64_t> g_seed{20211004};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}
}  // namespace

Rng Rng::split(std::string_view label) {
  Rng r(next() ^ fnv1a(label));
  r.next();
  return r;
}

Rng Rng::split(std::uint64_t tag) {
  Rng r(next() ^ (tag * 0xd1342543de82ef95ULL + 1));
  r.next();
  return r;
}

std::uint64_t global_seed() { return g_seed.load(); }
void set_global_seed(std::uint64_t seed) { g_seed.store(seed); }

Rng stream(std::string_view label) {
  Rng r(global_seed() ^ fnv1a(label));
  r.next();
  return r;
}

}  // namespace hsf
