#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "hsf/field.hpp"

namespace hsf {

constexpr int kMaxVars = 32;
constexpr int kMaxExp = 127;

// Exponents are 7-bit bytes packed big-endian into four words, variable i
// at byte 31 - i. Comparing the words lexicographically therefore compares
// exponents starting from the last variable, which is what revlex needs.
struct Monomial {
  u64 w[4] = {0, 0, 0, 0};
  u32 deg = 0;

  int exp(int i) const { return static_cast<int>((w[3 - i / 8] >> (8 * (i % 8))) & 0xFF); }
  void set_exp(int i, int e);

  bool operator==(const Monomial& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2] && w[3] == o.w[3];
  }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool is_one() const { return deg == 0; }

  static Monomial from_exps(const std::vector<int>& e);
  std::vector<int> exps(int nvars) const;
};

namespace detail {
constexpr u64 kHigh = 0x8080808080808080ULL;
constexpr u64 kLow7 = 0x7F7F7F7F7F7F7F7FULL;
inline u64 nonzero_bytes(u64 x) { return (((x & kLow7) + kLow7) | x) & kHigh; }
}  // namespace detail

Monomial mono_mul(const Monomial& a, const Monomial& b);

// a | b
inline bool mono_divides(const Monomial& a, const Monomial& b) {
  if (a.deg > b.deg) return false;
  for (int k = 0; k < 4; ++k)
    if ((((b.w[k] | detail::kHigh) - a.w[k]) & detail::kHigh) != detail::kHigh) return false;
  return true;
}

// b / a, assuming a | b
inline Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (int k = 0; k < 4; ++k) r.w[k] = b.w[k] - a.w[k];
  r.deg = b.deg - a.deg;
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b);

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (int k = 0; k < 4; ++k)
    if (detail::nonzero_bytes(a.w[k]) & detail::nonzero_bytes(b.w[k])) return false;
  return true;
}

// bitmask of variables with positive exponent (first 64 only matter here)
inline u64 mono_support(const Monomial& a) {
  u64 m = 0;
  for (int k = 0; k < 4; ++k) {
    u64 nz = detail::nonzero_bytes(a.w[k]);
    for (int b = 0; b < 8; ++b)
      if (nz & (0x80ULL << (8 * b))) m |= 1ULL << ((3 - k) * 8 + b);
  }
  return m;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    u64 h = m.w[0] * 0x9e3779b97f4a7c15ULL;
    h ^= m.w[1] + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
    h ^= m.w[2] + 0x94d049bb133111ebULL + (h << 6) + (h >> 2);
    h ^= m.w[3] + 0xbf58476d1ce4e5b9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Product of blocks; each block compares a weighted degree and breaks ties
// by revlex inside the block. grevlex is one block of unit weights, lex is
// n singleton blocks.
class MonomialOrder {
 public:
  enum class Kind { GRevLex, Lex, Block, Weighted };

  static MonomialOrder grevlex(int n);
  static MonomialOrder lex(int n);
  // block elimination order: first k variables form the larger block
  static MonomialOrder block(int n, int k);
  static MonomialOrder blocks(const std::vector<int>& sizes);
  static MonomialOrder weighted(const std::vector<int>& weights);
  // elimination order with weighted blocks: block sizes plus per-var weights
  static MonomialOrder weighted_blocks(const std::vector<int>& sizes, const std::vector<int>& weights);

  Kind kind() const { return kind_; }
  int nvars() const { return n_; }
  int elimination_size() const { return kind_ == Kind::Block ? blocks_[0].second : 0; }
  const std::vector<std::pair<int, int>>& block_ranges() const { return blocks_; }
  const std::vector<int>& weights() const { return weights_; }
  std::string name() const;

  int cmp(const Monomial& a, const Monomial& b) const {
    if (fast_) {
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      for (int k = 0; k < 4; ++k)
        if (a.w[k] != b.w[k]) return a.w[k] < b.w[k] ? 1 : -1;
      return 0;
    }
    return cmp_slow(a, b);
  }

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && n_ == o.n_ && blocks_ == o.blocks_ && weights_ == o.weights_;
  }

  // generic comparison, bypassing the grevlex fast path
  int cmp_slow(const Monomial& a, const Monomial& b) const;

 private:

  Kind kind_ = Kind::GRevLex;
  int n_ = 0;
  bool fast_ = true;
  std::vector<std::pair<int, int>> blocks_;  // [begin, end)
  std::vector<int> weights_;
};

}  // namespace hsf
