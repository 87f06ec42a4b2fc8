#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsf {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RetryExhausted : MathError {
  using MathError::MathError;
};
// a documented but unsupported case
struct Unimplemented : MathError {
  using MathError::MathError;
};

bool is_prime_u64(u64 n);

// Characteristic used by default-constructed fields (65521 unless changed).
u32 default_characteristic();
void set_default_characteristic(u32 p);

// Arithmetic modulo a prime p < 2^31.
class PrimeField {
 public:
  static constexpr u32 kDefault = 65521;

  explicit PrimeField(u32 p = default_characteristic());

  u32 p() const { return p_; }

  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p_); }
  u32 pow(u32 a, u64 e) const;
  u32 inv(u32 a) const;
  u32 from_int(i64 v) const {
    i64 r = v % static_cast<i64>(p_);
    return static_cast<u32>(r < 0 ? r + p_ : r);
  }
  // representative in (-p/2, p/2]
  i64 to_signed(u32 a) const { return a > p_ / 2 ? static_cast<i64>(a) - p_ : a; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  u32 p_;
};

}  // namespace hsf
