#include "hsf/field.hpp"

#include <atomic>

namespace hsf {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {
std::atomic<u32> g_char{PrimeField::kDefault};
}

u32 default_characteristic() { return g_char.load(); }

void set_default_characteristic(u32 p) {
  PrimeField check(p);
  g_char.store(check.p());
}

PrimeField::PrimeField(u32 p) : p_(p) {
  if (p >= (1u << 31) || !is_prime_u64(p))
    throw InputError("characteristic must be a prime below 2^31, got " + std::to_string(p));
}

u32 PrimeField::pow(u32 a, u64 e) const {
  u64 r = 1, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 PrimeField::inv(u32 a) const {
  if (a % p_ == 0) throw MathError("inverse of zero in F_" + std::to_string(p_));
  // extended Euclid
  i64 t = 0, nt = 1, r = p_, nr = a;
  while (nr) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<u32>(t);
}

}  // namespace hsf
