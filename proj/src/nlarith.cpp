#include "hsf/nlarith.hpp"

#include <cmath>

#include "hsf/field.hpp"

namespace hsf {

FourfoldKind parse_kind(const std::string& s) {
  if (s == "cubic") return FourfoldKind::Cubic;
  if (s == "gm" || s == "GM") return FourfoldKind::GM;
  throw InputError("unknown kind '" + s + "' (expected cubic or gm)");
}

std::string kind_name(FourfoldKind k) { return k == FourfoldKind::Cubic ? "cubic" : "gm"; }

bool is_nl_value(FourfoldKind kind, long d) {
  if (kind == FourfoldKind::Cubic) return d > 6 && (d % 6 == 0 || d % 6 == 2);
  return d > 8 && (d % 8 == 0 || d % 8 == 2 || d % 8 == 4);
}

std::vector<DiscriminantValue> nl_values(FourfoldKind kind, long bound) {
  std::vector<DiscriminantValue> out;
  for (long d = 1; d <= bound; ++d) {
    if (!is_nl_value(kind, d)) continue;
    DiscriminantValue v{kind, d, {}};
    if (kind == FourfoldKind::GM && d % 8 == 2) v.labels = {"'", "''"};
    out.push_back(v);
  }
  return out;
}

namespace {

// true if some odd prime p with p = r mod m divides d
bool has_odd_prime_factor(long d, long m, long r) {
  while (d % 2 == 0) d /= 2;
  for (long p = 3; p * p <= d; p += 2) {
    if (d % p) continue;
    if (p % m == r) return true;
    while (d % p == 0) d /= p;
  }
  return d > 1 && d % m == r;
}

}  // namespace

bool is_admissible(FourfoldKind kind, long d) {
  if (!is_nl_value(kind, d)) return false;
  if (kind == FourfoldKind::Cubic) return d % 4 != 0 && d % 9 != 0 && !has_odd_prime_factor(d, 3, 2);
  return (d % 8 == 2 || d % 8 == 4) && !has_odd_prime_factor(d, 4, 3);
}

std::optional<AddingtonForm> addington_form(long d) {
  if (d <= 0 || d % 2) return std::nullopt;
  for (long a = 1; a <= kAddingtonBound; ++a) {
    // n^2 + n + 1 = d a^2 / 2  <=>  (2n + 1)^2 = 2 d a^2 - 3
    long disc = 2 * d * a * a - 3;
    long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(disc))));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    if (s * s == disc && s % 2 == 1) return AddingtonForm{a, (s - 1) / 2};
  }
  return std::nullopt;
}

std::vector<std::string> kuznetsov_list(FourfoldKind kind, long bound) {
  std::vector<std::string> out;
  for (auto& v : nl_values(kind, bound)) {
    if (!is_admissible(kind, v.d)) continue;
    std::string base = (kind == FourfoldKind::Cubic ? "C" : "GM") + std::to_string(v.d);
    if (v.labels.empty()) {
      out.push_back(base);
    } else {
      for (auto& l : v.labels) out.push_back(base + l);
    }
  }
  return out;
}

}  // namespace hsf
