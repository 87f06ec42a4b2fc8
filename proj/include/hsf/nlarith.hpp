#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hsf {

enum class FourfoldKind { Cubic, GM };
FourfoldKind parse_kind(const std::string& s);  // "cubic" | "gm"
std::string kind_name(FourfoldKind k);

struct DiscriminantValue {
  FourfoldKind kind;
  long d = 0;
  std::vector<std::string> labels;  // {"'", "''"} for GM with d = 2 mod 8
};

// Discriminants of Noether-Lefschetz components up to bound (inclusive).
std::vector<DiscriminantValue> nl_values(FourfoldKind kind, long bound);
bool is_nl_value(FourfoldKind kind, long d);
bool is_admissible(FourfoldKind kind, long d);

struct AddingtonForm {
  long a = 0, n = 0;
};
constexpr long kAddingtonBound = 1000;
// smallest a <= kAddingtonBound (then n >= 0) with d a^2 = 2(n^2 + n + 1)
std::optional<AddingtonForm> addington_form(long d);

// "C14", "GM10'", ...; admissible components up to bound
std::vector<std::string> kuznetsov_list(FourfoldKind kind, long bound);

}  // namespace hsf
