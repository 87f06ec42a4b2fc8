#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hsf/poly.hpp"

namespace hsf {

// Grammar: integers, variable names, + - * / ^ and parentheses. Division is
// only allowed by nonzero constants (rational input is reduced mod p).
Poly parse_poly(std::string_view text, const RingPtr& ring);
std::vector<Poly> parse_polys(const std::vector<std::string>& texts, const RingPtr& ring);

}  // namespace hsf
