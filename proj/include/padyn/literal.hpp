#pragma once

// Text and JSON forms of p-adic values.
//
//   "m/n" or "m"            rational literal
//   "v;d0,d1,d2,..."        p^v (d0 + d1 p + d2 p^2 + ...)
//
// JSON: {"valuation": v, "digits": [d0, ...], "p": p}; zero has "valuation": null
// and an empty digit list.

#include <string>
#include <string_view>

#include <json.hpp>

#include "padyn/padic.hpp"

namespace padyn {

PadicNumber parse_literal(const PrimeContext& ctx, std::string_view text);

// Digit form with trailing zero digits trimmed, e.g. "0;2,1" for 7 at p = 5.
std::string to_digit_literal(const PadicNumber& x);

nlohmann::json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const PrimeContext& ctx, const nlohmann::json& j);

} // namespace padyn
