#pragma once

#include <string_view>
#include <variant>

#include <json.hpp>

#include "tuttebraid/cyc20.hpp"
#include "tuttebraid/golden.hpp"
#include "tuttebraid/laurent.hpp"
#include "tuttebraid/rat.hpp"

namespace tuttebraid {

using json = nlohmann::json;

json to_json(const Rat& x);
json to_json(const Golden& x);
json to_json(const Cyc20& x);
json to_json(const LaurentA& x);
json to_json(const CDouble& x);

Rat rat_from_json(const json& j);
Golden golden_from_json(const json& j);
Cyc20 cyc20_from_json(const json& j);
LaurentA laurent_from_json(const json& j);

/// A value from one of the supported number systems.
using Number = std::variant<Rat, Golden, Cyc20, CDouble>;

/// Literal syntax: "3/2", "-1", "tau", "B5", "B10", "sqrt5" (optionally negated),
/// "g:a,b" for a + bτ, "z:c0,...,c7" for Σ cᵢζⁱ, "c:re,im" for a double-precision complex.
Number parse_number(std::string_view text);

json to_json(const Number& x);
std::string number_kind(const Number& x);
CDouble approx(const Number& x);

}  // namespace tuttebraid
