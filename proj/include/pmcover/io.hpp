#pragma once

#include <string>

#include <json.hpp>

#include "pmcover/instance.hpp"

namespace pmc {

// Parses the documented instance schema. Unknown keys anywhere in the
// document are rejected. Numeric fields accept JSON numbers (doubles are
// read as their exact binary value) or strings like "2/3" and "0.1" for
// values with no exact double.
Instance parse_instance(const nlohmann::json& doc);

// Load from disk; validates unless told not to (the `check` command loads
// first and reports violations itself).
Instance load_instance(const std::string& path, bool run_validation = true,
                       const Limits& limits = {});

// Inverse of parse_instance up to number spelling: non-integer rationals
// are emitted as "n/d" strings, so load(dump(load(f))) == load(f).
nlohmann::json dump_instance(const Instance& instance);

nlohmann::json json_of_rational(const Rational& r);
Rational rational_of_json(const nlohmann::json& v, const std::string& context);

}  // namespace pmc
