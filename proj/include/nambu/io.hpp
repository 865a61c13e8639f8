#pragma once

#include "nambu/darboux.hpp"
#include "nambu/exterior.hpp"
#include "nambu/nambu.hpp"
#include "nambu/poly.hpp"
#include "nambu/symmetry.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>

namespace nambu::io {

using json = nlohmann::json;

/// Malformed or inconsistent input file.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// [num, den]; integers outside int64 are written as decimal strings.
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// List of {"c":[num,den],"e":[...]} terms in lexicographic exponent order.
json to_json(const Polynomial& p);
/// `dim` is needed because the zero polynomial is an empty list.
Polynomial polynomial_from_json(const json& j, std::size_t dim);

/// {"dim":..,"degree":..,"components":[{"i":[..],"poly":[..]},..]}
json to_json(const DifferentialForm& a);
DifferentialForm form_from_json(const json& j);

/// {"n":..,"H1":[..],"H2":[..]}
json to_json(const NambuSystem& sys);
NambuSystem system_from_json(const json& j);

/// {"n":..,"algebra":{"dim":..,"c":[{"i","j","k","v"},..]},"pairs":[{"J1","J2"},..]}
/// "n" is optional on input when some polynomial fixes the dimension.
json to_json(const MomentumMapPair& mm);
MomentumMapPair symmetry_from_json(const json& j);

json to_json(const DarbouxReport& rep);

/// Reads and parses a JSON file; throws ParseError on I/O or syntax errors.
json read_json_file(const std::string& path);

/// Shortest round-trip-safe text for a double ("%.17g").
std::string format_double(double v);

}  // namespace nambu::io
