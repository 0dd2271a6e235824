#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace pmc {

// Exact arithmetic used for instance data, linear/table costs and the
// rational simplex. GMP-backed, so simplex pivoting cannot overflow.
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Every double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double d) { return Rational(d); }

// Accepts "3", "-3", "2/3" and decimal strings like "0.25", "1e-3".
std::optional<Rational> parse_rational(const std::string& s);

// "n" for integers, "n/d" otherwise. parse_rational round-trips this.
std::string rational_to_string(const Rational& r);

}  // namespace pmc
