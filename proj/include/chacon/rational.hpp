#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace chacon {

// Expression templates are disabled so that `auto` never captures a lazy
// expression referring to temporaries.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Exact "num/den" rendering; integers are printed with a unit denominator.
std::string format_rational(const Rational& q);

/// Accepts "a/b" or "a" (optionally signed).
Rational parse_rational(std::string_view text);

/// 3^(-k) as an exact rational.
Rational inverse_power_of_three(unsigned k);

/// 3^k, throws std::overflow_error past 3^39.
std::uint64_t power_of_three(unsigned k);

}  // namespace chacon
