#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace rsf {

/// Exact rational backed by GMP; expression templates are disabled so `auto`
/// always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Renders as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", and finite decimals such as "-1.25" or "3e-2".
Rational parse_rational(std::string_view text);

/// Exact binary value of a finite double.
Rational rational_from_double(double x);

double to_double(const Rational& q);

}  // namespace rsf
