#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace sosc {

/// Exact rational number. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Parses "N", "N/D" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Always "NUM/DEN", including integers ("12/1").
std::string format_rational(const Rational& value);

/// Shortest form: "12" for integers, "3/4" otherwise.
std::string format_rational_short(const Rational& value);

/// Best rational approximation with denominator <= max_denominator, computed
/// from the continued-fraction expansion of `value` (semiconvergents included).
Rational best_rational_approximation(double value, std::uint64_t max_denominator);

double to_double(const Rational& value);

Integer binomial(unsigned n, unsigned k);

/// Converts to a floating type; types other than double go through the
/// decimal strings of numerator and denominator so no precision is lost
/// before the final division.
template <typename T>
T rational_to(const Rational& q) {
  if constexpr (std::is_same_v<T, double>) {
    return q.get_d();
  } else if constexpr (std::is_floating_point_v<T>) {
    return static_cast<T>(std::stold(q.get_num().get_str())) /
           static_cast<T>(std::stold(q.get_den().get_str()));
  } else {
    return T(q.get_num().get_str().c_str()) / T(q.get_den().get_str().c_str());
  }
}

}  // namespace sosc
