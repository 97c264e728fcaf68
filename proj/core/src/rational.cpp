#include "sosc/rational.hpp"

#include <cmath>
#include <utility>

#include "sosc/error.hpp"

namespace sosc {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) throw ParseError("bad rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !is_digits(whole)) || (!frac.empty() && !is_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw ParseError("bad decimal '" + std::string(text) + "'");
    Integer scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rational(digits, scale);
    value.canonicalize();
  } else {
    if (!is_digits(body)) throw ParseError("bad rational '" + std::string(text) + "'");
    value = Rational(Integer(std::string(body), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_rational_short(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return format_rational(value);
}

Rational best_rational_approximation(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot rationalize a non-finite value");
  if (max_denominator == 0) throw InvalidArgument("denominator bound must be positive");
  Rational exact(value);
  bool negative = exact < 0;
  if (negative) exact = -exact;
  const Integer bound(static_cast<unsigned long>(max_denominator));
  if (exact.get_den() <= bound) return negative ? Rational(-exact) : exact;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = exact.get_num(), d = exact.get_den();
  while (true) {
    Integer a = n / d;
    Integer q2 = q0 + a * q1;
    if (q2 > bound) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
  }
  Integer k = (bound - q0) / q1;
  Rational semi(p0 + k * p1, q0 + k * q1);
  Rational conv(p1, q1);
  semi.canonicalize();
  conv.canonicalize();
  Rational best = abs(conv - exact) <= abs(semi - exact) ? conv : semi;
  return negative ? Rational(-best) : best;
}

double to_double(const Rational& value) { return value.get_d(); }

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace sosc
