#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"
#include "sosc/form.hpp"
#include "sosc/linalg.hpp"

namespace sosc::face {

// The face of convex ternary quartics whose Hessian form vanishes at
// u1 = (e1, e2) and u2 = (e3, d) with d = (a, b, 1).

struct FaceParams {
  Rational a;
  Rational b;

  RationalVector d() const { return {a, b, 1}; }
};

using AlphaVector = std::array<Rational, 5>;

/// q1 = x1^4, q2 = x2^4, q3 = (x1 - a x3)^4, q4 = (x2 - b x3)^4,
/// q5 = x3^2 (b x1 - a x2)^2. Needs a, b not both zero.
std::array<Form, 5> q_basis(const FaceParams& fp);

/// sum alpha_i q_i
Form combine(const AlphaVector& alpha, const FaceParams& fp);

/// Bilinear forms in (x1,x2,x3,y1,y2,y3):
/// s1 = x1 y1, s2 = x2 y2, s3 = (x1 - a x3)(y1 - a y3),
/// s4 = (x2 - b x3)(y2 - b y3), s5 = x3 (b y1 - a y2).
/// For i <= 4, h_{q_i} = 12 s_i^2. Needs a, b nonzero.
std::array<Form, 5> s_basis(const FaceParams& fp);

struct LabDimension {
  std::size_t dimension = 0;
  std::size_t rank = 0;
  /// 12 x 15 constraint matrix over all_monomials(3, 4).
  RationalMatrix constraints;
  /// Basis of the solution space, as coefficient vectors over all_monomials(3, 4).
  std::vector<RationalVector> basis;
};

/// Each zero (u, v) of the Hessian form forces d^3 g / du du dv = 0 and
/// d^3 g / dv dv du = 0 in every direction, i.e. the differential operators
/// of the quartics x_k u~^2 v~ and x_k v~^2 u~ annihilate g. Rows are those
/// quartic operators applied to the monomial basis.
LabDimension l_ab_dimension(const FaceParams& fp);

/// The quartic-monomial coordinate vector of g (over all_monomials(3, 4)).
RationalVector quartic_coordinates(const Form& g);

/// Gram matrix of h_p in the basis s, with p = sum alpha_i q_i. Entry (1,5)
/// is 2 alpha5 b / a; it is the value that makes s^T M s = h_p hold.
SymRationalMatrix gram_M(const AlphaVector& alpha, const FaceParams& fp);

/// -20736 a1 a2 a3 a4 a5 (4a^2b^2 + a5 (b^4/a1 + a^4/a2 + b^4/a3 + a^4/a4)) / (a^2 b^2)
Rational det_M_closed(const AlphaVector& alpha, const FaceParams& fp);

/// -4 a^2 b^2 / (b^4/a1 + a^4/a2 + b^4/a3 + a^4/a4); needs a1..a4 > 0.
Rational alpha5_lower_bound(const std::array<Rational, 4>& alpha, const FaceParams& fp);
Rational alpha5_lower_bound(const AlphaVector& alpha, const FaceParams& fp);

/// alpha1..4 >= 0 and bound <= alpha5 <= 0; a zero among alpha1..4 forces alpha5 = 0.
bool membership_T(const AlphaVector& alpha, const FaceParams& fp);

/// Spans the kernel of M when alpha5 sits at the lower bound.
RationalVector kernel_vector(const AlphaVector& alpha, const FaceParams& fp);

/// Exact homogeneous quadratic A x1^2 + B x1 x2 + C x2^2 that the remaining
/// equation s3 = v3 reduces to once y1, y2, x3, y3 are eliminated.
struct ZeroQuadratic {
  Rational a_x1x1;
  Rational b_x1x2;
  Rational c_x2x2;
  Rational discriminant;
  /// v5 + ab((v3 - v1)/a^2 - (v4 - v2)/b^2); y3 (a x2 - b x1) equals it.
  Rational y3_numerator;
  RationalVector v;

  bool identically_zero() const { return a_x1x1 == 0 && b_x1x2 == 0 && c_x2x2 == 0; }
};

ZeroQuadratic zero_quadratic(const AlphaVector& alpha, const FaceParams& fp);

enum class RootKind {
  /// Discriminant > 0: two real ratios x1 : x2.
  Distinct,
  /// The quadratic vanishes identically, so any admissible ratio works; a
  /// rational one is chosen and the point is exact.
  Family,
};

template <typename T>
struct BiquadPoint {
  std::array<T, 3> x{};
  std::array<T, 3> y{};
  /// |h_p(x, y)| with x and y scaled to unit length.
  T residual{};
};

template <typename T>
struct AdditionalZero {
  BiquadPoint<T> point;
  RootKind kind = RootKind::Distinct;
  ZeroQuadratic quadratic;
  /// Which coordinate was set to 1 before solving (1 or 2, for x1 or x2).
  int normalized_coordinate = 2;
};

class ZeroFinderError : public Error {
 public:
  enum class Kind { NegativeDiscriminant, NoAdmissibleRoot, DegenerateDivision, ResidualTooLarge };
  ZeroFinderError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

void check_zero_preconditions(const AlphaVector& alpha, const FaceParams& fp);
BiquadraticForm face_hessian_form(const AlphaVector& alpha, const FaceParams& fp);

/// Rational ratio t = x1/x2 for the identically-zero case that avoids every
/// division in the back substitution.
Rational admissible_family_ratio(const ZeroQuadratic& quad, const FaceParams& fp);

template <typename T>
T abs_value(const T& v) {
  using std::abs;
  return abs(v);
}

template <typename T>
T sqrt_value(const T& v) {
  using std::sqrt;
  return sqrt(v);
}

/// Back substitution for a given (x1, x2); returns false on a zero divisor.
template <typename T>
bool back_substitute(const ZeroQuadratic& quad, const FaceParams& fp, T x1, T x2, BiquadPoint<T>& out) {
  const T a = rational_to<T>(fp.a), b = rational_to<T>(fp.b);
  const T v1 = rational_to<T>(quad.v[0]), v2 = rational_to<T>(quad.v[1]), v5 = rational_to<T>(quad.v[4]);
  const T k = rational_to<T>(quad.y3_numerator);
  const T scale = abs_value<T>(x1) + abs_value<T>(x2);
  const T tiny = std::numeric_limits<T>::epsilon() * T(1000) * scale;
  if (abs_value<T>(x1) <= tiny || abs_value<T>(x2) <= tiny) return false;
  const T y1 = v1 / x1;
  const T y2 = v2 / x2;
  const T x3_den = b * y1 - a * y2;
  const T y3_den = a * x2 - b * x1;
  if (abs_value<T>(x3_den) <= std::numeric_limits<T>::epsilon() * T(1000) * (abs_value<T>(b * y1) + abs_value<T>(a * y2)))
    return false;
  if (abs_value<T>(y3_den) <= tiny * (abs_value<T>(a) + abs_value<T>(b))) return false;
  out.x = {x1, x2, v5 / x3_den};
  out.y = {y1, y2, k / y3_den};
  return true;
}

}  // namespace detail

/// Zero of h_p (p = sum alpha_i q_i, alpha5 at the lower bound) with
/// x1, x2, y1, y2 all nonzero, obtained by solving s(x, y) = v for the
/// kernel vector v of M. T is the floating type used after the exact
/// discriminant check (double, long double or a boost multiprecision float).
template <typename T>
AdditionalZero<T> find_additional_zero(const AlphaVector& alpha, const FaceParams& fp, double tol) {
  detail::check_zero_preconditions(alpha, fp);
  AdditionalZero<T> result;
  result.quadratic = zero_quadratic(alpha, fp);
  const ZeroQuadratic& quad = result.quadratic;

  BiquadPoint<T> point;
  bool found = false;
  if (quad.identically_zero()) {
    result.kind = RootKind::Family;
    Rational t = detail::admissible_family_ratio(quad, fp);
    found = detail::back_substitute<T>(quad, fp, rational_to<T>(t), T(1), point);
  } else {
    if (quad.discriminant < 0)
      throw ZeroFinderError(ZeroFinderError::Kind::NegativeDiscriminant, "discriminant is negative");
    if (quad.a_x1x1 == 0 || quad.c_x2x2 == 0)
      throw ZeroFinderError(ZeroFinderError::Kind::NoAdmissibleRoot,
                            "quadratic degenerates to a multiple of x1*x2; no root with x1*x2 != 0");
    result.kind = RootKind::Distinct;
    const T qa = rational_to<T>(quad.a_x1x1), qb = rational_to<T>(quad.b_x1x2), qc = rational_to<T>(quad.c_x2x2);
    const T root_disc = detail::sqrt_value<T>(rational_to<T>(quad.discriminant));
    // Roots of qa t^2 + qb t + qc with x2 = 1, in the cancellation-free form.
    const T q = qb >= T(0) ? T(-(qb + root_disc) / T(2)) : T(-(qb - root_disc) / T(2));
    const std::array<T, 2> x1_roots = {q / qa, qc / q};
    for (const T& t : x1_roots)
      if (detail::back_substitute<T>(quad, fp, t, T(1), point)) {
        found = true;
        break;
      }
    if (!found) {
      // Same equation with x1 = 1: qc s^2 + qb s + qa = 0 in s = x2/x1.
      const std::array<T, 2> x2_roots = {q / qc, qa / q};
      for (const T& s : x2_roots)
        if (detail::back_substitute<T>(quad, fp, T(1), s, point)) {
          found = true;
          result.normalized_coordinate = 1;
          break;
        }
    }
  }
  if (!found)
    throw ZeroFinderError(ZeroFinderError::Kind::DegenerateDivision,
                          "every root makes a x2 - b x1 or b y1 - a y2 vanish");

  T nx = detail::sqrt_value<T>(point.x[0] * point.x[0] + point.x[1] * point.x[1] + point.x[2] * point.x[2]);
  T ny = detail::sqrt_value<T>(point.y[0] * point.y[0] + point.y[1] * point.y[1] + point.y[2] * point.y[2]);
  for (auto& c : point.x) c /= nx;
  for (auto& c : point.y) c /= ny;
  const BiquadraticForm h = detail::face_hessian_form(alpha, fp);
  point.residual = detail::abs_value<T>(evaluate_as<T>(h, std::span<const T>(point.x), std::span<const T>(point.y)));
  if (point.residual > T(tol))
    throw ZeroFinderError(ZeroFinderError::Kind::ResidualTooLarge, "residual exceeds tolerance");
  result.point = point;
  return result;
}

struct TangentHessian {
  /// 6x6 second-derivative matrix of (x, y) -> b(x, y) at the point.
  RationalMatrix full;
  /// Its restriction to {(u, v) : u^T x0 = 0, v^T y0 = 0}, in the basis
  /// complement_basis(x0) (+) complement_basis(y0).
  SymRationalMatrix restricted;
  LdltReport report;
};

TangentHessian tangent_hessian_check(const BiquadraticForm& b, std::span<const Rational> x0,
                                     std::span<const Rational> y0);

struct WitnessRow {
  std::string point;  // "v1", "v2", "v3"
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  int q_index = 0;  // 1..5
  std::optional<Rational> exact;
  double numeric = 0;
};

/// h_{q_i} at v1 = ([0,b,1],[a,0,1]), v2 = ([0,(2+sqrt 3) b,1],[a,0,1]) and
/// v3 = ([a,b,1],[1,0,1]); v2 is evaluated in floating point only.
std::vector<WitnessRow> witness_evaluations(const FaceParams& fp);

}  // namespace sosc::face
