#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sosc/form.hpp"

namespace sosc {

/// Monomial x_i x_j y_k y_l with i <= j and k <= l (0-based).
struct BiquadKey {
  unsigned i = 0;
  unsigned j = 0;
  unsigned k = 0;
  unsigned l = 0;

  /// Sorts each pair.
  static BiquadKey make(unsigned i, unsigned j, unsigned k, unsigned l);
  BiquadKey swapped() const { return {k, l, i, j}; }
  auto operator<=>(const BiquadKey&) const = default;
};

/// Form quadratic in x = (x1..xn) and quadratic in y = (y1..yn).
///
/// The stored value for key (i,j,k,l) is the coefficient of the monomial
/// x_i x_j y_k y_l exactly as it appears in the expanded polynomial; there is
/// no folding of the factor 2 for cross terms.
class BiquadraticForm {
 public:
  using Coefficients = std::map<BiquadKey, Rational>;

  BiquadraticForm() = default;
  explicit BiquadraticForm(std::size_t n);

  /// Reads a form in 2n variables (x block first) of bidegree (2,2).
  static BiquadraticForm from_form(const Form& f, std::size_t n);

  std::size_t n() const { return n_; }
  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Rational coefficient(unsigned i, unsigned j, unsigned k, unsigned l) const;
  Rational coefficient(const BiquadKey& key) const;
  void add(unsigned i, unsigned j, unsigned k, unsigned l, const Rational& c);
  void add(const BiquadKey& key, const Rational& c);

  /// The same polynomial as a form in 2n variables.
  Form to_form() const;

  BiquadraticForm& operator+=(const BiquadraticForm& other);
  BiquadraticForm& operator*=(const Rational& s);
  friend BiquadraticForm operator+(BiquadraticForm a, const BiquadraticForm& b) { return a += b; }
  friend BiquadraticForm operator*(const Rational& s, BiquadraticForm a) { return a *= s; }

  bool operator==(const BiquadraticForm& other) const = default;

 private:
  void check_key(const BiquadKey& key) const;

  std::size_t n_ = 0;
  Coefficients coeffs_;
};

/// A fixed enumeration of all (n(n+1)/2)^2 biquadratic monomials.
class MonomialOrdering {
 public:
  MonomialOrdering() = default;
  /// Throws InvalidArgument unless `entries` lists every monomial once.
  MonomialOrdering(std::size_t n, std::vector<BiquadKey> entries);

  /// x-pairs (i <= j) in lexicographic order, each followed by all y-pairs
  /// in lexicographic order.
  static MonomialOrdering lex(std::size_t n);

  /// The 36-entry ternary ordering that starts x3^2 y3^2, x3^2 y2 y3, ...
  /// Vectors printed against it (the coefficient vector of b_thm22 and the
  /// dual functional c) only make sense in this order.
  static const MonomialOrdering& builtin36();

  std::size_t n() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<BiquadKey>& entries() const { return entries_; }
  const BiquadKey& operator[](std::size_t idx) const { return entries_[idx]; }
  std::size_t index_of(const BiquadKey& key) const;

  bool operator==(const MonomialOrdering& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<BiquadKey> entries_;
  std::map<BiquadKey, std::size_t> index_;
};

/// y^T H_p(x) y for a quartic p.
BiquadraticForm hessian_biquadratic(const Form& p);

struct SymmetryVerdict {
  bool symmetric = true;
  /// First key (in storage order) whose swap carries a different coefficient.
  std::optional<BiquadKey> key;
  Rational coefficient;
  Rational swapped_coefficient;
};

SymmetryVerdict is_symmetric(const BiquadraticForm& b);

/// b(y, x).
BiquadraticForm swap_xy(const BiquadraticForm& b);

Rational evaluate(const BiquadraticForm& b, std::span<const Rational> x, std::span<const Rational> y);

template <typename T>
T evaluate_as(const BiquadraticForm& b, std::span<const T> x, std::span<const T> y) {
  if (x.size() != b.n() || y.size() != b.n()) throw InvalidArgument("evaluation point has wrong length");
  T sum = T(0);
  for (const auto& [key, c] : b.coefficients())
    sum += rational_to<T>(c) * x[key.i] * x[key.j] * y[key.k] * y[key.l];
  return sum;
}

RationalVector coefficient_vector(const BiquadraticForm& b, const MonomialOrdering& ord);
BiquadraticForm from_coefficient_vector(std::span<const Rational> coeffs, const MonomialOrdering& ord);

/// Dimension of all n-ary biquadratic forms: C(n+1,2)^2.
std::uint64_t dim_nary(std::size_t n);
/// Dimension of the symmetric ones: (C(n+1,2)^2 + C(n+1,2)) / 2.
std::uint64_t dim_symmetric(std::size_t n);
/// Dimension of the Hessian ones, equal to that of quartics: C(n+3,4).
std::uint64_t dim_hessian(std::size_t n);

}  // namespace sosc
