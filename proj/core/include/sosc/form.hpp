#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sosc/error.hpp"
#include "sosc/rational.hpp"

namespace sosc {

/// Exponents of a monomial, one entry per variable.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n_vars) : exps_(n_vars, 0) {}
  ExponentVector(std::initializer_list<unsigned> exps) : exps_(exps) {}
  explicit ExponentVector(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  static ExponentVector unit(std::size_t n_vars, std::size_t var);

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  unsigned degree() const;
  const std::vector<unsigned>& data() const { return exps_; }

  ExponentVector operator+(const ExponentVector& other) const;

  auto operator<=>(const ExponentVector&) const = default;

 private:
  std::vector<unsigned> exps_;
};

/// Exact homogeneous polynomial with rational coefficients.
///
/// Terms are kept in a map ordered by descending lexicographic exponent so
/// x1^4 prints before x1^3*x2. Zero coefficients are never stored. The zero
/// form still carries its degree tag.
class Form {
 public:
  using Terms = std::map<ExponentVector, Rational, std::greater<>>;

  Form() = default;
  Form(std::size_t n_vars, unsigned degree);

  static Form constant(std::size_t n_vars, const Rational& value);
  static Form variable(std::size_t n_vars, std::size_t var);
  static Form monomial(const ExponentVector& exps, const Rational& coeff = 1);
  /// sum_i coeffs[i] * x_i
  static Form linear(std::span<const Rational> coeffs);

  std::size_t n_vars() const { return n_vars_; }
  unsigned degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const ExponentVector& exps) const;

  /// Adds `coeff` to the term; drops it if the sum vanishes.
  void add_term(const ExponentVector& exps, const Rational& coeff);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(const Rational& scalar);

  friend Form operator+(Form lhs, const Form& rhs) { return lhs += rhs; }
  friend Form operator-(Form lhs, const Form& rhs) { return lhs -= rhs; }
  friend Form operator*(Form lhs, const Rational& s) { return lhs *= s; }
  friend Form operator*(const Rational& s, Form rhs) { return rhs *= s; }
  friend Form operator-(Form f) { return f *= Rational(-1); }
  friend Form operator*(const Form& lhs, const Form& rhs);

  Form pow(unsigned k) const;

  Rational evaluate(std::span<const Rational> point) const;

  template <typename T>
  T evaluate_as(std::span<const T> point) const {
    check_point_size(point.size());
    T sum = T(0);
    for (const auto& [exps, coeff] : terms_) {
      T term = rational_to<T>(coeff);
      for (std::size_t v = 0; v < n_vars_; ++v)
        for (unsigned k = 0; k < exps[v]; ++k) term *= point[v];
      sum += term;
    }
    return sum;
  }

  /// Same terms viewed in a larger variable set; old variable i becomes
  /// variable offset + i.
  Form embed(std::size_t new_n_vars, std::size_t offset = 0) const;

  /// Zero forms compare equal regardless of their degree tag.
  bool operator==(const Form& other) const;

 private:
  void check_point_size(std::size_t size) const;

  std::size_t n_vars_ = 0;
  unsigned degree_ = 0;
  Terms terms_;
};

/// Every monomial of total degree `degree` in `n_vars` variables, in
/// descending lexicographic order (the order Form iterates its terms).
std::vector<ExponentVector> all_monomials(std::size_t n_vars, unsigned degree);

/// Variable names used when printing. Defaults to x1..xn.
struct VariableNames {
  std::vector<std::string> names;

  static VariableNames plain(std::size_t n_vars);
  /// x1..xn followed by y1..yn.
  static VariableNames biquadratic(std::size_t block);
};

std::string to_string(const Form& f);
std::string to_string(const Form& f, const VariableNames& names);

/// Square grid of forms of one degree in one variable set, e.g. a Hessian.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t dim, std::size_t n_vars, unsigned degree);

  std::size_t dim() const { return dim_; }
  std::size_t n_vars() const { return n_vars_; }
  unsigned degree() const { return degree_; }

  const Form& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  /// Replaces one entry (not its mirror).
  void set(std::size_t i, std::size_t j, Form entry);
  /// Sets entry (i,j) and its mirror (j,i).
  void set_symmetric(std::size_t i, std::size_t j, const Form& entry);

  bool is_symmetric() const;
  bool operator==(const PolyMatrix& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::size_t n_vars_ = 0;
  unsigned degree_ = 0;
  std::vector<Form> entries_;
};

}  // namespace sosc
