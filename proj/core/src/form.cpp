#include "sosc/form.hpp"

#include <numeric>
#include <sstream>

namespace sosc {

ExponentVector ExponentVector::unit(std::size_t n_vars, std::size_t var) {
  if (var >= n_vars) throw InvalidArgument("variable index out of range");
  ExponentVector e(n_vars);
  e[var] = 1;
  return e;
}

unsigned ExponentVector::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (size() != other.size()) throw InvalidArgument("exponent vectors of different length");
  ExponentVector sum(*this);
  for (std::size_t i = 0; i < size(); ++i) sum.exps_[i] += other.exps_[i];
  return sum;
}

Form::Form(std::size_t n_vars, unsigned degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars == 0) throw InvalidArgument("a form needs at least one variable");
}

Form Form::constant(std::size_t n_vars, const Rational& value) {
  Form f(n_vars, 0);
  f.add_term(ExponentVector(n_vars), value);
  return f;
}

Form Form::variable(std::size_t n_vars, std::size_t var) { return monomial(ExponentVector::unit(n_vars, var)); }

Form Form::monomial(const ExponentVector& exps, const Rational& coeff) {
  Form f(exps.size(), exps.degree());
  f.add_term(exps, coeff);
  return f;
}

Form Form::linear(std::span<const Rational> coeffs) {
  Form f(coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(ExponentVector::unit(coeffs.size(), i), coeffs[i]);
  return f;
}

Rational Form::coefficient(const ExponentVector& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Form::add_term(const ExponentVector& exps, const Rational& coeff) {
  if (exps.size() != n_vars_) throw InvalidArgument("exponent vector has wrong number of variables");
  if (exps.degree() != degree_) throw InvalidArgument("term degree does not match form degree");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Form& Form::operator+=(const Form& other) {
  if (n_vars_ != other.n_vars_) throw InvalidArgument("forms in different variable sets");
  if (other.is_zero()) return *this;
  if (is_zero() && degree_ != other.degree_) degree_ = other.degree_;
  if (degree_ != other.degree_) throw InvalidArgument("sum of forms of different degree");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Form& Form::operator-=(const Form& other) { return *this += -other; }

Form& Form::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Form operator*(const Form& lhs, const Form& rhs) {
  if (lhs.n_vars_ != rhs.n_vars_) throw InvalidArgument("product of forms in different variable sets");
  Form out(lhs.n_vars_, lhs.degree_ + rhs.degree_);
  for (const auto& [ea, ca] : lhs.terms_)
    for (const auto& [eb, cb] : rhs.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

Form Form::pow(unsigned k) const {
  Form result = constant(n_vars_, 1);
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

void Form::check_point_size(std::size_t size) const {
  if (size != n_vars_) throw InvalidArgument("evaluation point has wrong length");
}

Rational Form::evaluate(std::span<const Rational> point) const {
  check_point_size(point.size());
  Rational sum = 0;
  for (const auto& [exps, coeff] : terms_) {
    Rational term = coeff;
    for (std::size_t v = 0; v < n_vars_; ++v)
      for (unsigned k = 0; k < exps[v]; ++k) term *= point[v];
    sum += term;
  }
  return sum;
}

Form Form::embed(std::size_t new_n_vars, std::size_t offset) const {
  if (offset + n_vars_ > new_n_vars) throw InvalidArgument("embedding does not fit");
  Form out(new_n_vars, degree_);
  for (const auto& [e, c] : terms_) {
    ExponentVector wide(new_n_vars);
    for (std::size_t v = 0; v < n_vars_; ++v) wide[offset + v] = e[v];
    out.add_term(wide, c);
  }
  return out;
}

bool Form::operator==(const Form& other) const {
  if (n_vars_ != other.n_vars_ || terms_ != other.terms_) return false;
  return degree_ == other.degree_ || terms_.empty();
}

namespace {

void fill_monomials(std::size_t var, unsigned remaining, ExponentVector& current, std::vector<ExponentVector>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.push_back(current);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    current[var] = k;
    fill_monomials(var + 1, remaining - k, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<ExponentVector> all_monomials(std::size_t n_vars, unsigned degree) {
  if (n_vars == 0) throw InvalidArgument("monomials need at least one variable");
  std::vector<ExponentVector> out;
  ExponentVector current(n_vars);
  fill_monomials(0, degree, current, out);
  return out;
}

VariableNames VariableNames::plain(std::size_t n_vars) {
  VariableNames v;
  for (std::size_t i = 0; i < n_vars; ++i) v.names.push_back("x" + std::to_string(i + 1));
  return v;
}

VariableNames VariableNames::biquadratic(std::size_t block) {
  VariableNames v = plain(block);
  for (std::size_t i = 0; i < block; ++i) v.names.push_back("y" + std::to_string(i + 1));
  return v;
}

std::string to_string(const Form& f) { return to_string(f, VariableNames::plain(f.n_vars())); }

std::string to_string(const Form& f, const VariableNames& names) {
  if (names.names.size() != f.n_vars()) throw InvalidArgument("variable name list has wrong length");
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = e.degree() == 0;
    bool wrote = false;
    if (mag != 1 || constant) {
      out << format_rational_short(mag);
      wrote = true;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (wrote) out << "*";
      out << names.names[v];
      if (e[v] > 1) out << "^" << e[v];
      wrote = true;
    }
  }
  return out.str();
}

PolyMatrix::PolyMatrix(std::size_t dim, std::size_t n_vars, unsigned degree)
    : dim_(dim), n_vars_(n_vars), degree_(degree), entries_(dim * dim, Form(n_vars, degree)) {
  if (dim == 0) throw InvalidArgument("polynomial matrix needs positive dimension");
}

void PolyMatrix::set(std::size_t i, std::size_t j, Form entry) {
  if (i >= dim_ || j >= dim_) throw InvalidArgument("polynomial matrix index out of range");
  if (entry.n_vars() != n_vars_) throw InvalidArgument("entry has wrong number of variables");
  if (!entry.is_zero() && entry.degree() != degree_) throw InvalidArgument("entry has wrong degree");
  entries_[i * dim_ + j] = Form(n_vars_, degree_) + entry;
}

void PolyMatrix::set_symmetric(std::size_t i, std::size_t j, const Form& entry) {
  set(i, j, entry);
  set(j, i, entry);
}

bool PolyMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

}  // namespace sosc
