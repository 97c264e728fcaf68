#include "sosc/form_ops.hpp"

namespace sosc {

Form differentiate(const Form& f, std::size_t var) {
  if (var >= f.n_vars()) throw InvalidArgument("differentiation variable out of range");
  if (f.degree() == 0) return Form(f.n_vars(), 0);
  Form out(f.n_vars(), f.degree() - 1);
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    ExponentVector lowered = e;
    lowered[var] -= 1;
    out.add_term(lowered, c * e[var]);
  }
  return out;
}

PolyMatrix hessian(const Form& p) {
  if (p.degree() < 2) throw InvalidArgument("Hessian needs a form of degree >= 2");
  const std::size_t n = p.n_vars();
  PolyMatrix h(n, n, p.degree() - 2);
  for (std::size_t i = 0; i < n; ++i) {
    Form di = differentiate(p, i);
    for (std::size_t j = i; j < n; ++j) h.set_symmetric(i, j, differentiate(di, j));
  }
  return h;
}

RationalMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point) {
  RationalMatrix out(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j).evaluate(point);
  return out;
}

Form euler_recover(const PolyMatrix& hessian_matrix, unsigned degree) {
  if (degree < 2) throw InvalidArgument("Euler recovery needs degree >= 2");
  if (hessian_matrix.degree() != degree - 2) throw InvalidArgument("Hessian entries have the wrong degree");
  if (hessian_matrix.dim() != hessian_matrix.n_vars()) throw InvalidArgument("Hessian must be n x n in n variables");
  const std::size_t n = hessian_matrix.dim();
  Form sum(n, degree);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Form& entry = hessian_matrix(i, j);
      if (entry.is_zero()) continue;
      sum += Form::variable(n, i) * Form::variable(n, j) * entry;
    }
  return sum * Rational(1, degree * (degree - 1));
}

HessianVerdict is_valid_hessian(const PolyMatrix& a) {
  if (!a.is_symmetric()) throw InvalidArgument("matrix is not symmetric");
  if (a.dim() != a.n_vars()) throw InvalidArgument("Hessian candidate must be n x n in n variables");
  const std::size_t n = a.dim();
  std::optional<HessianWitness> first;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Form lhs = differentiate(a(i, j), k);
        Form rhs = differentiate(a(i, k), j);
        if (lhs == rhs) continue;
        HessianWitness w{i, j, k, lhs, rhs};
        if (lhs.is_zero() || rhs.is_zero()) return {false, w};
        if (!first) first = w;
      }
  if (first) return {false, first};
  return {true, std::nullopt};
}

Form substitute(const Form& f, const RationalMatrix& t) {
  if (t.rows() != f.n_vars()) throw InvalidArgument("substitution matrix must have one row per variable");
  const std::size_t m = t.cols();
  std::vector<Form> images;
  images.reserve(f.n_vars());
  for (std::size_t i = 0; i < f.n_vars(); ++i) images.push_back(Form::linear(t.row(i)));

  // Powers of each image, built lazily.
  std::vector<std::vector<Form>> powers(f.n_vars());
  auto power = [&](std::size_t var, unsigned k) -> const Form& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Form::constant(m, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };

  Form out(m, f.degree());
  for (const auto& [e, c] : f.terms()) {
    Form term = Form::constant(m, c);
    for (std::size_t v = 0; v < f.n_vars(); ++v)
      if (e[v] > 0) term = term * power(v, e[v]);
    out += term;
  }
  return out;
}

Form linear_change(const Form& f, const RationalMatrix& t) {
  if (t.rows() != t.cols()) throw InvalidArgument("linear change needs a square matrix");
  return substitute(f, t);
}

RationalMatrix complement_basis(std::span<const Rational> c) {
  const std::size_t n = c.size();
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n; ++i)
    if (c[i] != 0 && (pivot == n || abs(c[i]) > abs(c[pivot]))) pivot = i;
  if (pivot == n) throw InvalidArgument("complement of the zero vector");
  RationalMatrix basis(n, n - 1);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == pivot) continue;
    basis(j, col) = 1;
    basis(pivot, col) = -c[j] / c[pivot];
    ++col;
  }
  return basis;
}

Form restrict_to_complement(const Form& p, std::span<const Rational> c) {
  if (c.size() != p.n_vars()) throw InvalidArgument("normal vector has wrong length");
  if (c.size() < 2) throw InvalidArgument("restriction needs at least two variables");
  return substitute(p, complement_basis(c));
}

}  // namespace sosc
