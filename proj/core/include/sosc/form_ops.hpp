#pragma once

#include <optional>
#include <span>

#include "sosc/form.hpp"
#include "sosc/linalg.hpp"

namespace sosc {

// Variable indices in this API are 0-based; file formats and the CLI print
// them 1-based (x1..xn).

/// d f / d x_var. The result has degree f.degree() - 1 (a degree-0 zero form
/// when f is constant).
Form differentiate(const Form& f, std::size_t var);

/// Matrix of second partial derivatives. Requires degree >= 2.
PolyMatrix hessian(const Form& p);

/// Entry-wise evaluation at a rational point.
RationalMatrix evaluate(const PolyMatrix& m, std::span<const Rational> point);

/// Recovers p from its Hessian through p = x^T H x / (d (d - 1)).
Form euler_recover(const PolyMatrix& hessian_matrix, unsigned degree);

struct HessianWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Form d_ij_dk;  // d A_ij / d x_k
  Form d_ik_dj;  // d A_ik / d x_j
};

struct HessianVerdict {
  bool valid = true;
  std::optional<HessianWitness> witness;
};

/// A symmetric polynomial matrix is a Hessian iff its third partials commute:
/// d A_ij / d x_k == d A_ik / d x_j for all i, j, k. Triples are scanned in
/// lexicographic order. The first violation with a vanishing side is
/// reported, otherwise the first violation.
HessianVerdict is_valid_hessian(const PolyMatrix& a);

/// g(y) = f(T y) where T is n_vars x m; g has m variables.
Form substitute(const Form& f, const RationalMatrix& t);

/// f(T x) for a square T.
Form linear_change(const Form& f, const RationalMatrix& t);

/// Rational basis of {v : v^T c = 0} as the columns of an n x (n-1) matrix.
///
/// The coordinate p with the largest |c_p| (lowest index on ties) is dropped;
/// for every other coordinate j, in increasing order, the basis vector is
/// e_j - (c_j / c_p) e_p.
RationalMatrix complement_basis(std::span<const Rational> c);

/// p restricted to the hyperplane orthogonal to c, written in the
/// coordinates of complement_basis(c).
Form restrict_to_complement(const Form& p, std::span<const Rational> c);

}  // namespace sosc
