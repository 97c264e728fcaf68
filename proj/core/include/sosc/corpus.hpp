#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"
#include "sosc/dual.hpp"
#include "sosc/form.hpp"

namespace sosc::corpus {

/// C(x) with C11 = x1^2 + 2x2^2, C22 = x2^2 + 2x3^2, C33 = x3^2 + 2x1^2 and
/// off-diagonal entries -x_i x_j.
PolyMatrix choi_matrix();

/// y^T C(x) y
BiquadraticForm choi_biquadratic();

/// The symmetric nonnegative biquadratic form that is not a sum of squares.
BiquadraticForm b_thm22();

/// Its coefficient vector as printed, against MonomialOrdering::builtin36().
RationalVector b_thm22_vector();

/// (x1+x3)^4 + (x2+x3)^4 + (2x1+x3)^4 + (2x2+x3)^4
Form f_lemma32();

/// x3^4 / 12, whose Hessian form is x3^2 y3^2.
Form q_reduction();

/// The 15 monomials x_i x_j y_k of the printed certificate, in its order.
std::vector<ExponentVector> q22_monomials();

/// The printed 15 x 15 integer Gram matrix.
SymRationalMatrix q22_matrix();

/// b(x,y) (x1^2 + x2^2) = (1/384) z^T Q z.
SosCertificate q22_certificate();

/// The separating functional c against builtin36().
DualCertificate b22_dual();

/// The printed 9 x 9 moment matrix of c over x1y1, x1y2, ..., x3y3.
SymRationalMatrix b22_moment_matrix();

using Object = std::variant<Form, BiquadraticForm, PolyMatrix, SosCertificate, DualCertificate>;

std::vector<std::string> builtin_names();

/// Throws InvalidArgument for an unknown name.
Object builtin(std::string_view name);

}  // namespace sosc::corpus
