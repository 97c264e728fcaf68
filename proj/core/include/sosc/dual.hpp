#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"

namespace sosc {

/// Linear functional on biquadratic forms, given by its values c on the
/// monomials of `ordering`.
struct DualCertificate {
  enum class Order { Builtin36, Lex };

  Order order = Order::Lex;
  MonomialOrdering ordering;
  RationalVector c;

  static DualCertificate make(Order order, std::size_t n, RationalVector c);
};

/// Bilinear monomial basis x_i y_j in the order x1y1, x1y2, ..., xny_n.
std::vector<std::pair<unsigned, unsigned>> bilinear_basis(std::size_t n);

struct MomentMatrix {
  std::vector<std::pair<unsigned, unsigned>> basis;
  SymRationalMatrix matrix;
};

/// c^T (coefficient vector of b in the certificate's ordering).
Rational pairing(const DualCertificate& cert, const BiquadraticForm& b);

/// Entry (x_i y_j, x_k y_l) is the value of c on x_i x_k y_j y_l.
MomentMatrix moment_matrix(const DualCertificate& cert);

struct RefutationVerdict {
  bool accepted = false;
  Rational pairing;
  LdltReport ldlt;
  std::string message;
};

/// Accepts iff the moment matrix is PSD and the pairing is negative. For any
/// sum of squares w = z^T Q z with Q PSD the pairing is trace(Q * moment) >= 0,
/// so acceptance proves b is not a sum of squares.
RefutationVerdict verify_refutation(const DualCertificate& cert, const BiquadraticForm& b);

}  // namespace sosc
