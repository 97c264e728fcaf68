#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/form.hpp"
#include "sosc/linalg.hpp"

namespace sosc {

enum class PsdVerdict { PositiveDefinite, PositiveSemidefinite, NotPSD };

std::string to_string(PsdVerdict v);

struct LdltReport {
  PsdVerdict verdict = PsdVerdict::PositiveDefinite;
  /// Pivots in elimination order; on NotPSD the last one is the offending pivot.
  RationalVector pivots;
  std::optional<std::size_t> failure_index;
};

/// Symmetric elimination without pivoting, in exact arithmetic.
///
/// Step k looks at the current diagonal entry d of the Schur complement:
/// d < 0 rejects; d == 0 rejects when the rest of row k is nonzero and is
/// skipped otherwise; d > 0 eliminates. On exact input this decides positive
/// semidefiniteness.
LdltReport ldlt_psd_check(const SymRationalMatrix& s);
LdltReport ldlt_psd_check(const RationalMatrix& s);

/// z^T Q z for a list of monomials z (all in the same variable set).
Form gram_expand(const std::vector<ExponentVector>& z, const SymRationalMatrix& q);

/// multiplier * target = scale * z^T Q z with Q PSD.
struct SosCertificate {
  /// Size of the x block; the remaining variables are the y block. Only
  /// used for presentation and file output.
  std::size_t x_vars = 0;
  std::vector<ExponentVector> z;
  SymRationalMatrix q;
  Form multiplier;
  Rational scale = 1;

  std::size_t n_vars() const { return z.empty() ? multiplier.n_vars() : z.front().size(); }
};

enum class SosRejection { None, ShapeMismatch, IdentityMismatch, NotPsd, MultiplierNotSquares };

struct SosVerdict {
  bool accepted = false;
  SosRejection reason = SosRejection::None;
  /// Set on IdentityMismatch: first monomial (in canonical order) where
  /// multiplier * target / scale and z^T Q z differ, with both coefficients.
  std::optional<ExponentVector> mismatch;
  Rational expected;
  Rational actual;
  LdltReport ldlt;
  std::string message;
};

/// True when every term is a positive multiple of an even monomial.
bool is_monomial_square_sum(const Form& f);

/// Acceptance proves multiplier * target >= 0 and, since the multiplier is
/// a sum of even monomials, target >= 0. With multiplier 1 it proves target
/// is a sum of squares.
SosVerdict verify_sos_certificate(const Form& target, const SosCertificate& cert);
SosVerdict verify_sos_certificate(const BiquadraticForm& target, const SosCertificate& cert);

}  // namespace sosc
