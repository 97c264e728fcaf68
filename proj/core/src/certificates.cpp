#include "sosc/certificates.hpp"

#include <sstream>

namespace sosc {

std::string to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::PositiveDefinite:
      return "PositiveDefinite";
    case PsdVerdict::PositiveSemidefinite:
      return "PositiveSemidefinite";
    case PsdVerdict::NotPSD:
      return "NotPSD";
  }
  return "?";
}

LdltReport ldlt_psd_check(const RationalMatrix& s) {
  if (!s.is_symmetric()) throw InvalidArgument("LDL^T check needs a symmetric matrix");
  RationalMatrix a = s;
  const std::size_t n = a.rows();
  LdltReport report;
  bool all_positive = true;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational pivot = a(k, k);
    report.pivots.push_back(pivot);
    if (pivot < 0) {
      report.verdict = PsdVerdict::NotPSD;
      report.failure_index = k;
      return report;
    }
    if (pivot == 0) {
      all_positive = false;
      for (std::size_t j = k + 1; j < n; ++j)
        if (a(k, j) != 0) {
          report.verdict = PsdVerdict::NotPSD;
          report.failure_index = k;
          return report;
        }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational factor = a(i, k) / pivot;
      for (std::size_t j = i; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
        a(j, i) = a(i, j);
      }
    }
  }
  report.verdict = all_positive ? PsdVerdict::PositiveDefinite : PsdVerdict::PositiveSemidefinite;
  return report;
}

LdltReport ldlt_psd_check(const SymRationalMatrix& s) { return ldlt_psd_check(s.matrix()); }

Form gram_expand(const std::vector<ExponentVector>& z, const SymRationalMatrix& q) {
  if (q.dim() != z.size()) throw InvalidArgument("Gram matrix size does not match basis length");
  if (z.empty()) throw InvalidArgument("empty monomial basis");
  const std::size_t n_vars = z.front().size();
  const unsigned half = z.front().degree();
  for (const auto& m : z)
    if (m.size() != n_vars || m.degree() != half) throw InvalidArgument("basis monomials must share variables and degree");
  Form out(n_vars, 2 * half);
  for (std::size_t r = 0; r < z.size(); ++r) {
    if (q(r, r) != 0) out.add_term(z[r] + z[r], q(r, r));
    for (std::size_t s = r + 1; s < z.size(); ++s)
      if (q(r, s) != 0) out.add_term(z[r] + z[s], 2 * q(r, s));
  }
  return out;
}

bool is_monomial_square_sum(const Form& f) {
  for (const auto& [e, c] : f.terms()) {
    if (c <= 0) return false;
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] % 2 != 0) return false;
  }
  return !f.is_zero();
}

SosVerdict verify_sos_certificate(const Form& target, const SosCertificate& cert) {
  SosVerdict verdict;
  auto reject = [&](SosRejection why, std::string msg) {
    verdict.accepted = false;
    verdict.reason = why;
    verdict.message = std::move(msg);
    return verdict;
  };

  if (cert.q.dim() != cert.z.size()) return reject(SosRejection::ShapeMismatch, "Q dimension does not match basis length");
  if (cert.scale <= 0) return reject(SosRejection::ShapeMismatch, "scale must be positive");
  if (cert.multiplier.n_vars() != target.n_vars())
    return reject(SosRejection::ShapeMismatch, "multiplier and target use different variable sets");
  if (!cert.z.empty() && cert.z.front().size() != target.n_vars())
    return reject(SosRejection::ShapeMismatch, "basis and target use different variable sets");

  if (!is_monomial_square_sum(cert.multiplier))
    return reject(SosRejection::MultiplierNotSquares, "multiplier is not a positive sum of even monomials");

  Form lhs = cert.multiplier * target * (1 / cert.scale);
  Form rhs = cert.z.empty() ? Form(target.n_vars(), lhs.degree()) : gram_expand(cert.z, cert.q);
  if (lhs != rhs) {
    // Walk both term maps together in canonical order.
    Form diff = lhs - rhs;
    const ExponentVector& first = diff.terms().begin()->first;
    verdict.mismatch = first;
    verdict.expected = lhs.coefficient(first);
    verdict.actual = rhs.coefficient(first);
    std::ostringstream msg;
    msg << "identity fails at monomial [";
    for (std::size_t v = 0; v < first.size(); ++v) msg << (v ? " " : "") << first[v];
    msg << "]: multiplier*target/scale has " << format_rational_short(verdict.expected) << ", z^T Q z has "
        << format_rational_short(verdict.actual);
    return reject(SosRejection::IdentityMismatch, msg.str());
  }

  verdict.ldlt = ldlt_psd_check(cert.q);
  if (verdict.ldlt.verdict == PsdVerdict::NotPSD) {
    std::ostringstream msg;
    msg << "Q is not PSD (pivot " << *verdict.ldlt.failure_index + 1 << " = "
        << format_rational_short(verdict.ldlt.pivots.back()) << ")";
    return reject(SosRejection::NotPsd, msg.str());
  }
  verdict.accepted = true;
  verdict.message = "certificate verified (Q " + to_string(verdict.ldlt.verdict) + ")";
  return verdict;
}

SosVerdict verify_sos_certificate(const BiquadraticForm& target, const SosCertificate& cert) {
  return verify_sos_certificate(target.to_form(), cert);
}

}  // namespace sosc
