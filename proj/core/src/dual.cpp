#include "sosc/dual.hpp"

namespace sosc {

DualCertificate DualCertificate::make(Order order, std::size_t n, RationalVector c) {
  DualCertificate cert;
  cert.order = order;
  if (order == Order::Builtin36) {
    if (n != 3) throw InvalidArgument("builtin36 ordering is ternary");
    cert.ordering = MonomialOrdering::builtin36();
  } else {
    cert.ordering = MonomialOrdering::lex(n);
  }
  if (c.size() != cert.ordering.size()) throw InvalidArgument("functional length does not match ordering");
  cert.c = std::move(c);
  return cert;
}

std::vector<std::pair<unsigned, unsigned>> bilinear_basis(std::size_t n) {
  std::vector<std::pair<unsigned, unsigned>> basis;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) basis.emplace_back(i, j);
  return basis;
}

Rational pairing(const DualCertificate& cert, const BiquadraticForm& b) {
  if (cert.c.size() != cert.ordering.size()) throw InvalidArgument("functional length does not match ordering");
  return dot(cert.c, coefficient_vector(b, cert.ordering));
}

MomentMatrix moment_matrix(const DualCertificate& cert) {
  if (cert.c.size() != cert.ordering.size()) throw InvalidArgument("functional length does not match ordering");
  const std::size_t n = cert.ordering.n();
  MomentMatrix m{bilinear_basis(n), SymRationalMatrix(n * n)};
  for (std::size_t r = 0; r < m.basis.size(); ++r)
    for (std::size_t s = r; s < m.basis.size(); ++s) {
      auto [i, j] = m.basis[r];
      auto [k, l] = m.basis[s];
      m.matrix.set(r, s, cert.c[cert.ordering.index_of(BiquadKey::make(i, k, j, l))]);
    }
  return m;
}

RefutationVerdict verify_refutation(const DualCertificate& cert, const BiquadraticForm& b) {
  if (cert.ordering.n() != b.n()) throw InvalidArgument("functional and form have different block sizes");
  RefutationVerdict v;
  v.pairing = pairing(cert, b);
  v.ldlt = ldlt_psd_check(moment_matrix(cert).matrix);
  if (v.ldlt.verdict == PsdVerdict::NotPSD) {
    v.message = "moment matrix is not PSD";
    return v;
  }
  if (v.pairing >= 0) {
    v.message = "pairing " + format_rational_short(v.pairing) + " is not negative";
    return v;
  }
  v.accepted = true;
  v.message = "not SOS, pairing = " + format_rational_short(v.pairing);
  return v;
}

}  // namespace sosc
