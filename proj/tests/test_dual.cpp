#include <gtest/gtest.h>

#include "sosc/corpus.hpp"
#include "sosc/dual.hpp"
#include "support.hpp"

using namespace sosc;
using sosc::testing::RandomRationals;

TEST(Dual, ReferencePairingAndMomentMatrix) {
  const DualCertificate c = corpus::b22_dual();
  const BiquadraticForm b = corpus::b_thm22();
  EXPECT_EQ(pairing(c, b), -37);

  // c^T b directly against the printed vectors.
  const RationalVector bv = corpus::b_thm22_vector();
  Rational direct = 0;
  for (std::size_t i = 0; i < 36; ++i) direct += c.c[i] * bv[i];
  EXPECT_EQ(direct, -37);

  MomentMatrix m = moment_matrix(c);
  EXPECT_EQ(m.matrix, corpus::b22_moment_matrix());
  EXPECT_EQ(m.basis.size(), 9u);
  EXPECT_EQ(m.basis.front(), std::make_pair(0u, 0u));
  EXPECT_EQ(m.basis[1], std::make_pair(0u, 1u));
  EXPECT_EQ(ldlt_psd_check(m.matrix).verdict, PsdVerdict::PositiveDefinite);

  RefutationVerdict v = verify_refutation(c, b);
  EXPECT_TRUE(v.accepted);
  EXPECT_EQ(v.message, "not SOS, pairing = -37");
}

TEST(Dual, MomentEntriesReadTheFunctional) {
  const DualCertificate c = corpus::b22_dual();
  MomentMatrix m = moment_matrix(c);
  const MonomialOrdering& o = MonomialOrdering::builtin36();
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t s = 0; s < 9; ++s) {
      const auto [i, j] = m.basis[r];
      const auto [k, l] = m.basis[s];
      EXPECT_EQ(m.matrix(r, s), c.c[o.index_of(BiquadKey::make(i, k, j, l))]);
    }
}

TEST(Dual, NonnegativeOnSumsOfSquares) {
  // For w = sum of squares of bilinear forms, pairing = trace(Q * moment) >= 0.
  const DualCertificate c = corpus::b22_dual();
  RandomRationals rnd(41);
  for (int trial = 0; trial < 30; ++trial) {
    BiquadraticForm w(3);
    for (int sq = 0; sq < 3; ++sq) {
      Form l(6, 2);
      for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j) {
          ExponentVector e(6);
          e[i] = 1;
          e[3 + j] = 1;
          l.add_term(e, rnd.next());
        }
      w += BiquadraticForm::from_form(l * l, 3);
    }
    EXPECT_GE(pairing(c, w), 0);
  }
}

TEST(Dual, PairingIsLinear) {
  const DualCertificate c = corpus::b22_dual();
  RandomRationals rnd(42);
  BiquadraticForm a = from_coefficient_vector(rnd.vector(36), MonomialOrdering::builtin36());
  BiquadraticForm b = from_coefficient_vector(rnd.vector(36), MonomialOrdering::builtin36());
  Rational s = rnd.next();
  EXPECT_EQ(pairing(c, a + s * b), pairing(c, a) + s * pairing(c, b));
}

TEST(Dual, Rejections) {
  const BiquadraticForm b = corpus::b_thm22();
  DualCertificate c = corpus::b22_dual();
  c.c[35] = -1;  // x1^2 y1^2 moment becomes negative
  RefutationVerdict v = verify_refutation(c, b);
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.message, "moment matrix is not PSD");

  DualCertificate good = corpus::b22_dual();
  BiquadraticForm sos(3);
  sos.add(0, 0, 0, 0, 1);
  RefutationVerdict w = verify_refutation(good, sos);
  EXPECT_FALSE(w.accepted);

  EXPECT_THROW(DualCertificate::make(DualCertificate::Order::Builtin36, 2, RationalVector(9)), InvalidArgument);
  EXPECT_THROW(DualCertificate::make(DualCertificate::Order::Lex, 2, RationalVector(8)), InvalidArgument);
}

TEST(Dual, LexOrderMatchesBuiltinValues) {
  const DualCertificate c = corpus::b22_dual();
  const MonomialOrdering lex = MonomialOrdering::lex(3);
  RationalVector v(36);
  for (std::size_t i = 0; i < 36; ++i) v[i] = c.c[MonomialOrdering::builtin36().index_of(lex[i])];
  DualCertificate as_lex = DualCertificate::make(DualCertificate::Order::Lex, 3, v);
  EXPECT_EQ(pairing(as_lex, corpus::b_thm22()), -37);
  EXPECT_EQ(moment_matrix(as_lex).matrix, corpus::b22_moment_matrix());
}
