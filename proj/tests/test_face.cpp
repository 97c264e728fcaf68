#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "sosc/corpus.hpp"
#include "sosc/face.hpp"
#include "sosc/form_ops.hpp"
#include "support.hpp"

using namespace sosc;
using namespace sosc::face;
using namespace sosc::testing;

namespace {

AlphaVector random_alpha(RandomRationals& rnd) {
  return {rnd.positive(), rnd.positive(), rnd.positive(), rnd.positive(), rnd.next()};
}

AlphaVector at_bound(AlphaVector alpha, const FaceParams& fp) {
  alpha[4] = alpha5_lower_bound(alpha, fp);
  return alpha;
}

}  // namespace

TEST(Face, QBasisAndSBasis) {
  FaceParams fp{Rational(2), Rational(-3)};
  const auto q = q_basis(fp);
  const auto s = s_basis(fp);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(hessian_biquadratic(q[i]).to_form(), Rational(12) * s[i].pow(2));
  EXPECT_EQ(q[0], Form::variable(3, 0).pow(4));
  RationalVector x{1, 1, 1};
  EXPECT_EQ(q[4].evaluate(x), 1 * Rational(-3 - 2) * Rational(-3 - 2));
}

TEST(Face, LabDimensionIsFive) {
  RandomRationals rnd(51);
  std::vector<FaceParams> params = {{1, 1}, {1, 0}, {0, 1}};
  for (int i = 0; i < 20; ++i) params.push_back({rnd.nonzero(), rnd.nonzero()});
  for (const auto& fp : params) {
    SCOPED_TRACE(format_rational_short(fp.a) + "," + format_rational_short(fp.b));
    LabDimension lab = l_ab_dimension(fp);
    EXPECT_EQ(lab.rank, 10u);
    EXPECT_EQ(lab.dimension, 5u);
    EXPECT_EQ(lab.basis.size(), 5u);
    const RationalMatrix oracle = zero_conditions(fp);
    EXPECT_EQ(rank(oracle), 10u);
    for (const auto& v : lab.basis) {
      RationalVector r = oracle * std::span<const Rational>(v);
      for (const auto& x : r) EXPECT_EQ(x, 0);
    }
    if (fp.a != 0 && fp.b != 0)
      for (const auto& q : q_basis(fp)) {
        RationalVector r = oracle * std::span<const Rational>(quartic_coordinates(q));
        for (const auto& x : r) EXPECT_EQ(x, 0);
      }
  }
  EXPECT_THROW(l_ab_dimension({0, 0}), InvalidArgument);
}

TEST(Face, GramIdentityAndDeterminant) {
  RandomRationals rnd(52);
  for (int trial = 0; trial < 100; ++trial) {
    const FaceParams fp{rnd.nonzero(), rnd.nonzero()};
    const AlphaVector alpha = random_alpha(rnd);
    const Form hp = hessian_biquadratic(combine(alpha, fp)).to_form();
    EXPECT_EQ(gram_form(alpha, fp), hp);
    const SymRationalMatrix m = gram_M(alpha, fp);
    const Rational closed = det_M_closed(alpha, fp);
    EXPECT_EQ(closed, cofactor_determinant(m.matrix()));
    EXPECT_EQ(closed, determinant(m.matrix()));
  }
}

TEST(Face, BoundBehaviour) {
  RandomRationals rnd(53);
  for (int trial = 0; trial < 100; ++trial) {
    const FaceParams fp{rnd.nonzero(), rnd.nonzero()};
    const AlphaVector alpha = at_bound(random_alpha(rnd), fp);
    EXPECT_LT(alpha[4], 0);
    EXPECT_EQ(det_M_closed(alpha, fp), 0);
    const SymRationalMatrix m = gram_M(alpha, fp);
    const RationalVector v = kernel_vector(alpha, fp);
    RationalVector mv = m.matrix() * std::span<const Rational>(v);
    for (const auto& x : mv) EXPECT_EQ(x, 0);
    EXPECT_EQ(ldlt_psd_check(m).verdict, PsdVerdict::PositiveSemidefinite);
    EXPECT_TRUE(membership_T(alpha, fp));

    AlphaVector below = alpha;
    below[4] -= Rational(1, 10);
    EXPECT_EQ(ldlt_psd_check(gram_M(below, fp)).verdict, PsdVerdict::NotPSD);
    EXPECT_FALSE(membership_T(below, fp));
  }
}

TEST(Face, MembershipExamples) {
  const FaceParams one{1, 1};
  EXPECT_EQ(alpha5_lower_bound(std::array<Rational, 4>{1, 1, 1, 1}, one), -1);
  EXPECT_TRUE(membership_T({1, 1, 1, 1, -1}, one));
  EXPECT_TRUE(membership_T({1, 1, 1, 1, 0}, one));
  EXPECT_FALSE(membership_T({1, 1, 1, 1, Rational(1, 100)}, one));
  EXPECT_FALSE(membership_T({-1, 1, 1, 1, 0}, one));
  EXPECT_TRUE(membership_T({0, 1, 1, 1, 0}, one));
  EXPECT_FALSE(membership_T({0, 1, 1, 1, Rational(-1, 100)}, one));
  EXPECT_THROW(membership_T({1, 1, 1, 1, 0}, {0, 1}), InvalidArgument);

  const FaceParams fp{1, 2};
  const SymRationalMatrix m = gram_M({1, 1, 1, 1, 0}, fp);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) EXPECT_EQ(m(i, j), 0);
  EXPECT_TRUE(membership_T({1, 1, 1, 1, 0}, fp));
}

TEST(Face, AdditionalZero) {
  RandomRationals rnd(54);
  int distinct = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const FaceParams fp = trial < 10 ? FaceParams{1, 1} : FaceParams{rnd.nonzero(), rnd.nonzero()};
    const AlphaVector alpha = at_bound(random_alpha(rnd), fp);
    const ZeroQuadratic quad = zero_quadratic(alpha, fp);
    ASSERT_FALSE(quad.identically_zero());
    EXPECT_GT(quad.discriminant, 0);
    EXPECT_EQ(quad.discriminant, quad.b_x1x2 * quad.b_x1x2 - 4 * quad.a_x1x1 * quad.c_x2x2);

    auto zero = find_additional_zero<double>(alpha, fp, 1e-9);
    EXPECT_EQ(zero.kind, RootKind::Distinct);
    const auto& p = zero.point;
    EXPECT_LE(p.residual, 1e-9);
    for (double c : {p.x[0], p.x[1], p.y[0], p.y[1]}) EXPECT_GT(std::abs(c), 1e-8);
    EXPECT_NEAR(p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2], 1.0, 1e-12);

    // Independent residual and kernel alignment: s(x, y) is parallel to v.
    const BiquadraticForm h = hessian_biquadratic(combine(alpha, fp));
    EXPECT_LE(std::abs(evaluate_as<double>(h, std::span<const double>(p.x), std::span<const double>(p.y))), 1e-9);
    const auto s = s_basis(fp);
    std::array<double, 6> xy{p.x[0], p.x[1], p.x[2], p.y[0], p.y[1], p.y[2]};
    std::array<double, 5> sv{};
    for (std::size_t i = 0; i < 5; ++i) sv[i] = s[i].evaluate_as<double>(std::span<const double>(xy));
    const RationalVector v = kernel_vector(alpha, fp);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        const double vi = to_double(v[i]), vj = to_double(v[j]);
        const double scale = std::max({1.0, std::abs(vi), std::abs(vj)});
        EXPECT_NEAR(sv[i] * vj - sv[j] * vi, 0.0, 1e-7 * scale);
      }
    ++distinct;
  }
  EXPECT_EQ(distinct, 20);
}

TEST(Face, AdditionalZeroHighPrecision) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  const FaceParams fp{Rational(2, 3), Rational(-5, 7)};
  const AlphaVector alpha = at_bound({Rational(3), Rational(1, 2), Rational(5, 4), Rational(2)}, fp);
  auto zero = find_additional_zero<Float>(alpha, fp, 1e-40);
  EXPECT_LE(zero.point.residual, Float("1e-40"));
}

TEST(Face, AdditionalZeroFamilyAndPreconditions) {
  const FaceParams one{1, 1};
  const AlphaVector alpha{1, 1, 1, 1, -1};
  EXPECT_TRUE(zero_quadratic(alpha, one).identically_zero());
  auto zero = find_additional_zero<double>(alpha, one, 1e-9);
  EXPECT_EQ(zero.kind, RootKind::Family);
  EXPECT_LE(zero.point.residual, 1e-9);
  for (double c : {zero.point.x[0], zero.point.x[1], zero.point.y[0], zero.point.y[1]}) EXPECT_GT(std::abs(c), 1e-8);

  EXPECT_THROW(find_additional_zero<double>({1, 1, 1, 1, 0}, one, 1e-9), InvalidArgument);
  EXPECT_THROW(find_additional_zero<double>(alpha, {0, 1}, 1e-9), InvalidArgument);
}

TEST(Face, TangentHessianAtU1) {
  const RationalVector e1 = unit(0), e2 = unit(1);
  const BiquadraticForm hf = hessian_biquadratic(corpus::f_lemma32());
  EXPECT_EQ(evaluate(hf, e1, e2), 0);
  TangentHessian t = tangent_hessian_check(hf, e1, e2);
  EXPECT_EQ(t.restricted.dim(), 4u);
  EXPECT_EQ(t.report.verdict, PsdVerdict::PositiveDefinite);

  // The explicit sum of four squares of products.
  auto lin = [](int c1, int c3, std::size_t offset, std::size_t i) {
    return Rational(c1) * Form::variable(6, offset + i) + Rational(c3) * Form::variable(6, offset + 2);
  };
  Form expected(6, 4);
  for (auto [c1, i] : {std::pair{1, 0u}, std::pair{1, 1u}, std::pair{2, 0u}, std::pair{2, 1u}})
    expected += Rational(12) * (lin(c1, 1, 0, i) * lin(c1, 1, 3, i)).pow(2);
  EXPECT_EQ(hf.to_form(), expected);

  const BiquadraticForm hq = hessian_biquadratic(corpus::q_reduction());
  TangentHessian z = tangent_hessian_check(hq, e1, e2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(z.restricted(i, j), 0);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(z.full(i, j), 0);

  RationalVector one{1, 1, 1};
  EXPECT_THROW(tangent_hessian_check(hf, one, one), InvalidArgument);
}

TEST(Face, WitnessEvaluations) {
  RandomRationals rnd(55);
  for (int trial = 0; trial < 10; ++trial) {
    const FaceParams fp{rnd.nonzero(), rnd.nonzero()};
    const Rational &a = fp.a, &b = fp.b;
    const auto q = q_basis(fp);
    const BiquadraticForm h5 = hessian_biquadratic(q[4]);
    RationalVector x{0, b, 1}, y{a, 0, 1};
    EXPECT_EQ(evaluate(h5, x, y), -4 * a * a * b * b);

    const double sqrt3 = std::sqrt(3.0);
    std::array<double, 3> x2{0, (2 + sqrt3) * to_double(b), 1}, y2{to_double(a), 0, 1};
    const double h4 = evaluate_as<double>(hessian_biquadratic(q[3]), std::span<const double>(x2),
                                          std::span<const double>(y2));
    const double expected = (48 + 24 * sqrt3) * std::pow(to_double(b), 4);
    EXPECT_LE(std::abs(h4 - expected), 1e-9 * std::abs(expected));

    bool saw_v1 = false, saw_v2 = false;
    for (const WitnessRow& row : witness_evaluations(fp)) {
      if (row.point == "v1" && row.q_index == 5) {
        ASSERT_TRUE(row.exact.has_value());
        EXPECT_EQ(*row.exact, -4 * a * a * b * b);
        saw_v1 = true;
      }
      if (row.point == "v2" && row.q_index == 4) {
        EXPECT_FALSE(row.exact.has_value());
        EXPECT_LE(std::abs(row.numeric - expected), 1e-9 * std::abs(expected));
        saw_v2 = true;
      }
    }
    EXPECT_TRUE(saw_v1);
    EXPECT_TRUE(saw_v2);
  }
}
