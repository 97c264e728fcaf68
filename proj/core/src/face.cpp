#include "sosc/face.hpp"

#include <cmath>

#include "sosc/form_ops.hpp"

namespace sosc::face {

namespace {

void require_nonzero(const FaceParams& fp) {
  if (fp.a == 0 || fp.b == 0) throw InvalidArgument("a and b must both be nonzero");
}

void require_not_both_zero(const FaceParams& fp) {
  if (fp.a == 0 && fp.b == 0) throw InvalidArgument("a and b must not both be zero");
}

Form linear3(const Rational& c1, const Rational& c2, const Rational& c3) {
  RationalVector c{c1, c2, c3};
  return Form::linear(c);
}

Form linear6(std::array<Rational, 6> c) { return Form::linear(std::span<const Rational>(c)); }

Rational factorial_weight(const ExponentVector& e) {
  Integer w = 1;
  for (unsigned k : e.data())
    for (unsigned t = 2; t <= k; ++t) w *= t;
  return Rational(w);
}

Rational sigma(const AlphaVector& alpha, const FaceParams& fp) {
  Rational a4 = fp.a * fp.a * fp.a * fp.a;
  Rational b4 = fp.b * fp.b * fp.b * fp.b;
  return b4 / alpha[0] + a4 / alpha[1] + b4 / alpha[2] + a4 / alpha[3];
}

}  // namespace

std::array<Form, 5> q_basis(const FaceParams& fp) {
  require_not_both_zero(fp);
  const Rational& a = fp.a;
  const Rational& b = fp.b;
  Form x3 = Form::variable(3, 2);
  return {linear3(1, 0, 0).pow(4), linear3(0, 1, 0).pow(4), linear3(1, 0, -a).pow(4), linear3(0, 1, -b).pow(4),
          (x3 * linear3(b, -a, 0)).pow(2)};
}

Form combine(const AlphaVector& alpha, const FaceParams& fp) {
  auto q = q_basis(fp);
  Form p(3, 4);
  for (std::size_t i = 0; i < 5; ++i) p += alpha[i] * q[i];
  return p;
}

std::array<Form, 5> s_basis(const FaceParams& fp) {
  require_nonzero(fp);
  const Rational& a = fp.a;
  const Rational& b = fp.b;
  return {linear6({1, 0, 0, 0, 0, 0}) * linear6({0, 0, 0, 1, 0, 0}),
          linear6({0, 1, 0, 0, 0, 0}) * linear6({0, 0, 0, 0, 1, 0}),
          linear6({1, 0, -a, 0, 0, 0}) * linear6({0, 0, 0, 1, 0, -a}),
          linear6({0, 1, -b, 0, 0, 0}) * linear6({0, 0, 0, 0, 1, -b}),
          linear6({0, 0, 1, 0, 0, 0}) * linear6({0, 0, 0, b, -a, 0})};
}

RationalVector quartic_coordinates(const Form& g) {
  if (g.n_vars() != 3) throw InvalidArgument("expected a ternary form");
  if (g.degree() != 4 && !g.is_zero()) throw InvalidArgument("expected a quartic");
  auto monos = all_monomials(3, 4);
  RationalVector out;
  out.reserve(monos.size());
  for (const auto& m : monos) out.push_back(g.coefficient(m));
  return out;
}

LabDimension l_ab_dimension(const FaceParams& fp) {
  require_not_both_zero(fp);
  const RationalVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  const std::array<std::pair<RationalVector, RationalVector>, 2> zeros = {std::pair{e1, e2}, std::pair{e3, fp.d()}};
  auto monos = all_monomials(3, 4);

  std::vector<RationalVector> rows;
  for (const auto& [u, v] : zeros) {
    Form ut = Form::linear(u);
    Form vt = Form::linear(v);
    for (const Form& cubic : {ut * ut * vt, vt * vt * ut}) {
      for (std::size_t k = 0; k < 3; ++k) {
        Form op = Form::variable(3, k) * cubic;
        RationalVector row;
        for (const auto& m : monos) row.push_back(op.coefficient(m) * factorial_weight(m));
        rows.push_back(std::move(row));
      }
    }
  }
  LabDimension out;
  out.constraints = RationalMatrix::from_rows(rows);
  out.rank = rank(out.constraints);
  out.dimension = monos.size() - out.rank;
  out.basis = nullspace(out.constraints);
  return out;
}

SymRationalMatrix gram_M(const AlphaVector& alpha, const FaceParams& fp) {
  require_nonzero(fp);
  const Rational c = fp.a / fp.b;
  const Rational c2 = c * c;
  const Rational t = 2 * alpha[4];
  std::vector<RationalVector> rows = {
      {12 * alpha[0] + t / c2, -t, -t / c2, t, t / c},
      {-t, 12 * alpha[1] + t * c2, t, -t * c2, -t * c},
      {-t / c2, t, 12 * alpha[2] + t / c2, -t, -t / c},
      {t, -t * c2, -t, 12 * alpha[3] + t * c2, t * c},
      {t / c, -t * c, -t / c, t * c, -2 * t},
  };
  return SymRationalMatrix::from_rows(rows);
}

Rational det_M_closed(const AlphaVector& alpha, const FaceParams& fp) {
  require_nonzero(fp);
  for (std::size_t i = 0; i < 4; ++i)
    if (alpha[i] == 0) throw InvalidArgument("closed-form determinant needs alpha1..alpha4 nonzero");
  const Rational ab2 = fp.a * fp.a * fp.b * fp.b;
  return Rational(-20736) * alpha[0] * alpha[1] * alpha[2] * alpha[3] * alpha[4] *
         (4 * ab2 + alpha[4] * sigma(alpha, fp)) / ab2;
}

Rational alpha5_lower_bound(const std::array<Rational, 4>& alpha, const FaceParams& fp) {
  return alpha5_lower_bound(AlphaVector{alpha[0], alpha[1], alpha[2], alpha[3], 0}, fp);
}

Rational alpha5_lower_bound(const AlphaVector& alpha, const FaceParams& fp) {
  require_nonzero(fp);
  for (std::size_t i = 0; i < 4; ++i)
    if (alpha[i] <= 0) throw InvalidArgument("lower bound needs alpha1..alpha4 > 0");
  return Rational(-4) * fp.a * fp.a * fp.b * fp.b / sigma(alpha, fp);
}

bool membership_T(const AlphaVector& alpha, const FaceParams& fp) {
  require_nonzero(fp);
  bool any_zero = false;
  for (std::size_t i = 0; i < 4; ++i) {
    if (alpha[i] < 0) return false;
    if (alpha[i] == 0) any_zero = true;
  }
  if (alpha[4] > 0) return false;
  if (any_zero) return alpha[4] == 0;
  return alpha5_lower_bound(alpha, fp) <= alpha[4];
}

RationalVector kernel_vector(const AlphaVector& alpha, const FaceParams& fp) {
  if (alpha5_lower_bound(alpha, fp) != alpha[4]) throw InvalidArgument("alpha5 is not at the lower bound");
  const Rational& a = fp.a;
  const Rational& b = fp.b;
  const Rational ab3 = 2 * a * b * b * b;
  const Rational a3b = 2 * a * a * a * b;
  return {ab3 / alpha[0], -a3b / alpha[1], -ab3 / alpha[2], a3b / alpha[3], sigma(alpha, fp)};
}

ZeroQuadratic zero_quadratic(const AlphaVector& alpha, const FaceParams& fp) {
  ZeroQuadratic q;
  q.v = kernel_vector(alpha, fp);
  const Rational& a = fp.a;
  const Rational& b = fp.b;
  const Rational &v1 = q.v[0], &v2 = q.v[1], &v3 = q.v[2], &v4 = q.v[3], &v5 = q.v[4];
  q.y3_numerator = v5 + a * b * ((v3 - v1) / (a * a) - (v4 - v2) / (b * b));
  const Rational& k = q.y3_numerator;

  // s1 = v1, s2 = v2, s5 = v5 and the y3 identity leave
  // (x1 - a x3)(y1 - a y3) = v3; clearing denominators gives
  // L1 L2 = v3 L3 L4 with L = alpha x1 + beta x2.
  const Rational l1a = -a * v2, l1b = b * v1 - a * v5;
  const Rational l2a = -(b * v1 + a * k), l2b = a * v1;
  const Rational l3a = -a * v2, l3b = b * v1;
  const Rational l4a = -b, l4b = a;
  q.a_x1x1 = l1a * l2a - v3 * l3a * l4a;
  q.b_x1x2 = l1a * l2b + l1b * l2a - v3 * (l3a * l4b + l3b * l4a);
  q.c_x2x2 = l1b * l2b - v3 * l3b * l4b;
  q.discriminant = q.b_x1x2 * q.b_x1x2 - 4 * q.a_x1x1 * q.c_x2x2;
  return q;
}

namespace detail {

void check_zero_preconditions(const AlphaVector& alpha, const FaceParams& fp) {
  require_nonzero(fp);
  if (alpha5_lower_bound(alpha, fp) != alpha[4]) throw InvalidArgument("alpha5 is not at the lower bound");
}

BiquadraticForm face_hessian_form(const AlphaVector& alpha, const FaceParams& fp) {
  return hessian_biquadratic(combine(alpha, fp));
}

Rational admissible_family_ratio(const ZeroQuadratic& quad, const FaceParams& fp) {
  const Rational &v1 = quad.v[0], &v2 = quad.v[1];
  for (int step = 1; step < 64; ++step) {
    for (int sign : {1, -1}) {
      Rational t = Rational(sign * step, 1);
      if (v1 == 0 || v2 == 0) break;
      // x2 = 1: y1 = v1/t, y2 = v2, b y1 - a y2 and a - b t must not vanish.
      if (fp.b * v1 / t - fp.a * v2 == 0) continue;
      if (fp.a - fp.b * t == 0) continue;
      return t;
    }
  }
  throw ZeroFinderError(ZeroFinderError::Kind::DegenerateDivision, "no admissible ratio in the family");
}

}  // namespace detail

TangentHessian tangent_hessian_check(const BiquadraticForm& b, std::span<const Rational> x0,
                                     std::span<const Rational> y0) {
  const std::size_t n = b.n();
  if (x0.size() != n || y0.size() != n) throw InvalidArgument("point has wrong length");
  if (evaluate(b, x0, y0) != 0) throw InvalidArgument("form does not vanish at the point");

  RationalVector point(x0.begin(), x0.end());
  point.insert(point.end(), y0.begin(), y0.end());
  Form f = b.to_form();
  TangentHessian out;
  out.full = RationalMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Form di = differentiate(f, i);
    for (std::size_t j = i; j < 2 * n; ++j) {
      Rational v = differentiate(di, j).evaluate(point);
      out.full(i, j) = v;
      out.full(j, i) = v;
    }
  }

  RationalMatrix bx = complement_basis(x0);
  RationalMatrix by = complement_basis(y0);
  RationalMatrix t(2 * n, 2 * (n - 1));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c + 1 < n; ++c) {
      t(r, c) = bx(r, c);
      t(n + r, n - 1 + c) = by(r, c);
    }
  out.restricted = SymRationalMatrix(t.transpose() * out.full * t);
  out.report = ldlt_psd_check(out.restricted);
  return out;
}

std::vector<WitnessRow> witness_evaluations(const FaceParams& fp) {
  require_nonzero(fp);
  auto q = q_basis(fp);
  std::array<BiquadraticForm, 5> h;
  for (std::size_t i = 0; i < 5; ++i) h[i] = hessian_biquadratic(q[i]);

  std::vector<WitnessRow> rows;
  auto exact_point = [&](const std::string& name, const RationalVector& x, const RationalVector& y) {
    for (std::size_t i = 0; i < 5; ++i) {
      WitnessRow row;
      row.point = name;
      for (std::size_t k = 0; k < 3; ++k) {
        row.x[k] = to_double(x[k]);
        row.y[k] = to_double(y[k]);
      }
      row.q_index = static_cast<int>(i + 1);
      row.exact = evaluate(h[i], x, y);
      row.numeric = to_double(*row.exact);
      rows.push_back(row);
    }
  };
  exact_point("v1", {0, fp.b, 1}, {fp.a, 0, 1});

  const double b = to_double(fp.b);
  const std::array<double, 3> x2{0, (2 + std::sqrt(3.0)) * b, 1};
  const std::array<double, 3> y2{to_double(fp.a), 0, 1};
  for (std::size_t i = 0; i < 5; ++i) {
    WitnessRow row;
    row.point = "v2";
    row.x = x2;
    row.y = y2;
    row.q_index = static_cast<int>(i + 1);
    row.numeric = evaluate_as<double>(h[i], std::span<const double>(x2), std::span<const double>(y2));
    rows.push_back(row);
  }

  exact_point("v3", {fp.a, fp.b, 1}, {1, 0, 1});
  return rows;
}

}  // namespace sosc::face
