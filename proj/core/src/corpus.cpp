#include "sosc/corpus.hpp"

namespace sosc::corpus {

namespace {

Form x(unsigned i) { return Form::variable(3, i); }

SymRationalMatrix integer_matrix(const std::vector<std::vector<int>>& rows) {
  std::vector<RationalVector> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return SymRationalMatrix::from_rows(r);
}

}  // namespace

PolyMatrix choi_matrix() {
  PolyMatrix c(3, 3, 2);
  c.set(0, 0, x(0) * x(0) + Rational(2) * (x(1) * x(1)));
  c.set(1, 1, x(1) * x(1) + Rational(2) * (x(2) * x(2)));
  c.set(2, 2, x(2) * x(2) + Rational(2) * (x(0) * x(0)));
  c.set_symmetric(0, 1, Rational(-1) * (x(0) * x(1)));
  c.set_symmetric(0, 2, Rational(-1) * (x(0) * x(2)));
  c.set_symmetric(1, 2, Rational(-1) * (x(1) * x(2)));
  return c;
}

BiquadraticForm choi_biquadratic() {
  const PolyMatrix c = choi_matrix();
  BiquadraticForm b(3);
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned s = 0; s < 3; ++s)
      for (const auto& [e, coeff] : c(r, s).terms()) {
        std::vector<unsigned> xs;
        for (unsigned v = 0; v < 3; ++v)
          for (unsigned m = 0; m < e[v]; ++m) xs.push_back(v);
        b.add(xs[0], xs[1], r, s, coeff);
      }
  return b;
}

BiquadraticForm b_thm22() {
  struct Term {
    int c;
    unsigned i, j, k, l;  // 1-based, x_i x_j y_k y_l
  };
  const Term self[] = {{12, 1, 1, 1, 1}, {12, 2, 2, 2, 2}, {12, 3, 3, 3, 3},
                       {31, 1, 2, 1, 2}, {-10, 1, 3, 1, 3}, {-5, 2, 3, 2, 3}};
  const Term paired[] = {{12, 2, 2, 1, 1}, {6, 3, 3, 1, 1},  {12, 2, 2, 3, 3}, {4, 1, 2, 1, 1},  {9, 1, 3, 1, 1},
                         {-10, 2, 3, 1, 1}, {13, 1, 3, 2, 2}, {13, 2, 3, 2, 2}, {23, 1, 2, 2, 2}, {5, 1, 2, 3, 3},
                         {3, 1, 3, 3, 3},  {7, 2, 3, 3, 3},  {5, 1, 2, 2, 3},  {-11, 1, 3, 2, 3}, {3, 1, 3, 1, 2}};
  BiquadraticForm b(3);
  for (const auto& t : self) b.add(t.i - 1, t.j - 1, t.k - 1, t.l - 1, t.c);
  for (const auto& t : paired) {
    b.add(t.i - 1, t.j - 1, t.k - 1, t.l - 1, t.c);
    b.add(t.k - 1, t.l - 1, t.i - 1, t.j - 1, t.c);
  }
  return b;
}

RationalVector b_thm22_vector() {
  const int v[] = {12, 7,   12, 3,  5,  6,  7,  -5, 13, -11, 5,  -10, 12, 13, 12, 13, 23, 12,
                   3,  -11, 13, -10, 3, 9,  5,  5,  23, 3,   31, 4,   6,  -10, 12, 9,  4,  12};
  return RationalVector(std::begin(v), std::end(v));
}

Form f_lemma32() {
  auto lin = [](int a1, int a2, int a3) {
    RationalVector c{a1, a2, a3};
    return Form::linear(c);
  };
  return lin(1, 0, 1).pow(4) + lin(0, 1, 1).pow(4) + lin(2, 0, 1).pow(4) + lin(0, 2, 1).pow(4);
}

Form q_reduction() { return Rational(1, 12) * x(2).pow(4); }

std::vector<ExponentVector> q22_monomials() {
  // exponents of (x1, x2, x3, y1, y2, y3)
  return {{0, 1, 1, 0, 0, 1}, {0, 1, 1, 0, 1, 0}, {0, 1, 1, 1, 0, 0}, {0, 2, 0, 0, 0, 1}, {0, 2, 0, 0, 1, 0},
          {0, 2, 0, 1, 0, 0}, {1, 0, 1, 0, 0, 1}, {1, 0, 1, 0, 1, 0}, {1, 0, 1, 1, 0, 0}, {1, 1, 0, 0, 0, 1},
          {1, 1, 0, 0, 1, 0}, {1, 1, 0, 1, 0, 0}, {2, 0, 0, 0, 0, 1}, {2, 0, 0, 0, 1, 0}, {2, 0, 0, 1, 0, 0}};
}

SymRationalMatrix q22_matrix() {
  return integer_matrix({
      {4608, 1344, 576, 1344, -504, -264, 0, -900, -264, 1392, -612, -303, 972, -612, 576},
      {1344, 4608, 960, -456, 2496, 2340, 900, 0, 864, 264, 3072, 1572, 396, 672, 240},
      {576, 960, 2304, -1848, -1380, -1920, 264, -864, 0, -483, -1440, 1200, -888, 240, -1164},
      {1344, -456, -1848, 4608, 2496, 2496, -816, -1548, -1047, 960, 840, 24, 1896, -1944, 1452},
      {-504, 2496, -1380, 2496, 4608, 4416, -216, -576, 312, 120, 4416, 1356, 1380, -284, 1620},
      {-264, 2340, -1920, 2496, 4416, 4608, -87, 132, 528, 552, 4596, 768, 1512, -24, 1892},
      {0, 900, 264, -816, -216, -87, 4608, 1344, 576, 372, -2400, -1980, 576, -1572, -2400},
      {-900, 0, -864, -1548, -576, 132, 1344, 4608, 960, 1656, 1824, -828, -540, 2496, -84},
      {-264, 864, 0, -1047, 312, 528, 576, 960, 2304, 180, 1308, -756, 480, 660, 1728},
      {1392, 264, -483, 960, 120, 552, 372, 1656, 180, 3120, 1140, 1260, 960, 876, 1152},
      {-612, 3072, -1440, 840, 4416, 4596, -2400, 1824, 1308, 1140, 9784, 3588, 84, 4416, 3660},
      {-303, 1572, 1200, 24, 1356, 768, -1980, -828, -756, 1260, 3588, 5432, -576, 2292, 768},
      {972, 396, -888, 1896, 1380, 1512, 576, -540, 480, 960, 84, -576, 2304, -1920, 1728},
      {-612, 672, 240, -1944, -284, -24, -1572, 2496, 660, 876, 4416, 2292, -1920, 4608, 768},
      {576, 240, -1164, 1452, 1620, 1892, -2400, -84, 1728, 1152, 3660, 768, 1728, 768, 4608},
  });
}

SosCertificate q22_certificate() {
  SosCertificate cert;
  cert.x_vars = 3;
  cert.z = q22_monomials();
  cert.q = q22_matrix();
  cert.multiplier = Form::variable(6, 0).pow(2) + Form::variable(6, 1).pow(2);
  cert.scale = Rational(1, 384);
  return cert;
}

DualCertificate b22_dual() {
  const int c[] = {37, -18, 18, -23, -1, 66, -18, 12, -15, 1,  -1,  35, 18, -15, 96, -5, -37, 64,
                   -23, 1, -5, 34,  -7, -48, -1, -1,  -37, -7, -15, 0,  66, 35,  64, -48, 0,  61};
  return DualCertificate::make(DualCertificate::Order::Builtin36, 3, RationalVector(std::begin(c), std::end(c)));
}

SymRationalMatrix b22_moment_matrix() {
  return integer_matrix({
      {61, 0, -48, 0, -15, -7, -48, -7, 34},
      {0, 64, 35, -15, -37, -1, -7, -5, 1},
      {-48, 35, 66, -7, -1, -1, 34, 1, -23},
      {0, -15, -7, 64, -37, -5, 35, -1, 1},
      {-15, -37, -1, -37, 96, -15, -1, -15, 12},
      {-7, -1, -1, -5, -15, 18, 1, 12, -18},
      {-48, -7, 34, 35, -1, 1, 66, -1, -23},
      {-7, -5, 1, -1, -15, 12, -1, 18, -18},
      {34, 1, -23, 1, 12, -18, -23, -18, 37},
  });
}

std::vector<std::string> builtin_names() {
  return {"choi_matrix", "choi_biquadratic", "b_thm22", "f_lemma32", "q_reduction", "q22_cert", "b22_dual"};
}

Object builtin(std::string_view name) {
  if (name == "choi_matrix") return choi_matrix();
  if (name == "choi_biquadratic") return choi_biquadratic();
  if (name == "b_thm22") return b_thm22();
  if (name == "f_lemma32") return f_lemma32();
  if (name == "q_reduction") return q_reduction();
  if (name == "q22_cert") return q22_certificate();
  if (name == "b22_dual") return b22_dual();
  throw InvalidArgument("unknown builtin '" + std::string(name) + "'");
}

}  // namespace sosc::corpus
