#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"
#include "sosc/face.hpp"
#include "sosc/form.hpp"
#include "sosc/form_ops.hpp"
#include "sosc/linalg.hpp"
#include "sosc/rational.hpp"
#include "sosc/search.hpp"

namespace sosc::testing {

class RandomRationals {
 public:
  explicit RandomRationals(std::uint64_t seed) : rng_(seed) {}

  Rational next(int max_num = 9, int max_den = 5) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    const int a = num(rng_);
    Rational r(a, den(rng_));
    r.canonicalize();
    return r;
  }

  Rational positive(int max_num = 9, int max_den = 5) {
    std::uniform_int_distribution<int> num(1, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    const int a = num(rng_);
    Rational r(a, den(rng_));
    r.canonicalize();
    return r;
  }

  Rational nonzero(int max_num = 9, int max_den = 5) {
    Rational r = positive(max_num, max_den);
    return coin() ? r : Rational(-r);
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  RationalVector vector(std::size_t n) {
    RationalVector v(n);
    for (auto& x : v) x = next();
    return v;
  }

  /// Random form with roughly `density` of the monomials present.
  Form form(std::size_t n_vars, unsigned degree, double density = 0.6) {
    Form f(n_vars, degree);
    std::bernoulli_distribution keep(density);
    for (const auto& e : all_monomials(n_vars, degree))
      if (keep(rng_)) f.add_term(e, next());
    return f;
  }

  RationalMatrix matrix(std::size_t r, std::size_t c) {
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = next();
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Laplace expansion along the first row; only for small matrices.
inline Rational cofactor_determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = m(i, j);
    Rational term = m(0, c) * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

inline std::vector<BiquadKey> all_keys(std::size_t n) {
  std::vector<BiquadKey> keys;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = k; l < n; ++l) keys.push_back({i, j, k, l});
  return keys;
}

inline std::size_t key_index(const std::vector<BiquadKey>& keys, const BiquadKey& k) {
  return static_cast<std::size_t>(std::find(keys.begin(), keys.end(), k) - keys.begin());
}

/// Rank of {e_m + sign * e_swap(m)} over all monomials m.
inline std::size_t swap_rank(std::size_t n, int sign) {
  const auto keys = all_keys(n);
  RationalMatrix m(keys.size(), keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    m(r, r) += 1;
    m(r, key_index(keys, keys[r].swapped())) += sign;
  }
  return rank(m);
}

/// Rank of the map p -> y^T H_p(x) y on the monomial basis of quartics.
inline std::size_t hessian_map_rank(std::size_t n) {
  const auto keys = all_keys(n);
  const auto quartics = all_monomials(n, 4);
  RationalMatrix m(quartics.size(), keys.size());
  for (std::size_t r = 0; r < quartics.size(); ++r) {
    BiquadraticForm b = hessian_biquadratic(Form::monomial(quartics[r]));
    for (const auto& [k, c] : b.coefficients()) m(r, key_index(keys, k)) = c;
  }
  return rank(m);
}

inline RationalVector unit(std::size_t i, std::size_t n = 3) {
  RationalVector e(n, Rational(0));
  e[i] = 1;
  return e;
}

/// Conditions H_g(u) v = 0 and H_g(v) u = 0 at both face zeros, as rows over all_monomials(3, 4).
inline RationalMatrix zero_conditions(const face::FaceParams& fp) {
  const auto mons = all_monomials(3, 4);
  const std::vector<std::pair<RationalVector, RationalVector>> zeros = {{unit(0), unit(1)}, {unit(2), fp.d()}};
  RationalMatrix m(12, mons.size());
  for (std::size_t c = 0; c < mons.size(); ++c) {
    const PolyMatrix h = hessian(Form::monomial(mons[c]));
    std::size_t row = 0;
    for (const auto& [u, v] : zeros)
      for (const auto& [p, dir] : {std::pair{u, v}, std::pair{v, u}}) {
        RationalVector hv = evaluate(h, p) * std::span<const Rational>(dir);
        for (std::size_t i = 0; i < 3; ++i) m(row++, c) = hv[i];
      }
  }
  return m;
}

/// s^T M s assembled term by term.
inline Form gram_form(const face::AlphaVector& alpha, const face::FaceParams& fp) {
  const auto s = face::s_basis(fp);
  const SymRationalMatrix m = face::gram_M(alpha, fp);
  Form out(6, 4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) out += m(i, j) * (s[i] * s[j]);
  return out;
}

/// The face Gram matrix M written over the bilinear monomials x_i y_j.
inline SosCertificate face_certificate(const face::AlphaVector& alpha, const face::FaceParams& fp) {
  const auto s = face::s_basis(fp);
  const auto z = bidegree_monomials(3, 3, 1, 1);
  RationalMatrix coeff(5, z.size());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t m = 0; m < z.size(); ++m) coeff(i, m) = s[i].coefficient(z[m]);
  const RationalMatrix q = coeff.transpose() * face::gram_M(alpha, fp).matrix() * coeff;
  SosCertificate cert;
  cert.x_vars = 3;
  cert.z = z;
  cert.q = SymRationalMatrix(q);
  cert.multiplier = Form::constant(6, 1);
  return cert;
}

}  // namespace sosc::testing
