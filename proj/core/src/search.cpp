#include "sosc/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "sosc/form_ops.hpp"

namespace sosc {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from(const RationalMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

EigenDecomposition jacobi_eigendecomposition(const DenseMatrix& s, double tol) {
  if (s.rows != s.cols) throw InvalidArgument("eigendecomposition needs a square matrix");
  const std::size_t n = s.rows;
  double scale = 1.0;
  for (double v : s.data) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > std::max(tol, 1e-12) * scale)
        throw InvalidArgument("eigendecomposition needs a symmetric matrix");

  DenseMatrix a = s;
  DenseMatrix v = DenseMatrix::identity(n);
  EigenDecomposition out;
  double previous_off = std::numeric_limits<double>::infinity();
  for (; out.sweeps < 100; ++out.sweeps) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a(i, j) * a(i, j);
    off = std::sqrt(off);
    // Rounding noise can keep off above a too-small tol; stop once it no longer shrinks.
    if (off <= tol || off >= previous_off) break;
    previous_off = off;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
  }
  return out;
}

namespace {

using PairMap = std::map<ExponentVector, std::vector<std::pair<std::size_t, std::size_t>>, std::greater<>>;

PairMap product_pairs(const std::vector<ExponentVector>& z) {
  PairMap pairs;
  for (std::size_t r = 0; r < z.size(); ++r)
    for (std::size_t s = 0; s < z.size(); ++s) pairs[z[r] + z[s]].emplace_back(r, s);
  return pairs;
}

std::string monomial_text(const ExponentVector& e) {
  return to_string(Form::monomial(e));
}

// Upper-triangle index of (i, j), i <= j, in a k x k symmetric matrix.
std::size_t tri_index(std::size_t i, std::size_t j, std::size_t k) { return i * k - i * (i + 1) / 2 + j; }

SymRationalMatrix unpack(std::span<const Rational> x, std::size_t k) {
  SymRationalMatrix m(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) m.set(i, j, x[tri_index(i, j, k)]);
  return m;
}

// Scaled half-vectorization: the Euclidean norm of svec(R) is the Frobenius norm of R.
std::vector<double> svec(const DenseMatrix& m) {
  const std::size_t k = m.rows;
  std::vector<double> x(k * (k + 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) x[tri_index(i, j, k)] = i == j ? m(i, i) : std::sqrt(2.0) * m(i, j);
  return x;
}

DenseMatrix smat(const std::vector<double>& x, std::size_t k) {
  DenseMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double v = x[tri_index(i, j, k)];
      if (i != j) v /= std::sqrt(2.0);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

DenseMatrix dense(const SymRationalMatrix& m) { return DenseMatrix::from(m.matrix()); }

double frobenius(const DenseMatrix& m) {
  double s = 0;
  for (double v : m.data) s += v * v;
  return std::sqrt(s);
}

// V diag(f(lambda)) V^T
template <typename F>
DenseMatrix spectral_map(const EigenDecomposition& e, F f) {
  const std::size_t n = e.values.size();
  DenseMatrix out(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    const double w = f(e.values[t]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = w * e.vectors(i, t);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * e.vectors(j, t);
    }
  }
  return out;
}

// Orthogonal projection onto the affine fiber in scaled svec coordinates,
// plus recovery of kernel coordinates t.
class FiberGeometry {
 public:
  explicit FiberGeometry(const GramParameterization& pz) : k_(pz.reduced_dim()) {
    x0_ = svec(dense(pz.base));
    const std::size_t p = x0_.size();
    const std::size_t kk = pz.kernel.size();
    q_.assign(kk, std::vector<double>(p, 0.0));
    r_.assign(kk, std::vector<double>(kk, 0.0));
    for (std::size_t c = 0; c < kk; ++c) {
      std::vector<double> w = svec(dense(pz.kernel[c]));
      // Modified Gram-Schmidt with one reorthogonalization pass.
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < c; ++j) {
          double d = 0;
          for (std::size_t i = 0; i < p; ++i) d += q_[j][i] * w[i];
          r_[j][c] += d;
          for (std::size_t i = 0; i < p; ++i) w[i] -= d * q_[j][i];
        }
      double norm = 0;
      for (double v : w) norm += v * v;
      norm = std::sqrt(norm);
      if (norm == 0) throw Error("kernel basis is numerically dependent");
      r_[c][c] = norm;
      for (std::size_t i = 0; i < p; ++i) q_[c][i] = w[i] / norm;
    }
  }

  std::size_t k() const { return k_; }
  const std::vector<double>& base() const { return x0_; }

  std::vector<double> project(const std::vector<double>& x) const {
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - x0_[i];
    std::vector<double> out = x0_;
    for (const auto& q : q_) {
      double d = 0;
      for (std::size_t i = 0; i < x.size(); ++i) d += q[i] * diff[i];
      for (std::size_t i = 0; i < x.size(); ++i) out[i] += d * q[i];
    }
    return out;
  }

  std::vector<double> coordinates(const std::vector<double>& x) const {
    const std::size_t kk = q_.size();
    std::vector<double> y(kk, 0.0);
    for (std::size_t c = 0; c < kk; ++c)
      for (std::size_t i = 0; i < x.size(); ++i) y[c] += q_[c][i] * (x[i] - x0_[i]);
    std::vector<double> t(kk, 0.0);
    for (std::size_t c = kk; c-- > 0;) {
      double v = y[c];
      for (std::size_t j = c + 1; j < kk; ++j) v -= r_[c][j] * t[j];
      t[c] = v / r_[c][c];
    }
    return t;
  }

 private:
  std::size_t k_;
  std::vector<double> x0_;
  std::vector<std::vector<double>> q_;
  std::vector<std::vector<double>> r_;
};

double coefficient_scale(const Form& f) {
  double s = 0;
  for (const auto& [e, c] : f.terms()) s = std::max(s, std::abs(c.get_d()));
  return s == 0 ? 1.0 : s;
}

// RREF of the row space of W^T with complete pivoting, entries rounded to
// nearby small-denominator rationals.
std::optional<std::vector<RationalVector>> rationalize_subspace(const DenseMatrix& w, std::size_t count,
                                                                double tolerance) {
  const std::size_t n = w.rows;
  std::vector<std::vector<double>> rows(count, std::vector<double>(n));
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t i = 0; i < n; ++i) rows[r][i] = w(i, r);
  std::vector<std::size_t> pivots;
  std::vector<bool> used(n, false);
  for (std::size_t r = 0; r < count; ++r) {
    std::size_t br = r, bc = 0;
    double best = -1;
    for (std::size_t rr = r; rr < count; ++rr)
      for (std::size_t c = 0; c < n; ++c)
        if (!used[c] && std::abs(rows[rr][c]) > best) {
          best = std::abs(rows[rr][c]);
          br = rr;
          bc = c;
        }
    if (best < 1e-10) return std::nullopt;
    std::swap(rows[r], rows[br]);
    used[bc] = true;
    pivots.push_back(bc);
    const double pv = rows[r][bc];
    for (double& v : rows[r]) v /= pv;
    for (std::size_t rr = 0; rr < count; ++rr) {
      if (rr == r) continue;
      const double f = rows[rr][bc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) rows[rr][c] -= f * rows[r][c];
    }
  }
  std::vector<RationalVector> out;
  for (std::size_t r = 0; r < count; ++r) {
    RationalVector row(n);
    for (std::size_t c = 0; c < n; ++c) {
      const double x = rows[r][c];
      if (std::abs(x) < tolerance) continue;
      bool ok = false;
      for (std::uint64_t d = 1; d <= (1u << 20); d *= 2) {
        Rational q = best_rational_approximation(x, d);
        if (std::abs(x - q.get_d()) <= tolerance * std::max(1.0, std::abs(x))) {
          row[c] = q;
          ok = true;
          break;
        }
      }
      if (!ok) return std::nullopt;
    }
    for (std::size_t j = 0; j < pivots.size(); ++j) row[pivots[j]] = j == r ? 1 : 0;
    out.push_back(std::move(row));
  }
  return out;
}

RationalMatrix columns(const std::vector<RationalVector>& vecs, std::size_t n) {
  RationalMatrix m(n, vecs.size());
  for (std::size_t c = 0; c < vecs.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = vecs[c][r];
  return m;
}

}  // namespace

SymRationalMatrix GramParameterization::point(std::span<const Rational> t) const {
  if (t.size() != kernel.size()) throw InvalidArgument("wrong number of fiber coordinates");
  RationalMatrix m = base.matrix();
  const std::size_t k = base.dim();
  for (std::size_t c = 0; c < t.size(); ++c) {
    if (t[c] == 0) continue;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (kernel[c](i, j) != 0) m(i, j) += t[c] * kernel[c](i, j);
  }
  return SymRationalMatrix(std::move(m));
}

SymRationalMatrix GramParameterization::full_gram(const SymRationalMatrix& reduced) const {
  return SymRationalMatrix(basis_change * reduced.matrix() * basis_change.transpose());
}

GramParameterization parameterize(const Form& target, const std::vector<ExponentVector>& z) {
  return parameterize(target, z, RationalMatrix::identity(z.size()));
}

GramParameterization parameterize(const Form& target, const std::vector<ExponentVector>& z,
                                  const RationalMatrix& basis_change) {
  if (z.empty()) throw InvalidArgument("empty monomial basis");
  const std::size_t n = z.size();
  for (const auto& e : z)
    if (e.size() != target.n_vars()) throw InvalidArgument("basis monomial has the wrong number of variables");
  if (basis_change.rows() != n) throw InvalidArgument("basis change has the wrong number of rows");
  if (!target.is_zero() && target.degree() != 2 * z.front().degree())
    throw InvalidArgument("target degree is not twice the basis degree");

  PairMap pairs = product_pairs(z);
  for (const auto& [e, c] : target.terms())
    if (!pairs.count(e)) throw InvalidArgument("monomial " + monomial_text(e) + " is not a product of basis monomials");

  const RationalMatrix& v = basis_change;
  const std::size_t k = v.cols();
  const std::size_t params = k * (k + 1) / 2;
  RationalMatrix a(pairs.size(), params);
  RationalVector rhs;
  rhs.reserve(pairs.size());
  std::size_t row = 0;
  for (const auto& [e, list] : pairs) {
    rhs.push_back(target.coefficient(e));
    for (const auto& [r, s] : list) {
      for (std::size_t i = 0; i < k; ++i) {
        if (v(r, i) == 0 && v(s, i) == 0) continue;
        for (std::size_t j = i; j < k; ++j) {
          // Q_rs picks up V_ri V_sj + V_rj V_si from the (i, j) parameter.
          Rational w = v(r, i) * v(s, j);
          if (i != j) w += v(r, j) * v(s, i);
          if (w != 0) a(row, tri_index(i, j, k)) += w;
        }
      }
    }
    ++row;
  }

  auto sol = solve(a, rhs);
  if (!sol) throw InvalidArgument("target has no Gram matrix on this basis");
  GramParameterization pz;
  pz.target = target;
  pz.z = z;
  pz.basis_change = basis_change;
  pz.base = unpack(*sol, k);
  for (const auto& kv : nullspace(a)) pz.kernel.push_back(unpack(kv, k));
  return pz;
}

ProjectionResult alternating_projection_solve(const GramParameterization& pz, const SearchConfig& cfg,
                                              double margin, const DenseMatrix* start) {
  const FiberGeometry geo(pz);
  const std::size_t k = geo.k();
  std::vector<double> x = start ? svec(*start) : geo.base();
  const double goal = margin > 0 ? margin / 2 : -cfg.convergence_tol;

  ProjectionResult out;
  double checkpoint = -1;
  DenseMatrix fiber_point;
  EigenDecomposition eig;
  for (out.iterations = 1; out.iterations <= cfg.max_iterations; ++out.iterations) {
    std::vector<double> f = geo.project(x);
    fiber_point = smat(f, k);
    eig = jacobi_eigendecomposition(fiber_point, 1e-13 * std::max(1.0, frobenius(fiber_point)));
    out.min_eigenvalue = eig.values.empty() ? 0.0 : eig.values.front();
    if (out.min_eigenvalue >= goal) {
      out.feasible = true;
      out.gram = fiber_point;
      out.separation = DenseMatrix(k, k);
      out.separation_norm = 0;
      return out;
    }
    DenseMatrix clipped = spectral_map(eig, [&](double l) { return std::max(l, margin); });
    double sep = 0;
    for (std::size_t i = 0; i < clipped.data.size(); ++i)
      sep += (clipped.data[i] - fiber_point.data[i]) * (clipped.data[i] - fiber_point.data[i]);
    out.separation_norm = std::sqrt(sep);
    if (out.iterations % 250 == 0) {
      if (checkpoint >= 0 && out.separation_norm > 0.999 * checkpoint) break;
      checkpoint = out.separation_norm;
    }
    x = svec(clipped);
  }
  if (out.iterations > cfg.max_iterations) out.iterations = cfg.max_iterations;
  out.gram = fiber_point;
  DenseMatrix psd = spectral_map(eig, [](double l) { return std::max(l, 0.0); });
  out.separation = DenseMatrix(k, k);
  for (std::size_t i = 0; i < psd.data.size(); ++i) out.separation.data[i] = psd.data[i] - fiber_point.data[i];
  return out;
}

RoundingResult rationalize_and_certify(const DenseMatrix& gram, const GramParameterization& pz,
                                       const SearchConfig& cfg, const Form& multiplier, std::size_t x_vars) {
  const FiberGeometry geo(pz);
  const std::vector<double> t = geo.coordinates(svec(gram));
  RoundingResult out;
  std::vector<RationalVector> tried;
  for (std::uint64_t d = std::max<std::uint64_t>(1, cfg.denominator_bound);; d *= 2) {
    RationalVector tq;
    tq.reserve(t.size());
    for (double v : t) tq.push_back(best_rational_approximation(v, d));
    out.denominator_bound = d;
    if (std::find(tried.begin(), tried.end(), tq) == tried.end()) {
      SymRationalMatrix q = pz.full_gram(pz.point(tq));
      out.last_report = ldlt_psd_check(q);
      if (out.last_report.verdict != PsdVerdict::NotPSD && gram_expand(pz.z, q) == pz.target) {
        out.certificate = SosCertificate{x_vars, pz.z, std::move(q), multiplier, 1};
        return out;
      }
      tried.push_back(std::move(tq));
    }
    if (d >= cfg.denominator_cap || t.empty()) break;
  }
  return out;
}

RefutationResult refutation_search(const BiquadraticForm& target, const SearchConfig& cfg) {
  const std::size_t n = target.n();
  RefutationResult out;
  std::vector<ExponentVector> z = bidegree_monomials(n, n, 1, 1);
  GramParameterization pz = parameterize(target.to_form(), z);
  ProjectionResult ap = alternating_projection_solve(pz, cfg, 0);
  if (ap.feasible) {
    out.message = "a numeric Gram matrix exists; no separating functional";
    return out;
  }

  // Average the separation direction over each monomial class.
  std::map<BiquadKey, std::pair<double, int>> acc;
  const auto basis = bilinear_basis(n);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t s = 0; s < basis.size(); ++s) {
      BiquadKey key = BiquadKey::make(basis[r].first, basis[s].first, basis[r].second, basis[s].second);
      auto& slot = acc[key];
      slot.first += ap.separation(r, s);
      slot.second += 1;
    }
  const MonomialOrdering ord = MonomialOrdering::lex(n);
  std::vector<double> sep(ord.size()), gauss(ord.size());
  double pair_sep = 0, pair_gauss = 0;
  for (std::size_t i = 0; i < ord.size(); ++i) {
    const BiquadKey& key = ord[i];
    sep[i] = acc[key].first / acc[key].second;
    gauss[i] = key.i == key.j && key.k == key.l ? 1.0 : 0.0;
    const double b = target.coefficient(key).get_d();
    pair_sep += sep[i] * b;
    pair_gauss += gauss[i] * b;
  }
  if (pair_sep >= 0) {
    out.message = "separation direction does not pair negatively";
    return out;
  }

  // Moment matrix of the averaged direction, to keep the Gaussian shift small.
  DenseMatrix y(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t s = 0; s < basis.size(); ++s)
      y(r, s) = sep[ord.index_of(BiquadKey::make(basis[r].first, basis[s].first, basis[r].second, basis[s].second))];
  const double lmin = jacobi_eigendecomposition(y, 1e-14 * std::max(1.0, frobenius(y))).values.front();
  const double t_lo = std::max(0.0, -lmin);
  const double t_hi = pair_gauss > 0 ? -pair_sep / pair_gauss : t_lo + 1.0;

  std::vector<double> shifts = {0.5 * t_hi};
  if (t_lo < t_hi) shifts.push_back(0.5 * (t_lo + t_hi));
  double scale = 0;
  for (double v : sep) scale = std::max(scale, std::abs(v));
  for (double shift : shifts) {
    for (std::uint64_t d = 16; d <= cfg.denominator_cap; d *= 4) {
      RationalVector c(ord.size());
      for (std::size_t i = 0; i < ord.size(); ++i)
        c[i] = best_rational_approximation((sep[i] + shift * gauss[i]) / scale, d);
      DualCertificate cert = DualCertificate::make(DualCertificate::Order::Lex, n, c);
      RefutationVerdict v = verify_refutation(cert, target);
      if (v.accepted) {
        out.certificate = std::move(cert);
        out.message = v.message;
        return out;
      }
    }
  }
  out.message = "no rounded functional passed exact verification";
  return out;
}

std::string to_string(SearchOutcome::Status s) {
  switch (s) {
    case SearchOutcome::Status::ExactCertificate:
      return "exact_certificate";
    case SearchOutcome::Status::NumericFeasible:
      return "numeric_feasible";
    case SearchOutcome::Status::Refuted:
      return "refuted";
    case SearchOutcome::Status::Stalled:
      return "stalled";
  }
  return "unknown";
}

std::vector<ExponentVector> bidegree_monomials(std::size_t nx, std::size_t ny, unsigned dx, unsigned dy) {
  std::vector<ExponentVector> xs = nx ? all_monomials(nx, dx) : std::vector<ExponentVector>{ExponentVector(0)};
  std::vector<ExponentVector> ys = ny ? all_monomials(ny, dy) : std::vector<ExponentVector>{ExponentVector(0)};
  std::vector<ExponentVector> out;
  for (const auto& ex : xs)
    for (const auto& ey : ys) {
      std::vector<unsigned> e = ex.data();
      e.insert(e.end(), ey.data().begin(), ey.data().end());
      out.emplace_back(std::move(e));
    }
  return out;
}

std::vector<ExponentVector> prune_basis(const Form& target, std::vector<ExponentVector> z) {
  for (bool changed = true; changed;) {
    changed = false;
    PairMap pairs = product_pairs(z);
    std::vector<ExponentVector> kept;
    for (std::size_t r = 0; r < z.size(); ++r) {
      const ExponentVector sq = z[r] + z[r];
      if (target.coefficient(sq) == 0 && pairs[sq].size() == 1) {
        changed = true;
        continue;
      }
      kept.push_back(z[r]);
    }
    z = std::move(kept);
  }
  return z;
}

namespace {

// Solves a small dense system by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = a.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (a(p, c) == 0.0) continue;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    if (a(c, c) == 0.0) continue;
    double v = b[c];
    for (std::size_t j = c + 1; j < n; ++j) v -= a(c, j) * x[j];
    x[c] = v / a(c, c);
  }
  return x;
}

struct BarrierPoint {
  DenseMatrix gram;
  double lambda = 0;
};

// Maximizes the smallest eigenvalue over the fiber by a log-barrier path:
// minimize -tau * lambda - log det(F(t) - lambda I) for increasing tau.
// Near the optimum the eigenvalues of F(t) on the common kernel of the
// optimal face go to zero while the others stay bounded away from it.
BarrierPoint max_min_eigenvalue(const GramParameterization& pz, const DenseMatrix& start, double scale) {
  const std::size_t k = pz.reduced_dim();
  const std::size_t m = pz.kernel.size();
  std::vector<DenseMatrix> a;
  for (const auto& kb : pz.kernel) {
    DenseMatrix d = dense(kb);
    for (double& v : d.data) v /= scale;
    a.push_back(std::move(d));
  }
  a.push_back(DenseMatrix(k, k));
  for (std::size_t i = 0; i < k; ++i) a.back()(i, i) = -1.0;
  DenseMatrix f0 = dense(pz.base);
  for (double& v : f0.data) v /= scale;

  const FiberGeometry geo(pz);
  std::vector<double> x = geo.coordinates(svec(start));
  auto fiber = [&](const std::vector<double>& xs) {
    DenseMatrix f = f0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < f.data.size(); ++j) f.data[j] += xs[i] * a[i].data[j];
    return f;
  };
  // x holds t (in unscaled units) then lambda (in scaled units).
  {
    const DenseMatrix f = fiber(x);
    EigenDecomposition e = jacobi_eigendecomposition(f, 1e-15 * std::max(1.0, frobenius(f)));
    x.push_back(e.values.front() - 1.0);
  }
  auto slack = [&](const std::vector<double>& xs) {
    DenseMatrix s = fiber(xs);
    for (std::size_t i = 0; i < k; ++i) s(i, i) -= xs[m];
    return s;
  };
  auto objective = [&](const std::vector<double>& xs, double tau, bool& ok) {
    const DenseMatrix sl = slack(xs);
    EigenDecomposition e = jacobi_eigendecomposition(sl, 1e-15 * frobenius(sl));
    ok = e.values.front() > 0;
    if (!ok) return 0.0;
    double ld = 0;
    for (double l : e.values) ld += std::log(l);
    return -tau * xs[m] - ld;
  };

  const std::size_t dim = m + 1;
  for (double tau = 1.0; tau <= 1e13; tau *= 10) {
    for (int newton = 0; newton < 60; ++newton) {
      const DenseMatrix sl = slack(x);
      EigenDecomposition e = jacobi_eigendecomposition(sl, 1e-15 * frobenius(sl));
      // Whitened constraint matrices W^T A_i W with W = V diag(l^-1/2).
      std::vector<DenseMatrix> w(dim, DenseMatrix(k, k));
      for (std::size_t i = 0; i < dim; ++i) {
        DenseMatrix tmp(k, k);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) {
            double s = 0;
            for (std::size_t q = 0; q < k; ++q) s += a[i](r, q) * e.vectors(q, c);
            tmp(r, c) = s;
          }
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) {
            double s = 0;
            for (std::size_t q = 0; q < k; ++q) s += e.vectors(q, r) * tmp(q, c);
            w[i](r, c) = s / std::sqrt(e.values[r] * e.values[c]);
          }
      }
      std::vector<double> grad(dim, 0.0);
      DenseMatrix hess(dim, dim);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t r = 0; r < k; ++r) grad[i] -= w[i](r, r);
        for (std::size_t j = i; j < dim; ++j) {
          double s = 0;
          for (std::size_t q = 0; q < k * k; ++q) s += w[i].data[q] * w[j].data[q];
          hess(i, j) = hess(j, i) = s;
        }
      }
      grad[m] -= tau;
      std::vector<double> neg(dim);
      for (std::size_t i = 0; i < dim; ++i) neg[i] = -grad[i];
      std::vector<double> step = solve_dense(hess, neg);
      double decrement = 0;
      for (std::size_t i = 0; i < dim; ++i) decrement -= grad[i] * step[i];
      if (decrement < 1e-10) break;
      bool ok = false;
      const double phi = objective(x, tau, ok);
      double alpha = 1.0;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        std::vector<double> trial = x;
        for (std::size_t i = 0; i < dim; ++i) trial[i] += alpha * step[i];
        bool trial_ok = false;
        const double v = objective(trial, tau, trial_ok);
        if (trial_ok && v <= phi - 0.25 * alpha * decrement) {
          x = std::move(trial);
          break;
        }
      }
    }
  }
  BarrierPoint out;
  out.gram = fiber(x);
  for (double& v : out.gram.data) v *= scale;
  out.lambda = x[m] * scale;
  return out;
}

struct GramSearch {
  const Form& goal;
  const Form& original;
  const std::vector<ExponentVector>& z;
  const SearchConfig& cfg;
  const Form& multiplier;
  std::size_t x_vars;
  double scale;
  std::mt19937_64 rng;
  SearchOutcome outcome;
  std::ostringstream log;

  bool accept(RoundingResult& rr) {
    if (!rr.certificate) return false;
    SosVerdict v = verify_sos_certificate(original, *rr.certificate);
    if (!v.accepted) return false;
    outcome.status = SearchOutcome::Status::ExactCertificate;
    outcome.certificate = std::move(rr.certificate);
    outcome.denominator_bound = rr.denominator_bound;
    return true;
  }

  // Rounds the max-min-eigenvalue point, then AP with margins below it.
  bool interior_attempts(const GramParameterization& pz, const BarrierPoint& bp) {
    RoundingResult centre = rationalize_and_certify(bp.gram, pz, cfg, multiplier, x_vars);
    outcome.residual = 0;
    if (accept(centre)) return true;
    const std::size_t k = pz.reduced_dim();
    for (unsigned restart = 0; restart < std::max(1u, cfg.restarts); ++restart) {
      DenseMatrix start = dense(pz.base);
      if (restart > 0) {
        std::normal_distribution<double> noise(0.0, 0.1 * scale);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i; j < k; ++j) {
            const double v = start(i, j) + noise(rng);
            start(i, j) = v;
            start(j, i) = v;
          }
      }
      for (double rel : {0.5, 0.1, 0.01}) {
        ProjectionResult ap = alternating_projection_solve(pz, cfg, rel * bp.lambda, &start);
        outcome.iterations += ap.iterations;
        if (!ap.feasible) continue;
        outcome.residual = std::max(0.0, -ap.min_eigenvalue);
        RoundingResult rr = rationalize_and_certify(ap.gram, pz, cfg, multiplier, x_vars);
        if (accept(rr)) return true;
        outcome.status = SearchOutcome::Status::NumericFeasible;
        log << "rounding failed at denominator bound " << rr.denominator_bound << "; ";
      }
    }
    return false;
  }

  bool attempt(const RationalMatrix& v, int depth) {
    GramParameterization pz;
    try {
      pz = parameterize(goal, z, v);
    } catch (const InvalidArgument& e) {
      log << "face " << v.cols() << ": " << e.what() << "; ";
      return false;
    }
    if (pz.kernel.empty()) {
      RoundingResult rr = rationalize_and_certify(dense(pz.base), pz, cfg, multiplier, x_vars);
      outcome.residual = 0;
      return accept(rr);
    }

    const BarrierPoint bp = max_min_eigenvalue(pz, dense(pz.base), scale);
    if (bp.lambda > 1e-7 * scale) return interior_attempts(pz, bp);
    if (bp.lambda < -1e-6 * scale) {
      // No PSD point on this face; AP stalls with a separating direction.
      ProjectionResult ap = alternating_projection_solve(pz, cfg, 0);
      outcome.iterations += ap.iterations;
      outcome.residual = std::max(0.0, -ap.min_eigenvalue);
      log << "smallest eigenvalue stays below " << bp.lambda << "; ";
      return false;
    }
    if (depth >= 3 || pz.reduced_dim() <= 1) return false;

    // Facial reduction: the optimum sits on a proper face; read its kernel.
    const std::size_t k = pz.reduced_dim();
    const std::size_t n = z.size();
    EigenDecomposition eig = jacobi_eigendecomposition(bp.gram, 1e-15 * std::max(1.0, frobenius(bp.gram)));
    const double top = std::max(eig.values.back(), 1e-300);

    // Kernel vectors u of the reduced matrix are V (V^T V)^{-1} u in z coordinates.
    const RationalMatrix vt = v.transpose();
    const std::vector<RationalVector> known = nullspace(vt);
    const auto gram_inv = inverse(vt * v);
    if (!gram_inv) return false;
    const DenseMatrix lift = DenseMatrix::from(v * *gram_inv);

    std::size_t last_count = 0;
    for (double theta : {1e-8, 1e-6, 1e-4}) {
      std::size_t count = 0;
      while (count < k && eig.values[count] < theta * top) ++count;
      if (count <= last_count || count >= k) continue;
      last_count = count;
      DenseMatrix w(n, count);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < count; ++c)
          for (std::size_t a = 0; a < k; ++a) w(i, c) += lift(i, a) * eig.vectors(a, c);
      std::vector<std::vector<RationalVector>> tried;
      for (double tolerance : {1e-9, 1e-7, 1e-5}) {
        auto kernel = rationalize_subspace(w, count, tolerance);
        if (!kernel || std::find(tried.begin(), tried.end(), *kernel) != tried.end()) continue;
        tried.push_back(*kernel);
        std::vector<RationalVector> rows = known;
        rows.insert(rows.end(), kernel->begin(), kernel->end());
        auto complement = nullspace(RationalMatrix::from_rows(rows));
        if (complement.size() + known.size() + count != n) continue;
        log << "reduced to dimension " << complement.size() << "; ";
        if (attempt(columns(complement, n), depth + 1)) return true;
      }
    }
    return false;
  }
};

Form constant_one(std::size_t n) { return Form::constant(n, 1); }

}  // namespace

SearchOutcome search_gram(const Form& target, const std::vector<ExponentVector>& z, const SearchConfig& cfg,
                          const Form& multiplier, std::size_t x_vars) {
  const Form goal = multiplier * target;
  const std::vector<ExponentVector> basis = prune_basis(goal, z);
  GramSearch search{goal, target, basis, cfg, multiplier, x_vars, coefficient_scale(goal), std::mt19937_64(cfg.seed),
                    SearchOutcome{}, {}};
  if (basis.empty()) {
    search.outcome.diagnostics = "every basis monomial was pruned";
    return search.outcome;
  }
  search.log << "basis size " << basis.size() << "; ";
  search.attempt(RationalMatrix::identity(basis.size()), 0);
  std::string notes = search.log.str();
  if (notes.size() >= 2 && notes.ends_with("; ")) notes.resize(notes.size() - 2);
  search.outcome.diagnostics = std::move(notes);
  return search.outcome;
}

Form hessian_form(const Form& p) {
  if (p.degree() < 2) throw InvalidArgument("Hessian form needs degree at least 2");
  const std::size_t n = p.n_vars();
  Form out(2 * n, p.degree());
  for (std::size_t i = 0; i < n; ++i) {
    Form di = differentiate(p, i);
    for (std::size_t j = 0; j < n; ++j) {
      Form dij = differentiate(di, j);
      if (dij.is_zero()) continue;
      out += dij.embed(2 * n, 0) * Form::variable(2 * n, n + i) * Form::variable(2 * n, n + j);
    }
  }
  return out;
}

SearchOutcome check_sos_convexity(const Form& p, const SearchConfig& cfg) {
  if (p.degree() % 2 != 0 || p.degree() < 2) throw InvalidArgument("sos-convexity needs an even degree >= 2");
  const std::size_t n = p.n_vars();
  const Form h = hessian_form(p);
  std::vector<ExponentVector> z = bidegree_monomials(n, n, (p.degree() - 2) / 2, 1);
  SearchOutcome out = search_gram(h, z, cfg, constant_one(2 * n), n);
  if (out.status == SearchOutcome::Status::ExactCertificate || p.degree() != 4) return out;
  RefutationResult ref = refutation_search(BiquadraticForm::from_form(h, n), cfg);
  if (ref.certificate) {
    out.status = SearchOutcome::Status::Refuted;
    out.refutation = std::move(ref.certificate);
  }
  if (!ref.message.empty()) out.diagnostics += (out.diagnostics.empty() ? "" : "; ") + ref.message;
  return out;
}

SearchOutcome check_sos(const Form& target, const SearchConfig& cfg) {
  if (target.degree() % 2 != 0) throw InvalidArgument("a sum of squares needs even degree");
  const std::size_t n = target.n_vars();
  return search_gram(target, all_monomials(n, target.degree() / 2), cfg, constant_one(n), n);
}

SearchOutcome check_sos(const BiquadraticForm& target, const SearchConfig& cfg) {
  const std::size_t n = target.n();
  SearchOutcome out = search_gram(target.to_form(), bidegree_monomials(n, n, 1, 1), cfg, constant_one(2 * n), n);
  if (out.status == SearchOutcome::Status::ExactCertificate) return out;
  RefutationResult ref = refutation_search(target, cfg);
  if (ref.certificate) {
    out.status = SearchOutcome::Status::Refuted;
    out.refutation = std::move(ref.certificate);
  }
  if (!ref.message.empty()) out.diagnostics += (out.diagnostics.empty() ? "" : "; ") + ref.message;
  return out;
}

SearchOutcome check_nonneg_multiplier(const Form& target, const Form& multiplier, std::size_t x_vars,
                                      const SearchConfig& cfg) {
  if (multiplier.n_vars() != target.n_vars()) throw InvalidArgument("multiplier has the wrong number of variables");
  if (!is_monomial_square_sum(multiplier))
    throw InvalidArgument("multiplier must be a positive combination of even monomials");
  const Form goal = multiplier * target;
  if (goal.degree() % 2 != 0) throw InvalidArgument("multiplier times target has odd degree");
  const std::size_t n = target.n_vars();

  // Use the bidegree basis when every term has the same even bidegree.
  std::optional<std::pair<unsigned, unsigned>> bideg;
  bool uniform = x_vars > 0 && x_vars < n;
  for (const auto& [e, c] : goal.terms()) {
    if (!uniform) break;
    unsigned dx = 0, dy = 0;
    for (std::size_t i = 0; i < n; ++i) (i < x_vars ? dx : dy) += e[i];
    if (bideg && *bideg != std::pair{dx, dy}) uniform = false;
    bideg = std::pair{dx, dy};
  }
  std::vector<ExponentVector> z;
  if (uniform && bideg && bideg->first % 2 == 0 && bideg->second % 2 == 0)
    z = bidegree_monomials(x_vars, n - x_vars, bideg->first / 2, bideg->second / 2);
  else
    z = all_monomials(n, goal.degree() / 2);
  return search_gram(target, z, cfg, multiplier, x_vars);
}

}  // namespace sosc
