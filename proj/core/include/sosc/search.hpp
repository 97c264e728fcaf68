#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"
#include "sosc/dual.hpp"
#include "sosc/form.hpp"
#include "sosc/linalg.hpp"

namespace sosc {

/// Small dense row-major matrix of doubles.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from(const RationalMatrix& m);

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> values;
  /// Column i is the unit eigenvector for values[i].
  DenseMatrix vectors;
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most tol.
EigenDecomposition jacobi_eigendecomposition(const DenseMatrix& s, double tol = 1e-12);

/// All Gram matrices of `target` over z that live on the range of
/// basis_change: Q = V (base + sum t_i kernel_i) V^T. With V = I this is the
/// whole fiber of the Gram map.
struct GramParameterization {
  Form target;
  std::vector<ExponentVector> z;
  /// z.size() x k
  RationalMatrix basis_change;
  /// k x k
  SymRationalMatrix base;
  std::vector<SymRationalMatrix> kernel;

  std::size_t reduced_dim() const { return base.dim(); }
  SymRationalMatrix point(std::span<const Rational> t) const;
  SymRationalMatrix full_gram(const SymRationalMatrix& reduced) const;
};

/// Throws InvalidArgument naming the first target monomial that no product
/// z_r z_s produces, or when the reduced system is inconsistent.
GramParameterization parameterize(const Form& target, const std::vector<ExponentVector>& z);
GramParameterization parameterize(const Form& target, const std::vector<ExponentVector>& z,
                                  const RationalMatrix& basis_change);

struct SearchConfig {
  std::uint64_t max_iterations = 10000;
  double convergence_tol = 1e-8;
  std::uint64_t denominator_bound = 1u << 16;
  std::uint64_t denominator_cap = 1u << 24;
  unsigned restarts = 2;
  std::uint64_t seed = 1;
};

struct ProjectionResult {
  bool feasible = false;
  /// Last fiber point, k x k.
  DenseMatrix gram;
  std::size_t iterations = 0;
  double min_eigenvalue = 0;
  /// Frobenius distance from the fiber point to its PSD projection.
  double separation_norm = 0;
  /// PSD projection of the fiber point minus the fiber point. Zero when feasible.
  DenseMatrix separation;
};

/// Alternates between {R : R >= margin I} and the affine fiber. Succeeds once
/// a fiber point has smallest eigenvalue >= max(-convergence_tol, margin / 2).
/// `start` is an optional initial reduced Gram matrix.
ProjectionResult alternating_projection_solve(const GramParameterization& pz, const SearchConfig& cfg,
                                              double margin = 0, const DenseMatrix* start = nullptr);

struct RoundingResult {
  std::optional<SosCertificate> certificate;
  LdltReport last_report;
  std::uint64_t denominator_bound = 0;
};

/// Rounds the fiber coordinates of `gram` to rationals, doubling the
/// denominator bound from cfg.denominator_bound up to cfg.denominator_cap,
/// and keeps the first exact point whose full Gram matrix passes LDL^T.
RoundingResult rationalize_and_certify(const DenseMatrix& gram, const GramParameterization& pz,
                                       const SearchConfig& cfg, const Form& multiplier, std::size_t x_vars);

struct RefutationResult {
  std::optional<DualCertificate> certificate;
  std::string message;
};

/// Separating functional for a biquadratic form that is not a sum of squares
/// of bilinear forms. Only returns certificates accepted by verify_refutation.
RefutationResult refutation_search(const BiquadraticForm& target, const SearchConfig& cfg);

struct SearchOutcome {
  enum class Status { ExactCertificate, NumericFeasible, Refuted, Stalled };

  Status status = Status::Stalled;
  std::optional<SosCertificate> certificate;
  std::optional<DualCertificate> refutation;
  /// Largest negative part of the last numeric Gram matrix (0 when PSD).
  double residual = 0;
  std::size_t iterations = 0;
  std::uint64_t denominator_bound = 0;
  std::string diagnostics;
};

std::string to_string(SearchOutcome::Status s);

/// Every monomial of degree (dx, dy) in x = first nx variables, y = the next ny.
std::vector<ExponentVector> bidegree_monomials(std::size_t nx, std::size_t ny, unsigned dx, unsigned dy);

/// Drops z_r while z_r^2 has coefficient 0 in the target and no other
/// product of basis monomials produces it.
std::vector<ExponentVector> prune_basis(const Form& target, std::vector<ExponentVector> z);

/// multiplier * target = z^T Q z with Q PSD over the given basis, with
/// facial reduction when the fiber has no interior point.
SearchOutcome search_gram(const Form& target, const std::vector<ExponentVector>& z, const SearchConfig& cfg,
                          const Form& multiplier, std::size_t x_vars);

/// y^T H_p(x) y as a form in 2n variables, for any degree >= 2.
Form hessian_form(const Form& p);

/// SOS search for y^T H_p(x) y over monomials of bidegree ((d-2)/2, 1);
/// quartics also get a refutation attempt.
SearchOutcome check_sos_convexity(const Form& p, const SearchConfig& cfg);

/// Plain SOS search; the basis is all monomials of half degree.
SearchOutcome check_sos(const Form& target, const SearchConfig& cfg);

/// Biquadratic SOS search over bilinear monomials with a refutation attempt.
SearchOutcome check_sos(const BiquadraticForm& target, const SearchConfig& cfg);

/// SOS search for multiplier * target; the multiplier must be a positive
/// combination of even monomials so that success proves target >= 0.
SearchOutcome check_nonneg_multiplier(const Form& target, const Form& multiplier, std::size_t x_vars,
                                      const SearchConfig& cfg);

}  // namespace sosc
