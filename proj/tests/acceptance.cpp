// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sosc/cli.hpp"
#include "sosc/corpus.hpp"
#include "sosc/dual.hpp"
#include "sosc/io.hpp"
#include "support.hpp"

using namespace sosc;
using namespace sosc::testing;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }

 private:
  std::string failure_;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Check&)> body;
};

Form x4sum() { return Form::variable(3, 0).pow(4) + Form::variable(3, 1).pow(4) + Form::variable(3, 2).pow(4); }

void reference_gram(Check& c) {
  const SosCertificate cert = corpus::q22_certificate();
  const Form b = corpus::b_thm22().to_form();
  const Form lhs = Rational(384) * (Form::variable(6, 0).pow(2) + Form::variable(6, 1).pow(2)) * b;
  c.expect(cert.z.size() == 15 && cert.q.dim() == 15, "certificate shape");
  c.expect((lhs - gram_expand(cert.z, cert.q)).is_zero(), "384 (x1^2 + x2^2) b - z^T Q z is not zero");
  c.expect(ldlt_psd_check(cert.q).verdict == PsdVerdict::PositiveDefinite, "Q is not positive definite");
  c.expect(verify_sos_certificate(corpus::b_thm22(), cert).accepted, "verifier rejects the certificate");
}

void reference_dual(Check& c) {
  const DualCertificate d = corpus::b22_dual();
  c.expect(pairing(d, corpus::b_thm22()) == -37, "pairing is not -37");
  const MomentMatrix m = moment_matrix(d);
  c.expect(m.matrix == corpus::b22_moment_matrix(), "moment matrix differs from the printed one");
  c.expect(ldlt_psd_check(m.matrix).verdict == PsdVerdict::PositiveDefinite, "moment matrix is not positive definite");
  c.expect(verify_refutation(d, corpus::b_thm22()).accepted, "refutation rejected");
}

void dimensions(Check& c) {
  c.expect(dim_nary(3) == 36 && dim_symmetric(3) == 21 && dim_hessian(3) == 15, "dims(3) != (36, 21, 15)");
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string tag = " (n = " + std::to_string(n) + ")";
    const std::size_t sym = swap_rank(n, +1);
    c.expect(dim_nary(n) == all_keys(n).size(), "n-ary count" + tag);
    c.expect(dim_symmetric(n) == sym, "symmetric count" + tag);
    c.expect(dim_nary(n) == sym + swap_rank(n, -1), "symmetric + antisymmetric" + tag);
    c.expect(dim_hessian(n) == hessian_map_rank(n), "Hessian count" + tag);
  }
}

void choi_witness(Check& c) {
  const HessianVerdict v = is_valid_hessian(corpus::choi_matrix());
  c.expect(!v.valid && v.witness.has_value(), "Choi matrix accepted as a Hessian");
  if (!v.witness) return;
  const Form zero(3, 1);
  const Form minus_x3 = -Form::variable(3, 2);
  const auto& w = *v.witness;
  const bool match = (w.d_ij_dk == zero && w.d_ik_dj == minus_x3) || (w.d_ij_dk == minus_x3 && w.d_ik_dj == zero);
  c.expect(match, "witness derivatives are " + to_string(w.d_ij_dk) + " and " + to_string(w.d_ik_dj));
}

void hessian_symmetry(Check& c) {
  RandomRationals rnd(1005);
  for (int trial = 0; trial < 200; ++trial) {
    const Form p = rnd.form(3, 4);
    c.expect(is_symmetric(hessian_biquadratic(p)).symmetric, "asymmetric Hessian form");
    c.expect(euler_recover(hessian(p), 4) == p, "Euler recovery failed");
  }
}

void lab_dimension(Check& c) {
  RandomRationals rnd(1006);
  std::vector<face::FaceParams> params = {{1, 1}};
  for (int i = 0; i < 20; ++i) params.push_back({rnd.nonzero(), rnd.nonzero()});
  for (const auto& fp : params) {
    const std::string tag = " at (" + format_rational(fp.a) + ", " + format_rational(fp.b) + ")";
    const face::LabDimension lab = face::l_ab_dimension(fp);
    c.expect(lab.rank == 10 && lab.dimension == 5, "rank " + std::to_string(lab.rank) + tag);
    c.expect(rank(zero_conditions(fp)) == 10, "independent constraint rank differs" + tag);
  }
}

void gram_m(Check& c) {
  RandomRationals rnd(1007);
  for (int trial = 0; trial < 100; ++trial) {
    const face::FaceParams fp{rnd.nonzero(), rnd.nonzero()};
    face::AlphaVector alpha{rnd.positive(), rnd.positive(), rnd.positive(), rnd.positive(), rnd.next()};
    const Form hp = hessian_biquadratic(face::combine(alpha, fp)).to_form();
    c.expect(gram_form(alpha, fp) == hp, "s^T M s != h_p");
    c.expect(face::det_M_closed(alpha, fp) == cofactor_determinant(face::gram_M(alpha, fp).matrix()),
             "closed determinant differs from cofactor expansion");

    alpha[4] = face::alpha5_lower_bound(alpha, fp);
    const SymRationalMatrix m = face::gram_M(alpha, fp);
    c.expect(face::det_M_closed(alpha, fp) == 0, "determinant nonzero at the bound");
    const RationalVector mv = m.matrix() * std::span<const Rational>(face::kernel_vector(alpha, fp));
    for (const auto& x : mv) c.expect(x == 0, "M v != 0 at the bound");
    c.expect(ldlt_psd_check(m).verdict == PsdVerdict::PositiveSemidefinite, "verdict at the bound");

    alpha[4] -= Rational(1, 10);
    c.expect(ldlt_psd_check(face::gram_M(alpha, fp)).verdict == PsdVerdict::NotPSD, "verdict below the bound");
  }
}

void additional_zero(Check& c) {
  RandomRationals rnd(1008);
  for (int trial = 0; trial < 20; ++trial) {
    const face::FaceParams fp = trial < 10 ? face::FaceParams{1, 1} : face::FaceParams{rnd.nonzero(), rnd.nonzero()};
    face::AlphaVector alpha{rnd.positive(), rnd.positive(), rnd.positive(), rnd.positive(), 0};
    alpha[4] = face::alpha5_lower_bound(alpha, fp);
    const face::ZeroQuadratic quad = face::zero_quadratic(alpha, fp);
    c.expect(quad.discriminant > 0, "discriminant not positive");
    const auto zero = face::find_additional_zero<double>(alpha, fp, 1e-9);
    const auto& p = zero.point;
    c.expect(p.residual <= 1e-9, "residual " + std::to_string(p.residual));
    const BiquadraticForm h = hessian_biquadratic(face::combine(alpha, fp));
    const double direct = evaluate_as<double>(h, std::span<const double>(p.x), std::span<const double>(p.y));
    c.expect(std::abs(direct) <= 1e-9, "independent residual " + std::to_string(direct));
    c.expect(p.x[0] * p.x[1] * p.y[0] * p.y[1] != 0, "x1 x2 y1 y2 = 0");
    c.expect(std::abs(p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2] - 1) < 1e-12, "x not unit");
    c.expect(std::abs(p.y[0] * p.y[0] + p.y[1] * p.y[1] + p.y[2] * p.y[2] - 1) < 1e-12, "y not unit");
  }
}

void end_to_end(Check& c) {
  SearchConfig cfg;
  const SearchOutcome base = check_sos_convexity(x4sum(), cfg);
  c.expect(base.status == SearchOutcome::Status::ExactCertificate, "x1^4 + x2^4 + x3^4: " + base.diagnostics);
  c.expect(base.residual <= 1e-6, "x4sum residual");
  if (base.certificate)
    c.expect(verify_sos_certificate(hessian_form(x4sum()), *base.certificate).accepted, "x4sum certificate");

  RandomRationals rnd(1009);
  const face::FaceParams fp{1, 1};
  for (int trial = 0; trial < 10; ++trial) {
    face::AlphaVector alpha{rnd.positive(), rnd.positive(), rnd.positive(), rnd.positive(), 0};
    const Rational lb = face::alpha5_lower_bound(alpha, fp);
    alpha[4] = lb * trial / 9;
    const std::string tag = " (member " + std::to_string(trial) + ")";
    c.expect(face::membership_T(alpha, fp), "not a member" + tag);
    const Form p = face::combine(alpha, fp);
    const Form h = hessian_form(p);
    c.expect(verify_sos_certificate(h, face_certificate(alpha, fp)).accepted, "M certificate rejected" + tag);
    const SearchOutcome o = check_sos_convexity(p, cfg);
    c.expect(o.status == SearchOutcome::Status::ExactCertificate, "not certified" + tag + ": " + o.diagnostics);
    c.expect(o.residual <= 1e-6, "residual " + std::to_string(o.residual) + tag);
    if (o.certificate) c.expect(verify_sos_certificate(h, *o.certificate).accepted, "certificate rejected" + tag);
  }
}

void non_sos(Check& c) {
  const Form b = corpus::b_thm22().to_form();
  const GramParameterization pz = parameterize(b, bidegree_monomials(3, 3, 1, 1));
  SearchConfig cfg;
  cfg.max_iterations = 10000;
  const ProjectionResult r = alternating_projection_solve(pz, cfg);
  if (r.feasible) {
    const RoundingResult rr = rationalize_and_certify(r.gram, pz, cfg, Form::constant(6, 1), 3);
    c.expect(!rr.certificate || !verify_sos_certificate(b, *rr.certificate).accepted, "false certificate");
  }
  const SearchOutcome o = check_sos(corpus::b_thm22(), cfg);
  c.expect(!o.certificate.has_value(), "search produced a certificate");

  const auto dir = std::filesystem::temp_directory_path() / ("sosc_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  io::save(dir / "b.biq", corpus::b_thm22());
  std::ostringstream out, err;
  const int status = cli::run({"check", "--sos", (dir / "b.biq").string()}, out, err);
  c.expect(status == 1, "check --sos exited with " + std::to_string(status) + ": " + err.str());
  c.expect(out.str().find("pairing = -37") != std::string::npos, "report lacks the builtin pairing");
  if (std::filesystem::exists(dir / "b.dual")) {
    const auto doc = io::load(dir / "b.dual");
    const auto* d = std::get_if<DualCertificate>(&doc);
    c.expect(d && verify_refutation(*d, corpus::b_thm22()).accepted, "written dual certificate rejected");
  } else {
    c.expect(false, "no dual certificate written");
  }
  std::filesystem::remove_all(dir);
}

void lemma_ingredients(Check& c) {
  const RationalVector e1 = unit(0), e2 = unit(1);
  const BiquadraticForm hf = hessian_biquadratic(corpus::f_lemma32());
  c.expect(evaluate(hf, e1, e2) == 0, "h_f(u1) != 0");
  c.expect(face::tangent_hessian_check(hf, e1, e2).report.verdict == PsdVerdict::PositiveDefinite,
           "tangent Hessian of h_f not positive definite");
  const face::TangentHessian tq = face::tangent_hessian_check(hessian_biquadratic(corpus::q_reduction()), e1, e2);
  for (std::size_t i = 0; i < tq.restricted.dim(); ++i)
    for (std::size_t j = 0; j < tq.restricted.dim(); ++j) c.expect(tq.restricted(i, j) == 0, "h_q tangent nonzero");
}

/// Largest eps = 2^-k (either sign) with f + eps g certified sos-convex and still zero at u1.
std::optional<Rational> perturbation_size(const Form& f, const Form& g) {
  SearchConfig cfg;
  cfg.restarts = 1;
  Rational eps = 1;
  for (int k = 0; k < 8; ++k, eps /= 2)
    for (int sign : {1, -1}) {
      const Rational e = sign * eps;
      const Form p = f + e * g;
      if (evaluate(hessian_biquadratic(p), unit(0), unit(1)) != 0) return std::nullopt;
      if (check_sos_convexity(p, cfg).status == SearchOutcome::Status::ExactCertificate) return e;
    }
  return std::nullopt;
}

void perturbation_info() {
  const Form f = corpus::f_lemma32();
  const std::vector<ExponentVector> missing = {{3, 1, 0}, {2, 2, 0}, {2, 1, 1}, {1, 3, 0}, {1, 2, 1}};
  int certified = 0, total = 0;
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& e : all_monomials(3, 4)) {
    if (std::find(missing.begin(), missing.end(), e) != missing.end()) continue;
    ++total;
    const auto eps = perturbation_size(f, Form::monomial(e));
    if (eps) ++certified;
    detail << " " << to_string(Form::monomial(e)) << ":" << (eps ? format_rational_short(*eps) : "none");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "INFO  11+ f + eps g sos-convex for " << certified << "/" << total << " complement monomials ("
            << secs << " s):" << detail.str() << "\n";
}

void witnesses(Check& c) {
  RandomRationals rnd(1012);
  for (int trial = 0; trial < 10; ++trial) {
    const face::FaceParams fp{rnd.nonzero(), rnd.nonzero()};
    const auto q = face::q_basis(fp);
    const RationalVector x{0, fp.b, 1}, y{fp.a, 0, 1};
    c.expect(evaluate(hessian_biquadratic(q[4]), x, y) == -4 * fp.a * fp.a * fp.b * fp.b, "h_q5 witness");
    const double s3 = std::sqrt(3.0), b = to_double(fp.b);
    const std::array<double, 3> x2{0, (2 + s3) * b, 1}, y2{to_double(fp.a), 0, 1};
    const double h4 =
        evaluate_as<double>(hessian_biquadratic(q[3]), std::span<const double>(x2), std::span<const double>(y2));
    const double expected = (48 + 24 * s3) * std::pow(b, 4);
    c.expect(std::abs(h4 - expected) <= 1e-9 * std::abs(expected), "h_q4 witness");
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "reference Gram certificate", 1, reference_gram},
      {2, "reference dual certificate", 1, reference_dual},
      {3, "dimension counts", 5, dimensions},
      {4, "Choi non-Hessian witness", 1, choi_witness},
      {5, "Hessian forms are symmetric", 10, hessian_symmetry},
      {6, "L_ab dimension", 5, lab_dimension},
      {7, "Gram M identity and determinant", 30, gram_m},
      {8, "additional zero at the bound", 30, additional_zero},
      {9, "end-to-end sos-convexity", 60, end_to_end},
      {10, "non-SOS search behaviour", 60, non_sos},
      {11, "tangent Hessian ingredients", 1, lemma_ingredients},
      {12, "witness evaluations", 1, witnesses},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_seconds) check.expect(false, "over budget");
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs;
    std::cout << (check.ok() ? "PASS" : "FAIL") << "  " << cr.id << ". " << cr.name << " (" << time.str() << " s)";
    if (!check.ok()) std::cout << ": " << check.failure();
    std::cout << "\n" << std::flush;
    if (!check.ok()) ++failures;
  }
  try {
    perturbation_info();
  } catch (const std::exception& e) {
    std::cout << "INFO  11+ perturbation search failed: " << e.what() << "\n";
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
