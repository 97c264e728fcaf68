#include "sosc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include "sosc/corpus.hpp"
#include "sosc/face.hpp"
#include "sosc/io.hpp"
#include "sosc/search.hpp"

namespace sosc::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct CheckOptions {
  std::string form_file;
  bool sos = false;
  bool sos_convex = false;
  std::string multiplier;
  std::string out;
  SearchConfig cfg;
};

struct FaceOptions {
  std::string a;
  std::string b;
  std::vector<std::string> alphas;
  bool zero = false;
  bool bound = false;
  double tol = 1e-9;
};

int cmd_dims(long long n, std::ostream& out, std::ostream& err) {
  if (n < 1) {
    err << "error: n must be at least 1\n";
    return kInputError;
  }
  const auto k = static_cast<std::size_t>(n);
  out << dim_nary(k) << ' ' << dim_symmetric(k) << ' ' << dim_hessian(k) << '\n';
  return kVerified;
}

/// Biquadratic view of a target: either stored as one, or a form in 2n
/// variables of bidegree (2,2).
std::optional<BiquadraticForm> as_biquadratic(const io::Document& doc) {
  if (const auto* b = std::get_if<BiquadraticForm>(&doc)) return *b;
  if (const auto* f = std::get_if<Form>(&doc)) {
    if (f->n_vars() % 2 != 0 || f->degree() != 4) return std::nullopt;
    try {
      return BiquadraticForm::from_form(*f, f->n_vars() / 2);
    } catch (const InvalidArgument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

int cmd_verify(const std::string& target_file, const std::string& cert_file, std::ostream& out, std::ostream& err) {
  const io::Document target = io::load(target_file);
  const io::Document cert = io::load(cert_file);

  if (const auto* sos = std::get_if<SosCertificate>(&cert)) {
    SosVerdict v;
    if (const auto* b = std::get_if<BiquadraticForm>(&target)) {
      v = verify_sos_certificate(*b, *sos);
    } else if (const auto* f = std::get_if<Form>(&target)) {
      v = verify_sos_certificate(*f, *sos);
    } else {
      err << "error: target must be a form or a biquadratic form\n";
      return kInputError;
    }
    if (v.reason == SosRejection::ShapeMismatch) {
      err << "error: " << v.message << '\n';
      return kInputError;
    }
    out << (v.accepted ? "verified: " : "rejected: ") << v.message << '\n';
    return v.accepted ? kVerified : kFalse;
  }

  if (const auto* dual = std::get_if<DualCertificate>(&cert)) {
    auto b = as_biquadratic(target);
    if (!b) {
      err << "error: a dual certificate needs a biquadratic target\n";
      return kInputError;
    }
    if (b->n() != dual->ordering.n()) {
      err << "error: certificate is for n=" << dual->ordering.n() << ", target has n=" << b->n() << '\n';
      return kInputError;
    }
    RefutationVerdict v = verify_refutation(*dual, *b);
    if (v.accepted) {
      out << v.message << '\n';
      return kFalse;
    }
    out << "inconclusive: " << v.message << '\n';
    return kUnknown;
  }

  err << "error: '" << cert_file << "' is not a certificate\n";
  return kInputError;
}

fs::path default_output(const std::string& form_file, bool dual) {
  fs::path p(form_file);
  p.replace_extension(dual ? ".dual" : ".cert");
  return p;
}

void report(const SearchOutcome& o, const std::string& cert_path, std::ostream& out) {
  out << "status: " << to_string(o.status) << '\n';
  out << "iterations: " << o.iterations << '\n';
  out << "residual: " << o.residual << '\n';
  out << "denominator_bound: " << o.denominator_bound << '\n';
  out << "certificate: " << (cert_path.empty() ? "none" : cert_path) << '\n';
  if (!o.diagnostics.empty()) out << "message: " << o.diagnostics << '\n';
}

int outcome_code(const SearchOutcome& o) {
  switch (o.status) {
    case SearchOutcome::Status::ExactCertificate:
      return kVerified;
    case SearchOutcome::Status::Refuted:
      return kFalse;
    default:
      return kUnknown;
  }
}

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  const io::Document doc = io::load(opt.form_file);
  const auto* form = std::get_if<Form>(&doc);
  const auto* biq = std::get_if<BiquadraticForm>(&doc);
  if (!form && !biq) {
    err << "error: '" << opt.form_file << "' is neither a form nor a biquadratic form\n";
    return kInputError;
  }

  SearchOutcome outcome;
  if (opt.sos_convex) {
    if (!form) {
      err << "error: --sos-convex needs a form file\n";
      return kInputError;
    }
    if (form->degree() < 2 || form->degree() % 2 != 0) {
      err << "error: sos-convexity needs an even degree >= 2, got " << form->degree() << '\n';
      return kInputError;
    }
    outcome = check_sos_convexity(*form, opt.cfg);
  } else if (opt.sos) {
    if (biq) {
      // The shipped dual certificate settles the corpus form without a search.
      if (biq->n() == 3) {
        const DualCertificate known = corpus::b22_dual();
        RefutationVerdict v = verify_refutation(known, *biq);
        if (v.accepted) {
          outcome.status = SearchOutcome::Status::Refuted;
          outcome.refutation = known;
          outcome.diagnostics = v.message + " (builtin dual certificate)";
        }
      }
      if (!outcome.refutation) outcome = check_sos(*biq, opt.cfg);
    } else {
      if (form->degree() % 2 != 0) {
        err << "error: odd degree " << form->degree() << " forms are never sums of squares\n";
        return kInputError;
      }
      outcome = check_sos(*form, opt.cfg);
    }
  } else {
    const Form target = biq ? biq->to_form() : *form;
    const std::size_t x_vars = biq ? biq->n() : form->n_vars();
    Form mult;
    try {
      mult = io::parse_polynomial(opt.multiplier, target.n_vars(), x_vars);
    } catch (const ParseError& e) {
      err << "error: multiplier: " << e.what() << '\n';
      return kInputError;
    }
    if (!is_monomial_square_sum(mult)) {
      err << "error: multiplier must be a positive combination of even monomials\n";
      return kInputError;
    }
    if ((target.degree() + mult.degree()) % 2 != 0) {
      err << "error: multiplier times target has odd degree\n";
      return kInputError;
    }
    outcome = check_nonneg_multiplier(target, mult, x_vars, opt.cfg);
  }

  std::string written;
  if (outcome.certificate || outcome.refutation) {
    fs::path path = opt.out.empty() ? default_output(opt.form_file, !outcome.certificate) : fs::path(opt.out);
    if (outcome.certificate)
      io::save(path, *outcome.certificate);
    else
      io::save(path, *outcome.refutation);
    written = path.string();
  }
  report(outcome, written, out);
  return outcome_code(outcome);
}

Json rational_json(const Rational& q) { return format_rational_short(q); }

Json vector_json(std::span<const Rational> v) {
  Json arr = Json::array();
  for (const auto& q : v) arr.push_back(rational_json(q));
  return arr;
}

int cmd_face(const FaceOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.alphas.size() != 5) {
    err << "error: --alphas needs exactly 5 values\n";
    return kInputError;
  }
  face::FaceParams fp{parse_rational(opt.a), parse_rational(opt.b)};
  face::AlphaVector alpha;
  for (std::size_t i = 0; i < 5; ++i) alpha[i] = parse_rational(opt.alphas[i]);
  if (fp.a == 0 || fp.b == 0) {
    err << "error: a and b must both be nonzero\n";
    return kInputError;
  }

  Json r;
  r["a"] = rational_json(fp.a);
  r["b"] = rational_json(fp.b);
  r["alphas"] = vector_json(alpha);
  const bool member = face::membership_T(alpha, fp);
  r["membership"] = member;

  const SymRationalMatrix m = face::gram_M(alpha, fp);
  r["det_M"] = rational_json(determinant(m.matrix()));
  const bool all_nonzero = std::all_of(alpha.begin(), alpha.begin() + 4, [](const Rational& v) { return v != 0; });
  r["det_M_closed"] = all_nonzero ? Json(rational_json(face::det_M_closed(alpha, fp))) : Json(nullptr);
  r["M_verdict"] = to_string(ldlt_psd_check(m).verdict);
  bool diagonal = true;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      row.push_back(rational_json(m(i, j)));
      if (i != j && m(i, j) != 0) diagonal = false;
    }
    rows.push_back(row);
  }
  r["M_diagonal"] = diagonal;
  r["M"] = rows;

  if (opt.bound || opt.zero) {
    for (std::size_t i = 0; i < 4; ++i)
      if (alpha[i] <= 0) {
        err << "error: the alpha5 bound needs alpha1..alpha4 > 0\n";
        return kInputError;
      }
  }

  if (opt.bound) {
    const Rational lb = face::alpha5_lower_bound(alpha, fp);
    face::AlphaVector at = alpha;
    at[4] = lb;
    Json b;
    b["alpha5_lower_bound"] = rational_json(lb);
    b["at_bound"] = lb == alpha[4];
    b["det_M_at_bound"] = rational_json(face::det_M_closed(at, fp));
    b["kernel_vector"] = vector_json(face::kernel_vector(at, fp));
    r["bound"] = b;
  }

  int code = member ? kVerified : kFalse;
  if (opt.zero) {
    Json z;
    try {
      auto found = face::find_additional_zero<double>(alpha, fp, opt.tol);
      z["kind"] = found.kind == face::RootKind::Family ? "family" : "distinct";
      z["discriminant"] = rational_json(found.quadratic.discriminant);
      z["x"] = found.point.x;
      z["y"] = found.point.y;
      z["residual"] = found.point.residual;
    } catch (const face::ZeroFinderError& e) {
      z["error"] = e.what();
      code = kUnknown;
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    }
    r["zero"] = z;
  }

  out << r.dump(2) << '\n';
  return code;
}

int cmd_builtin(const std::string& name, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto names = corpus::builtin_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    err << "error: unknown builtin '" << name << "'; known:";
    for (const auto& n : names) err << ' ' << n;
    err << '\n';
    return kInputError;
  }
  const io::Document doc = corpus::builtin(name);
  if (path.empty() || path == "-")
    out << io::write_document(doc);
  else
    io::save(path, doc);
  return kVerified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sum-of-squares and sos-convexity certificates", "sosc"};
  app.require_subcommand(1);

  long long dims_n = 0;
  auto* dims = app.add_subcommand("dims", "Dimensions of n-ary, symmetric and Hessian biquadratic forms");
  dims->add_option("n", dims_n, "Number of variables per block")->required();

  std::string target_file, cert_file;
  auto* verify = app.add_subcommand("verify", "Check a Gram or dual certificate exactly");
  verify->add_option("target", target_file, "Form or biquadratic form file")->required();
  verify->add_option("certificate", cert_file, "sos_certificate or dual_certificate file")->required();

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "Search for a certificate");
  check->add_option("form", check_opt.form_file, "Form or biquadratic form file")->required();
  auto* mode = check->add_option_group("mode");
  mode->add_flag("--sos", check_opt.sos, "Sum of squares");
  mode->add_flag("--sos-convex", check_opt.sos_convex, "Sum of squares Hessian form");
  mode->add_option("--nonneg-mult", check_opt.multiplier, "Multiplier made of even monomials, e.g. \"x1^2+x2^2\"");
  mode->require_option(1);
  check->add_option("--out", check_opt.out, "Certificate output path (default: next to the input)");
  check->add_option("--seed", check_opt.cfg.seed, "Seed for restarts")->capture_default_str();
  check->add_option("--max-iter", check_opt.cfg.max_iterations, "Projection iterations")->capture_default_str();
  check->add_option("--tol", check_opt.cfg.convergence_tol, "Numeric feasibility tolerance")->capture_default_str();
  check->add_option("--denom-bound", check_opt.cfg.denominator_bound, "Initial rounding denominator")
      ->capture_default_str();
  check->add_option("--denom-cap", check_opt.cfg.denominator_cap, "Largest rounding denominator")
      ->capture_default_str();
  check->add_option("--restarts", check_opt.cfg.restarts, "Perturbed restarts")->capture_default_str();

  FaceOptions face_opt;
  auto* face = app.add_subcommand("face", "Membership, bound and zeros for the face T_{a,b}");
  face->add_option("--a", face_opt.a, "Rational a")->required();
  face->add_option("--b", face_opt.b, "Rational b")->required();
  face->add_option("--alphas", face_opt.alphas, "alpha1 .. alpha5")->required()->expected(5);
  face->add_flag("--zero", face_opt.zero, "Locate the additional zero");
  face->add_flag("--bound", face_opt.bound, "Report the alpha5 lower bound");
  face->add_option("--tol", face_opt.tol, "Residual tolerance for the zero")->capture_default_str();

  std::string builtin_name, builtin_out;
  auto* builtin = app.add_subcommand("builtin", "Write a corpus object");
  builtin->add_option("name", builtin_name, "choi_matrix, b_thm22, q22_cert, ...")->required();
  builtin->add_option("out", builtin_out, "Output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*dims) return cmd_dims(dims_n, out, err);
    if (*verify) return cmd_verify(target_file, cert_file, out, err);
    if (*check) return cmd_check(check_opt, out, err);
    if (*face) return cmd_face(face_opt, out, err);
    return cmd_builtin(builtin_name, builtin_out, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace sosc::cli
