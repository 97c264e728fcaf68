#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sosc/cli.hpp"
#include "sosc/corpus.hpp"
#include "sosc/io.hpp"

using namespace sosc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sosc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, Dims) {
  Result r = run({"dims", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "36 21 15\n");
  EXPECT_EQ(run({"dims", "1"}).out, "1 1 1\n");
  EXPECT_EQ(run({"dims", "0"}).code, 3);
  EXPECT_EQ(run({"dims", "abc"}).code, 3);
  EXPECT_EQ(run({}).code, 3);
}

TEST_F(CliTest, BuiltinRoundTrip) {
  for (const auto& name : corpus::builtin_names()) {
    const std::string p = path(name + ".txt");
    ASSERT_EQ(run({"builtin", name, p}).code, 0);
    EXPECT_EQ(io::write_document(io::load(p)), io::write_document(corpus::builtin(name)));
  }
  Result stdout_copy = run({"builtin", "b_thm22"});
  EXPECT_EQ(stdout_copy.out, io::write_biquadratic(corpus::b_thm22()));
  EXPECT_EQ(run({"builtin", "no_such_thing"}).code, 3);
}

TEST_F(CliTest, VerifyCertificates) {
  run({"builtin", "b_thm22", path("b.biq")});
  run({"builtin", "q22_cert", path("q.cert")});
  run({"builtin", "b22_dual", path("c.dual")});
  EXPECT_EQ(run({"verify", path("b.biq"), path("q.cert")}).code, 0);

  Result refuted = run({"verify", path("b.biq"), path("c.dual")});
  EXPECT_EQ(refuted.code, 1);
  EXPECT_EQ(refuted.out, "not SOS, pairing = -37\n");

  std::string cert = io::write_sos_certificate(corpus::q22_certificate());
  cert.replace(cert.find("\n4608/1 "), 8, "\n4610/1 ");
  Result tampered = run({"verify", path("b.biq"), write("bad.cert", cert)});
  EXPECT_EQ(tampered.code, 1);
  EXPECT_NE(tampered.out.find("identity fails at monomial"), std::string::npos);

  EXPECT_EQ(run({"verify", path("b.biq"), write("junk.cert", "Z: 3\n")}).code, 3);
  EXPECT_EQ(run({"verify", path("missing.biq"), path("q.cert")}).code, 3);
}

TEST_F(CliTest, CheckSosConvex) {
  const std::string form = write("x4sum.form", "form n=3 d=4\n1/1 4 0 0\n1/1 0 4 0\n1/1 0 0 4\n");
  Result r = run({"check", "--sos-convex", form});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("status: exact_certificate"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("x4sum.cert")));
  const auto cert = std::get<SosCertificate>(io::load(path("x4sum.cert")));
  const Form p = std::get<Form>(io::load(form));
  BiquadraticForm h = hessian_biquadratic(p);
  EXPECT_TRUE(verify_sos_certificate(h, cert).accepted);
  Result odd = run({"check", "--sos-convex", write("cubic.form", "form n=2 d=3\n1/1 3 0\n")});
  EXPECT_EQ(odd.code, 3);
}

TEST_F(CliTest, CheckSosUsesBuiltinDual) {
  run({"builtin", "b_thm22", path("b22.biq")});
  Result r = run({"check", "--sos", path("b22.biq")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("status: refuted"), std::string::npos);
  EXPECT_NE(r.out.find("pairing = -37"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("b22.dual")));
}

TEST_F(CliTest, CheckMultiplier) {
  run({"builtin", "b_thm22", path("b22.biq")});
  Result r = run({"check", "--nonneg-mult", "x1^2+x2^2", path("b22.biq"), "--out", path("mult.cert")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(run({"verify", path("b22.biq"), path("mult.cert")}).code, 0);
  EXPECT_EQ(run({"check", "--nonneg-mult", "x1*x2", path("b22.biq")}).code, 3);
  EXPECT_EQ(run({"check", "--sos", "--sos-convex", path("b22.biq")}).code, 3);
}

TEST_F(CliTest, FaceReports) {
  Result r = run({"face", "--a", "1", "--b", "1", "--alphas", "1", "1", "1", "1", "-1", "--bound"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["membership"], true);
  EXPECT_EQ(j["det_M"], "0");
  EXPECT_EQ(j["bound"]["alpha5_lower_bound"], "-1");
  EXPECT_EQ(j["bound"]["at_bound"], true);

  Result z = run({"face", "--a", "1", "--b", "1", "--alphas", "1", "1", "1", "1", "-1", "--zero"});
  ASSERT_EQ(z.code, 0) << z.err;
  auto jz = nlohmann::json::parse(z.out);
  EXPECT_LE(jz["zero"]["residual"].get<double>(), 1e-9);

  Result d = run({"face", "--a", "1", "--b", "2", "--alphas", "1", "1", "1", "1", "0"});
  ASSERT_EQ(d.code, 0);
  auto jd = nlohmann::json::parse(d.out);
  EXPECT_EQ(jd["membership"], true);
  EXPECT_EQ(jd["M_diagonal"], true);

  EXPECT_EQ(run({"face", "--a", "0", "--b", "1", "--alphas", "1", "1", "1", "1", "0"}).code, 3);
  EXPECT_EQ(run({"face", "--a", "1", "--b", "1", "--alphas", "1", "1", "1", "1", "1/2"}).code, 1);
  EXPECT_EQ(run({"face", "--a", "1", "--b", "1", "--alphas", "1", "1"}).code, 3);
}

TEST_F(CliTest, DeterministicOutput) {
  const std::string form = write("p.form", io::write_form(Form::variable(3, 0).pow(4) + Form::variable(3, 1).pow(4)));
  Result a = run({"check", "--sos-convex", form, "--seed", "3", "--out", path("a.cert")});
  Result b = run({"check", "--sos-convex", form, "--seed", "3", "--out", path("b.cert")});
  EXPECT_EQ(a.code, b.code);
  std::ifstream fa(path("a.cert")), fb(path("b.cert"));
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}
