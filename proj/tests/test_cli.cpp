#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qleb/cli.hpp"
#include "qleb/io.hpp"
#include "test_support.hpp"

using namespace qleb;
using namespace qleb::test;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("qleb_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_matrix(const std::string& name, const ComplexMatrix& m) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << matrix_to_json(m).dump();
  return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexMatrix pure(double a, double b) {
  ComplexVector v(2);
  v << a, b;
  v.normalize();
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("decompose writes both routes") {
  const std::string rho = write_matrix("rho.json", diag({1, 0}));
  const std::string sigma = write_matrix("plus.json", plus_state());
  const std::string out = (scratch() / "dec.json").string();
  const Result r = run_cli({"decompose", "--rho", rho, "--sigma", sigma, "--out", out});
  CHECK(r.code == cli::kExitOk);
  const Json j = Json::parse(slurp(out));
  CHECK(j.at("version") == kVersion);
  CHECK(j.at("config").at("command") == "decompose");
  CHECK(j.at("routes_agree") == true);
  for (const char* route : {"block", "direct"}) {
    const ComplexMatrix sing = matrix_from_json(j.at(route).at("sigma_sing"));
    CHECK(max_norm(sing) <= 1e-12);
    CHECK(diff(matrix_from_json(j.at(route).at("sigma_ac")), plus_state()) <= 1e-12);
  }
  CHECK(j.at("block").at("route") == "block");
  CHECK(j.at("direct").at("route") == "direct");
}

TEST_CASE("decompose rejects malformed input") {
  const std::string good = write_matrix("rho2.json", diag({1, 0}));
  const std::string bad = write_text("bad.json", "{\"dim\": 2, \"entries\": [[1, 0], [0");
  CHECK(run_cli({"decompose", "--rho", good, "--sigma", bad}).code == cli::kExitInput);
  const std::string short_entries = write_text("short.json", "{\"dim\": 2, \"entries\": [[1, 0]]}");
  CHECK(run_cli({"decompose", "--rho", good, "--sigma", short_entries}).code == cli::kExitInput);
  CHECK(run_cli({"decompose", "--rho", good, "--sigma", (scratch() / "missing.json").string()}).code == cli::kExitInput);
  ComplexMatrix nh(2, 2);
  nh << 1.0, 1.0, 0.0, 1.0;
  const std::string non_herm = write_matrix("nonherm.json", nh);
  CHECK(run_cli({"decompose", "--rho", good, "--sigma", non_herm}).code == cli::kExitInput);
  CHECK(run_cli({"decompose", "--rho", good}).code == cli::kExitInput);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitInput);
}

TEST_CASE("decompose reports route disagreement beyond the tolerance") {
  // A lax Hermitian tolerance lets the corrupted matrix through; a zero route
  // tolerance turns any rounding gap between the routes into a violation.
  std::mt19937_64 rng(5);
  const ComplexMatrix r = random_density(3, 2, rng);
  const ComplexMatrix s = random_density(3, 3, rng);
  ComplexMatrix corrupted = s;
  corrupted(0, 1) += 0.3;
  const std::string rho = write_matrix("r3.json", r);
  const std::string sigma = write_matrix("s3.json", corrupted);
  const Result strict = run_cli({"decompose", "--rho", rho, "--sigma", sigma});
  CHECK(strict.code == cli::kExitInput);
  const Result lax = run_cli({"decompose", "--rho", rho, "--sigma", sigma, "--hermitian-tol", "1", "--route-tol", "0"});
  CHECK(lax.code == cli::kExitRouteDisagreement);
  const Json j = Json::parse(lax.out);
  CHECK(j.at("routes_agree") == false);
  CHECK(j.at("route_disagreement").get<double>() > 0.0);
  CHECK(j.at("route_disagreement").get<double>() <= 1e-8);
}

TEST_CASE("check subcommands") {
  const std::string e0 = write_matrix("e0.json", diag({1, 0}));
  const std::string e1 = write_matrix("e1.json", diag({0, 1}));
  const Result s = run_cli({"check", "singular", "--rho", e0, "--sigma", e1});
  CHECK(s.code == cli::kExitOk);
  CHECK(s.out.find("(a) excision norm 0: true") != std::string::npos);
  CHECK(s.out.find("(b) support overlap 0: true") != std::string::npos);
  CHECK(s.out.find("(c) Tr rho sigma 0: true") != std::string::npos);

  CHECK(run_cli({"check", "ac", "--rho", e0, "--sigma", e1}).code == cli::kExitFalse);

  const std::string a = write_matrix("pa.json", pure(1.0, 0.0));
  const std::string b = write_matrix("pb.json", pure(0.7, std::sqrt(1.0 - 0.49)));
  CHECK(run_cli({"check", "mutual", "--rho", a, "--sigma", b}).code == cli::kExitOk);

  const std::string out = (scratch() / "chk.json").string();
  CHECK(run_cli({"check", "ac", "--rho", a, "--sigma", b, "--out", out}).code == cli::kExitOk);
  const Json j = Json::parse(slurp(out));
  CHECK(j.at("absolutely_continuous") == true);
  CHECK(j.at("criteria").at("witness_holds") == true);

  CHECK(run_cli({"check", "nonsense", "--rho", a, "--sigma", b}).code == cli::kExitInput);
  const std::string zero = write_matrix("zero.json", ComplexMatrix::Zero(2, 2));
  CHECK(run_cli({"check", "singular", "--rho", zero, "--sigma", b}).code == cli::kExitInput);
}

TEST_CASE("qlan qclt study") {
  const Result r = run_cli({"qlan", "--model", "spin-pure", "--study", "qclt", "--n", "100,1000,10000", "--xi", "1,0"});
  CHECK(r.code == cli::kExitOk);
  const Json j = Json::parse(r.out);
  const auto errors = j.at("errors").get<std::vector<double>>();
  REQUIRE(errors.size() == 3);
  CHECK(errors[0] == doctest::Approx(5.0658249722484683647e-4).epsilon(1e-6));
  CHECK(errors[1] == doctest::Approx(5.0555597120441051761e-5).epsilon(1e-5));
  CHECK(errors[2] == doctest::Approx(5.0545358917976998646e-6).epsilon(1e-4));
  CHECK(j.at("fitted_rate").get<double>() == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("version") == kVersion);
  CHECK(j.at("config").at("model") == "spin-pure");
}

TEST_CASE("qlan oh2 and lecam studies") {
  const Result o = run_cli({"qlan", "--model", "spin-perturbed:quartic", "--study", "oh2"});
  CHECK(o.code == cli::kExitOk);
  CHECK(Json::parse(o.out).at("fitted_slope").get<double>() == doctest::Approx(2.0).epsilon(0.01));

  const Result c = run_cli({"qlan", "--model", "spin-perturbed:quadratic", "--study", "oh2"});
  CHECK(c.code == cli::kExitFalse);

  const Result l = run_cli({"qlan", "--model", "spin-perturbed:quartic", "--study", "lecam", "--h", "0.3,0.1",
                            "--xi", "1,0", "--xi", "0.5,-0.5"});
  CHECK(l.code == cli::kExitOk);
  const Json j = Json::parse(l.out);
  CHECK(j.at("verdict") == "pass");
  const Json lim = j.at("limit_values").at(0);
  CHECK(lim.at(0).get<double>() == doctest::Approx(std::exp(-0.5) * std::cos(0.3)));
  CHECK(lim.at(1).get<double>() == doctest::Approx(std::exp(-0.5) * std::sin(0.3)));

  const Result multi = run_cli({"qlan", "--model", "spin-perturbed:quartic", "--study", "qclt,sandwich", "--h", "0.3,0.1"});
  CHECK(multi.code == cli::kExitOk);
  CHECK(Json::parse(multi.out).at("reports").size() == 2);

  CHECK(run_cli({"qlan", "--model", "nope"}).code == cli::kExitInput);
  CHECK(run_cli({"qlan", "--study", "bogus"}).code == cli::kExitInput);
  CHECK(run_cli({"qlan", "--h", "1,2,3", "--study", "lecam"}).code == cli::kExitInput);
  CHECK(run_cli({"qlan", "--n", "1000,100"}).code == cli::kExitInput);
}

TEST_CASE("qlan support violation exits with 4") {
  // Smooth rotation near 0 (enough for the finite differences), orthogonal to
  // the base state at theta = 0.1 = h / sqrt(100).
  Json j;
  j["name"] = "breaks-support";
  j["dim"] = 2;
  j["theta_dim"] = 1;
  j["theta0"] = {0.0};
  j["points"] = Json::array();
  for (double t : {0.0, 1e-5, -1e-5, 5e-6, -5e-6}) {
    j["points"].push_back({{"theta", {t}}, {"state", matrix_to_json(pure(std::cos(t), std::sin(t)))}});
  }
  j["points"].push_back({{"theta", {0.1}}, {"state", matrix_to_json(diag({0, 1}))}});
  const std::string path = write_text("table.json", j.dump());
  const Result r = run_cli({"qlan", "--model", "table:" + path, "--study", "lecam", "--h", "1", "--n", "100", "--xi", "1"});
  CHECK(r.code == cli::kExitSupportViolation);
  CHECK(r.err.find("n = 100") != std::string::npos);
  CHECK(r.err.find("0.1") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string a = (scratch() / "rep_a.json").string();
  const std::vector<std::string> base = {"qlan", "--model", "spin-perturbed:quartic", "--study", "lecam", "--h", "0.3,0.1"};
  std::vector<std::string> ra = base, rb = base;
  ra.insert(ra.end(), {"--out", a});
  rb.insert(rb.end(), {"--out", a});
  CHECK(run_cli(ra).code == cli::kExitOk);
  const std::string first = slurp(a);
  CHECK(run_cli(rb).code == cli::kExitOk);
  CHECK(slurp(a) == first);

  const std::string rho = write_matrix("rho_r.json", diag({1, 0}));
  const std::string sigma = write_matrix("sig_r.json", diag({0.5, 0.5}));
  const Result x = run_cli({"decompose", "--rho", rho, "--sigma", sigma});
  const Result y = run_cli({"decompose", "--rho", rho, "--sigma", sigma});
  CHECK(x.out == y.out);
  CHECK_FALSE(x.out.empty());
}

TEST_CASE("csv output") {
  const Result r = run_cli({"qlan", "--model", "spin-pure", "--study", "qclt", "--n", "100,1000", "--format", "csv"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("# version " + std::string(kVersion), 0) == 0);
  CHECK(r.out.find("n,error") != std::string::npos);
  CHECK(r.out.find("\n100,") != std::string::npos);
  CHECK(run_cli({"qlan", "--format", "xml"}).code == cli::kExitInput);
}

TEST_CASE("rank cutoff from the environment and the flag") {
  // sigma = diag(1, 1e-9): rank 2 under the default cutoff, rank 1 under 1e-6,
  // which flips the absolute-continuity verdict for rho = diag(0, 1).
  const std::string rho = write_matrix("rho_c.json", diag({0, 1}));
  const std::string sigma = write_matrix("sig_c.json", diag({1, 1e-9}));
  const std::vector<std::string> args = {"check", "ac", "--rho", rho, "--sigma", sigma};

  ::unsetenv("QLEB_CUTOFF");
  CHECK(run_cli(args).code == cli::kExitOk);
  ::setenv("QLEB_CUTOFF", "1e-6", 1);
  CHECK(run_cli(args).code == cli::kExitFalse);
  std::vector<std::string> with_flag = args;
  with_flag.insert(with_flag.end(), {"--cutoff", "1e-11"});
  CHECK(run_cli(with_flag).code == cli::kExitOk);
  ::setenv("QLEB_CUTOFF", "not-a-number", 1);
  CHECK(run_cli(args).code == cli::kExitInput);
  ::unsetenv("QLEB_CUTOFF");
  std::vector<std::string> negative = args;
  negative.insert(negative.end(), {"--cutoff", "-1"});
  CHECK(run_cli(negative).code == cli::kExitInput);
}

TEST_CASE("generate is seeded") {
  const std::string r1 = (scratch() / "g_r1.json").string(), s1 = (scratch() / "g_s1.json").string();
  const std::string r2 = (scratch() / "g_r2.json").string(), s2 = (scratch() / "g_s2.json").string();
  CHECK(run_cli({"generate", "--dim", "4", "--rank-rho", "2", "--rank-sigma", "3", "--seed", "7", "--rho-out", r1,
                 "--sigma-out", s1})
            .code == cli::kExitOk);
  CHECK(run_cli({"generate", "--dim", "4", "--rank-rho", "2", "--rank-sigma", "3", "--seed", "7", "--rho-out", r2,
                 "--sigma-out", s2})
            .code == cli::kExitOk);
  CHECK(slurp(r1) == slurp(r2));
  CHECK(slurp(s1) == slurp(s2));
  CHECK(run_cli({"generate", "--dim", "2", "--rank-rho", "2", "--rank-sigma", "2", "--mode", "orthogonal",
                 "--rho-out", r1, "--sigma-out", s1})
            .code == cli::kExitInput);
}

TEST_CASE("query parsing") {
  const QcfQuery q = cli::parse_query("1,0.5:-1;0,1");
  REQUIRE(q.size() == 2);
  CHECK(q[0](1) == Complex(0.5, -1.0));
  CHECK(q[1](1) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(cli::parse_query(""), Error);
  CHECK_THROWS_AS(cli::parse_query("1,x"), Error);
  CHECK(cli::parse_int_list("100,1000") == std::vector<long long>{100, 1000});
  CHECK_THROWS_AS(cli::parse_int_list("1.5"), Error);
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
