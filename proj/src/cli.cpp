#include "qleb/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "qleb/decomp.hpp"
#include "qleb/io.hpp"
#include "qleb/models.hpp"
#include "qleb/qlan.hpp"

namespace qleb::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || s.empty() || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidInput, "not a finite number: '" + s + "'");
  }
  return x;
}

Complex parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {parse_double(s), 0.0};
  return {parse_double(trim(s.substr(0, colon))), parse_double(trim(s.substr(colon + 1)))};
}

Json query_to_json(const QcfQuery& q) {
  Json a = Json::array();
  for (const ComplexVector& xi : q) {
    Json v = Json::array();
    for (Index i = 0; i < xi.size(); ++i) v.push_back(complex_to_json(xi(i)));
    a.push_back(std::move(v));
  }
  return a;
}

QcfQuery query_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "a query is an array of vectors");
  QcfQuery q;
  for (const Json& v : j) {
    if (!v.is_array()) throw Error(ErrorCode::InvalidInput, "a query vector is an array");
    ComplexVector xi(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) xi(static_cast<Index>(i)) = complex_from_json(v[i]);
    q.push_back(std::move(xi));
  }
  return q;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Index>(v.size()));
}

// Queries for a theta_dim-dimensional model when none are given: the axes,
// the diagonal and one mixed point, all with norm at most 1.5.
std::vector<QcfQuery> default_queries(Index d) {
  std::vector<QcfQuery> out;
  for (Index i = 0; i < d; ++i) out.push_back({ComplexVector::Unit(d, i)});
  out.push_back({ComplexVector::Constant(d, Complex(0.5, 0.0))});
  ComplexVector mixed = ComplexVector::Constant(d, Complex(0.4, 0.0));
  mixed(0) = -0.9;
  out.push_back({mixed});
  ComplexVector far = ComplexVector::Zero(d);
  far(d - 1) = 1.5;
  out.push_back({far});
  return out;
}

void emit(const std::string& out_path, const std::string& content, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

std::string with_suffix(const std::string& path, const std::string& study) {
  std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  p += "." + study + ext;
  return p.string();
}

std::string csv_with_header(const std::string& csv, const Json& config) {
  return "# version " + std::string(kVersion) + "\n# config " + config.dump() + "\n" + csv;
}

struct Options {
  std::string rho, sigma, out;
  std::optional<double> cutoff;
  double route_tol = 1e-8;
  double hermitian_tol = kHermitianTol;
  std::uint64_t seed = 0;

  std::string check_kind;

  std::string model = "spin-pure";
  std::string studies = "qclt";
  std::string n_list = "100,1000,10000";
  std::string h_list;
  std::string radii_list = "0.2,0.1,0.05,0.025";
  std::vector<std::string> xi;
  std::string queries_file;
  std::string b_ops_file;
  std::string format = "json";

  Index dim = 2, rank_rho = 1, rank_sigma = 1;
  std::string mode = "generic";
  double overlap = 1e-9;
  std::string rho_out, sigma_out;
};

PositiveOperator load_operator(const std::string& path, const Options& o) {
  return PositiveOperator(hermitize(read_matrix_file(path), o.hermitian_tol), default_cutoff());
}

double resolved_cutoff(const Options& o) {
  if (o.cutoff) {
    if (!(*o.cutoff > 0.0)) throw Error(ErrorCode::InvalidInput, "--cutoff must be positive");
    return *o.cutoff;
  }
  if (const char* env = std::getenv("QLEB_CUTOFF"); env && *env) {
    const double c = parse_double(trim(env));
    if (!(c > 0.0)) throw Error(ErrorCode::InvalidInput, "QLEB_CUTOFF must be positive");
    return c;
  }
  return kDefaultCutoff;
}

Json base_config(const std::string& command, const Options& o) {
  return Json{{"command", command}, {"cutoff", default_cutoff()}, {"seed", o.seed}};
}

int cmd_decompose(const Options& o, std::ostream& out) {
  if (!(o.route_tol >= 0.0)) throw Error(ErrorCode::InvalidInput, "--route-tol must be nonnegative");
  if (!(o.hermitian_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "--hermitian-tol must be positive");
  const PositiveOperator rho = load_operator(o.rho, o);
  const PositiveOperator sigma = load_operator(o.sigma, o);
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "rho and sigma differ in dimension");
  const LebesgueDecomposition block = lebesgue_decompose(sigma, rho);
  const LebesgueDecomposition direct = lebesgue_decompose_direct(sigma, rho);
  const double gap = std::max(max_norm(block.sigma_ac.matrix() - direct.sigma_ac.matrix()),
                              max_norm(block.sigma_sing.matrix() - direct.sigma_sing.matrix()));
  const bool agree = gap <= o.route_tol;

  Json config = base_config("decompose", o);
  config["rho"] = o.rho;
  config["sigma"] = o.sigma;
  config["route_tol"] = o.route_tol;
  config["hermitian_tol"] = o.hermitian_tol;
  config["out"] = o.out;
  const Json report{{"version", kVersion},
                    {"config", std::move(config)},
                    {"block", to_json(block)},
                    {"direct", to_json(direct)},
                    {"route_disagreement", gap},
                    {"route_tol", o.route_tol},
                    {"routes_agree", agree}};
  emit(o.out, report.dump(2) + "\n", out);
  return agree ? kExitOk : kExitRouteDisagreement;
}

const char* tf(bool b) { return b ? "true" : "false"; }

int cmd_check(const Options& o, std::ostream& out) {
  const PositiveOperator rho = load_operator(o.rho, o);
  const PositiveOperator sigma = load_operator(o.sigma, o);
  Json report{{"version", kVersion}, {"config", base_config("check " + o.check_kind, o)}};
  report["config"]["rho"] = o.rho;
  report["config"]["sigma"] = o.sigma;
  bool verdict = false;
  if (o.check_kind == "singular") {
    const SingularityDiagnostics d = is_singular(rho, sigma);
    verdict = d.singular;
    out << "singular: " << tf(d.singular) << "\n"
        << "  (a) excision norm " << format_double(d.excision_norm) << ": " << tf(d.excision_vanishes) << "\n"
        << "  (b) support overlap " << format_double(d.support_overlap) << ": " << tf(d.supports_orthogonal) << "\n"
        << "  (c) Tr rho sigma " << format_double(d.trace_overlap) << ": " << tf(d.trace_vanishes) << "\n"
        << "  criteria agree: " << tf(d.consistent()) << "\n";
    report["singular"] = d.singular;
    report["criteria"] = {{"excision_norm", d.excision_norm},
                          {"excision_vanishes", d.excision_vanishes},
                          {"support_overlap", d.support_overlap},
                          {"supports_orthogonal", d.supports_orthogonal},
                          {"trace_overlap", d.trace_overlap},
                          {"trace_vanishes", d.trace_vanishes},
                          {"tol", d.tol}};
  } else if (o.check_kind == "ac") {
    const AbsoluteContinuityDiagnostics d = is_absolutely_continuous(rho, sigma);
    verdict = d.absolutely_continuous;
    out << "rho << sigma: " << tf(d.absolutely_continuous) << "\n"
        << "  min eigenvalue of excision " << format_double(d.excision_min_eigenvalue)
        << " vs threshold " << format_double(d.threshold) << "\n";
    if (d.witness_residual) {
      out << "  witness residual |R sigma R - rho| " << format_double(*d.witness_residual) << ": "
          << tf(d.witness_holds) << "\n";
    }
    report["absolutely_continuous"] = d.absolutely_continuous;
    report["criteria"] = {{"excision_min_eigenvalue", d.excision_min_eigenvalue},
                          {"threshold", d.threshold},
                          {"witness_residual", d.witness_residual ? Json(*d.witness_residual) : Json(nullptr)},
                          {"witness_holds", d.witness_holds}};
  } else {
    const MutualContinuityDiagnostics d = is_mutually_ac(rho, sigma);
    verdict = d.mutual;
    out << "mutually absolutely continuous: " << tf(d.mutual) << "\n"
        << "  rho << sigma: " << tf(d.rho_ll_sigma) << "\n"
        << "  sigma << rho: " << tf(d.sigma_ll_rho) << "\n"
        << "  excision positive and ranks equal: " << tf(d.rank_criterion) << "\n";
    report["mutual"] = d.mutual;
    report["criteria"] = {{"rho_ll_sigma", d.rho_ll_sigma},
                          {"sigma_ll_rho", d.sigma_ll_rho},
                          {"rank_criterion", d.rank_criterion}};
  }
  if (!o.out.empty()) write_file_atomic(o.out, report.dump(2) + "\n");
  return verdict ? kExitOk : kExitFalse;
}

int cmd_qlan(const Options& o, std::ostream& out) {
  if (o.format != "json" && o.format != "csv") {
    throw Error(ErrorCode::InvalidInput, "--format must be json or csv");
  }
  const ParametricModel model = model_by_name(o.model);
  const std::vector<long long> n_grid = parse_int_list(o.n_list);
  const std::vector<double> radii = parse_double_list(o.radii_list);
  RealVector h = RealVector::Zero(model.theta_dim);
  if (!o.h_list.empty()) {
    h = to_vector(parse_double_list(o.h_list));
    if (h.size() != model.theta_dim) {
      throw Error(ErrorCode::DimensionMismatch, "--h needs " + std::to_string(model.theta_dim) + " components");
    }
  }
  std::vector<QcfQuery> queries;
  for (const std::string& x : o.xi) queries.push_back(parse_query(x));
  if (!o.queries_file.empty()) {
    const Json j = read_json_file(o.queries_file);
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "queries file holds an array of queries");
    for (const Json& q : j) queries.push_back(query_from_json(q));
  }
  std::vector<ComplexMatrix> b_ops;
  if (!o.b_ops_file.empty()) {
    const Json j = read_json_file(o.b_ops_file);
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "B file holds an array of matrices");
    for (const Json& m : j) b_ops.push_back(matrix_from_json(m));
  }

  std::vector<std::string> studies;
  for (const std::string& s : split(o.studies, ',')) {
    if (s != "qclt" && s != "lecam" && s != "oh2" && s != "sandwich") {
      throw Error(ErrorCode::InvalidInput, "unknown study '" + s + "'");
    }
    studies.push_back(s);
  }
  if (studies.empty()) throw Error(ErrorCode::InvalidInput, "--study is empty");

  const Index query_dim = b_ops.empty() ? model.theta_dim : static_cast<Index>(b_ops.size());
  if (queries.empty()) queries = default_queries(query_dim);
  if (b_ops.empty()) {
    for (const HermitianOperator& l : sld_set(model).l_ops) b_ops.push_back(l.matrix());
  }

  Json config = base_config("qlan", o);
  config["model"] = o.model;
  config["studies"] = studies;
  config["n"] = n_grid;
  config["h"] = std::vector<double>(h.data(), h.data() + h.size());
  config["radii"] = radii;
  Json qs = Json::array();
  for (const QcfQuery& q : queries) qs.push_back(query_to_json(q));
  config["queries"] = std::move(qs);
  config["b_ops"] = o.b_ops_file.empty() ? Json("sld") : Json(o.b_ops_file);
  config["format"] = o.format;
  config["out"] = o.out;

  bool all_pass = true;
  Json combined = Json::array();
  std::string combined_csv;
  for (const std::string& study : studies) {
    Json report;
    std::string csv;
    if (study == "oh2") {
      const Oh2Report r = oh2_report(model, radii, default_directions(model.theta_dim));
      all_pass = all_pass && r.verdict;
      report = to_json(r);
      csv = to_csv(r);
    } else {
      ConvergenceReport r;
      if (study == "qclt") r = qclt_report(model, queries, n_grid);
      if (study == "lecam") r = lecam_report(model, b_ops, h, queries, n_grid);
      if (study == "sandwich") r = sandwich_report(model, b_ops, h, queries, n_grid);
      all_pass = all_pass && r.verdict;
      report = to_json(r);
      csv = to_csv(r);
    }
    report["version"] = kVersion;
    report["config"] = config;
    if (!o.out.empty()) {
      const std::string path = studies.size() == 1 ? o.out : with_suffix(o.out, study);
      write_file_atomic(path, o.format == "json" ? report.dump(2) + "\n" : csv_with_header(csv, config));
    } else if (o.format == "csv") {
      combined_csv += "# study " + study + "\n" + csv;
    } else {
      combined.push_back(std::move(report));
    }
  }
  if (o.out.empty()) {
    if (o.format == "csv") {
      out << csv_with_header(combined_csv, config);
    } else if (studies.size() == 1) {
      out << combined.front().dump(2) << "\n";
    } else {
      out << Json{{"version", kVersion}, {"config", config}, {"reports", combined}}.dump(2) << "\n";
    }
  }
  return all_pass ? kExitOk : kExitFalse;
}

PairMode parse_mode(const std::string& s) {
  if (s == "generic") return PairMode::Generic;
  if (s == "nearly-singular") return PairMode::NearlySingular;
  if (s == "near-rank-deficient") return PairMode::NearRankDeficient;
  if (s == "orthogonal") return PairMode::Orthogonal;
  throw Error(ErrorCode::InvalidInput, "unknown mode '" + s + "'");
}

int cmd_generate(const Options& o, std::ostream& out) {
  RandomPsdPairSpec spec;
  spec.dim = o.dim;
  spec.rank_rho = o.rank_rho;
  spec.rank_sigma = o.rank_sigma;
  spec.seed = o.seed;
  spec.mode = parse_mode(o.mode);
  spec.overlap = o.overlap;
  const auto [rho, sigma] = random_psd_pair(spec);
  write_file_atomic(o.rho_out, matrix_to_json(rho.matrix()).dump() + "\n");
  write_file_atomic(o.sigma_out, matrix_to_json(sigma.matrix()).dump() + "\n");
  out << "wrote " << o.rho_out << " and " << o.sigma_out << "\n";
  return kExitOk;
}

}  // namespace

QcfQuery parse_query(const std::string& text) {
  QcfQuery q;
  for (const std::string& vec : split(text, ';')) {
    if (vec.empty()) throw Error(ErrorCode::InvalidInput, "empty vector in query '" + text + "'");
    const std::vector<std::string> comps = split(vec, ',');
    ComplexVector xi(static_cast<Index>(comps.size()));
    for (std::size_t i = 0; i < comps.size(); ++i) xi(static_cast<Index>(i)) = parse_complex(comps[i]);
    q.push_back(std::move(xi));
  }
  if (q.empty()) throw Error(ErrorCode::InvalidInput, "empty query");
  return q;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> v;
  for (const std::string& s : split(text, ',')) {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error(ErrorCode::InvalidInput, "not an integer: '" + s + "'");
    }
    v.push_back(x);
  }
  if (v.empty()) throw Error(ErrorCode::InvalidInput, "empty list");
  return v;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> v;
  for (const std::string& s : split(text, ',')) v.push_back(parse_double(s));
  if (v.empty()) throw Error(ErrorCode::InvalidInput, "empty list");
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Lebesgue decomposition and q-LAN verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--cutoff", o.cutoff, "relative rank cutoff (overrides QLEB_CUTOFF)");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output file (stdout if omitted)");
  };

  CLI::App* dec = app.add_subcommand("decompose", "Lebesgue decomposition of sigma with respect to rho");
  dec->add_option("--rho", o.rho, "reference operator (matrix JSON)")->required();
  dec->add_option("--sigma", o.sigma, "decomposed operator (matrix JSON)")->required();
  dec->add_option("--route-tol", o.route_tol, "allowed disagreement between routes");
  dec->add_option("--hermitian-tol", o.hermitian_tol, "relative tolerance for Hermitian input");
  common(dec);

  CLI::App* chk = app.add_subcommand("check", "singularity and absolute continuity tests");
  chk->add_option("kind", o.check_kind, "singular | ac | mutual")
      ->required()
      ->check(CLI::IsMember({"singular", "ac", "mutual"}));
  chk->add_option("--rho", o.rho)->required();
  chk->add_option("--sigma", o.sigma)->required();
  chk->add_option("--hermitian-tol", o.hermitian_tol);
  common(chk);

  CLI::App* ql = app.add_subcommand("qlan", "q-LAN convergence studies");
  ql->set_help_flag("--help", "print this help and exit");
  ql->add_option("--model", o.model, "spin-pure | spin-perturbed:quartic|cubic|quadratic | qubit-fullrank | table:PATH");
  ql->add_option("--study", o.studies, "comma-separated: qclt, lecam, oh2, sandwich");
  ql->add_option("--n", o.n_list, "copy counts, comma-separated");
  ql->add_option("--h", o.h_list, "local parameter h, comma-separated");
  ql->add_option("--radii", o.radii_list, "radii for the oh2 study");
  ql->add_option("--xi", o.xi, "query: components by ',', vectors by ';', complex as re:im (repeatable)");
  ql->add_option("--queries", o.queries_file, "JSON file with an array of queries");
  ql->add_option("--b-ops", o.b_ops_file, "JSON array of observables B (default: the SLDs)");
  ql->add_option("--format", o.format, "json | csv");
  common(ql);

  CLI::App* gen = app.add_subcommand("generate", "write a seeded random pair");
  gen->add_option("--dim", o.dim);
  gen->add_option("--rank-rho", o.rank_rho);
  gen->add_option("--rank-sigma", o.rank_sigma);
  gen->add_option("--mode", o.mode, "generic | nearly-singular | near-rank-deficient | orthogonal");
  gen->add_option("--overlap", o.overlap);
  gen->add_option("--rho-out", o.rho_out)->required();
  gen->add_option("--sigma-out", o.sigma_out)->required();
  gen->add_option("--seed", o.seed);
  gen->add_option("--cutoff", o.cutoff);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    set_default_cutoff(resolved_cutoff(o));
    if (dec->parsed()) return cmd_decompose(o, out);
    if (chk->parsed()) return cmd_check(o, out);
    if (ql->parsed()) return cmd_qlan(o, out);
    return cmd_generate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::SupportViolation ? kExitSupportViolation : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("qleb");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qleb::cli
