#include "qleb/qlan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qleb {

namespace {

constexpr Complex kI(0.0, 1.0);

ComplexMatrix raw_state(const ParametricModel& m, const RealVector& theta) {
  if (theta.size() != m.theta_dim) {
    throw Error(ErrorCode::DimensionMismatch, "theta has the wrong dimension for " + m.name);
  }
  ComplexMatrix s = m.state_at(theta);
  if (s.rows() != m.dim || s.cols() != m.dim) {
    throw Error(ErrorCode::DimensionMismatch, m.name + " returned a state of the wrong size");
  }
  if (!all_finite(s)) throw Error(ErrorCode::InvalidInput, m.name + " returned a non-finite state");
  return s;
}

ComplexMatrix central_difference(const ParametricModel& m, Index dir, double step) {
  RealVector plus = m.theta0, minus = m.theta0;
  plus(dir) += step;
  minus(dir) -= step;
  return (raw_state(m, plus) - raw_state(m, minus)) / (2.0 * step);
}

std::string describe_theta(const RealVector& t) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t(i);
  os << ')';
  return os.str();
}

Complex int_power(Complex z, long long n) {
  Complex acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

void check_ops(const ComplexMatrix& state, const std::vector<ComplexMatrix>& ops,
               const QcfQuery& query) {
  if (state.rows() != state.cols()) throw Error(ErrorCode::NonSquare, "site state must be square");
  for (const ComplexMatrix& a : ops) {
    if (a.rows() != state.rows() || a.cols() != state.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "site operator does not match the site state");
    }
  }
  validate_query(query, static_cast<Index>(ops.size()));
}

ComplexMatrix generator(const std::vector<ComplexMatrix>& ops, const ComplexVector& xi) {
  ComplexMatrix g = ComplexMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (std::size_t i = 0; i < ops.size(); ++i) g += xi(static_cast<Index>(i)) * ops[i];
  return g;
}

std::vector<ComplexMatrix> hermitian_ops(const std::vector<ComplexMatrix>& ops) {
  std::vector<ComplexMatrix> out;
  out.reserve(ops.size());
  for (const ComplexMatrix& a : ops) out.push_back(hermitize(a).matrix());
  return out;
}

std::vector<ComplexMatrix> matrices(const std::vector<HermitianOperator>& ops) {
  std::vector<ComplexMatrix> out;
  for (const HermitianOperator& a : ops) out.push_back(a.matrix());
  return out;
}

RealVector shifted(const ParametricModel& m, const RealVector& h, long long n) {
  if (h.size() != m.theta_dim) throw Error(ErrorCode::DimensionMismatch, "h has the wrong dimension");
  return m.theta0 + h / std::sqrt(static_cast<double>(n));
}

void require_n_grid(const std::vector<long long>& n_grid) {
  if (n_grid.empty()) throw Error(ErrorCode::InvalidInput, "n grid is empty");
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    if (n_grid[k] < 1) throw Error(ErrorCode::InvalidInput, "n values must be positive");
    if (k > 0 && n_grid[k] <= n_grid[k - 1]) {
      throw Error(ErrorCode::InvalidInput, "n values must be strictly increasing");
    }
  }
}

void require_queries(const std::vector<QcfQuery>& q) {
  if (q.empty()) throw Error(ErrorCode::InvalidInput, "query grid is empty");
}

Json complex_list(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (Complex z : v) a.push_back(complex_to_json(z));
  return a;
}

Json complex_table(const std::vector<std::vector<Complex>>& t) {
  Json a = Json::array();
  for (const auto& row : t) a.push_back(complex_list(row));
  return a;
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

PositiveOperator model_state(const ParametricModel& m, const RealVector& theta) {
  const PositiveOperator s(hermitize(raw_state(m, theta)));
  if (std::abs(s.trace() - 1.0) > kDensityTol) {
    throw Error(ErrorCode::InvalidInput,
                m.name + " state at theta = " + describe_theta(theta) + " does not have unit trace");
  }
  return s;
}

HermitianOperator sld(const ParametricModel& m, Index direction) {
  if (direction < 0 || direction >= m.theta_dim) {
    throw Error(ErrorCode::InvalidInput, "SLD direction out of range");
  }
  const PositiveOperator rho0 = model_state(m, m.theta0);
  const ComplexMatrix d_h = central_difference(m, direction, kFdStep);
  const ComplexMatrix d_half = central_difference(m, direction, 0.5 * kFdStep);
  const ComplexMatrix d_r = (4.0 * d_half - d_h) / 3.0;
  if (!all_finite(d_r) ||
      max_norm(d_r - d_half) > kFdStability * std::max(1.0, max_norm(d_r))) {
    throw Error(ErrorCode::NumericalDerivativeUnstable,
                "finite differences do not settle in direction " + std::to_string(direction));
  }

  const ComplexMatrix& u = rho0.spectrum().eigenvectors;
  const RealVector& lambda = rho0.spectrum().eigenvalues;
  const ComplexMatrix d_eig = u.adjoint() * d_r * u;
  ComplexMatrix l = ComplexMatrix::Zero(m.dim, m.dim);
  for (Index a = 0; a < m.dim; ++a) {
    for (Index b = 0; b < m.dim; ++b) {
      const double s = lambda(a) + lambda(b);
      if (s > rho0.rank_tol()) {
        l(a, b) = 2.0 * d_eig(a, b) / s;
      } else if (std::abs(d_eig(a, b)) > kFdTol) {
        std::ostringstream os;
        os << "derivative entry " << std::abs(d_eig(a, b)) << " on ker rho0 in direction "
           << direction;
        throw Error(ErrorCode::DerivativeLeavesSupport, os.str());
      }
    }
  }
  return HermitianOperator::symmetrized(u * l * u.adjoint());
}

SldSet sld_set(const ParametricModel& m) {
  SldSet out;
  const ComplexMatrix rho0 = model_state(m, m.theta0).matrix();
  for (Index i = 0; i < m.theta_dim; ++i) out.l_ops.push_back(sld(m, i));
  const Index d = m.theta_dim;
  out.j_matrix = ComplexMatrix(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      out.j_matrix(i, j) = trace_product(rho0 * out.l_ops[j].matrix(), out.l_ops[i].matrix());
  const Eigen::MatrixXd re = 0.5 * (out.j_matrix.real() + out.j_matrix.real().transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re, Eigen::EigenvaluesOnly);
  out.re_j_positive = d > 0 && es.eigenvalues().minCoeff() > 1e-12 * std::max(1.0, re.norm());
  return out;
}

ComplexMatrix fisher_j(const ParametricModel& m) { return sld_set(m).j_matrix; }

Complex collective_qcf_factorized(const ComplexMatrix& site_state,
                                  const std::vector<ComplexMatrix>& site_ops,
                                  const QcfQuery& query, long long n) {
  check_ops(site_state, site_ops, query);
  if (n < 1) throw Error(ErrorCode::InvalidInput, "number of copies must be positive");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix product = ComplexMatrix::Identity(site_state.rows(), site_state.cols());
  for (const ComplexVector& xi : query) product *= expm(kI * scale * generator(site_ops, xi));
  return int_power(trace_product(site_state, product), n);
}

Complex collective_qcf_brute(const ComplexMatrix& site_state,
                             const std::vector<ComplexMatrix>& site_ops, const QcfQuery& query,
                             int n) {
  check_ops(site_state, site_ops, query);
  if (n < 1) throw Error(ErrorCode::InvalidInput, "number of copies must be positive");
  const double big = std::pow(static_cast<double>(site_state.rows()), n);
  if (big > static_cast<double>(kBruteMaxDim)) {
    throw Error(ErrorCode::DimensionTooLarge, "dim^n exceeds " + std::to_string(kBruteMaxDim));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<ComplexMatrix> collective;
  for (const ComplexMatrix& a : site_ops) {
    ComplexMatrix x = embed_site(a, 0, n);
    for (int k = 1; k < n; ++k) x += embed_site(a, k, n);
    collective.push_back(scale * x);
  }
  const ComplexMatrix state = tensor_power(site_state, n);
  ComplexMatrix product = ComplexMatrix::Identity(state.rows(), state.cols());
  for (const ComplexVector& xi : query) product *= expm(kI * generator(collective, xi));
  return trace_product(state, product);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "slope fit needs at least two points");
  }
  double mx = 0.0, my = 0.0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / k;
    my += std::log(y[i]) / k;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

void apply_rate_verdict(ConvergenceReport& r) {
  const double worst = *std::max_element(r.errors.begin(), r.errors.end());
  r.monotone = true;
  for (std::size_t k = 1; k < r.errors.size(); ++k)
    if (!(r.errors[k] < r.errors[k - 1])) r.monotone = false;
  r.fitted_rate.reset();
  if (worst <= kNoiseFloor) {
    r.verdict = true;
    return;
  }
  if (r.errors.size() >= 2) {
    std::vector<double> n, e;
    for (std::size_t k = 0; k < r.errors.size(); ++k) {
      n.push_back(static_cast<double>(r.n_values[k]));
      e.push_back(std::max(r.errors[k], kNoiseFloor));
    }
    r.fitted_rate = loglog_slope(n, e);
  }
  r.verdict = r.monotone && r.fitted_rate && *r.fitted_rate <= kRateThreshold;
}

ConvergenceReport qclt_report(const ParametricModel& m, const std::vector<QcfQuery>& queries,
                              const std::vector<long long>& n_grid) {
  require_n_grid(n_grid);
  require_queries(queries);
  const SldSet s = sld_set(m);
  const ComplexMatrix rho0 = model_state(m, m.theta0).matrix();
  const std::vector<ComplexMatrix> ops = matrices(s.l_ops);
  const GaussianSpec limit(RealVector::Zero(m.theta_dim), s.j_matrix);

  ConvergenceReport r;
  r.study = "qclt";
  r.n_values = n_grid;
  for (const QcfQuery& q : queries) r.limit_values.push_back(qcf(limit, q));
  for (long long n : n_grid) {
    std::vector<Complex> row;
    double err = 0.0;
    for (std::size_t k = 0; k < queries.size(); ++k) {
      row.push_back(collective_qcf_factorized(rho0, ops, queries[k], n));
      err = std::max(err, std::abs(row.back() - r.limit_values[k]));
    }
    r.finite_values.push_back(std::move(row));
    r.errors.push_back(err);
  }
  apply_rate_verdict(r);
  return r;
}

ConvergenceReport lecam_report(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                               const RealVector& h, const std::vector<QcfQuery>& queries,
                               const std::vector<long long>& n_grid) {
  require_n_grid(n_grid);
  require_queries(queries);
  if (b_ops.empty()) throw Error(ErrorCode::InvalidInput, "Le Cam study needs observables B");
  const PositiveOperator rho0_op = model_state(m, m.theta0);
  const ComplexMatrix& rho0 = rho0_op.matrix();
  const std::vector<ComplexMatrix> b = hermitian_ops(b_ops);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].rows() != m.dim) throw Error(ErrorCode::DimensionMismatch, "B does not match the model");
    const double mean = std::abs(trace_product(rho0, b[i]));
    if (mean > kCenterTol) {
      std::ostringstream os;
      os << "|Tr rho0 B_" << i + 1 << "| = " << mean;
      throw Error(ErrorCode::NotCentered, os.str());
    }
  }
  const SldSet s = sld_set(m);
  const Index r_dim = static_cast<Index>(b.size());
  ComplexMatrix sigma(r_dim, r_dim), tau(r_dim, m.theta_dim);
  for (Index i = 0; i < r_dim; ++i) {
    for (Index j = 0; j < r_dim; ++j) sigma(i, j) = trace_product(rho0 * b[j], b[i]);
    for (Index j = 0; j < m.theta_dim; ++j)
      tau(i, j) = trace_product(rho0 * s.l_ops[j].matrix(), b[i]);
  }
  const GaussianSpec limit = lecam_limit_spec(sigma, tau, h);

  ConvergenceReport r;
  r.study = "lecam";
  r.n_values = n_grid;
  for (const QcfQuery& q : queries) r.limit_values.push_back(qcf(limit, q));
  for (long long n : n_grid) {
    const RealVector theta = shifted(m, h, n);
    const PositiveOperator rho_n = model_state(m, theta);
    if (!is_absolutely_continuous(rho0_op, rho_n).absolutely_continuous) {
      throw Error(ErrorCode::SupportViolation, "rho_theta >> rho_theta0 fails at n = " +
                                                   std::to_string(n) + ", theta = " +
                                                   describe_theta(theta));
    }
    std::vector<Complex> row;
    double err = 0.0;
    for (std::size_t k = 0; k < queries.size(); ++k) {
      row.push_back(collective_qcf_factorized(rho_n.matrix(), b, queries[k], n));
      err = std::max(err, std::abs(row.back() - r.limit_values[k]));
    }
    r.finite_values.push_back(std::move(row));
    r.errors.push_back(err);
  }
  apply_rate_verdict(r);
  return r;
}

Complex sandwich_qcf(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                     const RealVector& h, const QcfQuery& query, long long n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "number of copies must be positive");
  const PositiveOperator rho0 = model_state(m, m.theta0);
  const PositiveOperator rho_n = model_state(m, shifted(m, h, n));
  const QllrVersion l = qllr(rho_n, rho0);
  const ComplexMatrix half = expm_hermitian(l.l_matrix, 0.5);
  const ComplexMatrix site = half * rho0.matrix() * half;
  return collective_qcf_factorized(site, hermitian_ops(b_ops), query, n);
}

ConvergenceReport sandwich_report(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                                  const RealVector& h, const std::vector<QcfQuery>& queries,
                                  const std::vector<long long>& n_grid) {
  const ConvergenceReport lecam = lecam_report(m, b_ops, h, queries, n_grid);
  ConvergenceReport r;
  r.study = "sandwich";
  r.n_values = n_grid;
  r.reference_values = lecam.finite_values;
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    std::vector<Complex> row;
    double err = 0.0;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      row.push_back(sandwich_qcf(m, b_ops, h, queries[q], n_grid[k]));
      err = std::max(err, std::abs(row.back() - lecam.finite_values[k][q]));
    }
    r.finite_values.push_back(std::move(row));
    r.errors.push_back(err);
  }
  apply_rate_verdict(r);
  return r;
}

std::vector<RealVector> default_directions(Index theta_dim) {
  std::vector<RealVector> dirs;
  if (theta_dim == 1) {
    dirs.push_back(RealVector::Constant(1, 1.0));
    dirs.push_back(RealVector::Constant(1, -1.0));
  } else if (theta_dim == 2) {
    for (int k = 0; k < 8; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / 8.0;
      RealVector u(2);
      u << std::cos(phi), std::sin(phi);
      dirs.push_back(u);
    }
  } else {
    for (Index i = 0; i < theta_dim; ++i) {
      dirs.push_back(RealVector::Unit(theta_dim, i));
      dirs.push_back(-RealVector::Unit(theta_dim, i));
    }
  }
  return dirs;
}

Oh2Report oh2_report(const ParametricModel& m, const std::vector<double>& radii,
                     const std::vector<RealVector>& directions) {
  if (radii.empty() || directions.empty()) {
    throw Error(ErrorCode::InvalidInput, "oh2 study needs radii and directions");
  }
  const PositiveOperator rho0 = model_state(m, m.theta0);
  Oh2Report r;
  r.radii = radii;
  for (const RealVector& u : directions) {
    if (u.size() != m.theta_dim) throw Error(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
    r.directions.push_back(u.normalized());
  }
  for (double rad : radii) {
    if (!(rad > 0.0)) throw Error(ErrorCode::InvalidInput, "radii must be positive");
    std::vector<double> row;
    double worst = 0.0;
    for (const RealVector& u : r.directions) {
      const PositiveOperator sigma = model_state(m, m.theta0 + rad * u);
      const QllrVersion l = qllr(sigma, rho0);
      const double t = trace_product(rho0.matrix(), expm_hermitian(l.l_matrix, 1.0)).real();
      row.push_back((1.0 - t) / (rad * rad));
      worst = std::max(worst, std::abs(row.back()));
    }
    r.g_table.push_back(std::move(row));
    r.g.push_back(worst);
  }
  const double top = *std::max_element(r.g.begin(), r.g.end());
  if (top <= kNoiseFloor) {
    r.verdict = true;
    return r;
  }
  if (r.radii.size() >= 2) {
    std::vector<double> g;
    for (double x : r.g) g.push_back(std::max(x, kNoiseFloor));
    r.fitted_slope = loglog_slope(r.radii, g);
  }
  r.verdict = r.fitted_slope && *r.fitted_slope >= kOh2Slope;
  return r;
}

RemainderRule qlan_remainder_rule(const ParametricModel& m, const RealVector& h) {
  if (h.size() != m.theta_dim) throw Error(ErrorCode::DimensionMismatch, "h has the wrong dimension");
  const SldSet s = sld_set(m);
  const PositiveOperator rho0 = model_state(m, m.theta0);
  const double quad = h.dot(s.j_matrix.real() * h);
  return [m, h, s, rho0, quad](long long n) {
    const double root = std::sqrt(static_cast<double>(n));
    const QllrVersion l = qllr(model_state(m, shifted(m, h, n)), rho0);
    ComplexMatrix b = l.l_matrix.matrix();
    for (Index i = 0; i < m.theta_dim; ++i) b -= (h(i) / root) * s.l_ops[i].matrix();
    b += (quad / (2.0 * static_cast<double>(n))) * ComplexMatrix::Identity(m.dim, m.dim);
    return HermitianOperator::symmetrized(root * b).matrix();
  };
}

InfinitesimalReport infinitesimal_probe(const RemainderRule& p, const ParametricModel& m,
                                        const std::vector<InfinitesimalProbe>& probes,
                                        const std::vector<long long>& n_grid) {
  require_n_grid(n_grid);
  if (probes.empty()) throw Error(ErrorCode::InvalidInput, "no probes");
  const SldSet s = sld_set(m);
  const ComplexMatrix rho0 = model_state(m, m.theta0).matrix();
  const std::vector<ComplexMatrix> ops = matrices(s.l_ops);
  const GaussianSpec limit(RealVector::Zero(m.theta_dim), s.j_matrix);

  std::vector<QcfQuery> extended;
  InfinitesimalReport out;
  out.limit.study = "infinitesimal";
  out.limit.n_values = n_grid;
  for (const InfinitesimalProbe& pr : probes) {
    if (pr.eta.size() != pr.xi.size()) {
      throw Error(ErrorCode::DimensionMismatch, "each xi_t needs a matching eta_t");
    }
    validate_query(pr.xi, m.theta_dim);
    QcfQuery q;
    for (std::size_t t = 0; t < pr.xi.size(); ++t) {
      ComplexVector v(m.theta_dim + 1);
      v << pr.xi[t], Complex(pr.eta[t], 0.0);
      q.push_back(v);
    }
    extended.push_back(std::move(q));
    out.limit.limit_values.push_back(qcf(limit, pr.xi));
  }
  for (long long n : n_grid) {
    const ComplexMatrix pn = p(n);
    if (pn.rows() != m.dim || pn.cols() != m.dim) {
      throw Error(ErrorCode::DimensionMismatch, "remainder P(n) does not match the model");
    }
    std::vector<ComplexMatrix> ext_ops = ops;
    ext_ops.push_back(pn);
    std::vector<Complex> row;
    double err = 0.0, dev = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const Complex joint = collective_qcf_factorized(rho0, ext_ops, extended[k], n);
      const Complex base = collective_qcf_factorized(rho0, ops, probes[k].xi, n);
      row.push_back(joint);
      err = std::max(err, std::abs(joint - out.limit.limit_values[k]));
      dev = std::max(dev, std::abs(joint - base));
    }
    out.limit.finite_values.push_back(std::move(row));
    out.limit.errors.push_back(err);
    out.deviation.push_back(dev);
  }
  apply_rate_verdict(out.limit);
  return out;
}

AbsoluteContinuityDiagnostics tensor_power_ac_check(const ParametricModel& m,
                                                    const RealVector& theta, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "number of copies must be positive");
  if (std::pow(static_cast<double>(m.dim), n) > static_cast<double>(kBruteMaxDim)) {
    throw Error(ErrorCode::DimensionTooLarge, "dim^n exceeds " + std::to_string(kBruteMaxDim));
  }
  const PositiveOperator rho0(
      HermitianOperator::symmetrized(tensor_power(model_state(m, m.theta0).matrix(), n)));
  const PositiveOperator rho(
      HermitianOperator::symmetrized(tensor_power(model_state(m, theta).matrix(), n)));
  return is_absolutely_continuous(rho0, rho);
}

Json to_json(const ConvergenceReport& r) {
  Json j{{"study", r.study},
         {"n", r.n_values},
         {"errors", r.errors},
         {"fitted_rate", optional_number(r.fitted_rate)},
         {"monotone", r.monotone},
         {"verdict", r.verdict ? "pass" : "fail"},
         {"policy",
          {{"rate_threshold", kRateThreshold},
           {"monotone_required", true},
           {"noise_floor", kNoiseFloor}}},
         {"finite_values", complex_table(r.finite_values)}};
  if (!r.limit_values.empty()) j["limit_values"] = complex_list(r.limit_values);
  if (!r.reference_values.empty()) j["reference_values"] = complex_table(r.reference_values);
  return j;
}

Json to_json(const Oh2Report& r) {
  Json dirs = Json::array();
  for (const RealVector& u : r.directions) dirs.push_back(std::vector<double>(u.data(), u.data() + u.size()));
  return Json{{"study", "oh2"},
              {"radii", r.radii},
              {"g", r.g},
              {"g_table", r.g_table},
              {"directions", std::move(dirs)},
              {"fitted_slope", optional_number(r.fitted_slope)},
              {"verdict", r.verdict ? "pass" : "fail"},
              {"policy", {{"slope_threshold", kOh2Slope}, {"noise_floor", kNoiseFloor}}}};
}

Json to_json(const InfinitesimalReport& r) {
  Json j = to_json(r.limit);
  j["deviation"] = r.deviation;
  return j;
}

std::string to_csv(const ConvergenceReport& r) {
  std::string out = "n,error\n";
  for (std::size_t k = 0; k < r.n_values.size(); ++k)
    out += std::to_string(r.n_values[k]) + "," + format_double(r.errors[k]) + "\n";
  return out;
}

std::string to_csv(const Oh2Report& r) {
  std::string out = "radius,g\n";
  for (std::size_t k = 0; k < r.radii.size(); ++k)
    out += format_double(r.radii[k]) + "," + format_double(r.g[k]) + "\n";
  return out;
}

}  // namespace qleb
