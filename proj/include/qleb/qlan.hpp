#pragma once

// q-LAN harness: SLDs, the matrix J, collective observables on tensor powers
// and convergence studies of finite-n quasi-characteristic functions.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qleb/decomp.hpp"
#include "qleb/gaussian.hpp"
#include "qleb/io.hpp"
#include "qleb/linalg.hpp"

namespace qleb {

inline constexpr double kFdStep = 1e-5;
inline constexpr double kFdTol = 1e-7;
inline constexpr double kFdStability = 1e-4;
inline constexpr double kCenterTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;
inline constexpr double kRateThreshold = -0.45;
// Errors at or below this are treated as exact agreement.
inline constexpr double kNoiseFloor = 1e-10;
inline constexpr double kOh2Slope = 0.5;
inline constexpr Index kBruteMaxDim = 4096;

struct ParametricModel {
  std::string name;
  Index dim = 0;
  Index theta_dim = 0;
  std::function<ComplexMatrix(const RealVector&)> state_at;
  RealVector theta0;
};

// state_at(theta), checked to be a density operator.
PositiveOperator model_state(const ParametricModel& m, const RealVector& theta);

struct SldSet {
  std::vector<HermitianOperator> l_ops;
  ComplexMatrix j_matrix;
  bool re_j_positive = false;
};

HermitianOperator sld(const ParametricModel& m, Index direction);
SldSet sld_set(const ParametricModel& m);
ComplexMatrix fisher_j(const ParametricModel& m);

// (Tr rho prod_t exp(i xi_t^i A_i / sqrt n))^n. Terms on distinct tensor
// factors commute, so the n-copy expectation is the n-th power of one site.
Complex collective_qcf_factorized(const ComplexMatrix& site_state,
                                  const std::vector<ComplexMatrix>& site_ops,
                                  const QcfQuery& query, long long n);
// Builds rho^{(x) n} and the collective observables explicitly.
Complex collective_qcf_brute(const ComplexMatrix& site_state,
                             const std::vector<ComplexMatrix>& site_ops, const QcfQuery& query,
                             int n);

struct ConvergenceReport {
  std::string study;
  std::vector<long long> n_values;
  std::vector<double> errors;
  std::optional<double> fitted_rate;
  bool monotone = false;
  bool verdict = false;
  // Finite-n values, one row per n, one column per query.
  std::vector<std::vector<Complex>> finite_values;
  // Either a fixed limit per query or, for gap studies, a reference per n.
  std::vector<Complex> limit_values;
  std::vector<std::vector<Complex>> reference_values;
};

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Pass iff every error is within the noise floor, or errors strictly decrease
// and the fitted rate is at most kRateThreshold.
void apply_rate_verdict(ConvergenceReport& r);

ConvergenceReport qclt_report(const ParametricModel& m, const std::vector<QcfQuery>& queries,
                              const std::vector<long long>& n_grid);

ConvergenceReport lecam_report(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                               const RealVector& h, const std::vector<QcfQuery>& queries,
                               const std::vector<long long>& n_grid);

// (Tr e^{L/2} rho0 e^{L/2} prod_t exp(i xi_t^i B_i / sqrt n))^n with
// L = L(rho_{theta0 + h/sqrt n} | rho0).
Complex sandwich_qcf(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                     const RealVector& h, const QcfQuery& query, long long n);

// Gap between sandwich_qcf and the finite-n Le Cam value, per n.
ConvergenceReport sandwich_report(const ParametricModel& m, const std::vector<ComplexMatrix>& b_ops,
                                  const RealVector& h, const std::vector<QcfQuery>& queries,
                                  const std::vector<long long>& n_grid);

struct Oh2Report {
  std::vector<double> radii;
  std::vector<RealVector> directions;
  std::vector<std::vector<double>> g_table;  // [radius][direction]
  std::vector<double> g;                     // max |g| over directions
  std::optional<double> fitted_slope;
  bool verdict = false;
};

std::vector<RealVector> default_directions(Index theta_dim);

// g(h) = (1 - Tr rho0 e^{L_h}) / |h|^2 on the given radii and directions.
Oh2Report oh2_report(const ParametricModel& m, const std::vector<double>& radii,
                     const std::vector<RealVector>& directions);

using RemainderRule = std::function<ComplexMatrix(long long n)>;

// P(n) = sqrt(n) (B(h/sqrt n) + h^T J h / (2n) I) with B(h) = L_h - h^i A_i.
RemainderRule qlan_remainder_rule(const ParametricModel& m, const RealVector& h);

struct InfinitesimalReport {
  ConvergenceReport limit;          // |joint_n(xi, eta) - qcf(N(0, J), xi)|
  std::vector<double> deviation;    // max |joint_n(xi, eta) - joint_n(xi, 0)| per n
};

// Each probe pairs a query xi_1..xi_s with real eta_1..eta_s.
struct InfinitesimalProbe {
  QcfQuery xi;
  std::vector<double> eta;
};

InfinitesimalReport infinitesimal_probe(const RemainderRule& p, const ParametricModel& m,
                                        const std::vector<InfinitesimalProbe>& probes,
                                        const std::vector<long long>& n_grid);

// rho_theta^{(x) n} >> rho_theta0^{(x) n}, built explicitly.
AbsoluteContinuityDiagnostics tensor_power_ac_check(const ParametricModel& m,
                                                    const RealVector& theta, int n);

Json to_json(const ConvergenceReport& r);
Json to_json(const Oh2Report& r);
Json to_json(const InfinitesimalReport& r);
std::string to_csv(const ConvergenceReport& r);
std::string to_csv(const Oh2Report& r);

}  // namespace qleb
