#include "qleb/gaussian.hpp"

#include <cmath>

namespace qleb {

namespace {

constexpr double kPsdTol = 1e-12;

// xi_t^i xi_t^j J_ji summed symmetrically: the skew part of J drops out
// exactly, leaving xi^T V xi.
Complex self_term(const Eigen::MatrixXd& v, const ComplexVector& xi) {
  Complex acc = 0.0;
  for (Index i = 0; i < xi.size(); ++i) {
    acc += v(i, i) * xi(i) * xi(i);
    for (Index k = i + 1; k < xi.size(); ++k) acc += 2.0 * v(i, k) * xi(i) * xi(k);
  }
  return acc;
}

Complex mean_term(const RealVector& h, const ComplexVector& xi) {
  Complex acc = 0.0;
  for (Index i = 0; i < xi.size(); ++i) acc += xi(i) * h(i);
  return acc;
}

Complex single_exponent(const GaussianSpec& g, const ComplexVector& xi) {
  return Complex(0.0, 1.0) * mean_term(g.mean(), xi) - 0.5 * self_term(g.v_matrix(), xi);
}

}  // namespace

GaussianSpec::GaussianSpec(RealVector mean, const ComplexMatrix& j) : mean_(std::move(mean)) {
  if (j.rows() != j.cols()) throw Error(ErrorCode::NonSquare, "J must be square");
  if (j.rows() != mean_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "mean and J have different dimensions");
  }
  if (!all_finite(j) || !mean_.allFinite()) {
    throw Error(ErrorCode::InvalidInput, "Gaussian parameters must be finite");
  }
  j_ = hermitize(j).matrix();
  if (j_.size() > 0) {
    const double lo = eig_hermitian(HermitianOperator::symmetrized(j_)).eigenvalues.minCoeff();
    if (lo < -kPsdTol) throw Error(ErrorCode::NotPositive, "J has a negative eigenvalue");
  }
  v_ = j_.real();
}

void validate_query(const QcfQuery& q, Index dim) {
  if (q.empty()) throw Error(ErrorCode::InvalidInput, "query needs at least one xi");
  for (const ComplexVector& xi : q) {
    if (xi.size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "query vector has the wrong dimension");
    }
    if (!xi.allFinite()) throw Error(ErrorCode::InvalidInput, "query vector is not finite");
  }
}

Complex char_fn(const GaussianSpec& g, const RealVector& xi) {
  if (xi.size() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "xi has the wrong dimension");
  return std::exp(single_exponent(g, xi.cast<Complex>()));
}

Complex qcf(const GaussianSpec& g, const QcfQuery& query) {
  validate_query(query, g.dim());
  if (query.size() == 1) return std::exp(single_exponent(g, query.front()));
  Complex exponent = 0.0;
  for (const ComplexVector& xi : query) exponent += single_exponent(g, xi);
  // xi_t^i xi_u^j J_ji = xi_u^T J xi_t
  const ComplexMatrix& j = g.j_matrix();
  for (std::size_t t = 0; t < query.size(); ++t)
    for (std::size_t u = t + 1; u < query.size(); ++u)
      exponent -= query[u].cwiseProduct(j * query[t]).sum();
  return std::exp(exponent);
}

GaussianSpec lecam_limit_spec(const ComplexMatrix& sigma, const ComplexMatrix& tau,
                              const RealVector& h) {
  if (sigma.rows() != sigma.cols()) throw Error(ErrorCode::NonSquare, "Sigma must be square");
  if (tau.rows() != sigma.rows() || tau.cols() != h.size()) {
    throw Error(ErrorCode::DimensionMismatch, "tau must be r x d with r = dim Sigma, d = dim h");
  }
  return GaussianSpec(tau.real() * h, sigma);
}

Json to_json(const GaussianSpec& g) {
  Json mean = Json::array();
  for (Index i = 0; i < g.dim(); ++i) mean.push_back(g.mean()(i));
  return Json{{"dim", g.dim()}, {"mean", std::move(mean)}, {"j", matrix_to_json(g.j_matrix())}};
}

}  // namespace qleb
