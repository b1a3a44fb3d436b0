#pragma once

// Quantum Gaussian states N(h, J) on a CCR algebra, seen only through their
// characteristic and quasi-characteristic functions.

#include <vector>

#include "qleb/io.hpp"
#include "qleb/linalg.hpp"

namespace qleb {

// J = V + i S with V = Re J symmetric and S = Im J skew-symmetric.
class GaussianSpec {
 public:
  GaussianSpec(RealVector mean, const ComplexMatrix& j);

  Index dim() const { return mean_.size(); }
  const RealVector& mean() const { return mean_; }
  const ComplexMatrix& j_matrix() const { return j_; }
  const Eigen::MatrixXd& v_matrix() const { return v_; }
  Eigen::MatrixXd s_matrix() const { return j_.imag(); }

 private:
  RealVector mean_;
  ComplexMatrix j_;
  Eigen::MatrixXd v_;
};

// Ordered xi_1, ..., xi_s.
using QcfQuery = std::vector<ComplexVector>;

void validate_query(const QcfQuery& q, Index dim);

// exp(i xi.h - xi^T V xi / 2) for real xi.
Complex char_fn(const GaussianSpec& g, const RealVector& xi);

// exp(sum_t (i xi_t^i h_i - xi_t^i xi_t^j J_ji / 2) - sum_{t<u} xi_t^i xi_u^j J_ji).
// The mean term is not conjugated for complex xi.
Complex qcf(const GaussianSpec& g, const QcfQuery& query);

// N((Re tau) h, Sigma).
GaussianSpec lecam_limit_spec(const ComplexMatrix& sigma, const ComplexMatrix& tau,
                              const RealVector& h);

Json to_json(const GaussianSpec& g);

}  // namespace qleb
