#pragma once

// Dense spectral primitives on complex matrices.
//
// Every operator in the library is a small dense Eigen::MatrixXcd. Hermitian
// and positive operators are thin value types that validate their input once
// and cache the spectral decomposition; all matrix functions (square root,
// logarithm, pseudo-inverse, geometric mean) are evaluated spectrally from
// that cache.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qleb/error.hpp"

namespace qleb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultCutoff = 1e-11;
inline constexpr double kHermitianTol = 1e-12;

// Process-wide default rank cutoff. Intended to be set once at startup
// (the CLI reads QLEB_CUTOFF / --cutoff); reads are lock-free.
double default_cutoff();
void set_default_cutoff(double cutoff);

double max_norm(const ComplexMatrix& a);
double spectral_norm(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

// Real eigenvalues in descending order with orthonormal eigenvector columns.
// 
// Within (numerically) degenerate eigenspaces the columns are a pivoted
// Gram-Schmidt orthonormalization of the projected standard basis, so the
// basis depends only on the eigenspaces, not on solver internals.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

class HermitianOperator {
 public:
  // Replaces `a` by (a + a^*)/2 after checking ||a - a^*||_max <= rel_tol * max(1, ||a||_max).
  explicit HermitianOperator(const ComplexMatrix& a, double rel_tol = kHermitianTol);

  // For products that are Hermitian up to rounding (X B X, U f U^*): takes
  // the Hermitian part without the tolerance check.
  static HermitianOperator symmetrized(const ComplexMatrix& a);
  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  HermitianOperator() = default;

  ComplexMatrix m_;
};

// Positive semidefinite operator with cached spectrum.
// 
// rank_tol = dim * max(||A||_2, reference_norm) * cutoff. Eigenvalues in
// [-rank_tol, 0) are clipped to zero (and the matrix rebuilt from the clipped
// spectrum); anything more negative is rejected. A nonzero reference_norm
// judges rank on the scale of a parent operator, e.g. the parts of a
// decomposition of sigma on the scale of sigma.
class PositiveOperator {
 public:
  explicit PositiveOperator(const HermitianOperator& a, double cutoff = default_cutoff(),
                            double reference_norm = 0.0);
  explicit PositiveOperator(const ComplexMatrix& a, double cutoff = default_cutoff());

  const HermitianOperator& hermitian() const { return base_; }
  const ComplexMatrix& matrix() const { return base_.matrix(); }
  Index dim() const { return base_.dim(); }
  Index rank() const { return rank_; }
  double rank_tol() const { return rank_tol_; }
  double cutoff() const { return cutoff_; }
  const SpectralDecomposition& spectrum() const { return spec_; }

  double norm() const;  // largest eigenvalue
  double trace() const;
  bool is_zero() const { return rank_ == 0; }
  bool is_strictly_positive() const { return rank_ == dim(); }

  // Eigenvectors spanning supp A (eigenvalues > rank_tol), descending.
  ComplexMatrix support_basis() const;
  // Eigenvectors spanning ker A, descending.
  ComplexMatrix kernel_basis() const;

 private:
  HermitianOperator base_;
  SpectralDecomposition spec_;
  double cutoff_;
  double rank_tol_;
  Index rank_;
};

HermitianOperator hermitize(const ComplexMatrix& a, double rel_tol = kHermitianTol);
SpectralDecomposition eig_hermitian(const HermitianOperator& a);

// U f(Lambda) U^* for the given eigenvalue transform.
HermitianOperator from_spectrum(const SpectralDecomposition& s, const RealVector& values);

HermitianOperator support_projector(const PositiveOperator& a);
PositiveOperator sqrt_psd(const PositiveOperator& a);
HermitianOperator log_pd(const PositiveOperator& a);
PositiveOperator pinv_psd(const PositiveOperator& a);
PositiveOperator geometric_mean(const PositiveOperator& a, const PositiveOperator& b);

// sigma compressed to supp rho, expressed in rho's descending eigenbasis.
HermitianOperator excision(const PositiveOperator& sigma, const PositiveOperator& rho);

// Matrix exponential. Hermitian and anti-Hermitian input goes through the
// spectral path; everything else through Pade scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& a);
// exp(scale * H) evaluated from the spectrum of H.
ComplexMatrix expm_hermitian(const HermitianOperator& h, Complex scale);
ComplexMatrix expm_pade(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_power(const ComplexMatrix& a, int n);
// I^{(k)} (x) op (x) I^{(n-k-1)} on (C^d)^{(x) n}; site index k is zero-based.
ComplexMatrix embed_site(const ComplexMatrix& op, int site, int n);

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qleb
