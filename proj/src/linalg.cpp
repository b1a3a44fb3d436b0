#include "qleb/linalg.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <sstream>

namespace qleb {

namespace {

std::atomic<double> g_default_cutoff{kDefaultCutoff};

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a nonempty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::NonSquare, os.str());
  }
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimensions " << a << " and " << b << " differ";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

// Orthonormal basis of span(v) built by pivoted Gram-Schmidt on the
// projections of the standard basis vectors. The result depends only on the
// subspace: each column has a positive real entry at its pivot row.
ComplexMatrix canonical_basis(const ComplexMatrix& v) {
  const Index d = v.rows();
  const Index m = v.cols();
  // Column k of the residual projector is v * c.col(k); v has orthonormal
  // columns, so all the work happens in the m-dimensional coordinates.
  ComplexMatrix c = v.adjoint();
  ComplexMatrix out(d, m);
  for (Index s = 0; s < m; ++s) {
    Index pivot = 0;
    double best = -1.0;
    for (Index k = 0; k < d; ++k) {
      const double n = c.col(k).squaredNorm();
      if (n > best) {
        best = n;
        pivot = k;
      }
    }
    const ComplexVector u = c.col(pivot) / std::sqrt(best);
    out.col(s) = v * u;
    c -= u * (u.adjoint() * c);
  }
  return out;
}

}  // namespace

double default_cutoff() { return g_default_cutoff.load(std::memory_order_relaxed); }

void set_default_cutoff(double cutoff) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw Error(ErrorCode::InvalidInput, "rank cutoff must be a positive finite number");
  }
  g_default_cutoff.store(cutoff, std::memory_order_relaxed);
}

double max_norm(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

bool all_finite(const ComplexMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(const ComplexMatrix& a, double rel_tol) {
  require_square(a, "Hermitian operator");
  if (!all_finite(a)) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  const double violation = max_norm(a - a.adjoint());
  const double tol = rel_tol * std::max(1.0, max_norm(a));
  if (violation > tol) {
    std::ostringstream os;
    os << "||A - A^*||_max = " << violation << " exceeds tolerance " << tol;
    throw Error(ErrorCode::NotHermitianWithinTol, os.str());
  }
  m_ = (a + a.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& a) {
  require_square(a, "Hermitian operator");
  HermitianOperator h;
  h.m_ = (a + a.adjoint()) * 0.5;
  return h;
}

HermitianOperator HermitianOperator::zero(Index dim) {
  HermitianOperator h;
  h.m_ = ComplexMatrix::Zero(dim, dim);
  return h;
}

HermitianOperator HermitianOperator::identity(Index dim) {
  HermitianOperator h;
  h.m_ = ComplexMatrix::Identity(dim, dim);
  return h;
}

HermitianOperator hermitize(const ComplexMatrix& a, double rel_tol) {
  return HermitianOperator(a, rel_tol);
}

SpectralDecomposition eig_hermitian(const HermitianOperator& a) {
  const Index d = a.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  const ComplexMatrix raw = solver.eigenvectors().rowwise().reverse();
  out.eigenvectors.resize(d, d);

  const double scale = std::max(1.0, out.eigenvalues.cwiseAbs().maxCoeff());
  const double cluster_tol = 1e-12 * scale;
  Index start = 0;
  while (start < d) {
    Index end = start + 1;
    while (end < d && out.eigenvalues(end - 1) - out.eigenvalues(end) <= cluster_tol) ++end;
    out.eigenvectors.middleCols(start, end - start) =
        canonical_basis(raw.middleCols(start, end - start));
    start = end;
  }
  return out;
}

HermitianOperator from_spectrum(const SpectralDecomposition& s, const RealVector& values) {
  const ComplexMatrix& u = s.eigenvectors;
  return HermitianOperator::symmetrized(u * values.cast<Complex>().asDiagonal() * u.adjoint());
}

// ---------------------------------------------------------------------------
// PositiveOperator

PositiveOperator::PositiveOperator(const HermitianOperator& a, double cutoff,
                                   double reference_norm)
    : base_(a), spec_(eig_hermitian(a)), cutoff_(cutoff) {
  if (!(cutoff > 0.0)) throw Error(ErrorCode::InvalidInput, "rank cutoff must be positive");
  const Index d = dim();
  const double norm2 = std::max(spec_.eigenvalues.cwiseAbs().maxCoeff(), reference_norm);
  rank_tol_ = static_cast<double>(d) * norm2 * cutoff_;
  rank_ = 0;
  bool clipped = false;
  for (Index i = 0; i < d; ++i) {
    double& lambda = spec_.eigenvalues(i);
    if (lambda < -rank_tol_) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " below -rank_tol = " << -rank_tol_;
      throw Error(ErrorCode::NotPositive, os.str());
    }
    if (lambda < 0.0) {
      lambda = 0.0;
      clipped = true;
    }
    if (lambda > rank_tol_) ++rank_;
  }
  if (clipped) base_ = from_spectrum(spec_, spec_.eigenvalues);
}

PositiveOperator::PositiveOperator(const ComplexMatrix& a, double cutoff)
    : PositiveOperator(HermitianOperator(a), cutoff) {}

double PositiveOperator::norm() const { return spec_.eigenvalues.size() ? spec_.eigenvalues(0) : 0.0; }

double PositiveOperator::trace() const { return matrix().trace().real(); }

ComplexMatrix PositiveOperator::support_basis() const { return spec_.eigenvectors.leftCols(rank_); }

ComplexMatrix PositiveOperator::kernel_basis() const {
  return spec_.eigenvectors.rightCols(dim() - rank_);
}

// ---------------------------------------------------------------------------
// Matrix functions

HermitianOperator support_projector(const PositiveOperator& a) {
  const ComplexMatrix v = a.support_basis();
  return HermitianOperator::symmetrized(v * v.adjoint());
}

PositiveOperator sqrt_psd(const PositiveOperator& a) {
  // Eigenvalues under rank_tol belong to the kernel; their roots would not be
  // negligible (sqrt(1e-16) = 1e-8).
  RealVector roots = RealVector::Zero(a.dim());
  for (Index i = 0; i < a.rank(); ++i) roots(i) = std::sqrt(a.spectrum().eigenvalues(i));
  return PositiveOperator(from_spectrum(a.spectrum(), roots), a.cutoff());
}

HermitianOperator log_pd(const PositiveOperator& a) {
  if (!a.is_strictly_positive()) {
    throw Error(ErrorCode::SingularInput, "logarithm needs a strictly positive operator");
  }
  return from_spectrum(a.spectrum(), a.spectrum().eigenvalues.array().log().matrix());
}

PositiveOperator pinv_psd(const PositiveOperator& a) {
  RealVector inv = RealVector::Zero(a.dim());
  for (Index i = 0; i < a.rank(); ++i) inv(i) = 1.0 / a.spectrum().eigenvalues(i);
  return PositiveOperator(from_spectrum(a.spectrum(), inv), a.cutoff());
}

PositiveOperator geometric_mean(const PositiveOperator& a, const PositiveOperator& b) {
  require_same_dim(a.dim(), b.dim(), "geometric_mean");
  if (!a.is_strictly_positive() || !b.is_strictly_positive()) {
    throw Error(ErrorCode::SingularInput, "geometric mean needs strictly positive arguments");
  }
  const RealVector& lambda = a.spectrum().eigenvalues;
  const ComplexMatrix a_half = from_spectrum(a.spectrum(), lambda.cwiseSqrt()).matrix();
  const ComplexMatrix a_inv_half =
      from_spectrum(a.spectrum(), lambda.cwiseSqrt().cwiseInverse()).matrix();
  const PositiveOperator inner(HermitianOperator::symmetrized(a_inv_half * b.matrix() * a_inv_half),
                               a.cutoff());
  const PositiveOperator inner_root = sqrt_psd(inner);
  return PositiveOperator(
      HermitianOperator::symmetrized(a_half * inner_root.matrix() * a_half), a.cutoff());
}

HermitianOperator excision(const PositiveOperator& sigma, const PositiveOperator& rho) {
  require_same_dim(sigma.dim(), rho.dim(), "excision");
  if (rho.is_zero()) throw Error(ErrorCode::ZeroRho, "excision relative to the zero operator");
  const ComplexMatrix v = rho.support_basis();
  return HermitianOperator::symmetrized(v.adjoint() * sigma.matrix() * v);
}

// ---------------------------------------------------------------------------
// Exponentials

ComplexMatrix expm_hermitian(const HermitianOperator& h, Complex scale) {
  const SpectralDecomposition s = eig_hermitian(h);
  ComplexVector f(h.dim());
  for (Index i = 0; i < h.dim(); ++i) f(i) = std::exp(scale * s.eigenvalues(i));
  ComplexMatrix out = s.eigenvectors * f.asDiagonal() * s.eigenvectors.adjoint();
  if (!all_finite(out)) throw Error(ErrorCode::Overflow, "matrix exponential overflowed");
  return out;
}

ComplexMatrix expm_pade(const ComplexMatrix& a) {
  require_square(a, "expm argument");
  if (!all_finite(a)) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");

  // Higham (2005): degree m Pade approximant is accurate to unit roundoff
  // for ||A||_1 <= theta_m.
  static constexpr std::array<double, 4> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                    9.504178996162932e-1, 2.097847961257068e0};
  static constexpr double kTheta13 = 5.371920351148152e0;
  static constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
  static constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
  static constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                                25200.,    1512.,    56.,      1.};
  static constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600.,
                                                 302702400.,   30270240.,   2162160.,
                                                 110880.,      3960.,       90.,
                                                 1.};
  static constexpr std::array<double, 14> kB13 = {
      64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
      129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
      1323241920.,        40840800.,          960960.,           16380.,
      182.,               1.};

  const Index d = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  auto solve = [&](const ComplexMatrix& u, const ComplexMatrix& v) -> ComplexMatrix {
    return (v - u).partialPivLu().solve(v + u);
  };
  auto low_order = [&](const ComplexMatrix& x, const auto& b) -> ComplexMatrix {
    const ComplexMatrix x2 = x * x;
    ComplexMatrix power = id;
    ComplexMatrix odd = ComplexMatrix::Zero(d, d);
    ComplexMatrix even = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k + 1 < b.size(); k += 2) {
      even += b[k] * power;
      odd += b[k + 1] * power;
      power = power * x2;
    }
    return solve(x * odd, even);
  };

  ComplexMatrix result;
  if (norm1 <= kTheta[0]) {
    result = low_order(a, kB3);
  } else if (norm1 <= kTheta[1]) {
    result = low_order(a, kB5);
  } else if (norm1 <= kTheta[2]) {
    result = low_order(a, kB7);
  } else if (norm1 <= kTheta[3]) {
    result = low_order(a, kB9);
  } else {
    int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
    const ComplexMatrix x = a / std::ldexp(1.0, s);
    const ComplexMatrix x2 = x * x;
    const ComplexMatrix x4 = x2 * x2;
    const ComplexMatrix x6 = x4 * x2;
    const auto& b = kB13;
    const ComplexMatrix u =
        x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 +
             b[1] * id);
    const ComplexMatrix v =
        x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
    result = solve(u, v);
    for (int i = 0; i < s; ++i) {
      result = result * result;
      if (!all_finite(result)) break;
    }
  }
  if (!all_finite(result)) throw Error(ErrorCode::Overflow, "matrix exponential overflowed");
  return result;
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm argument");
  if (!all_finite(a)) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  const double tol = 1e-14 * std::max(1.0, max_norm(a));
  if (max_norm(a - a.adjoint()) <= tol) {
    return expm_hermitian(HermitianOperator::symmetrized(a), Complex(1.0, 0.0));
  }
  if (max_norm(a + a.adjoint()) <= tol) {
    // a = iH with H = -ia Hermitian.
    return expm_hermitian(HermitianOperator::symmetrized(Complex(0.0, -1.0) * a),
                          Complex(0.0, 1.0));
  }
  return expm_pade(a);
}

// ---------------------------------------------------------------------------
// Tensor products

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "tensor power needs n >= 1");
  ComplexMatrix out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

ComplexMatrix embed_site(const ComplexMatrix& op, int site, int n) {
  require_square(op, "site operator");
  if (site < 0 || site >= n) throw Error(ErrorCode::InvalidInput, "site index out of range");
  const Index d = op.rows();
  Index left = 1;
  Index right = 1;
  for (int k = 0; k < site; ++k) left *= d;
  for (int k = site + 1; k < n; ++k) right *= d;
  return kron(kron(ComplexMatrix::Identity(left, left), op), ComplexMatrix::Identity(right, right));
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "trace_product");
  require_same_dim(a.rows(), b.cols(), "trace_product");
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace qleb
