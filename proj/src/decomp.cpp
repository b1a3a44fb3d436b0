#include "qleb/decomp.hpp"

#include <algorithm>
#include <cmath>

namespace qleb {

namespace {

void require_nonzero_pair(const PositiveOperator& rho, const PositiveOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "rho and sigma act on different spaces");
  }
  if (rho.is_zero() || sigma.is_zero()) {
    throw Error(ErrorCode::ZeroOperator, "singularity and continuity need nonzero operators");
  }
}

void require_rho(const PositiveOperator& sigma, const PositiveOperator& rho) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "rho and sigma act on different spaces");
  }
  if (rho.is_zero()) throw Error(ErrorCode::ZeroRho, "reference operator rho is zero");
}

ComplexMatrix diag_matrix(const RealVector& v) {
  return v.cast<Complex>().asDiagonal();
}

// Pieces shared by the block route and qllr. With G = sigma0^{-1} alpha the
// absolutely continuous part is K sigma0 K^* for K = h2 + h3 G^*.
struct BlockPieces {
  SupportSplit split;
  ComplexMatrix k;
  ComplexMatrix g;
};

BlockPieces block_pieces(const PositiveOperator& rho, const PositiveOperator& sigma) {
  BlockPieces p{support_split(rho, sigma), {}, {}};
  const Eigen::LLT<ComplexMatrix> llt(p.split.sigma0);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularInput, "sigma0 block is not numerically positive definite");
  }
  p.g = llt.solve(p.split.alpha);
  p.k = p.split.basis_h2 + p.split.basis_h3 * p.g.adjoint();
  return p;
}

// sigma0 # rho0^{-1} on H2.
ComplexMatrix block_witness(const SupportSplit& s, double cutoff) {
  const PositiveOperator sigma0(HermitianOperator::symmetrized(s.sigma0), cutoff);
  const PositiveOperator rho0(HermitianOperator::symmetrized(s.rho0), cutoff);
  return geometric_mean(sigma0, pinv_psd(rho0)).matrix();
}

}  // namespace

SingularityDiagnostics is_singular(const PositiveOperator& rho, const PositiveOperator& sigma) {
  require_nonzero_pair(rho, sigma);
  SingularityDiagnostics d;
  const double tol = d.tol;

  d.excision_norm = spectral_norm(excision(sigma, rho).matrix());
  d.excision_vanishes = d.excision_norm <= tol * sigma.norm();

  const ComplexMatrix overlap = rho.support_basis().adjoint() * sigma.support_basis();
  d.support_overlap = spectral_norm(overlap);
  d.supports_orthogonal = d.support_overlap * d.support_overlap <= tol;

  d.trace_overlap = trace_product(rho.matrix(), sigma.matrix()).real();
  d.trace_vanishes = d.trace_overlap <= tol * rho.norm() * sigma.norm();

  d.singular = d.trace_vanishes;
  return d;
}

AbsoluteContinuityDiagnostics is_absolutely_continuous(const PositiveOperator& rho,
                                                       const PositiveOperator& sigma) {
  require_nonzero_pair(rho, sigma);
  AbsoluteContinuityDiagnostics d;
  const HermitianOperator ex = excision(sigma, rho);
  const SpectralDecomposition s = eig_hermitian(ex);
  d.excision_min_eigenvalue = s.eigenvalues(s.eigenvalues.size() - 1);
  d.threshold = sigma.rank_tol();
  d.absolutely_continuous = d.excision_min_eigenvalue > d.threshold;
  if (!d.absolutely_continuous) return d;

  // rho = R sigma R with R = V (rho0 # sigma0^{-1}) V^* and V = supp rho.
  const Index r = rho.rank();
  const ComplexMatrix v = rho.support_basis();
  const PositiveOperator rho0(HermitianOperator::symmetrized(diag_matrix(rho.spectrum().eigenvalues.head(r))),
                              rho.cutoff());
  const PositiveOperator sigma0(ex, sigma.cutoff());
  const ComplexMatrix x = geometric_mean(rho0, pinv_psd(sigma0)).matrix();
  // R sigma R = V (X sigma0 X) V^* exactly. Forming it from the full sigma
  // instead re-rounds V^* sigma V, and that error is amplified by
  // ||X||^2 ~ ||rho|| / lambda_min(sigma0), which is ~1e9 for nearly
  // singular pairs.
  const ComplexMatrix rsr = v * (x * ex.matrix() * x) * v.adjoint();
  const double residual = max_norm(rsr - rho.matrix());
  d.witness_residual = residual;
  d.witness_holds = residual <= kWitnessTol * std::max(1.0, rho.norm());
  return d;
}

MutualContinuityDiagnostics is_mutually_ac(const PositiveOperator& rho,
                                           const PositiveOperator& sigma) {
  MutualContinuityDiagnostics d;
  d.rho_ll_sigma = is_absolutely_continuous(rho, sigma).absolutely_continuous;
  d.sigma_ll_rho = is_absolutely_continuous(sigma, rho).absolutely_continuous;
  d.mutual = d.rho_ll_sigma && d.sigma_ll_rho;
  d.rank_criterion = d.rho_ll_sigma && rho.rank() == sigma.rank();
  return d;
}

ComplexMatrix SupportSplit::basis() const {
  const Index d = basis_h1.rows();
  ComplexMatrix q(d, d);
  q << basis_h1, basis_h2, basis_h3;
  return q;
}

ComplexMatrix SupportSplit::rho_matrix() const {
  const ComplexMatrix& a = basis_h1;
  const ComplexMatrix& b = basis_h2;
  return a * rho2 * a.adjoint() + a * rho1 * b.adjoint() + b * rho1.adjoint() * a.adjoint() +
         b * rho0 * b.adjoint();
}

ComplexMatrix SupportSplit::sigma_matrix() const {
  const ComplexMatrix& b = basis_h2;
  const ComplexMatrix& c = basis_h3;
  return b * sigma0 * b.adjoint() + b * alpha * c.adjoint() + c * alpha.adjoint() * b.adjoint() +
         c * beta * c.adjoint();
}

SupportSplit support_split(const PositiveOperator& rho, const PositiveOperator& sigma) {
  require_nonzero_pair(rho, sigma);
  const ComplexMatrix vs = rho.support_basis();
  const SpectralDecomposition ex = eig_hermitian(excision(sigma, rho));
  Index k = 0;
  while (k < ex.eigenvalues.size() && ex.eigenvalues(k) > sigma.rank_tol()) ++k;
  if (k == 0) throw Error(ErrorCode::MutuallySingular, "sigma vanishes on supp rho");

  SupportSplit s;
  const ComplexMatrix w = vs * ex.eigenvectors;
  s.basis_h2 = w.leftCols(k);
  s.basis_h1 = w.rightCols(w.cols() - k);
  s.basis_h3 = rho.kernel_basis();

  const ComplexMatrix& p = rho.matrix();
  const ComplexMatrix& q = sigma.matrix();
  s.rho2 = s.basis_h1.adjoint() * p * s.basis_h1;
  s.rho1 = s.basis_h1.adjoint() * p * s.basis_h2;
  s.rho0 = s.basis_h2.adjoint() * p * s.basis_h2;
  s.sigma0 = s.basis_h2.adjoint() * q * s.basis_h2;
  s.alpha = s.basis_h2.adjoint() * q * s.basis_h3;
  s.beta = s.basis_h3.adjoint() * q * s.basis_h3;
  if (s.rho2.size() > 0) s.rho2 = HermitianOperator::symmetrized(s.rho2).matrix();
  s.rho0 = HermitianOperator::symmetrized(s.rho0).matrix();
  s.sigma0 = HermitianOperator::symmetrized(s.sigma0).matrix();
  if (s.beta.size() > 0) s.beta = HermitianOperator::symmetrized(s.beta).matrix();
  return s;
}

std::string_view to_string(Route r) { return r == Route::Block ? "block" : "direct"; }

LebesgueDecomposition lebesgue_decompose(const PositiveOperator& sigma, const PositiveOperator& rho) {
  require_rho(sigma, rho);
  const Index d = sigma.dim();
  const double cut = sigma.cutoff();
  const double scale = sigma.norm();
  const bool singular = sigma.is_zero() || is_singular(rho, sigma).singular ||
                        !(eig_hermitian(excision(sigma, rho)).eigenvalues(0) > sigma.rank_tol());
  if (singular) {
    return {PositiveOperator(HermitianOperator::zero(d), cut), sigma,
            PositiveOperator(HermitianOperator::zero(d), cut), Route::Block};
  }

  const BlockPieces p = block_pieces(rho, sigma);
  const SupportSplit& s = p.split;
  const ComplexMatrix ac = p.k * s.sigma0 * p.k.adjoint();
  ComplexMatrix sing = ComplexMatrix::Zero(d, d);
  if (s.basis_h3.cols() > 0) {
    const ComplexMatrix schur = s.beta - s.alpha.adjoint() * p.g;
    sing = s.basis_h3 * schur * s.basis_h3.adjoint();
  }
  const ComplexMatrix x = block_witness(s, cut);
  const ComplexMatrix r = p.k * x * p.k.adjoint();

  return {PositiveOperator(HermitianOperator::symmetrized(ac), cut, scale),
          PositiveOperator(HermitianOperator::symmetrized(sing), cut, scale),
          PositiveOperator(HermitianOperator::symmetrized(r), cut), Route::Block};
}

LebesgueDecomposition lebesgue_decompose_direct(const PositiveOperator& sigma,
                                                const PositiveOperator& rho) {
  require_rho(sigma, rho);
  const Index d = sigma.dim();
  const double cut = sigma.cutoff();
  const double scale = sigma.norm();

  // N = sqrt(sqrt(sigma) rho sqrt(sigma)) from the SVD of C = sqrt(rho) sqrt(sigma):
  // C = U S V^* gives C^* C = V S^2 V^*, so N = V S V^* and N^+ = V S^+ V^*.
  const ComplexMatrix root_sigma = sqrt_psd(sigma).matrix();
  const ComplexMatrix root_rho = sqrt_psd(rho).matrix();
  const Eigen::JacobiSVD<ComplexMatrix> svd(root_rho * root_sigma, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double sv_tol = static_cast<double>(d) * (sv.size() ? sv(0) : 0.0) * cut;
  RealVector inv = RealVector::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > sv_tol) inv(i) = 1.0 / sv(i);
  const ComplexMatrix& v = svd.matrixV();
  const ComplexMatrix n_pinv = v * diag_matrix(inv) * v.adjoint();

  const ComplexMatrix r = root_sigma * n_pinv * root_sigma;
  const HermitianOperator ac = HermitianOperator::symmetrized(r * rho.matrix() * r);
  const HermitianOperator sing = HermitianOperator::symmetrized(sigma.matrix() - ac.matrix());
  return {PositiveOperator(ac, cut, scale), PositiveOperator(sing, cut, scale),
          PositiveOperator(HermitianOperator::symmetrized(r), cut), Route::Direct};
}

Json to_json(const LebesgueDecomposition& d) {
  return Json{{"sigma_ac", matrix_to_json(d.sigma_ac.matrix())},
              {"sigma_sing", matrix_to_json(d.sigma_sing.matrix())},
              {"witness_r", matrix_to_json(d.witness_r.matrix())},
              {"route", std::string(to_string(d.route))}};
}

QllrVersion qllr(const PositiveOperator& sigma, const PositiveOperator& rho) {
  require_rho(sigma, rho);
  static const std::string kGamma =
      "gamma = I on ker rho: L = 2 log(E^*(sigma0 # rho0^{-1} (+) I)E)";
  const Index d = rho.dim();
  if (sigma.matrix() == rho.matrix()) return {HermitianOperator::zero(d), kGamma};
  if (sigma.is_zero() || !is_absolutely_continuous(rho, sigma).absolutely_continuous) {
    throw Error(ErrorCode::NotAbsolutelyContinuous, "qllr needs rho << sigma");
  }
  const BlockPieces p = block_pieces(rho, sigma);
  const ComplexMatrix x = block_witness(p.split, sigma.cutoff());
  const ComplexMatrix& h3 = p.split.basis_h3;
  const ComplexMatrix r_plus = p.k * x * p.k.adjoint() + h3 * h3.adjoint();
  const PositiveOperator rp(HermitianOperator::symmetrized(r_plus), sigma.cutoff());
  const HermitianOperator log_r = log_pd(rp);
  return {HermitianOperator::symmetrized(2.0 * log_r.matrix()), kGamma};
}

double ac_ball_radius(const PositiveOperator& rho) {
  if (rho.is_zero()) throw Error(ErrorCode::ZeroRho, "reference operator rho is zero");
  return rho.spectrum().eigenvalues(rho.rank() - 1);
}

}  // namespace qleb
