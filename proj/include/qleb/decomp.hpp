#pragma once

// Singularity, absolute continuity and the Lebesgue decomposition of a
// positive operator sigma with respect to a reference rho.

#include <optional>
#include <string>

#include "qleb/io.hpp"
#include "qleb/linalg.hpp"

namespace qleb {

// Threshold for the "= 0" side of the singularity dichotomy. Each criterion
// is normalized to be scale free before comparison.
inline constexpr double kSingularTol = 1e-10;
inline constexpr double kWitnessTol = 1e-9;

struct SingularityDiagnostics {
  bool singular = false;  // verdict, taken from the trace criterion

  bool excision_vanishes = false;    // ||sigma|supp rho||_2 <= tol * ||sigma||_2
  bool supports_orthogonal = false;  // ||P_rho P_sigma||_2^2 <= tol
  bool trace_vanishes = false;       // Tr rho sigma <= tol * ||rho||_2 ||sigma||_2

  double excision_norm = 0.0;
  double support_overlap = 0.0;  // ||P_rho P_sigma||_2
  double trace_overlap = 0.0;
  double tol = kSingularTol;

  bool consistent() const {
    return excision_vanishes == supports_orthogonal && supports_orthogonal == trace_vanishes;
  }
};

struct AbsoluteContinuityDiagnostics {
  bool absolutely_continuous = false;  // rho << sigma
  double excision_min_eigenvalue = 0.0;
  double threshold = 0.0;  // rank_tol of sigma
  // ||R sigma R - rho||_max for R = rho_0 # sigma_0^{-1} on supp rho; only
  // computed when the excision is strictly positive.
  std::optional<double> witness_residual;
  bool witness_holds = false;
};

struct MutualContinuityDiagnostics {
  bool mutual = false;
  bool rho_ll_sigma = false;
  bool sigma_ll_rho = false;
  // sigma|supp rho > 0 and rank rho == rank sigma; must agree with `mutual`.
  bool rank_criterion = false;
};

SingularityDiagnostics is_singular(const PositiveOperator& rho, const PositiveOperator& sigma);
AbsoluteContinuityDiagnostics is_absolutely_continuous(const PositiveOperator& rho,
                                                       const PositiveOperator& sigma);
MutualContinuityDiagnostics is_mutually_ac(const PositiveOperator& rho,
                                           const PositiveOperator& sigma);

// Orthogonal splitting H = H1 + H2 + H3 with H1 = ker(sigma|supp rho),
// H2 = supp(sigma|supp rho), H3 = ker rho, and the blocks of rho and sigma in
// that basis:
// 
//   rho   = [[rho2, rho1, 0], [rho1^*, rho0, 0], [0, 0, 0]]
//   sigma = [[0, 0, 0], [0, sigma0, alpha], [0, alpha^*, beta]]
struct SupportSplit {
  ComplexMatrix basis_h1;
  ComplexMatrix basis_h2;
  ComplexMatrix basis_h3;

  ComplexMatrix rho2;
  ComplexMatrix rho1;
  ComplexMatrix rho0;
  ComplexMatrix sigma0;
  ComplexMatrix alpha;
  ComplexMatrix beta;

  // Unitary [h1 | h2 | h3].
  ComplexMatrix basis() const;
  // Reassembled rho and sigma in the ambient basis.
  ComplexMatrix rho_matrix() const;
  ComplexMatrix sigma_matrix() const;
};

SupportSplit support_split(const PositiveOperator& rho, const PositiveOperator& sigma);

enum class Route { Block, Direct };

std::string_view to_string(Route r);

struct LebesgueDecomposition {
  PositiveOperator sigma_ac;
  PositiveOperator sigma_sing;
  PositiveOperator witness_r;  // sigma_ac = R rho R
  Route route;
};

// Block-matrix route: sigma_ac = [[0,0,0],[0,sigma0,alpha],[0,alpha^*,alpha^* sigma0^{-1} alpha]].
LebesgueDecomposition lebesgue_decompose(const PositiveOperator& sigma, const PositiveOperator& rho);
// Closed form R = sqrt(sigma) (sqrt(sqrt(sigma) rho sqrt(sigma)))^+ sqrt(sigma).
LebesgueDecomposition lebesgue_decompose_direct(const PositiveOperator& sigma,
                                                const PositiveOperator& rho);

Json to_json(const LebesgueDecomposition& d);

struct QllrVersion {
  HermitianOperator l_matrix;
  std::string gamma_choice;
};

// A version of the log-likelihood ratio L(sigma|rho): Hermitian L with
// exp(L/2) rho exp(L/2) = sigma_ac. Needs rho << sigma.
// 
// L = 2 log(E^* (X + I) E) where X = sigma0 # rho0^{-1} acts on supp rho and
// the identity fills ker rho, so L(rho|rho) = 0.
QllrVersion qllr(const PositiveOperator& sigma, const PositiveOperator& rho);

// Smallest positive eigenvalue of rho: every state within this operator-norm
// distance of rho is absolutely continuous with respect to it.
double ac_ball_radius(const PositiveOperator& rho);

}  // namespace qleb
