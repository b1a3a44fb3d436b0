#pragma once

// Built-in parametric models and seeded random instances.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include "qleb/linalg.hpp"
#include "qleb/qlan.hpp"

namespace qleb {

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// exp((theta.sigma - psi)/2) |0><0| exp((theta.sigma - psi)/2), psi = log cosh |theta|.
ComplexMatrix spin_pure_state(const RealVector& theta);
// diag(0, 1), the state carrying the singular part.
ComplexMatrix spin_singular_state();

enum class FRule { Quartic, Cubic, Quadratic, Custom };

// f(theta) in the perturbed model. Quadratic violates f = o(|theta|^2) and
// serves as a negative control.
struct PerturbationRule {
  FRule kind = FRule::Quartic;
  std::function<double(const RealVector&)> custom;

  double operator()(const RealVector& theta) const;
  std::string name() const;
};

// e^{-f} rho_bar(theta) + (1 - e^{-f}) diag(0, 1).
ComplexMatrix spin_perturbed_state(const RealVector& theta, const PerturbationRule& f = {});

ParametricModel spin_pure_model();
ParametricModel spin_perturbed_model(const PerturbationRule& f = {});
// (I + theta sigma_z)/2, scalar theta.
ParametricModel qubit_fullrank_model();
// {"name", "dim", "theta_dim", "theta0", "points": [{"theta": [...], "state": M}]};
// states are looked up exactly, never interpolated.
ParametricModel table_model(const std::filesystem::path& path);

// "spin-pure", "spin-perturbed:quartic|cubic|quadratic", "qubit-fullrank", "table:PATH".
ParametricModel model_by_name(const std::string& name);

enum class PairMode {
  Generic,
  NearlySingular,     // Tr rho sigma = overlap with otherwise orthogonal supports
  NearRankDeficient,  // smallest kept eigenvalue 1e-8
  Orthogonal,
};

struct RandomPsdPairSpec {
  Index dim = 2;
  Index rank_rho = 2;
  Index rank_sigma = 2;
  std::uint64_t seed = 0;
  PairMode mode = PairMode::Generic;
  double overlap = 1e-9;
};

using OperatorPair = std::pair<PositiveOperator, PositiveOperator>;

OperatorPair random_psd_pair(const RandomPsdPairSpec& spec);

ComplexMatrix haar_unitary(Index dim, std::mt19937_64& rng);
ComplexVector random_unit_vector(Index dim, std::mt19937_64& rng);
// Random density operator of the given rank, eigenvalues uniform in [0.1, 1] before normalization.
ComplexMatrix random_density(Index dim, Index rank, std::mt19937_64& rng);
// Random Hermitian matrix with standard Gaussian entries.
ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng);

// (|psi><psi|, |xi><xi|) for unit psi, xi.
OperatorPair pure_pair(const ComplexVector& psi, const ComplexVector& xi);

}  // namespace qleb
