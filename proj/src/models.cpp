#include "qleb/models.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "qleb/io.hpp"

namespace qleb {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kTinyEigenvalue = 1e-8;

double theta_norm(const RealVector& theta) {
  if (theta.size() != 2) throw Error(ErrorCode::DimensionMismatch, "spin models take a 2-vector");
  return std::hypot(theta(0), theta(1));
}

// Seeds uniform in [0.1, 1], normalized to unit trace.
RealVector seed_spectrum(Index rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  RealVector v(rank);
  for (Index i = 0; i < rank; ++i) v(i) = unif(rng);
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v / v.sum();
}

ComplexMatrix from_columns(const ComplexMatrix& u, const RealVector& values) {
  return u * values.cast<Complex>().asDiagonal() * u.adjoint();
}

PositiveOperator positive(const ComplexMatrix& m) {
  return PositiveOperator(HermitianOperator::symmetrized(m));
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

// exp(theta.sigma / 2)|0> = (cosh(r/2), sinh(r/2)(n1 + i n2)) and
// e^{-psi} = 1/cosh r, so the Bloch vector is (tanh r n1, tanh r n2, 1/cosh r).
// Written this way nothing overflows for large |theta|.
ComplexMatrix spin_pure_state(const RealVector& theta) {
  const double r = theta_norm(theta);
  const double t = r > 0.0 ? std::tanh(r) / r : 1.0;
  const double z = 1.0 / std::cosh(r);
  const double x = t * theta(0), y = t * theta(1);
  ComplexMatrix m(2, 2);
  m << 0.5 * (1.0 + z), 0.5 * Complex(x, -y), 0.5 * Complex(x, y), 0.5 * (1.0 - z);
  return m;
}

ComplexMatrix spin_singular_state() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 1) = 1.0;
  return m;
}

double PerturbationRule::operator()(const RealVector& theta) const {
  const double r = theta.norm();
  switch (kind) {
    case FRule::Quartic: return r * r * r * r;
    case FRule::Cubic: return r * r * r;
    case FRule::Quadratic: return r * r;
    case FRule::Custom:
      if (!custom) throw Error(ErrorCode::InvalidInput, "custom f rule has no function");
      return custom(theta);
  }
  return 0.0;
}

std::string PerturbationRule::name() const {
  switch (kind) {
    case FRule::Quartic: return "quartic";
    case FRule::Cubic: return "cubic";
    case FRule::Quadratic: return "quadratic";
    case FRule::Custom: return "custom";
  }
  return "unknown";
}

ComplexMatrix spin_perturbed_state(const RealVector& theta, const PerturbationRule& f) {
  const double fv = f(theta);
  if (!(fv >= 0.0) || !std::isfinite(fv)) {
    throw Error(ErrorCode::InvalidInput, "f(theta) must be finite and nonnegative");
  }
  return std::exp(-fv) * spin_pure_state(theta) - std::expm1(-fv) * spin_singular_state();
}

ParametricModel spin_pure_model() {
  return {"spin-pure", 2, 2, [](const RealVector& t) { return spin_pure_state(t); },
          RealVector::Zero(2)};
}

ParametricModel spin_perturbed_model(const PerturbationRule& f) {
  return {"spin-perturbed:" + f.name(), 2, 2,
          [f](const RealVector& t) { return spin_perturbed_state(t, f); }, RealVector::Zero(2)};
}

ParametricModel qubit_fullrank_model() {
  return {"qubit-fullrank", 2, 1,
          [](const RealVector& t) {
            if (t.size() != 1) throw Error(ErrorCode::DimensionMismatch, "qubit-fullrank takes a scalar");
            return ComplexMatrix(0.5 * (ComplexMatrix::Identity(2, 2) + t(0) * pauli_z()));
          },
          RealVector::Zero(1)};
}

ParametricModel table_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  try {
    ParametricModel m;
    m.name = j.value("name", "table:" + path.string());
    m.dim = j.at("dim").get<Index>();
    m.theta_dim = j.at("theta_dim").get<Index>();
    const auto t0 = j.at("theta0").get<std::vector<double>>();
    m.theta0 = Eigen::Map<const RealVector>(t0.data(), static_cast<Index>(t0.size()));
    if (m.dim <= 0 || m.theta_dim <= 0 || m.theta0.size() != m.theta_dim) {
      throw Error(ErrorCode::InvalidInput, "table model has inconsistent dimensions");
    }
    auto grid = std::make_shared<std::map<std::vector<double>, ComplexMatrix>>();
    for (const Json& p : j.at("points")) {
      const auto theta = p.at("theta").get<std::vector<double>>();
      if (static_cast<Index>(theta.size()) != m.theta_dim) {
        throw Error(ErrorCode::InvalidInput, "table point has the wrong theta dimension");
      }
      ComplexMatrix s = matrix_from_json(p.at("state"));
      if (s.rows() != m.dim) throw Error(ErrorCode::InvalidInput, "table state has the wrong dimension");
      (*grid)[theta] = std::move(s);
    }
    const std::string name = m.name;
    m.state_at = [grid, name](const RealVector& t) {
      const std::vector<double> key(t.data(), t.data() + t.size());
      const auto it = grid->find(key);
      if (it == grid->end()) {
        throw Error(ErrorCode::InvalidInput, name + ": theta is not a grid point");
      }
      return it->second;
    };
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
}

ParametricModel model_by_name(const std::string& name) {
  if (name == "spin-pure") return spin_pure_model();
  if (name == "spin-perturbed" || name == "spin-perturbed:quartic") {
    return spin_perturbed_model({FRule::Quartic, {}});
  }
  if (name == "spin-perturbed:cubic") return spin_perturbed_model({FRule::Cubic, {}});
  if (name == "spin-perturbed:quadratic") return spin_perturbed_model({FRule::Quadratic, {}});
  if (name == "qubit-fullrank") return qubit_fullrank_model();
  if (name.rfind("table:", 0) == 0) return table_model(name.substr(6));
  throw Error(ErrorCode::InvalidInput, "unknown model '" + name + "'");
}

ComplexMatrix haar_unitary(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index k = 0; k < dim; ++k) z(i, k) = Complex(normal(rng), normal(rng));
  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

ComplexVector random_unit_vector(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v.normalized();
}

ComplexMatrix random_density(Index dim, Index rank, std::mt19937_64& rng) {
  if (rank < 1 || rank > dim) throw Error(ErrorCode::InvalidRanks, "rank must lie in [1, dim]");
  const ComplexMatrix u = haar_unitary(dim, rng);
  return from_columns(u.leftCols(rank), seed_spectrum(rank, rng));
}

ComplexMatrix random_hermitian(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index k = 0; k < dim; ++k) a(i, k) = Complex(normal(rng), normal(rng));
  return HermitianOperator::symmetrized(a).matrix();
}

OperatorPair random_psd_pair(const RandomPsdPairSpec& spec) {
  const Index d = spec.dim;
  if (d < 1 || spec.rank_rho < 1 || spec.rank_sigma < 1 || spec.rank_rho > d ||
      spec.rank_sigma > d) {
    throw Error(ErrorCode::InvalidRanks, "ranks must lie in [1, dim]");
  }
  std::mt19937_64 rng(spec.seed);
  const Index rr = spec.rank_rho, rs = spec.rank_sigma;

  if (spec.mode == PairMode::Orthogonal || spec.mode == PairMode::NearlySingular) {
    if (rr + rs > d) throw Error(ErrorCode::InvalidRanks, "orthogonal supports need rank_rho + rank_sigma <= dim");
    const ComplexMatrix u = haar_unitary(d, rng);
    const RealVector lr = seed_spectrum(rr, rng);
    const RealVector ls = seed_spectrum(rs, rng);
    ComplexMatrix vs = u.middleCols(rr, rs);
    if (spec.mode == PairMode::NearlySingular) {
      // Tilt the top eigenvector of sigma toward that of rho so that
      // Tr rho sigma = lr(0) ls(0) sin^2 eps = overlap.
      const double s2 = spec.overlap / (lr(0) * ls(0));
      if (!(s2 >= 0.0 && s2 <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "overlap not reachable with these spectra");
      }
      const double s = std::sqrt(s2), c = std::sqrt(1.0 - s2);
      vs.col(0) = c * u.col(rr) + s * u.col(0);
    }
    return {positive(from_columns(u.leftCols(rr), lr)), positive(from_columns(vs, ls))};
  }

  const ComplexMatrix u = haar_unitary(d, rng);
  const ComplexMatrix v = haar_unitary(d, rng);
  RealVector lr = seed_spectrum(rr, rng);
  RealVector ls = seed_spectrum(rs, rng);
  if (spec.mode == PairMode::NearRankDeficient) {
    auto squeeze = [](RealVector& l) {
      const Index k = l.size();
      if (k < 2) return;
      l.head(k - 1) *= (1.0 - kTinyEigenvalue) / l.head(k - 1).sum();
      l(k - 1) = kTinyEigenvalue;
    };
    squeeze(lr);
    squeeze(ls);
  }
  return {positive(from_columns(u.leftCols(rr), lr)), positive(from_columns(v.leftCols(rs), ls))};
}

OperatorPair pure_pair(const ComplexVector& psi, const ComplexVector& xi) {
  if (psi.size() != xi.size()) throw Error(ErrorCode::DimensionMismatch, "vectors differ in length");
  if (std::abs(psi.norm() - 1.0) > kUnitTol || std::abs(xi.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::NotUnit, "pure_pair needs unit vectors");
  }
  return {positive(psi * psi.adjoint()), positive(xi * xi.adjoint())};
}

}  // namespace qleb
