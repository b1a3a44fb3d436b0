#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qleb/gaussian.hpp"
#include "qleb/qlan.hpp"
#include "test_support.hpp"

using namespace qleb;
using namespace qleb::test;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix spin_j() {
  ComplexMatrix j(2, 2);
  j << 1.0, -I, I, 1.0;
  return j;
}

ComplexVector cvec(std::initializer_list<Complex> v) {
  ComplexVector x(static_cast<Index>(v.size()));
  Index i = 0;
  for (Complex c : v) x(i++) = c;
  return x;
}

RealVector rvec(std::initializer_list<double> v) {
  RealVector x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double c : v) x(i++) = c;
  return x;
}

// mpmath, 20 digits.
const Complex kShiftValue(0.32770991402245983191, 0.51037795154457280535);   // e^{i - 1/2}
const Complex kCrossValue(0.19876611034641294063, -0.30955987565311219844);  // e^{-1 - i}

}  // namespace

TEST_CASE("GaussianSpec validation") {
  const GaussianSpec g(rvec({0, 0}), spin_j());
  CHECK(g.dim() == 2);
  CHECK(g.v_matrix() == Eigen::MatrixXd::Identity(2, 2));
  CHECK(g.s_matrix()(0, 1) == -1.0);
  CHECK(g.s_matrix()(1, 0) == 1.0);
  CHECK_THROWS_AS(GaussianSpec(rvec({0, 0}), ComplexMatrix::Identity(3, 3)), Error);
  CHECK_THROWS_AS(GaussianSpec(rvec({0, 0}), -ComplexMatrix::Identity(2, 2)), Error);
  CHECK_THROWS_AS(GaussianSpec(rvec({0, 0}), ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("char_fn examples") {
  const GaussianSpec std2(rvec({0, 0}), ComplexMatrix::Identity(2, 2));
  CHECK(char_fn(std2, rvec({0, 0})) == Complex(1.0, 0.0));
  CHECK(std::abs(char_fn(std2, rvec({1, 0})) - std::exp(-0.5)) < 1e-15);
  const GaussianSpec shifted(rvec({1, 0}), ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(char_fn(shifted, rvec({1, 0})) - kShiftValue) < 1e-15);
  try {
    char_fn(std2, rvec({1, 0, 0}));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("qcf examples") {
  const GaussianSpec g(rvec({0.4, -0.2}), spin_j());
  const RealVector xi = rvec({0.7, -1.3});
  // Same arithmetic path: exact equality.
  CHECK(qcf(g, {xi.cast<Complex>()}) == char_fn(g, xi));

  const GaussianSpec c(rvec({0, 0}), spin_j());
  const Complex doubled = qcf(c, {xi.cast<Complex>(), xi.cast<Complex>()});
  CHECK(std::abs(doubled - std::exp(-2.0 * xi.squaredNorm())) < 1e-15);
  CHECK(std::abs(doubled - char_fn(c, 2.0 * xi)) < 1e-15);

  const Complex cross = qcf(c, {cvec({1, 0}), cvec({0, 1})});
  CHECK(std::abs(cross - kCrossValue) < 1e-15);

  try {
    qcf(c, {cvec({1, 0, 0})});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  CHECK_THROWS_AS(qcf(c, {}), Error);
}

TEST_CASE("qcf matches the finite-n collective expectation at n = 2000") {
  const ComplexMatrix rho0 = diag({1, 0});
  const Complex finite =
      collective_qcf_factorized(rho0, {pauli_x(), pauli_y()}, {cvec({1, 0}), cvec({0, 1})}, 2000);
  const Complex limit = qcf(GaussianSpec(rvec({0, 0}), spin_j()), {cvec({1, 0}), cvec({0, 1})});
  CHECK(std::abs(finite - limit) <= 2e-3);
}

TEST_CASE("lecam_limit_spec examples") {
  const RealVector h = rvec({0.3, 0.1});
  const GaussianSpec zero = lecam_limit_spec(spin_j(), spin_j(), rvec({0, 0}));
  CHECK(zero.mean().isZero(0.0));
  const GaussianSpec shifted = lecam_limit_spec(spin_j(), spin_j(), h);
  CHECK((shifted.mean() - h).norm() == 0.0);
  CHECK(shifted.j_matrix() == spin_j());
  const GaussianSpec imag = lecam_limit_spec(spin_j(), I * ComplexMatrix::Identity(2, 2), h);
  CHECK(imag.mean().isZero(0.0));
  CHECK_THROWS_AS(lecam_limit_spec(spin_j(), ComplexMatrix::Identity(3, 3), h), Error);
  CHECK_THROWS_AS(lecam_limit_spec(spin_j(), ComplexMatrix::Identity(2, 2), rvec({1, 2, 3})), Error);
}

TEST_CASE("qcf properties on random specs") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 1 + trial % 4;
    const ComplexMatrix a = random_complex(d, rng);
    const ComplexMatrix j = a * a.adjoint();
    RealVector h(d);
    for (Index i = 0; i < d; ++i) h(i) = n(rng);
    const GaussianSpec g(h, j);
    const GaussianSpec g0(RealVector::Zero(d), j);

    QcfQuery q;
    const int s = 1 + trial % 4;
    for (int t = 0; t < s; ++t) {
      RealVector x(d);
      for (Index i = 0; i < d; ++i) x(i) = 0.5 * n(rng);
      q.push_back(x.cast<Complex>());
    }

    QcfQuery zeros(static_cast<std::size_t>(s), ComplexVector::Zero(d));
    CHECK(qcf(g, zeros) == Complex(1.0, 0.0));

    // Reverse and negate: complex conjugate when h = 0.
    QcfQuery rev;
    for (auto it = q.rbegin(); it != q.rend(); ++it) rev.push_back(-*it);
    CHECK(std::abs(qcf(g0, rev) - std::conj(qcf(g0, q))) <= 1e-12 * std::max(1.0, std::abs(qcf(g0, q))));

    // Inserting a zero vector anywhere leaves the value unchanged.
    QcfQuery padded = q;
    padded.insert(padded.begin() + static_cast<long>(trial % (s + 1)), ComplexVector::Zero(d));
    CHECK(std::abs(qcf(g, padded) - qcf(g, q)) <= 1e-14 * std::max(1.0, std::abs(qcf(g, q))));

    CHECK(qcf(g, {q[0]}) == char_fn(g, q[0].real()));
  }
}

TEST_CASE("index convention: the cross term uses J_ji") {
  // xi_1 = e_1, xi_2 = e_2 picks J_21 in the cross term; transposing J flips its sign here.
  const GaussianSpec g(rvec({0, 0}), spin_j());
  const GaussianSpec gt(rvec({0, 0}), spin_j().transpose());
  CHECK(std::abs(qcf(g, {cvec({1, 0}), cvec({0, 1})}) - std::exp(Complex(-1.0, -1.0))) < 1e-15);
  CHECK(std::abs(qcf(gt, {cvec({1, 0}), cvec({0, 1})}) - std::exp(Complex(-1.0, 1.0))) < 1e-15);
}

TEST_CASE("complex query mean term is not conjugated") {
  const GaussianSpec g(rvec({1.0}), ComplexMatrix::Zero(1, 1));
  CHECK(std::abs(qcf(g, {cvec({I})}) - std::exp(I * I)) < 1e-15);
}

TEST_CASE("json shape") {
  const Json j = to_json(GaussianSpec(rvec({0.3, 0.1}), spin_j()));
  CHECK(j.at("dim") == 2);
  CHECK(j.at("mean").size() == 2);
  CHECK(j.at("j").at("dim") == 2);
}
