#pragma once
// Shared helpers for the test binaries: seeded random instances.

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "covsel/model.hpp"
#include "covsel/sym_matrix.hpp"

namespace covsel::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline SymMatrix random_symmetric(std::size_t n, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = uniform(rng, -scale, scale);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return SymMatrix(m);
}

/// Q·diag(λ)·Qᵀ with Q a random orthogonal matrix and λ uniform in [lo, hi].
inline SymMatrix random_spd(std::size_t n, Rng& rng, double lo = 0.5, double hi = 2.0) {
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = uniform(rng, -1, 1);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd lam(n);
  for (std::size_t i = 0; i < n; ++i) lam(i) = uniform(rng, lo, hi);
  return SymMatrix::from_symmetric(q * lam.asDiagonal() * q.transpose());
}

/// Sample covariance of m Gaussian draws with a random SPD covariance.
inline SymMatrix random_sample_cov(std::size_t n, std::size_t m, Rng& rng) {
  const SymMatrix c = random_spd(n, rng, 0.3, 3.0);
  Eigen::LLT<Eigen::MatrixXd> llt(c.dense());
  const Eigen::MatrixXd l = llt.matrixL();
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd z(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) z(i) = gauss(rng);
    const Eigen::VectorXd x = l * z;
    s += x * x.transpose();
  }
  return SymMatrix::from_symmetric(s / static_cast<double>(m));
}

}  // namespace covsel::test
