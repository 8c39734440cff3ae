#include "covsel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covsel/errors.hpp"

namespace covsel {

namespace {

Eigen::LLT<Eigen::MatrixXd> factor_or_throw(const SymMatrix& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m.dense());
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << what << ": matrix of order " << m.n() << " is not positive definite";
    throw NotPositiveDefinite(msg.str());
  }
  return llt;
}

void check_bounds(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(alpha < beta) || std::isnan(beta)) {
    std::ostringstream msg;
    msg << "invalid spectral bounds [" << alpha << ", " << beta << "]";
    throw InvalidBounds(msg.str());
  }
}

}  // namespace

SymMatrix EigenDecomposition::recompose(const Eigen::VectorXd& values) const {
  return SymMatrix::from_symmetric(eigenvectors * values.asDiagonal() *
                                   eigenvectors.transpose());
}

EigenDecomposition sym_eig(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "symmetric eigensolver failed to converge on a matrix of order " << m.n();
    throw NumericalFailure(msg.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double chol_logdet(const SymMatrix& m) {
  const auto llt = factor_or_throw(m, "chol_logdet");
  const Eigen::MatrixXd& l = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

SymMatrix inverse_spd(const SymMatrix& m) {
  const auto llt = factor_or_throw(m, "inverse_spd");
  const auto n = static_cast<Eigen::Index>(m.n());
  return SymMatrix::from_symmetric(llt.solve(Eigen::MatrixXd::Identity(n, n)));
}

bool is_positive_definite(const SymMatrix& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m.dense());
  return llt.info() == Eigen::Success;
}

double spectral_norm(const SymMatrix& m) {
  if (m.n() == 0) return 0.0;
  const auto ed = sym_eig(m);
  return std::max(std::abs(ed.eigenvalues(0)),
                  std::abs(ed.eigenvalues(ed.eigenvalues.size() - 1)));
}

SymMatrix proj_spectral_box(const SymMatrix& m, double alpha, double beta) {
  check_bounds(alpha, beta);
  const auto ed = sym_eig(m);
  const Eigen::VectorXd& lam = ed.eigenvalues;
  if (lam.size() == 0 || (lam(0) >= alpha && lam(lam.size() - 1) <= beta)) return m;
  return ed.recompose(lam.cwiseMax(alpha).cwiseMin(beta));
}

SymMatrix logdet_linear_min(const SymMatrix& w, double c, double alpha,
                            double beta) {
  check_bounds(alpha, beta);
  if (!std::isfinite(beta)) throw InvalidBounds("logdet_linear_min needs a finite upper bound");
  if (!std::isfinite(c) || !(c > 0.0)) {
    std::ostringstream msg;
    msg << "logdet_linear_min: weight must be finite and positive, got " << c;
    throw NonFiniteInput(msg.str());
  }
  const auto ed = sym_eig(w);
  Eigen::VectorXd x(ed.eigenvalues.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double wi = ed.eigenvalues(i);
    x(i) = wi > 0.0 ? std::clamp(c / wi, alpha, beta) : beta;
  }
  return ed.recompose(x);
}

}  // namespace covsel
