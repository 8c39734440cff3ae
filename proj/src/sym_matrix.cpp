#include "covsel/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covsel/errors.hpp"
#include "covsel/kernels.hpp"
#include "eigen_span.hpp"

namespace covsel {

namespace {
constexpr double kAsymmetryTol = 1e-12;
}

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw InvalidArgument(msg.str());
  }
  if (!kernels::all_finite(detail::view(m))) {
    throw NonFiniteInput("matrix has non-finite entries");
  }
  const double scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  const double asym = m.size() > 0 ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  if (asym > kAsymmetryTol * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (max |M - M^T| = " << asym << ")";
    throw AsymmetricInput(msg.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::zeros(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return from_symmetric(Eigen::MatrixXd::Zero(k, k));
}

SymMatrix SymMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return from_symmetric(Eigen::MatrixXd::Identity(k, k));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

SymMatrix SymMatrix::from_symmetric(Eigen::MatrixXd m) {
  SymMatrix out;
  out.m_ = std::move(m);
  const Eigen::Index n = out.m_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = 0.5 * (out.m_(i, j) + out.m_(j, i));
      out.m_(i, j) = v;
      out.m_(j, i) = v;
    }
  }
  return out;
}

void SymMatrix::set(std::size_t i, std::size_t j, double v) {
  if (!std::isfinite(v)) throw NonFiniteInput("non-finite matrix entry");
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  m_(a, b) = v;
  m_(b, a) = v;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix out;
  out.m_ = a.m_ + b.m_;
  return out;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix out;
  out.m_ = a.m_ - b.m_;
  return out;
}

SymMatrix operator*(double s, const SymMatrix& a) {
  SymMatrix out;
  out.m_ = s * a.m_;
  return out;
}

}  // namespace covsel
