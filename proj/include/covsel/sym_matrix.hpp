#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace covsel {

/// Dense real symmetric matrix with finite entries.
///
/// Construction from an arbitrary dense matrix symmetrizes via (M + Mᵀ)/2
/// when the asymmetry is within 1e-12 relative to max|M|, and rejects it
/// otherwise (AsymmetricInput). Non-finite entries raise NonFiniteInput.
/// Element writes go through set(), which writes both mirror positions.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix zeros(std::size_t n);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const Eigen::VectorXd& d);

  /// Wraps a matrix already known to be symmetric up to round-off (results of
  /// library kernels). Symmetrizes without the asymmetry check.
  static SymMatrix from_symmetric(Eigen::MatrixXd m);

  std::size_t n() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& dense() const { return m_; }

  void set(std::size_t i, std::size_t j, double v);

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

 private:
  Eigen::MatrixXd m_;
};

}  // namespace covsel
