#pragma once

#include <Eigen/Dense>
#include <span>

namespace covsel::detail {

inline std::span<const double> view(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

inline std::span<double> view(Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace covsel::detail
