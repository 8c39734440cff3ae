#pragma once

#include <Eigen/Dense>

#include "covsel/sym_matrix.hpp"

namespace covsel {

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns

  /// V·diag(λ)·Vᵀ for replacement eigenvalues λ.
  SymMatrix recompose(const Eigen::VectorXd& values) const;
};

EigenDecomposition sym_eig(const SymMatrix& m);

/// log det M through a Cholesky factorization. Throws NotPositiveDefinite.
double chol_logdet(const SymMatrix& m);

SymMatrix inverse_spd(const SymMatrix& m);

bool is_positive_definite(const SymMatrix& m);

/// max |λᵢ(M)|
double spectral_norm(const SymMatrix& m);

/// Frobenius projection onto {X : αI ⪯ X ⪯ βI}. Returns M itself when its
/// spectrum already lies in [α, β].
SymMatrix proj_spectral_box(const SymMatrix& m, double alpha, double beta);

/// argmin over αI ⪯ X ⪯ βI of  −c·log det X + ⟨W, X⟩.
///
/// The minimizer shares eigenvectors with W; each eigenvalue w maps to
/// clamp(c/w, α, β) when w > 0 and to β otherwise.
SymMatrix logdet_linear_min(const SymMatrix& w, double c, double alpha,
                            double beta);

}  // namespace covsel
