#pragma once

#include <Eigen/Core>

#include "graphcd/graph.hpp"

namespace graphcd {

/// Eigenpairs of S = M^{1/2} L M^{-1/2}, the symmetric conjugate of the
/// generator. Eigenvalues ascend and are all <= 0; the top one is 0.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd basis;  // orthonormal columns
  Eigen::VectorXd sqrt_measure;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// S_xy = mu_xy / sqrt(m(x) m(y)) off the diagonal, S_xx = L_xx.
Eigen::MatrixXd symmetrized_laplacian(const WeightedGraph& g);

SpectralDecomposition decompose(const WeightedGraph& g);

/// P_t f = M^{-1/2} U diag(exp(t lambda)) U^T M^{1/2} f. Throws for t < 0.
VertexFunction heat_apply(const SpectralDecomposition& sd, const WeightedGraph& g, double t,
                          const VertexFunction& f);

/// Dense P_t, mainly for tests and diagnostics.
Eigen::MatrixXd heat_matrix(const SpectralDecomposition& sd, double t);

}  // namespace graphcd
