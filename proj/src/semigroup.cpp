#include "graphcd/semigroup.hpp"

#include <cmath>

#include "kernels.hpp"

namespace graphcd {

Eigen::MatrixXd symmetrized_laplacian(const WeightedGraph& g) { return detail::symmetrized_laplacian<double>(g); }

SpectralDecomposition decompose(const WeightedGraph& g) {
  auto sp = detail::spectrum<double>(g);
  return {std::move(sp.eigenvalues), std::move(sp.basis), std::move(sp.sqrt_measure)};
}

VertexFunction heat_apply(const SpectralDecomposition& sd, const WeightedGraph& g, double t,
                          const VertexFunction& f) {
  g.check_function(f);
  if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("heat_apply requires finite t >= 0");
  return detail::heat(sd.eigenvalues, sd.basis, sd.sqrt_measure, t, f);
}

Eigen::MatrixXd heat_matrix(const SpectralDecomposition& sd, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw PreconditionError("heat_matrix requires finite t >= 0");
  const Eigen::VectorXd decay = (t * sd.eigenvalues).array().exp();
  Eigen::MatrixXd sym = sd.basis * decay.asDiagonal() * sd.basis.transpose();
  return sd.sqrt_measure.cwiseInverse().asDiagonal() * sym * sd.sqrt_measure.asDiagonal();
}

}  // namespace graphcd
