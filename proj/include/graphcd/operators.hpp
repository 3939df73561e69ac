#pragma once

#include <Eigen/Core>

#include "graphcd/graph.hpp"

namespace graphcd {

/// Dense generator L with L_xy = mu_xy / m(x) for y != x and zero row sums.
Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g);

/// (Lap f)(x) = (1/m(x)) sum_y mu_xy (f(y) - f(x)).
VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& f);

/// Carre du champ, local sum (1/2m(x)) sum_y mu_xy (f(y)-f(x))(h(y)-h(x)).
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
inline VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f) { return gamma(g, f, f); }

/// Carre du champ through its defining composition 1/2 (Lap(fh) - f Lap h - h Lap f).
VertexFunction gamma_by_composition(const WeightedGraph& g, const VertexFunction& f,
                                    const VertexFunction& h);

/// Iterated carre du champ 1/2 (Lap Gamma(f,h) - Gamma(f, Lap h) - Gamma(h, Lap f)).
VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
inline VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f) { return gamma2(g, f, f); }

/// Q(f) = 1/2 sum_{x,y} mu_xy (f(y) - f(x))^2.
double dirichlet_energy(const WeightedGraph& g, const VertexFunction& f);

/// |sum_x f Lap h m + sum_x Gamma(f,h) m|, zero up to round-off on any finite graph.
double green_identity_residual(const WeightedGraph& g, const VertexFunction& f,
                               const VertexFunction& h);

/// Quadratic forms of Gamma(.)(x), Gamma2(.)(x) and the functional Lap(.)(x)
/// with f(x) pinned to zero.
///
/// Coordinates are the ball's sphere1 vertices followed by its sphere2
/// vertices, both ascending. `gamma_form` and `delta_vector` live on sphere1
/// only; `gamma2_form` spans both spheres.
struct LocalForms {
  Ball ball;
  Eigen::MatrixXd gamma_form;
  Eigen::MatrixXd gamma2_form;
  Eigen::VectorXd delta_vector;

  Eigen::Index sphere1_size() const { return static_cast<Eigen::Index>(ball.sphere1.size()); }
  Eigen::Index sphere2_size() const { return static_cast<Eigen::Index>(ball.sphere2.size()); }
  /// Local coordinates of f (f(x) subtracted so the center is pinned).
  Eigen::VectorXd restrict(const VertexFunction& f) const;
};

LocalForms local_forms(const WeightedGraph& g, VertexId x);

}  // namespace graphcd
