#include "graphcd/operators.hpp"

#include <cmath>

#include "kernels.hpp"

namespace graphcd {

namespace {

using detail::idx;

void check_pair(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  g.check_function(f);
  g.check_function(h);
}

}  // namespace

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    VertexId x(static_cast<std::size_t>(i));
    const double m = g.measure(x);
    double diag = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      L(i, idx(nb.vertex)) = nb.weight / m;
      diag += nb.weight;
    }
    L(i, i) = -diag / m;
  }
  return L;
}

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& f) {
  g.check_function(f);
  return detail::laplacian(g, f);
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  check_pair(g, f, h);
  return detail::gamma(g, f, h);
}

VertexFunction gamma_by_composition(const WeightedGraph& g, const VertexFunction& f,
                                    const VertexFunction& h) {
  check_pair(g, f, h);
  VertexFunction fh = f.cwiseProduct(h);
  return 0.5 * (laplacian(g, fh) - f.cwiseProduct(laplacian(g, h)) - h.cwiseProduct(laplacian(g, f)));
}

VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  check_pair(g, f, h);
  return detail::gamma2(g, f, h);
}

double dirichlet_energy(const WeightedGraph& g, const VertexFunction& f) {
  g.check_function(f);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    for (const auto& nb : g.neighbors(VertexId(static_cast<std::size_t>(i)))) {
      const double diff = f[idx(nb.vertex)] - f[i];
      sum += nb.weight * diff * diff;
    }
  }
  return 0.5 * sum;
}

double green_identity_residual(const WeightedGraph& g, const VertexFunction& f,
                               const VertexFunction& h) {
  check_pair(g, f, h);
  const auto& m = g.measures();
  const double lhs = (f.cwiseProduct(laplacian(g, h))).dot(m);
  const double rhs = gamma(g, f, h).dot(m);
  return std::abs(lhs + rhs);
}

Eigen::VectorXd LocalForms::restrict(const VertexFunction& f) const {
  const double center = f[idx(ball.center)];
  Eigen::VectorXd local(sphere1_size() + sphere2_size());
  Eigen::Index k = 0;
  for (auto y : ball.sphere1) local[k++] = f[idx(y)] - center;
  for (auto z : ball.sphere2) local[k++] = f[idx(z)] - center;
  return local;
}

LocalForms local_forms(const WeightedGraph& g, VertexId x) {
  LocalForms forms;
  forms.ball = ball2(g, x);
  const auto& ball = forms.ball;

  // Work on extended coordinates with the center at slot 0, then drop it.
  const auto k1 = static_cast<Eigen::Index>(ball.sphere1.size());
  const auto dim = static_cast<Eigen::Index>(ball.size());
  auto slot = [&](VertexId v) -> Eigen::Index {
    if (v == x) return 0;
    return 1 + static_cast<Eigen::Index>(ball.index_map.at(v.index()));
  };

  auto unit_diff = [&](VertexId from, VertexId to) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[slot(to)] += 1.0;
    e[slot(from)] -= 1.0;
    return e;
  };

  // Quadratic form of Gamma(f)(y) for y in the closed 1-ball.
  auto gamma_at = [&](VertexId y) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(dim, dim);
    const double m = g.measure(y);
    for (const auto& nb : g.neighbors(y)) {
      Eigen::VectorXd e = unit_diff(y, nb.vertex);
      q.noalias() += (nb.weight / (2.0 * m)) * e * e.transpose();
    }
    return q;
  };

  // Linear functional f -> Lap f(y).
  auto laplacian_at = [&](VertexId y) {
    Eigen::VectorXd l = Eigen::VectorXd::Zero(dim);
    const double m = g.measure(y);
    for (const auto& nb : g.neighbors(y)) l += (nb.weight / m) * unit_diff(y, nb.vertex);
    return l;
  };

  const double mx = g.measure(x);
  const Eigen::MatrixXd gamma_x = gamma_at(x);
  const Eigen::VectorXd lap_x = laplacian_at(x);

  // Gamma2(f)(x) = 1/2 Lap Gamma(f)(x) - Gamma(f, Lap f)(x).
  Eigen::MatrixXd q2 = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& nb : g.neighbors(x)) {
    const double w = nb.weight / mx;
    q2 += 0.5 * w * (gamma_at(nb.vertex) - gamma_x);
    Eigen::VectorXd grad = unit_diff(x, nb.vertex);
    Eigen::VectorXd lap_grad = laplacian_at(nb.vertex) - lap_x;
    Eigen::MatrixXd outer = grad * lap_grad.transpose();
    q2 -= 0.5 * w * 0.5 * (outer + outer.transpose());
  }

  forms.gamma2_form = q2.bottomRightCorner(dim - 1, dim - 1);
  forms.gamma_form = gamma_x.block(1, 1, k1, k1);
  forms.delta_vector = lap_x.segment(1, k1);
  return forms;
}

}  // namespace graphcd
