// Reference curvature computation, kept independent of local_forms() and the
// Schur-complement path in curvature.cpp.

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "graphcd/curvature.hpp"

namespace graphcd {

namespace {

constexpr std::size_t kMaxOracleBall = 12;

struct FullPencil {
  Eigen::MatrixXd q;  // Gamma2 form minus (1/n) d d^T, on B2(x) \ {x}
  Eigen::MatrixXd b;  // Gamma form extended by zeros
};

// Dense generator assembled straight from weights and measures.
Eigen::MatrixXd dense_generator(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd L(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      L(i, j) = i == j ? 0.0
                       : g.weight(VertexId(static_cast<std::size_t>(i)), VertexId(static_cast<std::size_t>(j))) /
                             g.measure(VertexId(static_cast<std::size_t>(i)));
    }
    L(i, i) = -L.row(i).sum();
  }
  return L;
}

FullPencil assemble(const WeightedGraph& g, VertexId x, Dimension n) {
  const Eigen::MatrixXd L = dense_generator(g);
  const auto xi = static_cast<Eigen::Index>(x.index());
  const auto N = L.rows();

  // Ball by reachability in the generator's sparsity pattern.
  std::vector<Eigen::Index> coords;
  std::vector<int> dist(static_cast<std::size_t>(N), -1);
  dist[static_cast<std::size_t>(xi)] = 0;
  for (int level = 0; level < 2; ++level) {
    for (Eigen::Index u = 0; u < N; ++u) {
      if (dist[static_cast<std::size_t>(u)] != level) continue;
      for (Eigen::Index v = 0; v < N; ++v) {
        if (v != u && L(u, v) > 0.0 && dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = level + 1;
        }
      }
    }
  }
  for (Eigen::Index v = 0; v < N; ++v) {
    if (dist[static_cast<std::size_t>(v)] > 0) coords.push_back(v);
  }
  if (coords.size() + 1 > kMaxOracleBall) {
    throw PreconditionError("curvature_oracle: 2-ball has more than 12 vertices");
  }
  if (coords.empty()) throw PreconditionError("curvature_oracle: isolated vertex");

  auto gam = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& h) -> Eigen::VectorXd {
    return 0.5 * (L * f.cwiseProduct(h) - f.cwiseProduct(L * h) - h.cwiseProduct(L * f));
  };
  auto gam2 = [&](const Eigen::VectorXd& f, const Eigen::VectorXd& h) -> Eigen::VectorXd {
    return 0.5 * (L * gam(f, h) - gam(f, L * h) - gam(h, L * f));
  };

  const auto k = static_cast<Eigen::Index>(coords.size());
  std::vector<Eigen::VectorXd> basis;
  for (auto c : coords) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e[c] = 1.0;
    basis.push_back(std::move(e));
  }
  FullPencil p;
  p.q.resize(k, k);
  p.b.resize(k, k);
  Eigen::VectorXd d(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& ei = basis[static_cast<std::size_t>(i)];
    d[i] = (L * ei)[xi];
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& ej = basis[static_cast<std::size_t>(j)];
      p.q(i, j) = gam2(ei, ej)[xi];
      p.b(i, j) = gam(ei, ej)[xi];
    }
  }
  p.q -= n.inverse() * d * d.transpose();
  p.q = 0.5 * (p.q + p.q.transpose()).eval();
  p.b = 0.5 * (p.b + p.b.transpose()).eval();
  return p;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("curvature_oracle: eigensolve failed");
  return es.eigenvalues()[0];
}

}  // namespace

double curvature_oracle(const WeightedGraph& g, VertexId x, Dimension n) {
  g.check_vertex(x);
  const FullPencil p = assemble(g, x, n);

  // Any coordinate with b_ii > 0 gives a Rayleigh quotient above kappa.
  double hi = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < p.b.rows(); ++i) {
    if (p.b(i, i) > 0.0) hi = std::min(hi, p.q(i, i) / p.b(i, i));
  }
  // Q - lambda B is positive definite for lambda far enough below kappa.
  double step = 1.0;
  double lo = hi - step;
  int expansions = 0;
  while (min_eigenvalue(p.q - lo * p.b) <= 0.0) {
    step *= 2.0;
    lo = hi - step;
    if (++expansions > 200) throw NumericalError("curvature_oracle: no lower bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_eigenvalue(p.q - mid * p.b) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double curvature_descent_estimate(const WeightedGraph& g, VertexId x, Dimension n, int starts,
                                  std::uint64_t seed) {
  g.check_vertex(x);
  const FullPencil p = assemble(g, x, n);
  const auto k = p.q.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto quotient = [&](const Eigen::VectorXd& f) { return f.dot(p.q * f) / f.dot(p.b * f); };

  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd f(k);
    for (Eigen::Index i = 0; i < k; ++i) f[i] = normal(rng);
    double denom = f.dot(p.b * f);
    if (!(denom > 1e-12)) continue;
    f /= std::sqrt(denom);
    double r = quotient(f);
    double step = 1.0;
    for (int it = 0; it < 20000; ++it) {
      // Gradient of the quotient at a point with f^T B f = 1.
      const Eigen::VectorXd grad = 2.0 * (p.q * f - r * (p.b * f));
      if (grad.norm() < 1e-13) break;
      bool moved = false;
      while (step > 1e-16) {
        Eigen::VectorXd trial = f - step * grad;
        const double td = trial.dot(p.b * trial);
        if (td > 1e-14) {
          trial /= std::sqrt(td);
          const double tr = quotient(trial);
          if (tr < r - 1e-4 * step * grad.squaredNorm()) {
            f = trial;
            r = tr;
            moved = true;
            step *= 2.0;
            break;
          }
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    best = std::min(best, r);
  }
  return best;
}

}  // namespace graphcd
