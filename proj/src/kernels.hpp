#pragma once

// Scalar-generic building blocks. The public API instantiates them with
// double; the identity checks in verify use long double.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "graphcd/graph.hpp"
#include "graphcd/quadrature.hpp"

namespace graphcd::detail {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

inline Eigen::Index idx(VertexId x) { return static_cast<Eigen::Index>(x.index()); }

template <class S>
Vec<S> laplacian(const WeightedGraph& g, const Vec<S>& f) {
  Vec<S> out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const VertexId x(static_cast<std::size_t>(i));
    S sum = 0;
    for (const auto& nb : g.neighbors(x)) sum += S(nb.weight) * (f[idx(nb.vertex)] - f[i]);
    out[i] = sum / S(g.measure(x));
  }
  return out;
}

template <class S>
Vec<S> gamma(const WeightedGraph& g, const Vec<S>& f, const Vec<S>& h) {
  Vec<S> out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const VertexId x(static_cast<std::size_t>(i));
    S sum = 0;
    for (const auto& nb : g.neighbors(x)) {
      const auto j = idx(nb.vertex);
      sum += S(nb.weight) * (f[j] - f[i]) * (h[j] - h[i]);
    }
    out[i] = sum / (S(2) * S(g.measure(x)));
  }
  return out;
}

template <class S>
Vec<S> gamma2(const WeightedGraph& g, const Vec<S>& f, const Vec<S>& h) {
  return S(0.5) * (laplacian(g, gamma(g, f, h)) - gamma(g, f, laplacian(g, h)) - gamma(g, h, laplacian(g, f)));
}

template <class S>
Mat<S> symmetrized_laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Mat<S> s = Mat<S>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const VertexId x(static_cast<std::size_t>(i));
    S diag = 0;
    for (const auto& nb : g.neighbors(x)) {
      s(i, idx(nb.vertex)) = S(nb.weight) / std::sqrt(S(g.measure(x)) * S(g.measure(nb.vertex)));
      diag += S(nb.weight);
    }
    s(i, i) = -diag / S(g.measure(x));
  }
  return s;
}

template <class S>
struct Spectrum {
  Vec<S> eigenvalues;
  Mat<S> basis;
  Vec<S> sqrt_measure;
};

template <class S>
Spectrum<S> spectrum(const WeightedGraph& g) {
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(symmetrized_laplacian<S>(g));
  if (es.info() != Eigen::Success) throw NumericalError("heat semigroup eigensolve failed");
  Vec<S> m(static_cast<Eigen::Index>(g.vertex_count()));
  for (Eigen::Index i = 0; i < m.size(); ++i) m[i] = S(g.measure(VertexId(static_cast<std::size_t>(i))));
  return {es.eigenvalues(), es.eigenvectors(), m.cwiseSqrt()};
}

// Constants are returned untouched: they are fixed points of P_t and any
// rounding here would be amplified by exp(-2Kt) weights downstream.
template <class S>
Vec<S> heat(const Vec<S>& eigenvalues, const Mat<S>& basis, const Vec<S>& sqrt_measure, S t, const Vec<S>& f) {
  if (t == S(0) || f.size() == 0 || (f.array() == f[0]).all()) return f;
  const Vec<S> coeffs = basis.transpose() * sqrt_measure.cwiseProduct(f);
  const Vec<S> decayed = (t * eigenvalues).array().exp().matrix().cwiseProduct(coeffs);
  return (basis * decayed).cwiseQuotient(sqrt_measure);
}

template <class S>
Vec<S> heat(const Spectrum<S>& sp, S t, const Vec<S>& f) {
  return heat(sp.eigenvalues, sp.basis, sp.sqrt_measure, t, f);
}

// Running node sums of a composite Simpson rule, refined in place.
template <class S, class Fn>
class SimpsonGrid {
 public:
  SimpsonGrid(const Fn& fn, S a, S b, int panels) : fn_(fn), a_(a), b_(b), panels_(panels) {
    ends_ = fn_(a) + fn_(b);
    odd_ = Vec<S>::Zero(ends_.size());
    even_ = Vec<S>::Zero(ends_.size());
    const S h = step();
    for (int i = 1; i < panels_; ++i) (i % 2 ? odd_ : even_) += fn_(a_ + S(i) * h);
  }

  Vec<S> value() const { return step() / S(3) * (ends_ + S(4) * odd_ + S(2) * even_); }

  void refine() {
    even_ += odd_;
    odd_.setZero();
    panels_ *= 2;
    const S h = step();
    for (int i = 1; i < panels_; i += 2) odd_ += fn_(a_ + S(i) * h);
  }

  int panels() const { return panels_; }

 private:
  S step() const { return (b_ - a_) / S(panels_); }

  const Fn& fn_;
  S a_, b_;
  int panels_;
  Vec<S> ends_, odd_, even_;
};

template <class S>
struct Integral {
  Vec<S> value;
  S error_estimate = 0;
  int panels = 0;
};

template <class S, class Fn>
Integral<S> integrate(const Fn& fn, S a, S b, const QuadratureSpec& spec) {
  if (spec.panels < 1 || spec.max_panels < spec.panels) {
    throw PreconditionError("invalid quadrature panel settings");
  }
  SimpsonGrid<S, Fn> grid(fn, a, b, spec.panels + (spec.panels % 2));
  Vec<S> coarse = grid.value();
  for (;;) {
    grid.refine();
    Vec<S> fine = grid.value();
    const S estimate = (fine - coarse).cwiseAbs().maxCoeff() / S(15);
    const S scale = std::max(S(1), fine.size() ? fine.cwiseAbs().maxCoeff() : S(0));
    if (estimate <= S(spec.tolerance) * scale) return {std::move(fine), estimate, grid.panels()};
    if (grid.panels() * 2 > spec.max_panels) {
      throw QuadratureError("quadrature did not converge within " + std::to_string(spec.max_panels) +
                            " panels (estimate " + std::to_string(static_cast<double>(estimate)) + ")");
    }
    coarse = std::move(fine);
  }
}

// Romberg extrapolation of the trapezoid sequence on panels, 2 panels, ...
// Column 1 is composite Simpson; later columns remove further powers of h^2.
// The estimate is the change in the extrapolated value between levels.
template <class S, class Fn>
Integral<S> romberg(const Fn& fn, S a, S b, const QuadratureSpec& spec, S tolerance) {
  if (spec.panels < 1 || spec.max_panels < spec.panels) {
    throw PreconditionError("invalid quadrature panel settings");
  }
  constexpr std::size_t kColumns = 8;
  int panels = spec.panels;
  S h = (b - a) / S(panels);
  Vec<S> sum = S(0.5) * (fn(a) + fn(b));
  for (int i = 1; i < panels; ++i) sum += fn(a + S(i) * h);
  std::vector<Vec<S>> prev{h * sum};
  S estimate = -1;
  for (;;) {
    if (panels * 2 > spec.max_panels) {
      throw QuadratureError("quadrature did not converge within " + std::to_string(spec.max_panels) +
                            " panels (estimate " + std::to_string(static_cast<double>(estimate)) + ")");
    }
    panels *= 2;
    h /= S(2);
    for (int i = 1; i < panels; i += 2) sum += fn(a + S(i) * h);
    std::vector<Vec<S>> row{h * sum};
    const std::size_t width = std::min(prev.size() + 1, kColumns);
    S factor = 1;
    for (std::size_t j = 1; j < width; ++j) {
      factor *= S(4);
      row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - S(1)));
    }
    estimate = (row.back() - prev[std::min(prev.size(), row.size() - 1) - 1]).cwiseAbs().maxCoeff();
    const S scale = std::max(S(1), row.back().cwiseAbs().maxCoeff());
    if (row.size() > 2 && estimate <= tolerance * scale) return {row.back(), estimate, panels};
    prev = std::move(row);
  }
}

}  // namespace graphcd::detail
