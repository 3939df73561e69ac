#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphcd/graph.hpp"
#include "graphcd/operators.hpp"

namespace graphcd {

/// Dimension parameter n in (0, inf]. The only place n enters the algebra is
/// through 1/n, which is zero for the infinite dimension.
class Dimension {
 public:
  static Dimension infinite() { return Dimension(); }
  /// Throws PreconditionError unless n > 0. Passing +inf yields infinite().
  explicit Dimension(double n);

  bool is_infinite() const { return !(value_ < std::numeric_limits<double>::infinity()); }
  double value() const { return value_; }
  double inverse() const { return is_infinite() ? 0.0 : 1.0 / value_; }
  /// "inf" or the shortest round-trip decimal.
  std::string to_string() const;
  /// Accepts "inf", "infinity" or a positive real.
  static Dimension parse(const std::string& text);

 private:
  Dimension() : value_(std::numeric_limits<double>::infinity()) {}
  double value_;
};

struct CurvatureResult {
  VertexId vertex;
  Dimension dimension = Dimension::infinite();
  /// Largest K with Gamma2(f)(x) >= (1/n)(Lap f(x))^2 + K Gamma(f)(x) for all f.
  double kappa = 0.0;
  /// Minimizer supported on the 2-ball, zero at the center, Gamma(witness)(x) = 1.
  VertexFunction witness;
};

/// Pseudo-inverse rank cutoff relative to the largest singular value.
inline constexpr double kPinvRankTolerance = 1e-12;
/// Allowed negative eigenvalue of the sphere2 block of the Gamma2 form.
inline constexpr double kPsdTolerance = 1e-10;

/// Exact pointwise curvature via Schur complement and a symmetric pencil eigensolve.
CurvatureResult curvature_at(const WeightedGraph& g, VertexId x, Dimension n);

/// curvature_at for every vertex in id order.
std::vector<CurvatureResult> curvature_table(const WeightedGraph& g, Dimension n);

struct CdDecision {
  bool holds = false;
  /// kappa(x) - K in id order.
  std::vector<double> margins;
};

/// CD(K, n) holds iff min_x kappa(x; n) >= K - 1e-10.
CdDecision check_cd(const WeightedGraph& g, double K, Dimension n);

/// Independent reference for curvature_at on small balls (|B2(x)| <= 12).
///
/// Assembles the full Gamma2 form from globally evaluated operators and finds
/// the largest lambda with Q - lambda B positive semidefinite by bisection,
/// with no elimination of the sphere2 variables.
double curvature_oracle(const WeightedGraph& g, VertexId x, Dimension n);

/// Best Rayleigh quotient found by gradient descent from random starts.
/// Always an upper bound on kappa up to round-off.
double curvature_descent_estimate(const WeightedGraph& g, VertexId x, Dimension n, int starts,
                                  std::uint64_t seed);

/// Gamma2(f)(x) - Gamma(f, Gamma(f)/f)(x) - (1/n)(Lap f(x))^2 - K Gamma(f)(x).
/// Requires f > 0 on the 2-ball and Lap f(x) < 0.
double cde_residual(const WeightedGraph& g, const VertexFunction& f, VertexId x, double K,
                    Dimension n);

/// Random search for an admissible f with cde_residual < -1e-10.
/// Finding none proves nothing.
std::optional<VertexFunction> cde_falsify(const WeightedGraph& g, VertexId x, double K,
                                          Dimension n, int trials, std::uint64_t seed);

}  // namespace graphcd
