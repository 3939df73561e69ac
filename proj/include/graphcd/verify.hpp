#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphcd/curvature.hpp"
#include "graphcd/graph.hpp"
#include "graphcd/quadrature.hpp"
#include "graphcd/semigroup.hpp"

namespace graphcd {

/// Semigroup statements that can be checked numerically.
enum class Check {
  gradient_estimate,
  variance_bound,
  cdn_bound,
  variance_identity,
  gamma2_identity,
  derivative_recovery,
};

std::string_view check_name(Check c);
/// Accepts the CLI spellings: gradient, variance, cdn, variance-identity, gamma2-identity.
std::optional<Check> parse_check(std::string_view text);
bool is_identity(Check c);

/// Both sides of a pointwise statement "lhs <= rhs" (or "lhs == rhs").
struct PointwiseCheck {
  VertexFunction lhs;
  VertexFunction rhs;
  /// rhs - lhs, taken before lhs and rhs are rounded to double.
  VertexFunction slack;
  double quadrature_error = 0.0;
};

/// Gamma(P_t f) <= exp(-2Kt) P_t Gamma(f).
PointwiseCheck gradient_estimate(const WeightedGraph& g, const SpectralDecomposition& sd,
                                 const VertexFunction& f, double K, double t);

/// P_t(f^2) - (P_t f)^2 <= c(K, t) P_t Gamma(f), c = (1 - exp(-2Kt))/K and 2t at K = 0.
PointwiseCheck variance_bound(const WeightedGraph& g, const SpectralDecomposition& sd,
                              const VertexFunction& f, double K, double t);

/// (1 - exp(-2Kt))/K with its continuous extension 2t at K = 0.
double variance_coefficient(double K, double t);

/// Gamma(P_t f) <= exp(-2Kt) P_t Gamma(f) - (2/n) int_0^t exp(-2Ks) P_s (Lap P_{t-s} f)^2 ds.
PointwiseCheck cdn_bound(const WeightedGraph& g, const SpectralDecomposition& sd,
                         const VertexFunction& f, double K, Dimension n, double t,
                         const QuadratureSpec& quad = {});

/// The two identities below are evaluated in long double from g itself, with
/// Romberg extrapolation of the Simpson sequence down to a relative tolerance
/// of min(quad.tolerance, 1e-17). Both sides reach 1e9 and more once
/// exp(-2Kt) is large. sd is accepted for symmetry and not consulted.

/// P_t(f^2) - (P_t f)^2 == 2 int_0^t P_s Gamma(P_{t-s} f) ds.
PointwiseCheck variance_identity(const WeightedGraph& g, const SpectralDecomposition& sd,
                                 const VertexFunction& f, double t, const QuadratureSpec& quad = {});

/// exp(-2Kt) P_t Gamma(f) - Gamma(P_t f)
///   == 2 int_0^t exp(-2Ks) P_s[(Gamma2 - K Gamma)(P_{t-s} f)] ds, for every real K.
PointwiseCheck gamma2_identity(const WeightedGraph& g, const SpectralDecomposition& sd,
                               const VertexFunction& f, double K, double t,
                               const QuadratureSpec& quad = {});

/// |lhs - rhs| of variance_identity.
VertexFunction variance_identity_residual(const WeightedGraph& g, const SpectralDecomposition& sd,
                                          const VertexFunction& f, double t,
                                          const QuadratureSpec& quad = {});
/// |lhs - rhs| of gamma2_identity.
VertexFunction gamma2_identity_residual(const WeightedGraph& g, const SpectralDecomposition& sd,
                                        const VertexFunction& f, double K, double t,
                                        const QuadratureSpec& quad = {});

struct DerivativeRecovery {
  /// Richardson-extrapolated d/dt at 0+ of [P_t Gamma(f) - Gamma(P_t f)](x).
  double derivative = 0.0;
  /// 2 Gamma2(f)(x)
  double expected = 0.0;
  double relative_error = 0.0;
};

DerivativeRecovery derivative_recovery(const WeightedGraph& g, const SpectralDecomposition& sd,
                                       const VertexFunction& f, VertexId x);
/// Uses the curvature witness at x for dimension n.
DerivativeRecovery derivative_recovery(const WeightedGraph& g, const SpectralDecomposition& sd,
                                       VertexId x, Dimension n);

struct TestFunction {
  std::string id;
  VertexFunction values;
};

std::vector<TestFunction> indicator_functions(const WeightedGraph& g);
std::vector<TestFunction> witness_functions(const WeightedGraph& g, Dimension n);
/// Seeded standard-normal functions.
std::vector<TestFunction> random_functions(const WeightedGraph& g, std::uint64_t seed, int count);
TestFunction constant_function(const WeightedGraph& g, double value = 1.0);
/// Indicators, witnesses, 50 random functions and the constant function.
std::vector<TestFunction> default_corpus(const WeightedGraph& g, Dimension n, std::uint64_t seed = 0);

/// count points spaced geometrically in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

/// Minimum over vertices of kappa(x; n).
double min_curvature(const WeightedGraph& g, Dimension n);

struct ReportRecord {
  std::string function;
  double t = 0.0;
  VertexId vertex;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;

  /// Identities need |slack| <= tolerance, inequalities slack >= -tolerance.
  bool violates(bool identity) const;
};

struct VerificationReport {
  Check check = Check::gradient_estimate;
  double K = 0.0;
  Dimension n = Dimension::infinite();
  /// Sorted by (function, t, vertex).
  std::vector<ReportRecord> records;
  double min_slack = 0.0;
  double quadrature_error_estimate = 0.0;

  bool passed() const;
  std::vector<ReportRecord> violations() const;
};

/// Tolerance for inequality checks without quadrature.
inline constexpr double kInequalityTolerance = 1e-9;
/// Floor for checks whose right-hand side involves quadrature.
inline constexpr double kQuadratureTolerance = 1e-8;

/// Evaluates `check` over every (function, t, vertex). K is ignored by
/// variance_identity; n is used by cdn_bound only. derivative_recovery is
/// not a grid check and is rejected here.
VerificationReport run_verification(const WeightedGraph& g, const SpectralDecomposition& sd,
                                    Check check, double K, Dimension n,
                                    const std::vector<TestFunction>& functions,
                                    const std::vector<double>& times, const QuadratureSpec& quad = {});

}  // namespace graphcd
