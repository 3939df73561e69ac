#pragma once

#include <functional>

#include <Eigen/Core>

#include "graphcd/graph.hpp"

namespace graphcd {

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Composite Simpson settings. `panels` is the initial subinterval count
/// (rounded up to even); it is doubled until the Richardson estimate meets
/// `tolerance * max(1, |value|_inf)` or `max_panels` is reached.
struct QuadratureSpec {
  int panels = 256;
  int max_panels = 1 << 17;
  double tolerance = 1e-10;
};

struct QuadratureResult {
  Eigen::VectorXd value;
  /// |S_2N - S_N|_inf / 15
  double error_estimate = 0.0;
  int panels = 0;
};

using VectorIntegrand = std::function<Eigen::VectorXd(double)>;

/// Integrates a vector-valued function over [a, b]. Throws QuadratureError
/// when the budget is exhausted.
QuadratureResult integrate(const VectorIntegrand& fn, double a, double b, const QuadratureSpec& spec);

/// One fixed composite Simpson pass with `panels` subintervals (even).
Eigen::VectorXd simpson(const VectorIntegrand& fn, double a, double b, int panels);

}  // namespace graphcd
