#include "graphcd/quadrature.hpp"

#include "kernels.hpp"

namespace graphcd {

Eigen::VectorXd simpson(const VectorIntegrand& fn, double a, double b, int panels) {
  if (panels < 2 || panels % 2) throw PreconditionError("simpson needs an even panel count >= 2");
  return detail::SimpsonGrid<double, VectorIntegrand>(fn, a, b, panels).value();
}

QuadratureResult integrate(const VectorIntegrand& fn, double a, double b, const QuadratureSpec& spec) {
  auto r = detail::integrate<double>(fn, a, b, spec);
  return {std::move(r.value), r.error_estimate, r.panels};
}

}  // namespace graphcd
