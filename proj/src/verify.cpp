#include "graphcd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <tuple>

#include "graphcd/operators.hpp"
#include "kernels.hpp"

namespace graphcd {

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("verification time must be finite and > 0");
}

VertexFunction heat(const SpectralDecomposition& sd, const WeightedGraph& g, double t,
                    const VertexFunction& f) {
  return heat_apply(sd, g, t, f);
}

using Extended = long double;
using ExtendedVector = detail::Vec<Extended>;

ExtendedVector widen(const VertexFunction& f) { return f.cast<Extended>(); }
VertexFunction narrow(const ExtendedVector& f) { return f.cast<double>(); }

Extended identity_tolerance(const QuadratureSpec& quad) {
  return std::min<Extended>(quad.tolerance, 1e-17L);
}

PointwiseCheck finish(const ExtendedVector& lhs, const ExtendedVector& rhs, Extended quadrature_error) {
  PointwiseCheck out;
  out.lhs = narrow(lhs);
  out.rhs = narrow(rhs);
  out.slack = narrow(rhs - lhs);
  out.quadrature_error = static_cast<double>(quadrature_error);
  return out;
}

std::string padded(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", i);
  return buf;
}

}  // namespace

std::string_view check_name(Check c) {
  switch (c) {
    case Check::gradient_estimate: return "gradient_estimate";
    case Check::variance_bound: return "variance_bound";
    case Check::cdn_bound: return "cdn_bound";
    case Check::variance_identity: return "variance_identity";
    case Check::gamma2_identity: return "gamma2_identity";
    case Check::derivative_recovery: return "derivative_recovery";
  }
  return "unknown";
}

std::optional<Check> parse_check(std::string_view text) {
  if (text == "gradient") return Check::gradient_estimate;
  if (text == "variance") return Check::variance_bound;
  if (text == "cdn") return Check::cdn_bound;
  if (text == "variance-identity") return Check::variance_identity;
  if (text == "gamma2-identity") return Check::gamma2_identity;
  return std::nullopt;
}

bool is_identity(Check c) { return c == Check::variance_identity || c == Check::gamma2_identity; }

PointwiseCheck gradient_estimate(const WeightedGraph& g, const SpectralDecomposition& sd,
                                 const VertexFunction& f, double K, double t) {
  check_time(t);
  PointwiseCheck out;
  out.lhs = gamma(g, heat(sd, g, t, f));
  out.rhs = std::exp(-2.0 * K * t) * heat(sd, g, t, gamma(g, f));
  out.slack = out.rhs - out.lhs;
  return out;
}

double variance_coefficient(double K, double t) {
  if (K == 0.0) return 2.0 * t;
  return -std::expm1(-2.0 * K * t) / K;
}

PointwiseCheck variance_bound(const WeightedGraph& g, const SpectralDecomposition& sd,
                              const VertexFunction& f, double K, double t) {
  check_time(t);
  const VertexFunction pf = heat(sd, g, t, f);
  PointwiseCheck out;
  out.lhs = heat(sd, g, t, f.cwiseProduct(f)) - pf.cwiseProduct(pf);
  out.rhs = variance_coefficient(K, t) * heat(sd, g, t, gamma(g, f));
  out.slack = out.rhs - out.lhs;
  return out;
}

PointwiseCheck cdn_bound(const WeightedGraph& g, const SpectralDecomposition& sd,
                         const VertexFunction& f, double K, Dimension n, double t,
                         const QuadratureSpec& quad) {
  check_time(t);
  PointwiseCheck out;
  out.lhs = gamma(g, heat(sd, g, t, f));
  out.rhs = std::exp(-2.0 * K * t) * heat(sd, g, t, gamma(g, f));
  if (!n.is_infinite()) {
    auto integrand = [&](double s) -> Eigen::VectorXd {
      const VertexFunction lap = laplacian(g, heat(sd, g, t - s, f));
      return std::exp(-2.0 * K * s) * heat(sd, g, s, lap.cwiseProduct(lap));
    };
    const QuadratureResult q = integrate(integrand, 0.0, t, quad);
    out.rhs -= (2.0 * n.inverse()) * q.value;
    out.quadrature_error = 2.0 * n.inverse() * q.error_estimate;
  }
  out.slack = out.rhs - out.lhs;
  return out;
}

PointwiseCheck variance_identity(const WeightedGraph& g, const SpectralDecomposition&,
                                 const VertexFunction& f, double t, const QuadratureSpec& quad) {
  check_time(t);
  g.check_function(f);
  const auto sp = detail::spectrum<Extended>(g);
  const ExtendedVector fx = widen(f);
  const Extended tx = t;
  auto integrand = [&](Extended s) -> ExtendedVector {
    const ExtendedVector u = detail::heat(sp, tx - s, fx);
    return detail::heat(sp, s, detail::gamma(g, u, u));
  };
  const auto q = detail::romberg<Extended>(integrand, Extended(0), tx, quad, identity_tolerance(quad));
  const ExtendedVector pf = detail::heat(sp, tx, fx);
  const ExtendedVector lhs = detail::heat(sp, tx, ExtendedVector(fx.cwiseProduct(fx))) - pf.cwiseProduct(pf);
  return finish(lhs, Extended(2) * q.value, Extended(2) * q.error_estimate);
}

PointwiseCheck gamma2_identity(const WeightedGraph& g, const SpectralDecomposition&,
                               const VertexFunction& f, double K, double t,
                               const QuadratureSpec& quad) {
  check_time(t);
  g.check_function(f);
  const auto sp = detail::spectrum<Extended>(g);
  const ExtendedVector fx = widen(f);
  const Extended tx = t;
  const Extended kx = K;
  auto integrand = [&](Extended s) -> ExtendedVector {
    const ExtendedVector u = detail::heat(sp, tx - s, fx);
    const ExtendedVector defect = detail::gamma2(g, u, u) - kx * detail::gamma(g, u, u);
    return std::exp(-2 * kx * s) * detail::heat(sp, s, defect);
  };
  const auto q = detail::romberg<Extended>(integrand, Extended(0), tx, quad, identity_tolerance(quad));
  const ExtendedVector pf = detail::heat(sp, tx, fx);
  const ExtendedVector lhs =
      std::exp(-2 * kx * tx) * detail::heat(sp, tx, detail::gamma(g, fx, fx)) - detail::gamma(g, pf, pf);
  return finish(lhs, Extended(2) * q.value, Extended(2) * q.error_estimate);
}

VertexFunction variance_identity_residual(const WeightedGraph& g, const SpectralDecomposition& sd,
                                          const VertexFunction& f, double t,
                                          const QuadratureSpec& quad) {
  return variance_identity(g, sd, f, t, quad).slack.cwiseAbs();
}

VertexFunction gamma2_identity_residual(const WeightedGraph& g, const SpectralDecomposition& sd,
                                        const VertexFunction& f, double K, double t,
                                        const QuadratureSpec& quad) {
  return gamma2_identity(g, sd, f, K, t, quad).slack.cwiseAbs();
}

DerivativeRecovery derivative_recovery(const WeightedGraph& g, const SpectralDecomposition& sd,
                                       const VertexFunction& f, VertexId x) {
  g.check_vertex(x);
  g.check_function(f);
  const auto xi = static_cast<Eigen::Index>(x.index());
  const VertexFunction gf = gamma(g, f);
  auto quotient = [&](double h) {
    const double phi = heat(sd, g, h, gf)[xi] - gamma(g, heat(sd, g, h, f))[xi];
    return phi / h;
  };

  // Forward difference quotients have an expansion in integer powers of h.
  const double rate = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
  constexpr int kLevels = 8;
  double h = 0.1 / rate;
  std::vector<std::vector<double>> table(kLevels);
  for (int k = 0; k < kLevels; ++k, h *= 0.5) {
    table[static_cast<std::size_t>(k)].push_back(quotient(h));
    for (int j = 1; j <= k; ++j) {
      const double factor = std::ldexp(1.0, j) - 1.0;
      const auto& row = table[static_cast<std::size_t>(k)];
      const auto& prev = table[static_cast<std::size_t>(k - 1)];
      table[static_cast<std::size_t>(k)].push_back(row[static_cast<std::size_t>(j - 1)] +
                                                   (row[static_cast<std::size_t>(j - 1)] -
                                                    prev[static_cast<std::size_t>(j - 1)]) /
                                                       factor);
    }
  }
  DerivativeRecovery out;
  out.derivative = table.back().back();
  out.expected = 2.0 * gamma2(g, f)[xi];
  const double diff = std::abs(out.derivative - out.expected);
  out.relative_error = diff == 0.0 ? 0.0 : diff / std::max(std::abs(out.expected), 1e-12);
  return out;
}

DerivativeRecovery derivative_recovery(const WeightedGraph& g, const SpectralDecomposition& sd,
                                       VertexId x, Dimension n) {
  return derivative_recovery(g, sd, curvature_at(g, x, n).witness, x);
}

std::vector<TestFunction> indicator_functions(const WeightedGraph& g) {
  std::vector<TestFunction> out;
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    VertexFunction f = VertexFunction::Zero(n);
    f[static_cast<Eigen::Index>(i)] = 1.0;
    out.push_back({"indicator:" + g.label(VertexId(i)), std::move(f)});
  }
  return out;
}

std::vector<TestFunction> witness_functions(const WeightedGraph& g, Dimension n) {
  std::vector<TestFunction> out;
  for (auto& r : curvature_table(g, n)) {
    out.push_back({"witness:" + g.label(r.vertex), std::move(r.witness)});
  }
  return out;
}

std::vector<TestFunction> random_functions(const WeightedGraph& g, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<TestFunction> out;
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  for (int i = 0; i < count; ++i) {
    VertexFunction f(n);
    for (Eigen::Index k = 0; k < n; ++k) f[k] = normal(rng);
    out.push_back({"random:" + std::to_string(seed) + ":" + padded(i), std::move(f)});
  }
  return out;
}

TestFunction constant_function(const WeightedGraph& g, double value) {
  return {"constant", VertexFunction::Constant(static_cast<Eigen::Index>(g.vertex_count()), value)};
}

std::vector<TestFunction> default_corpus(const WeightedGraph& g, Dimension n, std::uint64_t seed) {
  auto out = indicator_functions(g);
  for (auto& f : witness_functions(g, n)) out.push_back(std::move(f));
  for (auto& f : random_functions(g, seed, 50)) out.push_back(std::move(f));
  out.push_back(constant_function(g));
  return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw PreconditionError("invalid log grid");
  if (count == 1) return {lo};
  std::vector<double> out;
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(ratio * i));
  out.back() = hi;
  return out;
}

double min_curvature(const WeightedGraph& g, Dimension n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    best = std::min(best, curvature_at(g, VertexId(i), n).kappa);
  }
  return best;
}

bool ReportRecord::violates(bool identity) const {
  return identity ? !(std::abs(slack) <= tolerance) : !(slack >= -tolerance);
}

bool VerificationReport::passed() const {
  const bool identity = is_identity(check);
  return std::none_of(records.begin(), records.end(),
                      [&](const ReportRecord& r) { return r.violates(identity); });
}

std::vector<ReportRecord> VerificationReport::violations() const {
  std::vector<ReportRecord> out;
  const bool identity = is_identity(check);
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const ReportRecord& r) { return r.violates(identity); });
  return out;
}

VerificationReport run_verification(const WeightedGraph& g, const SpectralDecomposition& sd,
                                    Check check, double K, Dimension n,
                                    const std::vector<TestFunction>& functions,
                                    const std::vector<double>& times, const QuadratureSpec& quad) {
  if (check == Check::derivative_recovery) {
    throw PreconditionError("derivative_recovery is not a grid check");
  }
  VerificationReport report;
  report.check = check;
  report.K = K;
  report.n = n;
  for (const auto& fn : functions) {
    g.check_function(fn.values);
    for (double t : times) {
      PointwiseCheck pc;
      switch (check) {
        case Check::gradient_estimate: pc = gradient_estimate(g, sd, fn.values, K, t); break;
        case Check::variance_bound: pc = variance_bound(g, sd, fn.values, K, t); break;
        case Check::cdn_bound: pc = cdn_bound(g, sd, fn.values, K, n, t, quad); break;
        case Check::variance_identity: pc = variance_identity(g, sd, fn.values, t, quad); break;
        case Check::gamma2_identity: pc = gamma2_identity(g, sd, fn.values, K, t, quad); break;
        case Check::derivative_recovery: break;
      }
      const bool uses_quadrature = check != Check::gradient_estimate && check != Check::variance_bound;
      const double tol = uses_quadrature ? std::max(kQuadratureTolerance, pc.quadrature_error)
                                         : kInequalityTolerance;
      report.quadrature_error_estimate = std::max(report.quadrature_error_estimate, pc.quadrature_error);
      for (Eigen::Index i = 0; i < pc.lhs.size(); ++i) {
        ReportRecord r;
        r.function = fn.id;
        r.t = t;
        r.vertex = VertexId(static_cast<std::size_t>(i));
        r.lhs = pc.lhs[i];
        r.rhs = pc.rhs[i];
        r.slack = pc.slack[i];
        r.tolerance = tol;
        report.records.push_back(std::move(r));
      }
    }
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const ReportRecord& a, const ReportRecord& b) {
                     return std::tie(a.function, a.t, a.vertex) < std::tie(b.function, b.t, b.vertex);
                   });
  report.min_slack = report.records.empty() ? 0.0 : report.records.front().slack;
  for (const auto& r : report.records) report.min_slack = std::min(report.min_slack, r.slack);
  return report;
}

}  // namespace graphcd
