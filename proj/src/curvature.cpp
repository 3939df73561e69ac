#include "graphcd/curvature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace graphcd {

Dimension::Dimension(double n) : value_(n) {
  if (!(n > 0.0)) throw PreconditionError("dimension must be positive");
}

std::string Dimension::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, res.ptr);
}

Dimension Dimension::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinite();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PreconditionError("bad dimension '" + text + "'");
  }
  if (std::isinf(v) && v > 0) return infinite();
  return Dimension(v);
}

namespace {

struct PseudoInverse {
  Eigen::MatrixXd matrix;
  double min_eigenvalue = 0.0;
  double norm = 0.0;
};

// Symmetric pseudo-inverse through an eigendecomposition.
PseudoInverse symmetric_pinv(const Eigen::MatrixXd& a) {
  PseudoInverse out;
  if (a.rows() == 0) {
    out.matrix.resize(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed on sphere-2 block");
  const auto& ev = es.eigenvalues();
  out.min_eigenvalue = ev.minCoeff();
  out.norm = ev.cwiseAbs().maxCoeff();
  const double cutoff = kPinvRankTolerance * out.norm;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) > cutoff) inv[i] = 1.0 / ev[i];
  }
  out.matrix = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  return out;
}

void orient(Eigen::VectorXd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

}  // namespace

CurvatureResult curvature_at(const WeightedGraph& g, VertexId x, Dimension n) {
  const LocalForms forms = local_forms(g, x);
  const Eigen::Index k1 = forms.sphere1_size();
  const Eigen::Index k2 = forms.sphere2_size();
  if (k1 == 0) {
    throw PreconditionError("vertex '" + g.label(x) + "' has no neighbors; curvature undefined");
  }

  const Eigen::MatrixXd& a = forms.gamma2_form;
  const Eigen::MatrixXd a11 = a.topLeftCorner(k1, k1);
  const Eigen::MatrixXd a12 = a.topRightCorner(k1, k2);
  const Eigen::MatrixXd a22 = a.bottomRightCorner(k2, k2);

  const PseudoInverse pinv = symmetric_pinv(a22);
  if (k2 > 0 && pinv.min_eigenvalue < -kPsdTolerance * std::max(1.0, pinv.norm)) {
    throw NumericalError("sphere-2 block of the Gamma2 form is not positive semidefinite at '" +
                         g.label(x) + "'");
  }

  Eigen::MatrixXd reduced = a11;
  if (k2 > 0) reduced -= a12 * pinv.matrix * a12.transpose();
  reduced -= n.inverse() * forms.delta_vector * forms.delta_vector.transpose();

  // B is diagonal and positive, so its Cholesky factor is its square root.
  const Eigen::VectorXd chol = forms.gamma_form.diagonal().cwiseSqrt();
  const Eigen::VectorXd chol_inv = chol.cwiseInverse();
  Eigen::MatrixXd pencil = chol_inv.asDiagonal() * reduced * chol_inv.asDiagonal();
  pencil = 0.5 * (pencil + pencil.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pencil);
  if (es.info() != Eigen::Success) throw NumericalError("pencil eigensolve failed");

  Eigen::VectorXd u = es.eigenvectors().col(0);
  orient(u);
  const Eigen::VectorXd v = chol_inv.cwiseProduct(u);

  CurvatureResult result;
  result.vertex = x;
  result.dimension = n;
  result.kappa = es.eigenvalues()[0];
  result.witness = VertexFunction::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  for (Eigen::Index i = 0; i < k1; ++i) {
    result.witness[static_cast<Eigen::Index>(forms.ball.sphere1[static_cast<std::size_t>(i)].index())] = v[i];
  }
  if (k2 > 0) {
    const Eigen::VectorXd outer = -pinv.matrix * a12.transpose() * v;
    for (Eigen::Index i = 0; i < k2; ++i) {
      result.witness[static_cast<Eigen::Index>(forms.ball.sphere2[static_cast<std::size_t>(i)].index())] = outer[i];
    }
  }
  return result;
}

std::vector<CurvatureResult> curvature_table(const WeightedGraph& g, Dimension n) {
  std::vector<CurvatureResult> out;
  out.reserve(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) out.push_back(curvature_at(g, VertexId(i), n));
  return out;
}

CdDecision check_cd(const WeightedGraph& g, double K, Dimension n) {
  CdDecision decision;
  double min_kappa = std::numeric_limits<double>::infinity();
  for (const auto& r : curvature_table(g, n)) {
    decision.margins.push_back(r.kappa - K);
    min_kappa = std::min(min_kappa, r.kappa);
  }
  decision.holds = min_kappa >= K - 1e-10;
  return decision;
}

double cde_residual(const WeightedGraph& g, const VertexFunction& f, VertexId x, double K,
                    Dimension n) {
  g.check_function(f);
  const Ball ball = ball2(g, x);
  auto positive = [&](VertexId v) { return f[static_cast<Eigen::Index>(v.index())] > 0.0; };
  bool ok = positive(x);
  for (auto y : ball.sphere1) ok = ok && positive(y);
  for (auto z : ball.sphere2) ok = ok && positive(z);
  if (!ok) throw PreconditionError("CDE requires f > 0 on the 2-ball");

  const auto xi = static_cast<Eigen::Index>(x.index());
  const VertexFunction lap = laplacian(g, f);
  if (!(lap[xi] < 0.0)) throw PreconditionError("CDE requires Lap f(x) < 0");

  const VertexFunction gf = gamma(g, f);
  VertexFunction ratio = VertexFunction::Zero(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f[i] > 0.0) ratio[i] = gf[i] / f[i];
  }
  const double g2 = gamma2(g, f)[xi];
  const double corrector = gamma(g, f, ratio)[xi];
  return g2 - corrector - n.inverse() * lap[xi] * lap[xi] - K * gf[xi];
}

std::optional<VertexFunction> cde_falsify(const WeightedGraph& g, VertexId x, double K,
                                          Dimension n, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("trials must be >= 1");
  const Ball ball = ball2(g, x);
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> draw(0.0, 1.0);
  const auto xi = static_cast<Eigen::Index>(x.index());
  for (int t = 0; t < trials; ++t) {
    VertexFunction f = VertexFunction::Ones(static_cast<Eigen::Index>(g.vertex_count()));
    f[xi] = draw(rng);
    for (auto y : ball.sphere1) f[static_cast<Eigen::Index>(y.index())] = draw(rng);
    for (auto z : ball.sphere2) f[static_cast<Eigen::Index>(z.index())] = draw(rng);
    if (!(laplacian(g, f)[xi] < 0.0)) continue;
    if (cde_residual(g, f, x, K, n) < -1e-10) return f;
  }
  return std::nullopt;
}

}  // namespace graphcd
