#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "graphcd/curvature.hpp"
#include "graphcd/graph.hpp"
#include "graphcd/verify.hpp"

namespace graphcd {

inline constexpr std::string_view kToolVersion = "graphcd 1.0.0";

/// printf("%.12e"); used for every float in machine-readable output.
std::string format_float(double v);

struct CurvatureReport {
  std::string graph_name;
  Dimension dimension = Dimension::infinite();
  /// Sorted by vertex label.
  std::vector<CurvatureResult> rows;
  double min_kappa = 0.0;
};

CurvatureReport make_curvature_report(const WeightedGraph& g, std::string graph_name, Dimension n);

std::string curvature_report_json(const WeightedGraph& g, const CurvatureReport& report,
                                  bool with_witness);
std::string curvature_report_csv(const WeightedGraph& g, const CurvatureReport& report);

std::string verification_report_json(const WeightedGraph& g, const VerificationReport& report,
                                     std::string_view graph_name);
/// function,t,vertex,lhs,rhs rows for plotting.
std::string verification_report_csv(const WeightedGraph& g, const VerificationReport& report);

}  // namespace graphcd
