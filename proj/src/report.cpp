#include "graphcd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace graphcd {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

// JSON has no infinity, so non-finite values become strings.
std::string number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_float(v);
}

std::string dimension_json(Dimension n) {
  return n.is_infinite() ? "\"inf\"" : format_float(n.value());
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

CurvatureReport make_curvature_report(const WeightedGraph& g, std::string graph_name, Dimension n) {
  CurvatureReport report;
  report.graph_name = std::move(graph_name);
  report.dimension = n;
  report.rows = curvature_table(g, n);
  std::sort(report.rows.begin(), report.rows.end(), [&](const auto& a, const auto& b) {
    return g.label(a.vertex) < g.label(b.vertex);
  });
  report.min_kappa = std::numeric_limits<double>::infinity();
  for (const auto& r : report.rows) report.min_kappa = std::min(report.min_kappa, r.kappa);
  return report;
}

std::string curvature_report_json(const WeightedGraph& g, const CurvatureReport& report,
                                  bool with_witness) {
  std::string out = "{\n";
  out += "  \"graph_name\": " + quote(report.graph_name) + ",\n";
  out += "  \"dimension\": " + dimension_json(report.dimension) + ",\n";
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out += i ? ",\n    {" : "\n    {";
    out += "\"vertex_label\": " + quote(g.label(r.vertex)) + ", \"kappa\": " + number(r.kappa);
    if (with_witness) {
      out += ", \"witness\": [";
      for (Eigen::Index k = 0; k < r.witness.size(); ++k) {
        if (k) out += ", ";
        out += "{\"vertex\": " + quote(g.label(VertexId(static_cast<std::size_t>(k)))) +
               ", \"value\": " + number(r.witness[k]) + "}";
      }
      out += "]";
    }
    out += "}";
  }
  out += report.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"min_kappa\": " + number(report.min_kappa) + ",\n";
  out += "  \"tool_version\": " + quote(kToolVersion) + "\n";
  out += "}\n";
  return out;
}

std::string curvature_report_csv(const WeightedGraph& g, const CurvatureReport& report) {
  std::string out = "vertex,kappa\n";
  for (const auto& r : report.rows) out += g.label(r.vertex) + "," + format_float(r.kappa) + "\n";
  return out;
}

std::string verification_report_json(const WeightedGraph& g, const VerificationReport& report,
                                     std::string_view graph_name) {
  std::string out = "{\n";
  out += "  \"inequality\": " + quote(check_name(report.check)) + ",\n";
  out += "  \"K\": " + number(report.K) + ",\n";
  out += "  \"n\": " + dimension_json(report.n) + ",\n";
  out += "  \"graph\": " + quote(graph_name) + ",\n";
  out += "  \"records\": [";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    out += i ? ",\n    {" : "\n    {";
    out += "\"function\": " + quote(r.function) + ", \"t\": " + number(r.t) +
           ", \"vertex\": " + quote(g.label(r.vertex)) + ", \"lhs\": " + number(r.lhs) +
           ", \"rhs\": " + number(r.rhs) + ", \"slack\": " + number(r.slack) + "}";
  }
  out += report.records.empty() ? "],\n" : "\n  ],\n";
  out += "  \"min_slack\": " + number(report.min_slack) + ",\n";
  out += "  \"quadrature_error\": " + number(report.quadrature_error_estimate) + ",\n";
  out += "  \"tool_version\": " + quote(kToolVersion) + "\n";
  out += "}\n";
  return out;
}

std::string verification_report_csv(const WeightedGraph& g, const VerificationReport& report) {
  std::string out = "function,t,vertex,lhs,rhs\n";
  for (const auto& r : report.records) {
    out += r.function + "," + format_float(r.t) + "," + g.label(r.vertex) + "," + format_float(r.lhs) +
           "," + format_float(r.rhs) + "\n";
  }
  return out;
}

}  // namespace graphcd
