#include "graphcd/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "graphcd/curvature.hpp"
#include "graphcd/report.hpp"
#include "graphcd/semigroup.hpp"
#include "graphcd/verify.hpp"

namespace graphcd {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("bad " + what + " '" + text + "'");
  }
  return v;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double t = parse_real(item, "time");
    if (!(t > 0.0)) throw UsageError("times must be > 0");
    out.push_back(t);
  }
  if (out.empty()) throw UsageError("--times is empty");
  return out;
}

std::string graph_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

struct CurvatureArgs {
  std::string graph;
  std::string dimension;
  std::string output;
  std::string format = "json";
  bool witness = false;
};

struct VerifyArgs {
  std::string graph;
  std::string inequality;
  std::string K;
  std::string n;
  std::string times;
  std::string functions = "corpus";
  int panels = QuadratureSpec{}.panels;
  std::string output;
  std::string csv;
};

struct HeatArgs {
  std::string graph;
  std::string f;
  double t = 0.0;
  std::string output;
};

int cmd_curvature(const CurvatureArgs& a, std::ostream& out) {
  const WeightedGraph g = load_graph_file(a.graph);
  Dimension n = Dimension::infinite();
  try {
    n = Dimension::parse(a.dimension);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const CurvatureReport report = make_curvature_report(g, graph_name(a.graph), n);
  emit(a.format == "csv" ? curvature_report_csv(g, report) : curvature_report_json(g, report, a.witness),
       a.output, out);
  return kExitOk;
}

std::vector<TestFunction> select_functions(const WeightedGraph& g, const std::string& spec, Dimension n) {
  if (spec == "corpus") return default_corpus(g, n);
  if (spec == "witnesses") return witness_functions(g, n);
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    return {TestFunction{"file:" + std::filesystem::path(path).filename().string(),
                         load_function_file(g, path)}};
  }
  if (spec.rfind("random:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw UsageError("expected random:<seed>:<count>");
    std::uint64_t seed = 0;
    int count = 0;
    const auto s = rest.substr(0, colon);
    const auto c = rest.substr(colon + 1);
    auto r1 = std::from_chars(s.data(), s.data() + s.size(), seed);
    auto r2 = std::from_chars(c.data(), c.data() + c.size(), count);
    if (r1.ec != std::errc() || r1.ptr != s.data() + s.size() || r2.ec != std::errc() ||
        r2.ptr != c.data() + c.size() || count < 1) {
      throw UsageError("expected random:<seed>:<count>");
    }
    return random_functions(g, seed, count);
  }
  throw UsageError("unknown --functions '" + spec + "'");
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto check = parse_check(a.inequality);
  if (!check) throw UsageError("unknown --inequality '" + a.inequality + "'");
  if (*check == Check::cdn_bound && a.n.empty()) throw UsageError("--inequality cdn requires --n");
  if (a.panels < 2) throw UsageError("--panels must be >= 2");
  const std::vector<double> times = parse_times(a.times);

  Dimension n = Dimension::infinite();
  if (*check == Check::cdn_bound) {
    try {
      n = Dimension::parse(a.n);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }
  }

  const WeightedGraph g = load_graph_file(a.graph);
  const double K = a.K == "auto" ? min_curvature(g, n) : parse_real(a.K, "--K");
  const auto functions = select_functions(g, a.functions, n);
  QuadratureSpec quad;
  quad.panels = a.panels;
  quad.max_panels = std::max(quad.max_panels, a.panels);

  const SpectralDecomposition sd = decompose(g);
  const VerificationReport report = run_verification(g, sd, *check, K, n, functions, times, quad);
  emit(verification_report_json(g, report, graph_name(a.graph)), a.output, out);
  if (!a.csv.empty()) emit(verification_report_csv(g, report), a.csv, out);

  const auto bad = report.violations();
  if (bad.empty()) return kExitOk;
  err << bad.size() << " violation(s) of " << check_name(report.check) << " at K = " << format_float(K)
      << ":\n";
  for (const auto& r : bad) {
    err << "  function=" << r.function << " t=" << format_float(r.t) << " vertex=" << g.label(r.vertex)
        << " slack=" << format_float(r.slack) << " tolerance=" << format_float(r.tolerance) << "\n";
  }
  return kExitViolation;
}

int cmd_heat(const HeatArgs& a, std::ostream& out) {
  if (!(a.t >= 0.0)) throw UsageError("--t must be >= 0");
  const WeightedGraph g = load_graph_file(a.graph);
  const VertexFunction f = load_function_file(g, a.f);
  const SpectralDecomposition sd = decompose(g);
  emit(save_function(g, heat_apply(sd, g, a.t, f)), a.output, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bakry-Emery curvature and heat semigroup checks on weighted graphs", "graphcd"};
  app.require_subcommand(1);

  CurvatureArgs ca;
  auto* curv = app.add_subcommand("curvature", "Per-vertex curvature bounds");
  curv->add_option("--graph", ca.graph, "Graph file")->required();
  curv->add_option("--dimension", ca.dimension, "Dimension n or 'inf'")->required();
  curv->add_option("--output", ca.output, "Output path (default stdout)");
  curv->add_option("--format", ca.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  curv->add_flag("--witness", ca.witness, "Include the minimizing functions");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Check a semigroup inequality or identity");
  ver->add_option("--graph", va.graph, "Graph file")->required();
  ver->add_option("--inequality", va.inequality,
                  "gradient|variance|cdn|variance-identity|gamma2-identity")
      ->required();
  ver->add_option("--K", va.K, "Curvature constant or 'auto'")->required();
  ver->add_option("--n", va.n, "Dimension (required for cdn)");
  ver->add_option("--times", va.times, "Comma-separated times t > 0")->required();
  ver->add_option("--functions", va.functions,
                  "corpus | witnesses | random:<seed>:<count> | file:<path>");
  ver->add_option("--panels", va.panels, "Initial Simpson panel count");
  ver->add_option("--output", va.output, "Report path (default stdout)");
  ver->add_option("--csv", va.csv, "Optional plot CSV path");

  HeatArgs ha;
  auto* heat = app.add_subcommand("heat", "Apply the heat semigroup P_t to a function");
  heat->add_option("--graph", ha.graph, "Graph file")->required();
  heat->add_option("--f", ha.f, "Function CSV (vertex,value)")->required();
  heat->add_option("--t", ha.t, "Time t >= 0")->required();
  heat->add_option("--output", ha.output, "Output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*curv) return cmd_curvature(ca, out);
    if (*ver) return cmd_verify(va, out, err);
    if (*heat) return cmd_heat(ha, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace graphcd
