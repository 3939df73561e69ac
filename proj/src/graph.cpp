#include "graphcd/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>

namespace graphcd {

namespace {

std::string format_exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
  } else {
    std::size_t start = 0;
    for (;;) {
      auto pos = line.find(sep, start);
      out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::string at_line(std::size_t line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

}  // namespace

const std::string& WeightedGraph::label(VertexId x) const {
  check_vertex(x);
  return labels_[x.index()];
}

VertexId WeightedGraph::id_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) throw InputError("unknown vertex '" + std::string(label) + "'");
  return VertexId(it->second);
}

double WeightedGraph::measure(VertexId x) const {
  check_vertex(x);
  return measure_[static_cast<Eigen::Index>(x.index())];
}

double WeightedGraph::weight(VertexId x, VertexId y) const {
  check_vertex(x);
  check_vertex(y);
  if (x == y) return self_loops_[x.index()];
  const auto& adj = adjacency_[x.index()];
  auto it = std::lower_bound(adj.begin(), adj.end(), y,
                             [](const Neighbor& n, VertexId v) { return n.vertex < v; });
  return (it != adj.end() && it->vertex == y) ? it->weight : 0.0;
}

double WeightedGraph::self_loop(VertexId x) const {
  check_vertex(x);
  return self_loops_[x.index()];
}

std::span<const Neighbor> WeightedGraph::neighbors(VertexId x) const {
  check_vertex(x);
  return adjacency_[x.index()];
}

void WeightedGraph::check_vertex(VertexId x) const {
  if (x.index() >= vertex_count()) {
    throw PreconditionError("vertex id " + std::to_string(x.index()) + " out of range (|V| = " +
                            std::to_string(vertex_count()) + ")");
  }
}

void WeightedGraph::check_function(const VertexFunction& f) const {
  if (static_cast<std::size_t>(f.size()) != vertex_count()) {
    throw PreconditionError("function has " + std::to_string(f.size()) + " entries, graph has " +
                            std::to_string(vertex_count()) + " vertices");
  }
  if (!f.allFinite()) throw PreconditionError("function has non-finite entries");
}

VertexId WeightedGraph::Builder::add_vertex(std::string label, double measure) {
  if (label.empty()) throw InputError("empty vertex label");
  if (!(measure > 0.0) || !std::isfinite(measure)) {
    throw InputError("vertex '" + label + "' has non-positive or non-finite measure");
  }
  if (index_.count(label)) throw InputError("duplicate vertex '" + label + "'");
  index_.emplace(label, labels_.size());
  labels_.push_back(std::move(label));
  measure_.push_back(measure);
  return VertexId(labels_.size() - 1);
}

void WeightedGraph::Builder::add_edge(VertexId u, VertexId v, double weight) {
  if (u.index() >= labels_.size() || v.index() >= labels_.size()) {
    throw InputError("edge references an undeclared vertex");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InputError("edge weight must be finite and > 0");
  }
  const std::pair<std::size_t, std::size_t> key{std::min(u.index(), v.index()),
                                                 std::max(u.index(), v.index())};
  auto [it, inserted] = edges_.emplace(key, weight);
  if (!inserted && it->second != weight) {
    throw InputError("conflicting duplicate edge " + labels_[key.first] + " " + labels_[key.second]);
  }
}

WeightedGraph WeightedGraph::Builder::build() && {
  if (labels_.empty()) throw InputError("graph has no vertices");
  WeightedGraph g;
  const std::size_t n = labels_.size();
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  g.measure_ = Eigen::Map<const Eigen::VectorXd>(measure_.data(), static_cast<Eigen::Index>(n));
  g.adjacency_.assign(n, {});
  g.self_loops_.assign(n, 0.0);
  for (const auto& [key, w] : edges_) {
    if (key.first == key.second) {
      g.self_loops_[key.first] = w;
    } else {
      g.adjacency_[key.first].push_back({VertexId(key.second), w});
      g.adjacency_[key.second].push_back({VertexId(key.first), w});
    }
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  g.delta_min_ = g.measure_.minCoeff();

  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto u = frontier.front();
    frontier.pop();
    for (const auto& nb : g.adjacency_[u]) {
      if (!seen[nb.vertex.index()]) {
        seen[nb.vertex.index()] = true;
        ++reached;
        frontier.push(nb.vertex.index());
      }
    }
  }
  if (reached != n) {
    throw InputError("graph is disconnected (" + std::to_string(reached) + " of " +
                     std::to_string(n) + " vertices reachable)");
  }
  return g;
}

WeightedGraph load_graph(std::string_view text) {
  WeightedGraph::Builder builder;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') return;
    auto fields = split_fields(line, ' ');
    const auto& kind = fields.front();
    try {
      if (kind == "vertex") {
        if (fields.size() != 3) throw InputError("expected 'vertex <label> <m>'");
        double m = 0.0;
        if (!parse_double(fields[2], m)) throw InputError("bad measure '" + std::string(fields[2]) + "'");
        builder.add_vertex(std::string(fields[1]), m);
      } else if (kind == "edge") {
        if (fields.size() != 4) throw InputError("expected 'edge <label1> <label2> <mu>'");
        double mu = 0.0;
        if (!parse_double(fields[3], mu)) throw InputError("bad weight '" + std::string(fields[3]) + "'");
        auto lookup = [&](std::string_view label) {
          auto it = builder.index().find(std::string(label));
          if (it == builder.index().end()) {
            throw InputError("undeclared vertex '" + std::string(label) + "'");
          }
          return VertexId(it->second);
        };
        builder.add_edge(lookup(fields[1]), lookup(fields[2]), mu);
      } else {
        throw InputError("unknown directive '" + std::string(kind) + "'");
      }
    } catch (const InputError& e) {
      throw InputError(at_line(line_no, e.what()));
    }
  });
  return std::move(builder).build();
}

WeightedGraph load_graph_file(const std::string& path) { return load_graph(read_file(path)); }

std::string save_graph(const WeightedGraph& g) {
  std::string out;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    VertexId x(i);
    out += "vertex " + g.label(x) + " " + format_exact(g.measure(x)) + "\n";
  }
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    VertexId x(i);
    if (g.self_loop(x) > 0.0) {
      out += "edge " + g.label(x) + " " + g.label(x) + " " + format_exact(g.self_loop(x)) + "\n";
    }
    for (const auto& nb : g.neighbors(x)) {
      if (nb.vertex > x) {
        out += "edge " + g.label(x) + " " + g.label(nb.vertex) + " " + format_exact(nb.weight) + "\n";
      }
    }
  }
  return out;
}

Ball ball2(const WeightedGraph& g, VertexId x) {
  g.check_vertex(x);
  Ball ball;
  ball.center = x;
  for (const auto& nb : g.neighbors(x)) ball.sphere1.push_back(nb.vertex);
  std::vector<bool> taken(g.vertex_count(), false);
  taken[x.index()] = true;
  for (auto y : ball.sphere1) taken[y.index()] = true;
  for (auto y : ball.sphere1) {
    for (const auto& nb : g.neighbors(y)) {
      if (!taken[nb.vertex.index()]) {
        taken[nb.vertex.index()] = true;
        ball.sphere2.push_back(nb.vertex);
      }
    }
  }
  std::sort(ball.sphere2.begin(), ball.sphere2.end());
  std::size_t k = 0;
  for (auto y : ball.sphere1) ball.index_map.emplace(y.index(), k++);
  for (auto z : ball.sphere2) ball.index_map.emplace(z.index(), k++);
  return ball;
}

double degree(const WeightedGraph& g, VertexId x) {
  double sum = 0.0;
  for (const auto& nb : g.neighbors(x)) sum += nb.weight;
  return sum;
}

double lp_norm(const WeightedGraph& g, const VertexFunction& f, double p) {
  g.check_function(f);
  if (std::isinf(p)) return f.size() == 0 ? 0.0 : f.cwiseAbs().maxCoeff();
  if (!(p >= 1.0)) throw PreconditionError("lp_norm requires p >= 1");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) sum += std::pow(std::abs(f[i]), p) * g.measures()[i];
  return std::pow(sum, 1.0 / p);
}

VertexFunction load_function(const WeightedGraph& g, std::string_view text) {
  VertexFunction f = VertexFunction::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  std::vector<bool> seen(g.vertex_count(), false);
  bool header = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    auto line = trim(raw);
    if (line.empty()) return;
    auto fields = split_fields(line, ',');
    if (!header) {
      if (fields.size() != 2 || trim(fields[0]) != "vertex" || trim(fields[1]) != "value") {
        throw InputError(at_line(line_no, "expected header 'vertex,value'"));
      }
      header = true;
      return;
    }
    if (fields.size() != 2) throw InputError(at_line(line_no, "expected '<vertex>,<value>'"));
    VertexId x;
    try {
      x = g.id_of(trim(fields[0]));
    } catch (const InputError& e) {
      throw InputError(at_line(line_no, e.what()));
    }
    double v = 0.0;
    if (!parse_double(fields[1], v) || !std::isfinite(v)) {
      throw InputError(at_line(line_no, "bad value '" + std::string(fields[1]) + "'"));
    }
    if (seen[x.index()]) throw InputError(at_line(line_no, "duplicate row for vertex '" + g.label(x) + "'"));
    seen[x.index()] = true;
    f[static_cast<Eigen::Index>(x.index())] = v;
  });
  if (!header) throw InputError("function file is empty");
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("missing row for vertex '" + g.label(VertexId(i)) + "'");
  }
  return f;
}

VertexFunction load_function_file(const WeightedGraph& g, const std::string& path) {
  return load_function(g, read_file(path));
}

std::string save_function(const WeightedGraph& g, const VertexFunction& f) {
  g.check_function(f);
  std::string out = "vertex,value\n";
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    out += g.label(VertexId(i)) + "," + format_exact(f[static_cast<Eigen::Index>(i)]) + "\n";
  }
  return out;
}

}  // namespace graphcd
