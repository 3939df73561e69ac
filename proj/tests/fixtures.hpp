#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graphcd/graph.hpp"

namespace graphcd::testing {

inline WeightedGraph k2() { return load_graph("vertex a 1\nvertex b 1\nedge a b 1\n"); }

inline WeightedGraph k3() {
  return load_graph("vertex a 1\nvertex b 1\nvertex c 1\nedge a b 1\nedge b c 1\nedge a c 1\n");
}

inline WeightedGraph path(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += "vertex v" + std::to_string(i) + " 1\n";
  for (int i = 0; i + 1 < n; ++i) {
    text += "edge v" + std::to_string(i) + " v" + std::to_string(i + 1) + " 1\n";
  }
  return load_graph(text);
}

inline WeightedGraph p3() { return load_graph("vertex a 1\nvertex b 1\nvertex c 1\nedge a b 1\nedge b c 1\n"); }

inline WeightedGraph cycle(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += "vertex v" + std::to_string(i) + " 1\n";
  for (int i = 0; i < n; ++i) {
    text += "edge v" + std::to_string(i) + " v" + std::to_string((i + 1) % n) + " 1\n";
  }
  return load_graph(text);
}

/// Star with one center and `leaves` leaves.
inline WeightedGraph star(int leaves) {
  std::string text = "vertex c 1\n";
  for (int i = 0; i < leaves; ++i) text += "vertex l" + std::to_string(i) + " 1\n";
  for (int i = 0; i < leaves; ++i) text += "edge c l" + std::to_string(i) + " 1\n";
  return load_graph(text);
}

/// Connected graph: random spanning tree plus extra edges, weights and
/// measures uniform in [lo, hi].
inline WeightedGraph random_graph(std::uint64_t seed, int min_vertices, int max_vertices, double lo = 0.2,
                                  double hi = 5.0, double extra_edge_prob = 0.35) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(min_vertices, max_vertices);
  std::uniform_real_distribution<double> value(lo, hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = size(rng);
  WeightedGraph::Builder b;
  for (int i = 0; i < n; ++i) b.add_vertex("v" + std::to_string(i), value(rng));
  std::vector<std::vector<bool>> linked(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent_of(0, i - 1);
    const int parent = parent_of(rng);
    linked[static_cast<std::size_t>(parent)][static_cast<std::size_t>(i)] = true;
    b.add_edge(VertexId(static_cast<std::size_t>(i)), VertexId(static_cast<std::size_t>(parent)), value(rng));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < extra_edge_prob && !linked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        b.add_edge(VertexId(static_cast<std::size_t>(i)), VertexId(static_cast<std::size_t>(j)), value(rng));
      }
    }
  }
  return std::move(b).build();
}

inline VertexFunction random_function(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VertexFunction f(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = normal(rng);
  return f;
}

inline VertexFunction values(std::initializer_list<double> v) {
  VertexFunction f(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) f[i++] = x;
  return f;
}

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

/// K2, K3, P3, P4, C5, star with four leaves, one seeded random graph.
inline std::vector<NamedGraph> fixture_graphs() {
  std::vector<NamedGraph> out;
  out.push_back({"K2", k2()});
  out.push_back({"K3", k3()});
  out.push_back({"P3", path(3)});
  out.push_back({"P4", path(4)});
  out.push_back({"C5", cycle(5)});
  out.push_back({"S4", star(4)});
  out.push_back({"random-7", random_graph(7, 6, 8)});
  return out;
}

}  // namespace graphcd::testing
