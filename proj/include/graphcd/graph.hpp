#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace graphcd {

/// Dense vertex index in 0..vertex_count-1.
class VertexId {
 public:
  constexpr VertexId() = default;
  constexpr explicit VertexId(std::size_t index) : index_(index) {}
  constexpr std::size_t index() const { return index_; }
  friend constexpr auto operator<=>(VertexId, VertexId) = default;

 private:
  std::size_t index_ = 0;
};

/// A real-valued function on the vertex set, indexed by VertexId::index().
using VertexFunction = Eigen::VectorXd;

/// Raised for malformed or invalid graph and function input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an id, size or argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical structure that theory guarantees is violated,
/// or a solver fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Neighbor {
  VertexId vertex;
  double weight;
};

/// Finite connected weighted graph (V, E, mu, m). Immutable once built.
///
/// Edge weights are symmetric and strictly positive; absent pairs carry
/// weight zero. Self-loops are stored but never enter the neighbor lists,
/// since every operator sees them only through f(x) - f(x) = 0.
class WeightedGraph {
 public:
  class Builder;

  std::size_t vertex_count() const { return measure_.size(); }
  const std::string& label(VertexId x) const;
  /// Id of `label`, or throws InputError.
  VertexId id_of(std::string_view label) const;
  double measure(VertexId x) const;
  /// min_x m(x); positive by construction.
  double delta_min() const { return delta_min_; }
  /// mu_xy, zero when x and y are not adjacent. For x == y returns the self-loop weight.
  double weight(VertexId x, VertexId y) const;
  double self_loop(VertexId x) const;
  /// Neighbors y != x in ascending id order.
  std::span<const Neighbor> neighbors(VertexId x) const;
  const std::vector<std::string>& labels() const { return labels_; }
  const Eigen::VectorXd& measures() const { return measure_; }

  void check_vertex(VertexId x) const;
  void check_function(const VertexFunction& f) const;

 private:
  WeightedGraph() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  Eigen::VectorXd measure_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> self_loops_;
  double delta_min_ = 0.0;
};

/// Incremental construction with validation deferred to build().
class WeightedGraph::Builder {
 public:
  /// Returns the new vertex id. Throws InputError on duplicates or m <= 0.
  VertexId add_vertex(std::string label, double measure);
  /// Throws InputError on unknown ids, mu <= 0, or a conflicting duplicate.
  void add_edge(VertexId u, VertexId v, double weight);
  std::size_t vertex_count() const { return labels_.size(); }
  const std::unordered_map<std::string, std::size_t>& index() const { return index_; }
  /// Validates connectivity and freezes the graph.
  WeightedGraph build() &&;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> measure_;
  std::map<std::pair<std::size_t, std::size_t>, double> edges_;
};

/// Parses the line-oriented graph format:
///   # comment
///   vertex <label> <m>
///   edge <label1> <label2> <mu>
WeightedGraph load_graph(std::string_view text);
WeightedGraph load_graph_file(const std::string& path);
/// Serializes in the same format; vertices in id order, edges with u <= v.
std::string save_graph(const WeightedGraph& g);

/// Closed 2-ball around a center, split into distance spheres.
struct Ball {
  VertexId center;
  std::vector<VertexId> sphere1;
  std::vector<VertexId> sphere2;
  /// Local coordinate of every vertex in sphere1 then sphere2.
  std::unordered_map<std::size_t, std::size_t> index_map;

  std::size_t size() const { return 1 + sphere1.size() + sphere2.size(); }
};

Ball ball2(const WeightedGraph& g, VertexId x);

/// Sum of mu_xy over y != x.
double degree(const WeightedGraph& g, VertexId x);

/// l^p(V, m) norm; p = infinity gives the sup norm.
double lp_norm(const WeightedGraph& g, const VertexFunction& f, double p);

/// Reads `vertex,value` CSV. Every vertex must appear exactly once.
VertexFunction load_function(const WeightedGraph& g, std::string_view text);
VertexFunction load_function_file(const WeightedGraph& g, const std::string& path);
std::string save_function(const WeightedGraph& g, const VertexFunction& f);

}  // namespace graphcd
