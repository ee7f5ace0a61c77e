#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cskel/info.hpp"
#include "cskel/joint.hpp"
#include "cskel/tensor.hpp"

namespace cskel {

/// Everything measured for one undirected edge. The stored orientation runs
/// from the lexicographically smaller vertex name to the larger one; both
/// tensor estimates come from the same joint.
struct EdgeData {
  JointDistribution joint;     // smaller-name rows, larger-name columns
  TensorEstimate forward;      // smaller -> larger
  TensorEstimate reverse;      // larger -> smaller
  CapacityResult forward_capacity;
  CapacityResult reverse_capacity;
  bool significant = false;
};

/// Undirected graph over named vertices with tensor-annotated edges.
/// No self-loops, at most one edge per pair.
class SkeletonGraph {
 public:
  explicit SkeletonGraph(std::vector<std::string> vertices);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  bool has_vertex(std::string_view name) const;
  std::size_t vertex_index(std::string_view name) const;  // throws on unknown

  void add_edge(std::string_view u, std::string_view v, EdgeData data);
  void remove_edge(std::string_view u, std::string_view v);
  bool has_edge(std::string_view u, std::string_view v) const;
  const EdgeData& edge(std::string_view u, std::string_view v) const;

  /// Neighbor names in lexicographic order.
  std::vector<std::string> neighbors(std::string_view name) const;
  /// Edges as (smaller, larger) name pairs, lexicographically sorted.
  std::vector<std::pair<std::string, std::string>> edge_list() const;
  std::size_t edge_count() const { return edges_.size(); }

  /// The tensor for traversing edge (from, to) in that direction.
  const TensorEstimate& oriented_estimate(std::string_view from, std::string_view to) const;

 private:
  std::pair<std::string, std::string> key(std::string_view u, std::string_view v) const;

  std::vector<std::string> vertices_;
  std::map<std::pair<std::string, std::string>, EdgeData> edges_;
};

/// Simple path: ordered vertices, consecutive pairs adjacent, no repeats.
struct Path {
  std::vector<std::string> vertices;

  std::size_t edge_length() const { return vertices.size() - 1; }
  /// Mediators: everything strictly between the endpoints.
  std::vector<std::string> interior() const {
    return {vertices.begin() + 1, vertices.end() - 1};
  }
};

/// All simple paths from x to z with 2..max_len edges (the direct edge is
/// excluded), in lexicographic order of the vertex sequence.
std::vector<Path> enumerate_simple_paths(const SkeletonGraph& graph, std::string_view x,
                                         std::string_view z, int max_len);

/// Left-to-right composition of the per-edge tensors along the path, using
/// the stored orientation or its reverse as traversed.
StochasticTensor path_tensor(const SkeletonGraph& graph, const Path& path);

}  // namespace cskel
