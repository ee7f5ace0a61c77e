#include "cskel/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cskel {

SkeletonGraph::SkeletonGraph(std::vector<std::string> vertices)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if (vertices_[i] == vertices_[j]) {
        throw std::invalid_argument("SkeletonGraph: duplicate vertex '" + vertices_[i] +
                                    "'");
      }
    }
  }
}

bool SkeletonGraph::has_vertex(std::string_view name) const {
  return std::any_of(vertices_.begin(), vertices_.end(),
                     [&](const std::string& v) { return v == name; });
}

std::size_t SkeletonGraph::vertex_index(std::string_view name) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == name) return i;
  }
  throw std::invalid_argument("SkeletonGraph: unknown vertex '" + std::string(name) + "'");
}

std::pair<std::string, std::string> SkeletonGraph::key(std::string_view u,
                                                       std::string_view v) const {
  if (u == v) {
    throw std::invalid_argument("SkeletonGraph: self-loop on '" + std::string(u) + "'");
  }
  vertex_index(u);
  vertex_index(v);
  auto a = std::string(u);
  auto b = std::string(v);
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

void SkeletonGraph::add_edge(std::string_view u, std::string_view v, EdgeData data) {
  auto k = key(u, v);
  if (edges_.contains(k)) {
    throw std::invalid_argument("SkeletonGraph: duplicate edge " + k.first + "--" +
                                k.second);
  }
  edges_.emplace(std::move(k), std::move(data));
}

void SkeletonGraph::remove_edge(std::string_view u, std::string_view v) {
  if (edges_.erase(key(u, v)) == 0) {
    throw std::invalid_argument("SkeletonGraph: no edge to remove");
  }
}

bool SkeletonGraph::has_edge(std::string_view u, std::string_view v) const {
  return edges_.contains(key(u, v));
}

const EdgeData& SkeletonGraph::edge(std::string_view u, std::string_view v) const {
  auto it = edges_.find(key(u, v));
  if (it == edges_.end()) {
    throw std::invalid_argument("SkeletonGraph: no edge " + std::string(u) + "--" +
                                std::string(v));
  }
  return it->second;
}

std::vector<std::string> SkeletonGraph::neighbors(std::string_view name) const {
  vertex_index(name);
  std::vector<std::string> result;
  for (const auto& [k, data] : edges_) {
    if (k.first == name) result.push_back(k.second);
    if (k.second == name) result.push_back(k.first);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::pair<std::string, std::string>> SkeletonGraph::edge_list() const {
  std::vector<std::pair<std::string, std::string>> result;
  result.reserve(edges_.size());
  for (const auto& [k, data] : edges_) result.push_back(k);
  return result;  // map iteration is already sorted
}

const TensorEstimate& SkeletonGraph::oriented_estimate(std::string_view from,
                                                       std::string_view to) const {
  const EdgeData& data = edge(from, to);
  return from < to ? data.forward : data.reverse;
}

std::vector<Path> enumerate_simple_paths(const SkeletonGraph& graph, std::string_view x,
                                         std::string_view z, int max_len) {
  if (x == z) {
    throw std::invalid_argument("enumerate_simple_paths: endpoints must differ");
  }
  graph.vertex_index(x);
  graph.vertex_index(z);
  if (max_len < 2) {
    throw std::invalid_argument("enumerate_simple_paths: max_len must be >= 2");
  }

  std::vector<Path> result;
  std::vector<std::string> current{std::string(x)};

  // DFS over name-sorted neighbors emits paths in lexicographic order.
  auto visit = [&](auto&& self, const std::string& vertex) -> void {
    for (const auto& next : graph.neighbors(vertex)) {
      if (std::find(current.begin(), current.end(), next) != current.end()) continue;
      if (next == z) {
        if (current.size() >= 2) {  // skip the direct edge
          Path path{current};
          path.vertices.push_back(next);
          result.push_back(std::move(path));
        }
        continue;
      }
      if (current.size() > static_cast<std::size_t>(max_len) - 1) continue;
      current.push_back(next);
      self(self, next);
      current.pop_back();
    }
  };
  visit(visit, current.front());
  return result;
}

StochasticTensor path_tensor(const SkeletonGraph& graph, const Path& path) {
  if (path.vertices.size() < 2) {
    throw std::invalid_argument("path_tensor: path needs at least two vertices");
  }
  StochasticTensor result =
      graph.oriented_estimate(path.vertices[0], path.vertices[1]).tensor;
  for (std::size_t i = 2; i < path.vertices.size(); ++i) {
    result = compose(result,
                     graph.oriented_estimate(path.vertices[i - 1], path.vertices[i]).tensor);
  }
  return result;
}

}  // namespace cskel
