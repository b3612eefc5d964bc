#pragma once

#include <span>
#include <vector>

#include "eggd/common.hpp"
#include "eggd/image.hpp"

namespace eggd {

struct Edge {
  Index to = 0;
  double weight = 0.0;
};

/// Undirected weighted graph on patch vertices. Simple (no self-loops, at
/// most one edge per pair) and symmetric by construction.
class PatchGraph {
 public:
  explicit PatchGraph(Index vertex_count);

  [[nodiscard]] Index vertex_count() const { return static_cast<Index>(adjacency_.size()); }
  [[nodiscard]] std::span<const Edge> neighbors(Index v) const { return adjacency_[v]; }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] bool has_edge(Index a, Index b) const;
  /// Weight of edge (a, b); throws InvalidArgument when absent.
  [[nodiscard]] double weight(Index a, Index b) const;

  /// Inserts {a, b} with weight w. Returns false (and changes nothing) when
  /// the edge already exists. Self-loops and negative or non-finite weights
  /// are rejected.
  bool add_edge(Index a, Index b, double w);

 private:
  std::vector<std::vector<Edge>> adjacency_;  // each list sorted by `to`
  std::size_t edge_count_ = 0;
};

/// Symmetric all-pairs shortest-path distances with zero diagonal.
struct GeodesicMatrix {
  Matrix distances;
};

/// Euclidean distance between two patch vectors.
[[nodiscard]] double patch_distance(std::span<const double> a, std::span<const double> b);

/// Exact delta-nearest-neighbor graph over the rows of `points`, symmetrized
/// by union. Ties at equal distance go to the lower vertex index.
[[nodiscard]] PatchGraph build_knn_graph(const RowMatrix& points, int delta);
[[nodiscard]] PatchGraph build_knn_graph(const PatchMatrix& patches, int delta);

/// Connected-component label per vertex, labels numbered from 0 in order of
/// first appearance.
[[nodiscard]] std::vector<Index> component_labels(const PatchGraph& graph);
[[nodiscard]] Index component_count(const PatchGraph& graph);

struct ConnectedGraph {
  PatchGraph graph;
  Index edges_added = 0;
};

/// Joins components by repeatedly adding the globally shortest Euclidean
/// edge between two distinct components.
[[nodiscard]] ConnectedGraph ensure_connected(PatchGraph graph, const RowMatrix& points);
[[nodiscard]] ConnectedGraph ensure_connected(PatchGraph graph, const PatchMatrix& patches);

/// Exact geodesics by Dijkstra from every source. Throws ConnectivityError
/// on a disconnected graph.
[[nodiscard]] GeodesicMatrix geodesic_distances(const PatchGraph& graph);

}  // namespace eggd
