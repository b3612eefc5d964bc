#include "eggd/patch_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "eggd/parallel.hpp"

namespace eggd {

namespace {

// Fixed four-lane accumulation order.
double squared_distance(const double* a, const double* b, Index len) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  Index i = 0;
  for (; i + 4 <= len; i += 4) {
    for (int l = 0; l < 4; ++l) {
      const double d = a[i + l] - b[i + l];
      acc[l] += d * d;
    }
  }
  for (; i < len; ++i) {
    const double d = a[i] - b[i];
    acc[0] += d * d;
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double row_distance(const RowMatrix& points, Index a, Index b) {
  return std::sqrt(squared_distance(points.row(a).data(), points.row(b).data(), points.cols()));
}

// Candidate ordering shared by kNN and bridging: distance, then indices.
struct Candidate {
  double sq = 0.0;
  Index a = 0;
  Index b = 0;

  friend bool operator<(const Candidate& x, const Candidate& y) {
    return std::tie(x.sq, x.a, x.b) < std::tie(y.sq, y.a, y.b);
  }
};

}  // namespace

PatchGraph::PatchGraph(Index vertex_count) {
  if (vertex_count < 0) throw InvalidArgument("vertex count must be non-negative");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

bool PatchGraph::has_edge(Index a, Index b) const {
  const auto& list = adjacency_.at(a);
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Edge& e, Index v) { return e.to < v; });
  return it != list.end() && it->to == b;
}

double PatchGraph::weight(Index a, Index b) const {
  const auto& list = adjacency_.at(a);
  auto it = std::lower_bound(list.begin(), list.end(), b,
                             [](const Edge& e, Index v) { return e.to < v; });
  if (it == list.end() || it->to != b) throw InvalidArgument("no such edge");
  return it->weight;
}

bool PatchGraph::add_edge(Index a, Index b, double w) {
  const Index n = vertex_count();
  if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
  if (a == b) throw InvalidArgument("self-loops are not allowed");
  if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("edge weight must be finite and >= 0");
  if (has_edge(a, b)) return false;
  auto insert = [](std::vector<Edge>& list, Index to, double weight) {
    auto it = std::lower_bound(list.begin(), list.end(), to,
                               [](const Edge& e, Index v) { return e.to < v; });
    list.insert(it, Edge{to, weight});
  };
  insert(adjacency_[a], b, w);
  insert(adjacency_[b], a, w);
  ++edge_count_;
  return true;
}

double patch_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("patch vectors differ in length");
  return std::sqrt(squared_distance(a.data(), b.data(), static_cast<Index>(a.size())));
}

PatchGraph build_knn_graph(const RowMatrix& points, int delta) {
  const Index n = points.rows();
  if (delta <= 0) throw InvalidParameter("neighbor count must be >= 1");
  if (delta >= n) {
    throw InvalidParameter("neighbor count " + std::to_string(delta) +
                           " must be below the vertex count " + std::to_string(n));
  }
  const Index dim = points.cols();

  std::vector<Index> nearest(static_cast<std::size_t>(n * delta));
  parallel_for_chunks(n, 32, [&](Index begin, Index end) {
    std::vector<Candidate> candidates(static_cast<std::size_t>(n - 1));
    for (Index i = begin; i < end; ++i) {
      const double* pi = points.row(i).data();
      std::size_t c = 0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        candidates[c++] = Candidate{squared_distance(pi, points.row(j).data(), dim), j, 0};
      }
      auto kth = candidates.begin() + delta;
      std::nth_element(candidates.begin(), kth - 1, candidates.end());
      std::sort(candidates.begin(), kth);
      for (int m = 0; m < delta; ++m) nearest[i * delta + m] = candidates[m].a;
    }
  });

  PatchGraph graph(n);
  for (Index i = 0; i < n; ++i) {
    for (int m = 0; m < delta; ++m) {
      const Index j = nearest[i * delta + m];
      if (!graph.has_edge(i, j)) graph.add_edge(i, j, row_distance(points, i, j));
    }
  }
  return graph;
}

PatchGraph build_knn_graph(const PatchMatrix& patches, int delta) {
  return build_knn_graph(patches.values(), delta);
}

std::vector<Index> component_labels(const PatchGraph& graph) {
  const Index n = graph.vertex_count();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<Index> stack;
  Index next = 0;
  for (Index s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (const Edge& e : graph.neighbors(v)) {
        if (label[e.to] < 0) {
          label[e.to] = next;
          stack.push_back(e.to);
        }
      }
    }
    ++next;
  }
  return label;
}

Index component_count(const PatchGraph& graph) {
  const auto labels = component_labels(graph);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

ConnectedGraph ensure_connected(PatchGraph graph, const RowMatrix& points) {
  if (points.rows() != graph.vertex_count()) {
    throw InvalidArgument("point count does not match the graph's vertex count");
  }
  const auto labels = component_labels(graph);
  const Index k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (k <= 1) return ConnectedGraph{std::move(graph), 0};

  // Prim's sweep over whole components: same edges as repeatedly adding the
  // globally shortest inter-component edge, in O(N) memory.
  const Index n = points.rows();
  const Index dim = points.cols();
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(k));
  for (Index v = 0; v < n; ++v) members[labels[v]].push_back(v);

  const Candidate none{std::numeric_limits<double>::infinity(), 0, 0};
  std::vector<Candidate> key(static_cast<std::size_t>(n), none);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);

  auto absorb = [&](Index component) {
    const auto& added = members[component];
    for (Index v : added) in_tree[v] = 1;
    parallel_for_chunks(n, 256, [&](Index begin, Index end) {
      for (Index w = begin; w < end; ++w) {
        if (in_tree[w]) continue;
        for (Index v : added) {
          const Candidate c{squared_distance(points.row(v).data(), points.row(w).data(), dim),
                            std::min(v, w), std::max(v, w)};
          if (c < key[w]) key[w] = c;
        }
      }
    });
  };

  absorb(0);
  Index added = 0;
  for (Index step = 1; step < k; ++step) {
    Index pick = -1;
    for (Index w = 0; w < n; ++w) {
      if (!in_tree[w] && (pick < 0 || key[w] < key[pick])) pick = w;
    }
    const Candidate c = key[pick];
    graph.add_edge(c.a, c.b, std::sqrt(c.sq));
    ++added;
    absorb(labels[pick]);
  }
  return ConnectedGraph{std::move(graph), added};
}

ConnectedGraph ensure_connected(PatchGraph graph, const PatchMatrix& patches) {
  return ensure_connected(std::move(graph), patches.values());
}

GeodesicMatrix geodesic_distances(const PatchGraph& graph) {
  const Index n = graph.vertex_count();
  if (n > 1 && component_count(graph) != 1) {
    throw ConnectivityError("patch graph is disconnected; run ensure_connected first");
  }

  // Flatten to CSR for the inner loop.
  std::vector<Index> offsets(static_cast<std::size_t>(n + 1), 0);
  for (Index v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + Index(graph.neighbors(v).size());
  std::vector<Index> targets(static_cast<std::size_t>(offsets[n]));
  std::vector<double> weights(static_cast<std::size_t>(offsets[n]));
  for (Index v = 0; v < n; ++v) {
    Index o = offsets[v];
    for (const Edge& e : graph.neighbors(v)) {
      targets[o] = e.to;
      weights[o] = e.weight;
      ++o;
    }
  }

  GeodesicMatrix result{Matrix(n, n)};
  Matrix& d = result.distances;
  using Item = std::pair<double, Index>;
  parallel_for_chunks(n, 16, [&](Index begin, Index end) {
    std::vector<Item> heap;
    std::vector<char> settled(static_cast<std::size_t>(n));
    for (Index s = begin; s < end; ++s) {
      double* dist = d.col(s).data();
      std::fill(dist, dist + n, std::numeric_limits<double>::infinity());
      std::fill(settled.begin(), settled.end(), 0);
      dist[s] = 0.0;
      heap.clear();
      heap.emplace_back(0.0, s);
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
        const auto [du, u] = heap.back();
        heap.pop_back();
        if (settled[u]) continue;
        settled[u] = 1;
        for (Index o = offsets[u]; o < offsets[u + 1]; ++o) {
          const Index v = targets[o];
          const double cand = du + weights[o];
          if (cand < dist[v]) {
            dist[v] = cand;
            heap.emplace_back(cand, v);
            std::push_heap(heap.begin(), heap.end(), std::greater<>{});
          }
        }
      }
    }
  });

  // Paths summed from opposite ends can differ in the last ulp.
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      const double m = std::min(d(i, j), d(j, i));
      d(i, j) = m;
      d(j, i) = m;
    }
  }
  return result;
}

}  // namespace eggd
