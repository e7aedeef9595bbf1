#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cmmbp/errors.hpp"

namespace cmmbp {

/// Per-edge weight vector. Every edge of one graph carries the same number of
/// coordinates, all strictly positive.
using WeightVector = std::vector<double>;

struct Edge {
  int u = 0;  ///< tail; u < v after canonicalization
  int v = 0;  ///< head
  WeightVector w;
};

/// Undirected simple graph on vertices 1..n with vector-valued edge weights.
///
/// Edges are stored with canonical orientation u < v and sorted
/// lexicographically. The orientation is fixed once here because the flow
/// constraints of the MILP model are direction-sensitive.
///
/// A Graph is immutable after build_graph; all queries are read-only and may
/// run concurrently.
struct Graph {
  int n = 0;  ///< vertex count, vertices are 1..n
  int k = 0;  ///< weight dimension
  std::vector<Edge> edges;

  int m() const { return static_cast<int>(edges.size()); }
};

/// An equal-split two-coloring of the vertex set. Canonical labeling: the
/// side containing vertex 1 is side_one in all reported outputs.
struct Bisection {
  std::vector<int> side_one;  ///< sorted ascending
  std::vector<int> side_two;  ///< sorted ascending
};

/// Cut of a vertex set together with its multidimensional weight.
struct CutReport {
  std::vector<std::size_t> cut_edges;   ///< ids into Graph::edges, ascending
  std::vector<double> coordinate_sums;  ///< one sum per weight coordinate
  double weight = 0.0;  ///< min over coordinate_sums; 0 for an empty cut
};

/// Validates and canonicalizes an edge list into a Graph.
///
/// Endpoints may arrive in either order; they are flipped to u < v and the
/// list is sorted. `k_hint` is only consulted when the edge list is empty
/// (the dimension cannot be inferred then); otherwise the dimension comes
/// from the edges and a nonzero hint must agree with it.
inline Graph build_graph(int n, std::vector<Edge> edges, int k_hint = 0) {
  if (n < 2) fail(Errc::BadEndpoint, "vertex count must be at least 2");
  int k = 0;
  for (Edge& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
      fail(Errc::BadEndpoint, "edge endpoint out of range 1.." + std::to_string(n));
    if (e.u == e.v)
      fail(Errc::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.w.empty()) fail(Errc::DimensionMismatch, "edge carries no weights");
    if (k == 0) k = static_cast<int>(e.w.size());
    if (static_cast<int>(e.w.size()) != k)
      fail(Errc::DimensionMismatch, "inconsistent weight dimension");
    for (double x : e.w)
      if (!(x > 0.0)) fail(Errc::NonPositiveWeight, "edge weights must be strictly positive");
  }
  if (k == 0) {
    if (k_hint < 1)
      fail(Errc::DimensionMismatch, "weight dimension unknown for edgeless graph");
    k = k_hint;
  } else if (k_hint != 0 && k_hint != k) {
    fail(Errc::DimensionMismatch, "weight dimension does not match header");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
      fail(Errc::DuplicateEdge, "duplicate edge (" + std::to_string(edges[i].u) +
                                    "," + std::to_string(edges[i].v) + ")");
  Graph g;
  g.n = n;
  g.k = k;
  g.edges = std::move(edges);
  return g;
}

namespace detail {

/// Membership mask over 1..n; rejects out-of-range vertices.
inline std::vector<char> vertex_mask(int n, const std::vector<int>& s) {
  std::vector<char> mask(static_cast<std::size_t>(n) + 1, 0);
  for (int v : s) {
    if (v < 1 || v > n)
      fail(Errc::BadEndpoint, "vertex " + std::to_string(v) + " out of range");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

}  // namespace detail

/// Neighbor lists (neighbor, edge id). Lists come out in ascending neighbor
/// order as a consequence of the canonical edge sort.
inline std::vector<std::vector<std::pair<int, std::size_t>>> adjacency(const Graph& g) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(g.n) + 1);
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const Edge& e = g.edges[id];
    adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
    adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
  }
  return adj;
}

/// Edges with exactly one endpoint in s. Identical for s and its complement.
inline std::vector<std::size_t> cut_edges(const Graph& g, const std::vector<int>& s) {
  const std::vector<char> mask = detail::vertex_mask(g.n, s);
  std::vector<std::size_t> cut;
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const Edge& e = g.edges[id];
    if (mask[static_cast<std::size_t>(e.u)] != mask[static_cast<std::size_t>(e.v)])
      cut.push_back(id);
  }
  return cut;
}

/// Multidimensional cut weight: per-coordinate sums over the cut edges and
/// their minimum. An empty cut has all-zero sums and weight 0.
inline CutReport cut_weight(const Graph& g, const std::vector<int>& s) {
  CutReport r;
  r.cut_edges = cut_edges(g, s);
  r.coordinate_sums.assign(static_cast<std::size_t>(g.k), 0.0);
  for (std::size_t id : r.cut_edges)
    for (int l = 0; l < g.k; ++l)
      r.coordinate_sums[static_cast<std::size_t>(l)] += g.edges[id].w[static_cast<std::size_t>(l)];
  r.weight = *std::min_element(r.coordinate_sums.begin(), r.coordinate_sums.end());
  return r;
}

/// True iff the subgraph induced by s is connected (graph search over edges
/// with both endpoints in s). s must be nonempty.
inline bool is_connected(const Graph& g, const std::vector<int>& s) {
  if (s.empty()) fail(Errc::EmptySet, "connectivity of an empty vertex set is undefined");
  const std::vector<char> mask = detail::vertex_mask(g.n, s);
  int total = 0;
  for (int v = 1; v <= g.n; ++v) total += mask[static_cast<std::size_t>(v)];

  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(g.n) + 1);
  for (const Edge& e : g.edges) {
    if (mask[static_cast<std::size_t>(e.u)] && mask[static_cast<std::size_t>(e.v)]) {
      nbr[static_cast<std::size_t>(e.u)].push_back(e.v);
      nbr[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<int> stack{s.front()};
  seen[static_cast<std::size_t>(s.front())] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int w : nbr[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == total;
}

/// Builds the canonical bisection from one side; the complement is derived.
/// The side containing vertex 1 becomes side_one.
inline Bisection make_bisection(int n, std::vector<int> side) {
  std::vector<char> mask(static_cast<std::size_t>(n) + 1, 0);
  for (int v : side) {
    if (v < 1 || v > n)
      fail(Errc::BadEndpoint, "vertex " + std::to_string(v) + " out of range");
    if (mask[static_cast<std::size_t>(v)])
      fail(Errc::BadEndpoint, "vertex " + std::to_string(v) + " listed twice");
    mask[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<int> other;
  for (int v = 1; v <= n; ++v)
    if (!mask[static_cast<std::size_t>(v)]) other.push_back(v);
  std::sort(side.begin(), side.end());
  Bisection b;
  if (!side.empty() && side.front() == 1) {
    b.side_one = std::move(side);
    b.side_two = std::move(other);
  } else {
    b.side_one = std::move(other);
    b.side_two = std::move(side);
  }
  return b;
}

/// True iff the sides partition 1..n, each holds exactly n/2 vertices, and
/// both induced subgraphs are connected. Malformed candidates yield false.
inline bool is_feasible_bisection(const Graph& g, const Bisection& b) {
  if (g.n % 2 != 0) return false;
  const int half = g.n / 2;
  if (static_cast<int>(b.side_one.size()) != half ||
      static_cast<int>(b.side_two.size()) != half)
    return false;
  std::vector<char> seen(static_cast<std::size_t>(g.n) + 1, 0);
  for (const std::vector<int>* side : {&b.side_one, &b.side_two}) {
    for (int v : *side) {
      if (v < 1 || v > g.n) return false;
      if (seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  return is_connected(g, b.side_one) && is_connected(g, b.side_two);
}

}  // namespace cmmbp
