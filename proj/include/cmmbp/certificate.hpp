#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cmmbp/model.hpp"

namespace cmmbp {

/// A fully populated assignment witnessing that a feasible bisection
/// satisfies every model constraint, together with the structures the
/// construction chose: one root and one spanning tree per side. Tree edge
/// lists hold extended edge ids and include the root's star edge.
struct Certificate {
  MilpModel model;
  Assignment assignment;
  int root_one = 0;
  int root_two = 0;
  std::vector<std::size_t> tree_one;
  std::vector<std::size_t> tree_two;

  double objective() const {
    return assignment.values[static_cast<std::size_t>(model.obj_index())];
  }
};

namespace detail {

/// Root choice: the side vertex covering the most cut edges, ties broken
/// toward the smallest index. Anchoring the flow source at a cut-heavy
/// vertex keeps the tree near the boundary.
inline int pick_root(const Graph& g, const std::vector<char>& in_side,
                     const std::vector<std::size_t>& cut) {
  std::vector<int> degree(static_cast<std::size_t>(g.n) + 1, 0);
  for (std::size_t e : cut) {
    ++degree[static_cast<std::size_t>(g.edges[e].u)];
    ++degree[static_cast<std::size_t>(g.edges[e].v)];
  }
  int best = 0;
  for (int i = 1; i <= g.n; ++i) {
    if (!in_side[static_cast<std::size_t>(i)]) continue;
    if (best == 0 || degree[static_cast<std::size_t>(i)] > degree[static_cast<std::size_t>(best)])
      best = i;
  }
  return best;
}

struct SideTree {
  int root = 0;
  std::vector<int> parent;            ///< by vertex; root and off-side = 0
  std::vector<std::size_t> parent_edge;  ///< base edge id linking to parent
  std::vector<int> preorder;
  std::vector<int> subtree_size;      ///< by vertex
};

/// Depth-first spanning tree of the side, exploring neighbors in ascending
/// vertex order. The side is known connected, so the tree spans it.
inline SideTree grow_tree(const Graph& g,
                          const std::vector<std::vector<std::pair<int, std::size_t>>>& adj,
                          const std::vector<char>& in_side, int root) {
  SideTree tree;
  tree.root = root;
  const std::size_t slots = static_cast<std::size_t>(g.n) + 1;
  tree.parent.assign(slots, 0);
  tree.parent_edge.assign(slots, static_cast<std::size_t>(-1));
  tree.subtree_size.assign(slots, 0);
  std::vector<char> visited(slots, 0);

  std::vector<std::pair<int, std::size_t>> stack;  // (vertex, next adjacency slot)
  visited[static_cast<std::size_t>(root)] = 1;
  tree.preorder.push_back(root);
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    const int v = stack.back().first;
    std::size_t pos = stack.back().second;
    const auto& nbrs = adj[static_cast<std::size_t>(v)];
    int next = 0;
    std::size_t next_edge = 0;
    while (pos < nbrs.size()) {
      const auto [w, eid] = nbrs[pos];
      ++pos;
      if (in_side[static_cast<std::size_t>(w)] && !visited[static_cast<std::size_t>(w)]) {
        next = w;
        next_edge = eid;
        break;
      }
    }
    stack.back().second = pos;
    if (next == 0) {
      stack.pop_back();
      continue;
    }
    visited[static_cast<std::size_t>(next)] = 1;
    tree.parent[static_cast<std::size_t>(next)] = v;
    tree.parent_edge[static_cast<std::size_t>(next)] = next_edge;
    tree.preorder.push_back(next);
    stack.emplace_back(next, 0);
  }

  for (int v : tree.preorder) tree.subtree_size[static_cast<std::size_t>(v)] = 1;
  for (auto it = tree.preorder.rbegin(); it != tree.preorder.rend(); ++it) {
    const int v = *it;
    const int p = tree.parent[static_cast<std::size_t>(v)];
    if (p != 0)
      tree.subtree_size[static_cast<std::size_t>(p)] +=
          tree.subtree_size[static_cast<std::size_t>(v)];
  }
  return tree;
}

}  // namespace detail

/// Builds the witness assignment for a feasible bisection: membership and
/// cut indicators from the partition, one depth-first spanning tree per side
/// rooted per detail::pick_root, flows equal to signed subtree sizes on tree
/// edges, and n/2 units entering each root from vertex 0. The result
/// satisfies every constraint exactly (integer arithmetic throughout), so
/// check_assignment passes at tolerance 0.
inline Certificate build_certificate(const ExtendedGraph& eg, const Bisection& b) {
  const Graph& g = eg.base;
  if (!is_feasible_bisection(g, b))
    fail(Errc::InfeasibleBisection,
         "bisection is not a balanced pair of connected sides");

  Certificate cert;
  cert.model = build_model(eg);
  const MilpModel& model = cert.model;
  cert.assignment.values.assign(model.vars.size(), 0.0);
  std::vector<double>& val = cert.assignment.values;

  const std::vector<char> in_one = detail::vertex_mask(g.n, b.side_one);
  const std::vector<char> in_two = detail::vertex_mask(g.n, b.side_two);
  for (int i : b.side_one) val[static_cast<std::size_t>(model.x_index(i))] = 1.0;

  const CutReport cut = cut_weight(g, b.side_one);
  for (std::size_t e : cut.cut_edges) val[static_cast<std::size_t>(model.t_index(e))] = 1.0;
  val[static_cast<std::size_t>(model.obj_index())] = cut.weight;

  cert.root_one = detail::pick_root(g, in_one, cut.cut_edges);
  cert.root_two = detail::pick_root(g, in_two, cut.cut_edges);

  const auto adj = adjacency(g);
  const int m = g.m();
  const auto place_tree = [&](const std::vector<char>& in_side, int root,
                              bool first_side, std::vector<std::size_t>& out_edges) {
    const detail::SideTree tree = detail::grow_tree(g, adj, in_side, root);
    const std::size_t star = static_cast<std::size_t>(m + root - 1);
    const int tree_var = first_side ? model.y_index(star) : model.z_index(star);
    val[static_cast<std::size_t>(tree_var)] = 1.0;
    out_edges.push_back(star);
    val[static_cast<std::size_t>(model.u_index(star))] = g.n / 2.0;
    for (int v : tree.preorder) {
      if (v == root) continue;
      const std::size_t e = tree.parent_edge[static_cast<std::size_t>(v)];
      out_edges.push_back(e);
      const int evar = first_side ? model.y_index(e) : model.z_index(e);
      val[static_cast<std::size_t>(evar)] = 1.0;
      // Flow runs parent -> child carrying the child's subtree size; the
      // stored value is signed by the edge's canonical (low, high) order.
      const double size = tree.subtree_size[static_cast<std::size_t>(v)];
      const bool child_is_high = g.edges[e].v == v;
      val[static_cast<std::size_t>(model.u_index(e))] = child_is_high ? size : -size;
    }
    std::sort(out_edges.begin(), out_edges.end());
  };
  place_tree(in_one, cert.root_one, true, cert.tree_one);
  place_tree(in_two, cert.root_two, false, cert.tree_two);
  return cert;
}

inline Certificate build_certificate(const Graph& g, const Bisection& b) {
  return build_certificate(extend_graph(g), b);
}

/// Recovers the partition encoded in an assignment's membership variables.
/// Every x value must sit within `tol` of 0 or 1 and the induced partition
/// must be a feasible bisection; otherwise InfeasibleAssignment. Tree, cut,
/// and flow variables are ignored, and the cut report is recomputed from the
/// graph, so near-feasible relaxation output decodes to exact numbers.
inline std::pair<Bisection, CutReport> decode_assignment(const MilpModel& model,
                                                         const Assignment& a,
                                                         double tol = 1e-6) {
  if (a.values.size() != model.vars.size())
    fail(Errc::MissingVariable,
         "assignment covers " + std::to_string(a.values.size()) + " of " +
             std::to_string(model.vars.size()) + " variables");
  std::vector<int> members;
  for (int i = 1; i <= model.n; ++i) {
    const double v = a.values[static_cast<std::size_t>(model.x_index(i))];
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol)
      fail(Errc::InfeasibleAssignment,
           "x_" + std::to_string(i) + " = " + std::to_string(v) + " is not binary");
    if (v > 0.5) members.push_back(i);
  }
  Bisection b = make_bisection(model.n, members);
  if (!is_feasible_bisection(model.graph.base, b))
    fail(Errc::InfeasibleAssignment,
         "membership variables do not induce a balanced pair of connected sides");
  return {b, cut_weight(model.graph.base, b.side_one)};
}

/// Checks the flow-splitting property a valid witness must have: vertex 0
/// sends exactly two nonzero flows, n/2 into each root, one root per side.
inline bool verify_lemma1(const Certificate& cert) {
  const MilpModel& model = cert.model;
  const int n = model.n;
  const int m = model.m;
  const std::vector<double>& val = cert.assignment.values;

  std::vector<int> fed;  // vertices receiving nonzero flow from vertex 0
  for (int i = 1; i <= n; ++i) {
    const double u = val[static_cast<std::size_t>(
        model.u_index(static_cast<std::size_t>(m + i - 1)))];
    if (u == 0.0) continue;
    if (u != n / 2.0) return false;
    fed.push_back(i);
  }
  if (fed.size() != 2) return false;
  const double x_a = val[static_cast<std::size_t>(model.x_index(fed[0]))];
  const double x_b = val[static_cast<std::size_t>(model.x_index(fed[1]))];
  return (x_a == 1.0) != (x_b == 1.0);
}

}  // namespace cmmbp
