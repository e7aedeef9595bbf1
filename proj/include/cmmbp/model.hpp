#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmmbp/graph.hpp"

namespace cmmbp {

/// Base graph plus a root vertex 0 joined to every original vertex by a star
/// edge (0,i). Star edges carry no weights; they exist to anchor the two
/// spanning trees and the flow variables.
struct ExtendedGraph {
  Graph base;
  std::vector<Edge> star_edges;  ///< (0,i) for i = 1..n, in vertex order

  int n() const { return base.n; }
  int m() const { return base.m(); }
  /// m + n extended edges. Ids 0..m-1 are base edges in canonical order,
  /// m..m+n-1 are star edges (0,1)..(0,n).
  int edge_count() const { return base.m() + base.n; }

  bool is_star(std::size_t id) const { return id >= base.edges.size(); }

  std::pair<int, int> endpoints(std::size_t id) const {
    if (!is_star(id)) return {base.edges[id].u, base.edges[id].v};
    return {0, static_cast<int>(id - base.edges.size()) + 1};
  }
};

inline ExtendedGraph extend_graph(const Graph& g) {
  ExtendedGraph eg;
  eg.base = g;
  eg.star_edges.reserve(static_cast<std::size_t>(g.n));
  for (int i = 1; i <= g.n; ++i) eg.star_edges.push_back(Edge{0, i, {}});
  return eg;
}

/// Variable families of the model. x is indexed by vertices, t by base
/// edges, y/z/u by extended edges, Obj ("U") is the scalar objective value.
enum class VarKind { X, T, Y, Z, U, Obj };

inline char var_kind_letter(VarKind k) {
  switch (k) {
    case VarKind::X: return 'x';
    case VarKind::T: return 't';
    case VarKind::Y: return 'y';
    case VarKind::Z: return 'z';
    case VarKind::U: return 'u';
    case VarKind::Obj: return 'U';
  }
  return '?';
}

struct VarInfo {
  VarKind kind = VarKind::Obj;
  int i = 0;  ///< x: vertex id; edge kinds: tail (0 for stars)
  int j = 0;  ///< edge kinds: head
  double lb = 0.0;
  double ub = 0.0;  ///< +inf encoded as std::numeric_limits<double>::infinity()
  bool binary = false;
  std::string name;
};

enum class Relation { LessEq, GreaterEq, Equal };

inline const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::GreaterEq: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

/// One linear row. `tag` is the constraint-family number used in row names
/// (c7..c21) and violation reports; `tag_index` is 1-based within the family.
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;  ///< (var index, coeff), ascending index
  Relation relation = Relation::Equal;
  double rhs = 0.0;
  int tag = 0;
  int tag_index = 0;

  std::string row_name() const {
    return "c" + std::to_string(tag) + "_" + std::to_string(tag_index);
  }
};

/// Solver-neutral form of the bisection model over an extended graph.
///
/// Variable table layout (fixed): x_1..x_n, t over the base edges, then y,
/// z, u over the extended edges, then U. Binaries are x/t/y/z (3n+3m of
/// them); u and U are continuous (m+n+1). Constraint count is k + 6m + 5n + 5.
struct MilpModel {
  ExtendedGraph graph;
  int n = 0;
  int m = 0;
  int k = 0;
  std::vector<VarInfo> vars;
  std::vector<LinearConstraint> constraints;
  std::unordered_map<std::string, int> var_by_name;

  int var_count() const { return static_cast<int>(vars.size()); }
  int binary_count() const { return 3 * n + 3 * m; }
  int continuous_count() const { return m + n + 1; }

  int x_index(int vertex) const { return vertex - 1; }
  int t_index(std::size_t edge) const { return n + static_cast<int>(edge); }
  int y_index(std::size_t ext_edge) const { return n + m + static_cast<int>(ext_edge); }
  int z_index(std::size_t ext_edge) const { return n + 2 * m + n + static_cast<int>(ext_edge); }
  int u_index(std::size_t ext_edge) const { return n + 3 * m + 2 * n + static_cast<int>(ext_edge); }
  int obj_index() const { return 4 * n + 4 * m; }

  /// Index for a named variable, or -1.
  int find_var(const std::string& name) const {
    auto it = var_by_name.find(name);
    return it == var_by_name.end() ? -1 : it->second;
  }
};

/// Value for every model variable, aligned with MilpModel::vars.
struct Assignment {
  std::vector<double> values;
};

struct Violation {
  std::string row;  ///< constraint row name, or bound_<var> / integrality_<var>
  double lhs = 0.0;
  Relation relation = Relation::Equal;
  double rhs = 0.0;
  double slack = 0.0;  ///< amount of violation, always positive
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

namespace detail {

inline std::string edge_var_name(char letter, int u, int v) {
  return std::string(1, letter) + "_" + std::to_string(u) + "_" + std::to_string(v);
}

inline void push_var(MilpModel& model, VarKind kind, int i, int j, double lb,
                     double ub, bool binary, std::string name) {
  VarInfo info;
  info.kind = kind;
  info.i = i;
  info.j = j;
  info.lb = lb;
  info.ub = ub;
  info.binary = binary;
  info.name = std::move(name);
  model.var_by_name.emplace(info.name, static_cast<int>(model.vars.size()));
  model.vars.push_back(std::move(info));
}

inline void push_row(MilpModel& model, int tag, int tag_index,
                     std::vector<std::pair<int, double>> terms, Relation rel,
                     double rhs) {
  LinearConstraint c;
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  c.terms = std::move(terms);
  c.relation = rel;
  c.rhs = rhs;
  c.tag = tag;
  c.tag_index = tag_index;
  model.constraints.push_back(std::move(c));
}

}  // namespace detail

/// Materializes the full model: objective max U, rows c7..c21, binaries and
/// flow bounds. Requires an even vertex count.
inline MilpModel build_model(const ExtendedGraph& eg) {
  const int n = eg.n();
  const int m = eg.m();
  const int k = eg.base.k;
  if (n % 2 != 0)
    fail(Errc::OddVertexCount, "bisection model needs an even vertex count, got " + std::to_string(n));
  const double half = n / 2.0;
  const double inf = std::numeric_limits<double>::infinity();

  MilpModel model;
  model.graph = eg;
  model.n = n;
  model.m = m;
  model.k = k;
  model.vars.reserve(static_cast<std::size_t>(4 * n + 4 * m + 1));

  using detail::edge_var_name;
  using detail::push_row;
  using detail::push_var;

  for (int i = 1; i <= n; ++i)
    push_var(model, VarKind::X, i, 0, 0, 1, true, "x_" + std::to_string(i));
  for (const Edge& e : eg.base.edges)
    push_var(model, VarKind::T, e.u, e.v, 0, 1, true, edge_var_name('t', e.u, e.v));
  for (int id = 0; id < m + n; ++id) {
    auto [u, v] = eg.endpoints(static_cast<std::size_t>(id));
    push_var(model, VarKind::Y, u, v, 0, 1, true, edge_var_name('y', u, v));
  }
  for (int id = 0; id < m + n; ++id) {
    auto [u, v] = eg.endpoints(static_cast<std::size_t>(id));
    push_var(model, VarKind::Z, u, v, 0, 1, true, edge_var_name('z', u, v));
  }
  for (int id = 0; id < m + n; ++id) {
    auto [u, v] = eg.endpoints(static_cast<std::size_t>(id));
    push_var(model, VarKind::U, u, v, -half, half, false, edge_var_name('u', u, v));
  }
  push_var(model, VarKind::Obj, 0, 0, 0, inf, false, "U");

  // c7: the objective variable is at most every coordinate sum over cut edges,
  // rewritten as U - sum_e w_el t_e <= 0 for each coordinate l.
  for (int l = 0; l < k; ++l) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e)
      terms.emplace_back(model.t_index(e), -eg.base.edges[e].w[static_cast<std::size_t>(l)]);
    terms.emplace_back(model.obj_index(), 1.0);
    push_row(model, 7, l + 1, std::move(terms), Relation::LessEq, 0.0);
  }
  // c8/c9: t_e can be 1 only when the endpoints split across the sides.
  for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
    const Edge& ed = eg.base.edges[e];
    push_row(model, 8, static_cast<int>(e) + 1,
             {{model.x_index(ed.u), 1.0}, {model.x_index(ed.v), 1.0}, {model.t_index(e), -1.0}},
             Relation::GreaterEq, 0.0);
  }
  for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
    const Edge& ed = eg.base.edges[e];
    push_row(model, 9, static_cast<int>(e) + 1,
             {{model.x_index(ed.u), 1.0}, {model.x_index(ed.v), 1.0}, {model.t_index(e), 1.0}},
             Relation::LessEq, 2.0);
  }
  // c10: both sides hold exactly n/2 vertices.
  {
    std::vector<std::pair<int, double>> terms;
    for (int i = 1; i <= n; ++i) terms.emplace_back(model.x_index(i), 1.0);
    push_row(model, 10, 1, std::move(terms), Relation::Equal, half);
  }
  // c11/c12: a base edge may enter a spanning tree only inside its side.
  for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
    const Edge& ed = eg.base.edges[e];
    push_row(model, 11, static_cast<int>(e) + 1,
             {{model.x_index(ed.u), -0.5}, {model.x_index(ed.v), -0.5}, {model.y_index(e), 1.0}},
             Relation::LessEq, 0.0);
  }
  for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
    const Edge& ed = eg.base.edges[e];
    push_row(model, 12, static_cast<int>(e) + 1,
             {{model.x_index(ed.u), 0.5}, {model.x_index(ed.v), 0.5}, {model.z_index(e), 1.0}},
             Relation::LessEq, 1.0);
  }
  // c13/c14: a star edge (0,i) may enter the tree of the side holding i.
  for (int i = 1; i <= n; ++i) {
    const std::size_t star = static_cast<std::size_t>(m + i - 1);
    push_row(model, 13, i,
             {{model.x_index(i), -1.0}, {model.y_index(star), 1.0}},
             Relation::LessEq, 0.0);
  }
  for (int i = 1; i <= n; ++i) {
    const std::size_t star = static_cast<std::size_t>(m + i - 1);
    push_row(model, 14, i,
             {{model.x_index(i), 1.0}, {model.z_index(star), 1.0}},
             Relation::LessEq, 1.0);
  }
  // c15/c16: flow only on tree edges, |u_e| <= (n/2)(y_e + z_e).
  for (int id = 0; id < m + n; ++id) {
    const std::size_t e = static_cast<std::size_t>(id);
    push_row(model, 15, id + 1,
             {{model.y_index(e), -half}, {model.z_index(e), -half}, {model.u_index(e), 1.0}},
             Relation::LessEq, 0.0);
  }
  for (int id = 0; id < m + n; ++id) {
    const std::size_t e = static_cast<std::size_t>(id);
    push_row(model, 16, id + 1,
             {{model.y_index(e), half}, {model.z_index(e), half}, {model.u_index(e), 1.0}},
             Relation::GreaterEq, 0.0);
  }
  // c17: flow conservation, every original vertex consumes one unit.
  // Incoming edges are those whose head is i under the canonical orientation
  // (base edges (a,i) with a < i, plus the star edge (0,i)).
  for (int i = 1; i <= n; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
      const Edge& ed = eg.base.edges[e];
      if (ed.v == i) terms.emplace_back(model.u_index(e), 1.0);
      else if (ed.u == i) terms.emplace_back(model.u_index(e), -1.0);
    }
    terms.emplace_back(model.u_index(static_cast<std::size_t>(m + i - 1)), 1.0);
    push_row(model, 17, i, std::move(terms), Relation::Equal, 1.0);
  }
  // c18: the root injects n units of flow.
  {
    std::vector<std::pair<int, double>> terms;
    for (int i = 1; i <= n; ++i)
      terms.emplace_back(model.u_index(static_cast<std::size_t>(m + i - 1)), 1.0);
    push_row(model, 18, 1, std::move(terms), Relation::Equal, static_cast<double>(n));
  }
  // c19/c20: each spanning tree uses n/2 - 1 base edges.
  {
    std::vector<std::pair<int, double>> yterms, zterms;
    for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) {
      yterms.emplace_back(model.y_index(e), 1.0);
      zterms.emplace_back(model.z_index(e), 1.0);
    }
    push_row(model, 19, 1, std::move(yterms), Relation::Equal, half - 1.0);
    push_row(model, 20, 1, std::move(zterms), Relation::Equal, half - 1.0);
  }
  // c21: exactly two star edges are used, one per tree.
  {
    std::vector<std::pair<int, double>> terms;
    for (int i = 1; i <= n; ++i)
      terms.emplace_back(model.y_index(static_cast<std::size_t>(m + i - 1)), 1.0);
    for (int i = 1; i <= n; ++i)
      terms.emplace_back(model.z_index(static_cast<std::size_t>(m + i - 1)), 1.0);
    push_row(model, 21, 1, std::move(terms), Relation::Equal, 2.0);
  }
  return model;
}

/// Evaluates every row, bound, and integrality condition of the model against
/// an assignment. Entries appear for violations exceeding `tol`. Internally
/// constructed certificates are integer-valued and pass with tol = 0;
/// solver-produced assignments should use a small positive tolerance.
inline ViolationReport check_assignment(const MilpModel& model, const Assignment& a,
                                        double tol) {
  if (tol < 0) fail(Errc::BadConfig, "tolerance must be nonnegative");
  if (a.values.size() != model.vars.size())
    fail(Errc::MissingVariable,
         "assignment covers " + std::to_string(a.values.size()) + " of " +
             std::to_string(model.vars.size()) + " variables");

  ViolationReport report;
  for (const LinearConstraint& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& [idx, coeff] : c.terms)
      lhs += coeff * a.values[static_cast<std::size_t>(idx)];
    double slack = 0.0;
    switch (c.relation) {
      case Relation::LessEq: slack = lhs - c.rhs; break;
      case Relation::GreaterEq: slack = c.rhs - lhs; break;
      case Relation::Equal: slack = std::abs(lhs - c.rhs); break;
    }
    if (slack > tol)
      report.violations.push_back({c.row_name(), lhs, c.relation, c.rhs, slack});
  }
  for (std::size_t idx = 0; idx < model.vars.size(); ++idx) {
    const VarInfo& v = model.vars[idx];
    const double val = a.values[idx];
    if (v.binary) {
      const double nearest = val < 0.5 ? 0.0 : 1.0;
      if (std::abs(val - nearest) > tol)
        report.violations.push_back({"integrality_" + v.name, val, Relation::Equal,
                                     nearest, std::abs(val - nearest)});
      continue;
    }
    if (val < v.lb - tol)
      report.violations.push_back({"bound_" + v.name, val, Relation::GreaterEq, v.lb,
                                   v.lb - val});
    if (val > v.ub + tol)
      report.violations.push_back({"bound_" + v.name, val, Relation::LessEq, v.ub,
                                   val - v.ub});
  }
  return report;
}

}  // namespace cmmbp
