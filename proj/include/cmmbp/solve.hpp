#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cmmbp/graph.hpp"

namespace cmmbp {

enum class SolveStatus { Optimal, Feasible, Infeasible };

inline const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::pair<Bisection, CutReport>> best;
  long long nodes_explored = 0;  ///< candidates examined / search nodes entered
  std::chrono::duration<double> elapsed{0.0};
  bool optimality_proved = false;

  double weight() const { return best ? best->second.weight : 0.0; }
};

struct BruteForceOptions {
  /// With the filter off the oracle optimizes over all balanced partitions,
  /// connected or not, which upper-bounds the connected optimum.
  bool require_connected = true;
};

namespace detail {

inline void require_even(const Graph& g) {
  if (g.n % 2 != 0)
    fail(Errc::OddVertexCount,
         "bisection needs an even vertex count, got " + std::to_string(g.n));
}

/// Steps `combo` (ascending values bounded by `hi`) to its lexicographic
/// successor. Returns false once exhausted.
inline bool next_combination(std::vector<int>& combo, int hi) {
  const int r = static_cast<int>(combo.size());
  int i = r - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == hi - (r - 1 - i)) --i;
  if (i < 0) return false;
  ++combo[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j)
    combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace detail

/// Exhaustive oracle: enumerates every balanced side containing vertex 1 in
/// lexicographic order, keeps the feasible one with the largest weight, and
/// breaks ties toward the lexicographically smallest side. Exact but
/// exponential; meant for n up to about 20.
inline SolveReport brute_force_solve(const Graph& g, const BruteForceOptions& opts) {
  detail::require_even(g);
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;

  const int r = g.n / 2 - 1;  // companions of vertex 1
  std::vector<int> combo(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) combo[static_cast<std::size_t>(j)] = j + 2;
  std::vector<int> side;
  side.reserve(static_cast<std::size_t>(g.n / 2));
  bool more = true;
  while (more) {
    ++report.nodes_explored;
    side.assign(1, 1);
    side.insert(side.end(), combo.begin(), combo.end());
    const Bisection b = make_bisection(g.n, side);
    const bool ok = !opts.require_connected ||
                    (is_connected(g, b.side_one) && is_connected(g, b.side_two));
    if (ok) {
      CutReport cut = cut_weight(g, b.side_one);
      if (!report.best || cut.weight > report.best->second.weight)
        report.best = {b, std::move(cut)};
    }
    more = r > 0 && detail::next_combination(combo, g.n);
  }

  report.status = report.best ? SolveStatus::Optimal : SolveStatus::Infeasible;
  report.optimality_proved = true;
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

inline SolveReport brute_force_solve(const Graph& g) {
  return brute_force_solve(g, BruteForceOptions{});
}

/// One search node as seen by the bounding step: the partial assignment
/// (0 undecided, 1 side one, 2 side two, by vertex) and the optimistic bound
/// computed for it. Recorded only when a trace sink is installed.
struct BranchTraceNode {
  std::vector<std::int8_t> assign;
  double bound = 0.0;
};

struct BranchTrace {
  std::vector<BranchTraceNode> nodes;
};

struct BranchAndBoundOptions {
  std::optional<std::chrono::duration<double>> time_limit;
  BranchTrace* trace = nullptr;
};

namespace detail {

struct BnbState {
  const Graph* g = nullptr;
  std::vector<std::vector<std::pair<int, std::size_t>>> adj;
  std::vector<double> total;  ///< per-coordinate sum of all weights
  std::vector<std::int8_t> assign;
  int count_one = 0;
  int count_two = 0;
  SolveReport report;
  double incumbent = -1.0;
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  bool timed_out = false;
  BranchTrace* trace = nullptr;
};

/// True when every vertex already placed on `side` lies in one component of
/// the graph induced by that side plus the undecided vertices. If not, no
/// completion can reconnect the side.
inline bool side_reconnectable(const BnbState& st, std::int8_t side) {
  const int n = st.g->n;
  int seed = 0;
  for (int v = 1; v <= n; ++v)
    if (st.assign[static_cast<std::size_t>(v)] == side) { seed = v; break; }
  if (seed == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> queue{seed};
  seen[static_cast<std::size_t>(seed)] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    for (const auto& [w, eid] : st.adj[static_cast<std::size_t>(v)]) {
      (void)eid;
      const std::int8_t a = st.assign[static_cast<std::size_t>(w)];
      if (a != side && a != 0) continue;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      queue.push_back(w);
    }
  }
  for (int v = 1; v <= n; ++v)
    if (st.assign[static_cast<std::size_t>(v)] == side && !seen[static_cast<std::size_t>(v)])
      return false;
  return true;
}

inline void bnb_leaf(BnbState& st) {
  const int n = st.g->n;
  std::vector<int> side;
  side.reserve(static_cast<std::size_t>(n / 2));
  for (int v = 1; v <= n; ++v)
    if (st.assign[static_cast<std::size_t>(v)] == 1) side.push_back(v);
  const Bisection b = make_bisection(n, side);
  if (!is_connected(*st.g, b.side_one) || !is_connected(*st.g, b.side_two)) return;
  CutReport cut = cut_weight(*st.g, b.side_one);
  if (!st.report.best || cut.weight > st.incumbent) {
    st.incumbent = cut.weight;
    st.report.best = {b, std::move(cut)};
  }
}

/// Depth-first branching on vertex membership, side one first so complete
/// assignments appear in lexicographic side-one order. `dead` carries the
/// per-coordinate weight already locked inside a side (never cuttable).
inline void bnb_node(BnbState& st, int next_vertex, std::vector<double> dead) {
  if (st.timed_out) return;
  if (st.has_deadline && std::chrono::steady_clock::now() >= st.deadline) {
    st.timed_out = true;
    return;
  }
  ++st.report.nodes_explored;
  const int n = st.g->n;
  const int k = st.g->k;

  double bound = std::numeric_limits<double>::infinity();
  for (int l = 0; l < k; ++l)
    bound = std::min(bound, st.total[static_cast<std::size_t>(l)] -
                                dead[static_cast<std::size_t>(l)]);
  if (st.trace)
    st.trace->nodes.push_back({st.assign, bound});
  if (st.report.best && bound <= st.incumbent) return;

  if (!side_reconnectable(st, 1) || !side_reconnectable(st, 2)) return;

  const auto fill_rest = [&](std::int8_t side) {
    std::vector<int> filled;
    for (int v = next_vertex; v <= n; ++v)
      if (st.assign[static_cast<std::size_t>(v)] == 0) {
        st.assign[static_cast<std::size_t>(v)] = side;
        filled.push_back(v);
      }
    bnb_leaf(st);
    for (int v : filled) st.assign[static_cast<std::size_t>(v)] = 0;
  };
  if (st.count_one == n / 2) {
    fill_rest(2);
    return;
  }
  if (st.count_two == n / 2) {
    fill_rest(1);
    return;
  }
  if (next_vertex > n) {  // unreachable: one side fills first
    bnb_leaf(st);
    return;
  }

  for (std::int8_t side : {std::int8_t{1}, std::int8_t{2}}) {
    st.assign[static_cast<std::size_t>(next_vertex)] = side;
    side == 1 ? ++st.count_one : ++st.count_two;
    std::vector<double> child_dead = dead;
    for (const auto& [w, eid] : st.adj[static_cast<std::size_t>(next_vertex)]) {
      if (w >= next_vertex || st.assign[static_cast<std::size_t>(w)] != side) continue;
      for (int l = 0; l < k; ++l)
        child_dead[static_cast<std::size_t>(l)] +=
            st.g->edges[eid].w[static_cast<std::size_t>(l)];
    }
    bnb_node(st, next_vertex + 1, std::move(child_dead));
    side == 1 ? --st.count_one : --st.count_two;
    st.assign[static_cast<std::size_t>(next_vertex)] = 0;
    if (st.timed_out) return;
  }
}

}  // namespace detail

/// Exact depth-first search with vertex 1 pinned to side one. Prunes on the
/// optimistic per-coordinate bound (everything not yet locked inside a side
/// counts toward the cut), on unreconnectable partial sides, and on side
/// capacity. Returns Optimal when the search finishes, Feasible with the
/// incumbent when the time limit strikes first, and Infeasible when a
/// finished search found nothing. Ties break toward the lexicographically
/// smallest side one.
inline SolveReport branch_and_bound_solve(const Graph& g,
                                          const BranchAndBoundOptions& opts) {
  detail::require_even(g);
  const auto start = std::chrono::steady_clock::now();

  detail::BnbState st;
  st.g = &g;
  st.adj = adjacency(g);
  st.total.assign(static_cast<std::size_t>(g.k), 0.0);
  for (const Edge& e : g.edges)
    for (int l = 0; l < g.k; ++l)
      st.total[static_cast<std::size_t>(l)] += e.w[static_cast<std::size_t>(l)];
  st.assign.assign(static_cast<std::size_t>(g.n) + 1, 0);
  st.assign[1] = 1;
  st.count_one = 1;
  st.trace = opts.trace;
  if (opts.time_limit) {
    st.has_deadline = true;
    st.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              *opts.time_limit);
  }

  detail::bnb_node(st, 2, std::vector<double>(static_cast<std::size_t>(g.k), 0.0));

  SolveReport report = std::move(st.report);
  if (st.timed_out) {
    report.status = report.best ? SolveStatus::Feasible : SolveStatus::Infeasible;
    report.optimality_proved = false;
  } else {
    report.status = report.best ? SolveStatus::Optimal : SolveStatus::Infeasible;
    report.optimality_proved = true;
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

inline SolveReport branch_and_bound_solve(const Graph& g) {
  return branch_and_bound_solve(g, BranchAndBoundOptions{});
}

inline SolveReport branch_and_bound_solve(const Graph& g,
                                          std::chrono::duration<double> time_limit) {
  BranchAndBoundOptions opts;
  opts.time_limit = time_limit;
  return branch_and_bound_solve(g, opts);
}

/// Greedy construction plus best-improvement swaps. The first construction
/// grows side one from vertex 1, always taking the frontier vertex whose
/// addition yields the largest cut weight (ties toward the smallest index);
/// later attempts grow by uniformly random frontier picks. A construction
/// whose complement is disconnected is discarded. Then up to `iterations`
/// rounds swap one non-pinned boundary vertex per side, keeping only strict
/// improvements that preserve two-sided connectivity. Never claims
/// optimality; reports Infeasible after 50 failed constructions.
inline SolveReport local_search_solve(const Graph& g, std::uint64_t seed,
                                      int iterations) {
  detail::require_even(g);
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  std::mt19937_64 rng(seed);
  const auto adj = adjacency(g);
  const int half = g.n / 2;
  constexpr int kMaxConstructions = 50;

  std::vector<int> side;
  Bisection current;
  bool constructed = false;
  for (int attempt = 0; attempt < kMaxConstructions && !constructed; ++attempt) {
    side.assign(1, 1);
    std::vector<char> in_side(static_cast<std::size_t>(g.n) + 1, 0);
    in_side[1] = 1;
    while (static_cast<int>(side.size()) < half) {
      std::vector<int> frontier;
      for (int v : side)
        for (const auto& [w, eid] : adj[static_cast<std::size_t>(v)]) {
          (void)eid;
          if (!in_side[static_cast<std::size_t>(w)]) frontier.push_back(w);
        }
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      if (frontier.empty()) break;  // isolated component smaller than n/2
      int pick = 0;
      if (attempt == 0) {
        double best_weight = -1.0;
        for (int v : frontier) {
          side.push_back(v);
          const double w = cut_weight(g, side).weight;
          side.pop_back();
          if (w > best_weight) {
            best_weight = w;
            pick = v;
          }
        }
      } else {
        pick = frontier[static_cast<std::size_t>(rng() % frontier.size())];
      }
      side.push_back(pick);
      in_side[static_cast<std::size_t>(pick)] = 1;
    }
    ++report.nodes_explored;
    if (static_cast<int>(side.size()) != half) continue;
    Bisection b = make_bisection(g.n, side);
    if (!is_feasible_bisection(g, b)) continue;
    current = std::move(b);
    constructed = true;
  }
  if (!constructed) {
    report.status = SolveStatus::Infeasible;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
  }

  CutReport current_cut = cut_weight(g, current.side_one);
  for (int round = 0; round < iterations; ++round) {
    double best_weight = current_cut.weight;
    std::optional<std::pair<int, int>> best_move;
    for (int a : current.side_one) {
      if (a == 1) continue;
      for (int b : current.side_two) {
        std::vector<int> trial = current.side_one;
        *std::find(trial.begin(), trial.end(), a) = b;
        ++report.nodes_explored;
        const Bisection tb = make_bisection(g.n, trial);
        if (!is_feasible_bisection(g, tb)) continue;
        const double w = cut_weight(g, tb.side_one).weight;
        if (w > best_weight) {
          best_weight = w;
          best_move = {a, b};
        }
      }
    }
    if (!best_move) break;
    std::vector<int> next = current.side_one;
    *std::find(next.begin(), next.end(), best_move->first) = best_move->second;
    current = make_bisection(g.n, next);
    current_cut = cut_weight(g, current.side_one);
  }

  report.status = SolveStatus::Feasible;
  report.best = {current, current_cut};
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace cmmbp
