#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmmbp/graph.hpp"
#include "cmmbp/lp_format.hpp"

namespace cmmbp {

/// Instance text format, one whitespace-separated record per line:
///
///     # optional comments
///     n m k
///     i j w1 ... wk     (m lines, any endpoint order, weights > 0)
///
/// '#' starts a comment anywhere in a line; blank lines are skipped.
/// Structural problems raise ParseError with the 1-based line number;
/// value problems raise NonPositiveWeight / DimensionMismatch likewise.
inline Graph parse_instance(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1, m = -1, k = -1;
  std::vector<Edge> edges;
  int seen_edges = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m >> k)) {
        std::string probe;
        std::istringstream retry(line);
        if (!(retry >> probe)) { n = -1; continue; }  // blank or comment-only
        fail(Errc::ParseError, "header must be 'n m k'", lineno);
      }
      std::string extra;
      if (ls >> extra)
        fail(Errc::ParseError, "trailing tokens after header", lineno);
      if (n < 2) fail(Errc::ParseError, "vertex count must be at least 2", lineno);
      if (m < 0) fail(Errc::ParseError, "edge count must be nonnegative", lineno);
      if (k < 1) fail(Errc::ParseError, "weight dimension must be at least 1", lineno);
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    int i, j;
    if (!(ls >> i)) {
      std::string probe;
      std::istringstream retry(line);
      if (!(retry >> probe)) continue;  // blank after comment strip
      fail(Errc::ParseError, "edge line must start with a vertex index", lineno);
    }
    if (!(ls >> j))
      fail(Errc::ParseError, "edge line needs two endpoints", lineno);
    if (seen_edges == m)
      fail(Errc::ParseError, "more than " + std::to_string(m) + " edge lines", lineno);
    Edge e;
    e.u = i;
    e.v = j;
    double w;
    while (ls >> w) {
      if (w <= 0)
        fail(Errc::NonPositiveWeight,
             "edge (" + std::to_string(i) + "," + std::to_string(j) +
                 ") has non-positive weight " + format_number(w),
             lineno);
      e.w.push_back(w);
    }
    if (!ls.eof())
      fail(Errc::ParseError, "malformed weight on edge line", lineno);
    if (static_cast<int>(e.w.size()) != k)
      fail(Errc::DimensionMismatch,
           "edge (" + std::to_string(i) + "," + std::to_string(j) + ") carries " +
               std::to_string(e.w.size()) + " weights, expected " + std::to_string(k),
           lineno);
    edges.push_back(std::move(e));
    ++seen_edges;
  }
  if (n < 0) fail(Errc::ParseError, "empty instance", lineno ? lineno : 1);
  if (seen_edges != m)
    fail(Errc::ParseError,
         "header promises " + std::to_string(m) + " edges, found " +
             std::to_string(seen_edges),
         lineno ? lineno : 1);
  return build_graph(n, std::move(edges), k);
}

inline Graph parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

/// Canonical text: header then edges in canonical (low, high) lexicographic
/// order, weights printed by the 12-significant-digit rule. Parsing the
/// output reproduces the graph, and writing a parsed canonical file is
/// byte-identical.
inline void write_instance(const Graph& g, std::ostream& out) {
  out << g.n << ' ' << g.m() << ' ' << g.k << "\n";
  for (const Edge& e : g.edges) {
    out << e.u << ' ' << e.v;
    for (double w : e.w) out << ' ' << format_number(w);
    out << "\n";
  }
}

inline std::string write_instance(const Graph& g) {
  std::ostringstream out;
  write_instance(g, out);
  return out.str();
}

struct GeneratorConfig {
  int n = 0;
  double edge_probability = 0.5;
  int k = 1;
  int weight_lo = 1;
  int weight_hi = 10;
  std::uint64_t seed = 0;
};

namespace detail {

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Connected simple graph, fully determined by the seed: a spanning tree on
/// a random vertex permutation guarantees connectivity, every remaining pair
/// joins independently with edge_probability, and integer weights are drawn
/// uniformly from [weight_lo, weight_hi] per edge in canonical edge order.
inline Graph random_instance(const GeneratorConfig& cfg) {
  if (cfg.n < 2 || cfg.n % 2 != 0)
    fail(Errc::BadConfig, "vertex count must be even and at least 2");
  if (!(cfg.edge_probability > 0.0) || cfg.edge_probability > 1.0)
    fail(Errc::BadConfig, "edge probability must lie in (0, 1]");
  if (cfg.k < 1) fail(Errc::BadConfig, "weight dimension must be at least 1");
  if (cfg.weight_lo < 1 || cfg.weight_hi < cfg.weight_lo)
    fail(Errc::BadConfig, "weight range needs 1 <= lo <= hi");

  std::mt19937_64 rng(cfg.seed);
  const int n = cfg.n;

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i >= 1; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(detail::rand_int(rng, 0, i))]);

  std::vector<std::vector<char>> present(
      static_cast<std::size_t>(n) + 1, std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i) {
    const int a = perm[static_cast<std::size_t>(i)];
    const int b = perm[static_cast<std::size_t>(detail::rand_int(rng, 0, i - 1))];
    present[static_cast<std::size_t>(std::min(a, b))][static_cast<std::size_t>(std::max(a, b))] = 1;
  }
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      if (!present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] &&
          detail::rand_unit(rng) < cfg.edge_probability)
        present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
      if (present[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
        pairs.emplace_back(u, v);
    }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    Edge e;
    e.u = u;
    e.v = v;
    e.w.reserve(static_cast<std::size_t>(cfg.k));
    for (int l = 0; l < cfg.k; ++l)
      e.w.push_back(static_cast<double>(detail::rand_int(rng, cfg.weight_lo, cfg.weight_hi)));
    edges.push_back(std::move(e));
  }
  return build_graph(n, std::move(edges), cfg.k);
}

}  // namespace cmmbp
