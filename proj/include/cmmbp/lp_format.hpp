#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmmbp/model.hpp"

namespace cmmbp {

/// Integers print without a decimal point, everything else with up to 12
/// significant digits. Round-trips every weight the instance format accepts.
inline std::string format_number(double value) {
  if (value == 0.0) return "0";  // avoids "-0"
  double rounded = std::nearbyint(value);
  if (value == rounded && std::abs(value) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", value);
    return buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace detail {

inline void append_term(std::string& line, bool first, double coeff,
                        const std::string& name) {
  const double mag = std::abs(coeff);
  if (first) {
    if (coeff < 0) line += "- ";
  } else {
    line += coeff < 0 ? " - " : " + ";
  }
  if (mag != 1.0) {
    line += format_number(mag);
    line += ' ';
  }
  line += name;
}

}  // namespace detail

/// Writes the model in LP text form: Maximize / Subject To / Bounds /
/// Binaries / End. Rows keep their c<family>_<index> names and list terms in
/// canonical variable order, so output is byte-stable for a given instance.
inline void emit_lp(const MilpModel& model, std::ostream& out) {
  out << "Maximize\n";
  out << model.vars[static_cast<std::size_t>(model.obj_index())].name << "\n";
  out << "Subject To\n";
  for (const LinearConstraint& c : model.constraints) {
    std::string line;
    bool first = true;
    for (const auto& [idx, coeff] : c.terms) {
      detail::append_term(line, first, coeff, model.vars[static_cast<std::size_t>(idx)].name);
      first = false;
    }
    out << c.row_name() << ": " << line << ' ' << relation_symbol(c.relation)
        << ' ' << format_number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const VarInfo& v : model.vars) {
    if (v.binary) continue;
    if (v.kind == VarKind::U)
      out << format_number(v.lb) << " <= " << v.name << " <= "
          << format_number(v.ub) << "\n";
    else
      out << v.name << " >= " << format_number(v.lb) << "\n";
  }
  out << "Binaries\n";
  {
    std::string line;
    for (const VarInfo& v : model.vars) {
      if (!v.binary) continue;
      if (!line.empty()) line += ' ';
      line += v.name;
    }
    out << line << "\n";
  }
  out << "End\n";
}

inline std::string emit_lp(const MilpModel& model) {
  std::ostringstream out;
  emit_lp(model, out);
  return out.str();
}

namespace detail {

struct LpToken {
  std::string text;
  int line = 0;
};

/// Splits LP text into tokens, attaching ':' to the preceding row name and
/// keeping relational operators whole. '\\' escapes nothing; the format has
/// no quoting.
inline std::vector<LpToken> lp_tokens(std::istream& in) {
  std::vector<LpToken> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = 0;
    const std::size_t len = line.size();
    while (pos < len) {
      if (std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
        continue;
      }
      if (line[pos] == '\\') break;  // comment to end of line
      std::size_t start = pos;
      while (pos < len && !std::isspace(static_cast<unsigned char>(line[pos])))
        ++pos;
      tokens.push_back({line.substr(start, pos - start), lineno});
    }
  }
  return tokens;
}

inline bool parse_lp_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

/// Variable name pattern: x_<i>, t_<i>_<j>, y_<i>_<j>, z_<i>_<j>, u_<i>_<j>,
/// or the bare objective name "U".
inline bool looks_like_var(const std::string& text) {
  if (text == "U") return true;
  if (text.size() < 3 || text[1] != '_') return false;
  const char c = text[0];
  return c == 'x' || c == 't' || c == 'y' || c == 'z' || c == 'u';
}

inline std::vector<int> var_subscripts(const std::string& name, int line) {
  std::vector<int> subs;
  std::size_t pos = 1;
  while (pos < name.size()) {
    if (name[pos] != '_')
      fail(Errc::ParseError, "malformed variable name '" + name + "'", line);
    ++pos;
    std::size_t start = pos;
    while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos])))
      ++pos;
    if (pos == start)
      fail(Errc::ParseError, "malformed variable name '" + name + "'", line);
    subs.push_back(std::stoi(name.substr(start, pos - start)));
  }
  return subs;
}

struct ParsedRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Relation relation = Relation::Equal;
  double rhs = 0.0;
  int line = 0;
};

}  // namespace detail

/// Reads LP text produced by emit_lp (or an equivalent hand-written file)
/// back into a MilpModel. The embedded graph, including edge weights, is
/// recovered from the variable table and the objective-bound rows c7_*, so a
/// parsed model supports the same checking and decoding as a built one.
/// Malformed input raises ParseError with a 1-based line number.
inline MilpModel parse_lp(std::istream& in) {
  using detail::LpToken;
  using detail::ParsedRow;

  const std::vector<LpToken> tokens = detail::lp_tokens(in);
  std::size_t pos = 0;
  const auto peek = [&]() -> const LpToken& {
    static const LpToken eof{"", 0};
    return pos < tokens.size() ? tokens[pos] : eof;
  };
  const auto at_end = [&] { return pos >= tokens.size(); };
  const auto expect_keyword = [&](const std::string& word) {
    if (at_end() || peek().text != word)
      fail(Errc::ParseError, "expected '" + word + "'",
           at_end() ? (tokens.empty() ? 1 : tokens.back().line) : peek().line);
    ++pos;
  };
  const auto is_section = [](const std::string& t) {
    return t == "Subject" || t == "Bounds" || t == "Binaries" || t == "End";
  };

  expect_keyword("Maximize");
  if (at_end() || peek().text != "U")
    fail(Errc::ParseError, "objective must be the single variable U",
         at_end() ? tokens.back().line : peek().line);
  ++pos;
  expect_keyword("Subject");
  expect_keyword("To");

  // Rows until a section keyword.
  std::vector<ParsedRow> rows;
  while (!at_end() && !is_section(peek().text)) {
    ParsedRow row;
    row.line = peek().line;
    std::string head = peek().text;
    if (head.empty() || head.back() != ':')
      fail(Errc::ParseError, "expected a row name ending in ':'", peek().line);
    row.name = head.substr(0, head.size() - 1);
    ++pos;

    double sign = 1.0;
    bool have_sign = false;
    bool have_relation = false;
    while (!at_end()) {
      const std::string& t = peek().text;
      if (t == "<=" || t == ">=" || t == "=") {
        row.relation = t == "<=" ? Relation::LessEq
                       : t == ">=" ? Relation::GreaterEq
                                   : Relation::Equal;
        ++pos;
        if (at_end()) fail(Errc::ParseError, "missing right-hand side", row.line);
        double rhs;
        if (!detail::parse_lp_number(peek().text, rhs))
          fail(Errc::ParseError, "bad right-hand side '" + peek().text + "'", peek().line);
        row.rhs = rhs;
        ++pos;
        have_relation = true;
        break;
      }
      if (t == "+") {
        sign = 1.0;
        have_sign = true;
        ++pos;
        continue;
      }
      if (t == "-") {
        sign = -1.0;
        have_sign = true;
        ++pos;
        continue;
      }
      double coeff;
      if (detail::parse_lp_number(t, coeff)) {
        ++pos;
        if (at_end() || !detail::looks_like_var(peek().text))
          fail(Errc::ParseError, "coefficient without a variable", peek().line ? peek().line : row.line);
        row.terms.emplace_back(peek().text, sign * coeff);
        ++pos;
      } else if (detail::looks_like_var(t)) {
        row.terms.emplace_back(t, sign);
        ++pos;
      } else {
        fail(Errc::ParseError, "unexpected token '" + t + "'", peek().line);
      }
      sign = 1.0;
      have_sign = false;
    }
    if (!have_relation)
      fail(Errc::ParseError, "row '" + row.name + "' has no relation", row.line);
    if (have_sign)
      fail(Errc::ParseError, "dangling sign in row '" + row.name + "'", row.line);
    rows.push_back(std::move(row));
  }

  // Bounds section: "<lo> <= u_i_j <= <hi>" or "<name> >= <lo>".
  expect_keyword("Bounds");
  struct BoundLine {
    std::string name;
    double lb = 0.0;
    double ub = 0.0;
    bool boxed = false;
  };
  std::vector<BoundLine> bounds;
  while (!at_end() && !is_section(peek().text)) {
    BoundLine b;
    double lo;
    if (detail::parse_lp_number(peek().text, lo)) {
      b.boxed = true;
      b.lb = lo;
      const int line = peek().line;
      ++pos;
      expect_keyword("<=");
      if (at_end() || !detail::looks_like_var(peek().text))
        fail(Errc::ParseError, "expected a variable in bound", line);
      b.name = peek().text;
      ++pos;
      expect_keyword("<=");
      if (at_end() || !detail::parse_lp_number(peek().text, b.ub))
        fail(Errc::ParseError, "bad upper bound", at_end() ? line : peek().line);
      ++pos;
    } else if (detail::looks_like_var(peek().text)) {
      b.name = peek().text;
      const int line = peek().line;
      ++pos;
      expect_keyword(">=");
      if (at_end() || !detail::parse_lp_number(peek().text, b.lb))
        fail(Errc::ParseError, "bad lower bound", at_end() ? line : peek().line);
      ++pos;
      b.ub = std::numeric_limits<double>::infinity();
    } else {
      fail(Errc::ParseError, "unexpected token '" + peek().text + "' in Bounds",
           peek().line);
    }
    bounds.push_back(std::move(b));
  }

  expect_keyword("Binaries");
  std::vector<detail::LpToken> binary_names;
  while (!at_end() && peek().text != "End") {
    if (!detail::looks_like_var(peek().text))
      fail(Errc::ParseError, "unexpected token '" + peek().text + "' in Binaries",
           peek().line);
    binary_names.push_back(peek());
    ++pos;
  }
  expect_keyword("End");

  // Reconstruct the instance from the variable table.
  int n = 0;
  std::vector<std::pair<int, int>> base_edges;
  for (const auto& tok : binary_names) {
    const auto subs = detail::var_subscripts(tok.text, tok.line);
    if (tok.text[0] == 'x') {
      if (subs.size() != 1)
        fail(Errc::ParseError, "x variable needs one subscript", tok.line);
      n = std::max(n, subs[0]);
    } else if (tok.text[0] == 't') {
      if (subs.size() != 2)
        fail(Errc::ParseError, "t variable needs two subscripts", tok.line);
      base_edges.emplace_back(subs[0], subs[1]);
    }
  }
  if (n == 0) fail(Errc::ParseError, "no x variables declared", 1);

  // Coordinate count and weights come from the c7 family.
  int k = 0;
  for (const ParsedRow& row : rows)
    if (row.name.rfind("c7_", 0) == 0) ++k;
  if (k == 0) fail(Errc::ParseError, "no objective rows (c7_*) present", 1);

  std::vector<Edge> edges;
  edges.reserve(base_edges.size());
  for (auto [u, v] : base_edges)
    edges.push_back(Edge{u, v, WeightVector(static_cast<std::size_t>(k), 1.0)});
  std::unordered_map<std::string, std::size_t> edge_by_tname;
  for (std::size_t e = 0; e < edges.size(); ++e)
    edge_by_tname.emplace(detail::edge_var_name('t', edges[e].u, edges[e].v), e);
  for (const ParsedRow& row : rows) {
    if (row.name.rfind("c7_", 0) != 0) continue;
    const int l = std::stoi(row.name.substr(3)) - 1;
    if (l < 0 || l >= k)
      fail(Errc::ParseError, "objective row index out of range in '" + row.name + "'",
           row.line);
    for (const auto& [name, coeff] : row.terms) {
      if (name[0] != 't') continue;
      auto it = edge_by_tname.find(name);
      if (it == edge_by_tname.end())
        fail(Errc::ParseError, "row references undeclared variable '" + name + "'",
             row.line);
      edges[it->second].w[static_cast<std::size_t>(l)] = -coeff;
    }
  }

  Graph g;
  try {
    g = build_graph(n, std::move(edges), k);
  } catch (const Error& e) {
    fail(Errc::ParseError, std::string("inconsistent model: ") + e.what(), 1);
  }
  MilpModel model = build_model(extend_graph(g));

  // Overlay the parsed rows so hand-edited files are checked as written.
  const auto var_index = [&](const std::string& name, int line) {
    const int idx = model.find_var(name);
    if (idx < 0)
      fail(Errc::ParseError, "unknown variable '" + name + "'", line);
    return idx;
  };
  std::vector<LinearConstraint> parsed;
  parsed.reserve(rows.size());
  for (const ParsedRow& row : rows) {
    LinearConstraint c;
    const std::size_t underscore = row.name.find('_');
    if (row.name.empty() || row.name[0] != 'c' || underscore == std::string::npos)
      fail(Errc::ParseError, "row name '" + row.name + "' is not c<family>_<index>",
           row.line);
    try {
      c.tag = std::stoi(row.name.substr(1, underscore - 1));
      c.tag_index = std::stoi(row.name.substr(underscore + 1));
    } catch (const std::exception&) {
      fail(Errc::ParseError, "row name '" + row.name + "' is not c<family>_<index>",
           row.line);
    }
    c.relation = row.relation;
    c.rhs = row.rhs;
    for (const auto& [name, coeff] : row.terms)
      c.terms.emplace_back(var_index(name, row.line), coeff);
    std::sort(c.terms.begin(), c.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    parsed.push_back(std::move(c));
  }
  model.constraints = std::move(parsed);

  // Overlay parsed bounds on the continuous variables.
  for (const BoundLine& b : bounds) {
    const int idx = var_index(b.name, 1);
    VarInfo& v = model.vars[static_cast<std::size_t>(idx)];
    v.lb = b.lb;
    v.ub = b.boxed ? b.ub : std::numeric_limits<double>::infinity();
  }
  return model;
}

inline MilpModel parse_lp(const std::string& text) {
  std::istringstream in(text);
  return parse_lp(in);
}

/// Reads a solution listing: one "name value" pair per whitespace-separated
/// token stream, '#' starts a comment. Unlisted variables default to 0.
/// Unknown names raise UnknownVariableName; a bare name without a value
/// raises ParseError.
inline Assignment read_external_solution(const MilpModel& model, std::istream& in) {
  Assignment a;
  a.values.assign(model.vars.size(), 0.0);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name;
    while (ls >> name) {
      std::string value_text;
      if (!(ls >> value_text))
        fail(Errc::ParseError, "variable '" + name + "' has no value", lineno);
      const int idx = model.find_var(name);
      if (idx < 0)
        fail(Errc::UnknownVariableName, "unknown variable '" + name + "'", lineno);
      double value;
      if (!detail::parse_lp_number(value_text, value))
        fail(Errc::ParseError, "bad value '" + value_text + "' for '" + name + "'",
             lineno);
      a.values[static_cast<std::size_t>(idx)] = value;
    }
  }
  return a;
}

inline Assignment read_external_solution(const MilpModel& model,
                                         const std::string& text) {
  std::istringstream in(text);
  return read_external_solution(model, in);
}

}  // namespace cmmbp
