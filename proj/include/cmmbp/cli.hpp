#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmmbp/certificate.hpp"
#include "cmmbp/instance_io.hpp"
#include "cmmbp/solve.hpp"

namespace cmmbp {

namespace detail {

inline Graph load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  return parse_instance(in);
}

inline std::vector<int> parse_vertex_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::ParseError,
           "partition must be a comma-separated list of vertex indices, got '" +
               item + "'");
    }
  }
  if (out.empty())
    fail(Errc::ParseError, "partition list is empty");
  return out;
}

inline void print_vertices(std::ostream& out, const char* label,
                           const std::vector<int>& vs) {
  out << label << ':';
  for (int v : vs) out << ' ' << v;
  out << "\n";
}

inline void print_cut_report(std::ostream& out, const Graph& g, const CutReport& cut) {
  out << "cut_edges:";
  for (std::size_t e : cut.cut_edges)
    out << " (" << g.edges[e].u << ',' << g.edges[e].v << ')';
  out << "\n";
  out << "coordinate_sums:";
  for (double s : cut.coordinate_sums) out << ' ' << format_number(s);
  out << "\n";
  out << "weight: " << format_number(cut.weight) << "\n";
}

inline int cmd_solve(std::ostream& out, const std::string& file,
                     const std::string& engine, std::optional<double> time_limit,
                     std::uint64_t seed) {
  const Graph g = load_instance_file(file);
  SolveReport report;
  if (engine == "brute") {
    report = brute_force_solve(g);
  } else if (engine == "ls") {
    report = local_search_solve(g, seed, 100);
  } else {
    BranchAndBoundOptions opts;
    if (time_limit) opts.time_limit = std::chrono::duration<double>(*time_limit);
    report = branch_and_bound_solve(g, opts);
  }
  out << "status: " << solve_status_name(report.status) << "\n";
  if (report.best) {
    print_vertices(out, "V1", report.best->first.side_one);
    print_vertices(out, "V2", report.best->first.side_two);
    print_cut_report(out, g, report.best->second);
  }
  return report.status == SolveStatus::Infeasible ? 2 : 0;
}

inline int cmd_verify(std::ostream& out, const std::string& file,
                      const std::string& partition) {
  const Graph g = load_instance_file(file);
  const Bisection b = make_bisection(g.n, parse_vertex_list(partition));
  if (!is_feasible_bisection(g, b)) {
    out << "feasible: no\n";
    return 2;
  }
  out << "feasible: yes\n";
  print_cut_report(out, g, cut_weight(g, b.side_one));
  return 0;
}

inline int cmd_certificate(std::ostream& out, const std::string& file,
                           const std::string& partition) {
  const Graph g = load_instance_file(file);
  const Bisection b = make_bisection(g.n, parse_vertex_list(partition));
  const Certificate cert = build_certificate(g, b);
  out << "p: " << cert.root_one << "\n";
  out << "q: " << cert.root_two << "\n";
  out << "nonzero variables:\n";
  for (std::size_t idx = 0; idx < cert.model.vars.size(); ++idx) {
    const double v = cert.assignment.values[idx];
    if (v == 0.0) continue;
    out << cert.model.vars[idx].name << " = " << format_number(v) << "\n";
  }
  const ViolationReport check = check_assignment(cert.model, cert.assignment, 0.0);
  out << "check: " << check.violations.size() << " violations (tol=0)\n";
  for (const Violation& v : check.violations) out << "violated: " << v.row << "\n";
  return check.feasible() ? 0 : 1;
}

inline int cmd_emit_lp(std::ostream& out, const std::string& file,
                       const std::string& out_path) {
  const Graph g = load_instance_file(file);
  const MilpModel model = build_model(extend_graph(g));
  if (out_path.empty()) {
    emit_lp(model, out);
    return 0;
  }
  std::ofstream lp(out_path);
  if (!lp) fail(Errc::BadConfig, "cannot write '" + out_path + "'");
  emit_lp(model, lp);
  return 0;
}

inline int cmd_check_solution(std::ostream& out, const std::string& file,
                              const std::string& sol_path) {
  const Graph g = load_instance_file(file);
  const MilpModel model = build_model(extend_graph(g));
  std::ifstream sol(sol_path);
  if (!sol) fail(Errc::ParseError, "cannot open '" + sol_path + "'");
  const Assignment a = read_external_solution(model, sol);
  const ViolationReport check = check_assignment(model, a, 1e-6);
  if (!check.feasible()) {
    out << "feasible: no\n";
    for (const Violation& v : check.violations) out << "violated: " << v.row << "\n";
    return 2;
  }
  const auto [b, cut] = decode_assignment(model, a);
  out << "feasible: yes\n";
  print_vertices(out, "V1", b.side_one);
  print_vertices(out, "V2", b.side_two);
  print_cut_report(out, g, cut);
  return 0;
}

inline int cmd_generate(std::ostream& out, const GeneratorConfig& cfg,
                        const std::string& out_path) {
  const Graph g = random_instance(cfg);
  if (out_path.empty()) {
    write_instance(g, out);
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) fail(Errc::BadConfig, "cannot write '" + out_path + "'");
  write_instance(g, f);
  return 0;
}

}  // namespace detail

/// Command-line driver. `args` excludes the program name. Returns 0 on
/// success (including Optimal/Feasible solves), 2 on infeasible outcomes,
/// 1 on errors; usage problems print to `err`.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"connected balanced bisection with multidimensional weights"};
  app.name("cmmbp");
  app.require_subcommand(1);

  std::string file, partition, engine = "bnb", out_path, sol_path;
  std::optional<double> time_limit;
  std::uint64_t seed = 0;
  GeneratorConfig gen;
  gen.n = 8;
  gen.edge_probability = 0.5;

  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--engine", engine, "brute, bnb, or ls")
      ->check(CLI::IsMember({"brute", "bnb", "ls"}));
  solve->add_option("--time-limit", time_limit, "seconds before bnb returns the incumbent");
  solve->add_option("--seed", seed, "random seed for the ls engine");

  CLI::App* verify = app.add_subcommand("verify", "check a partition for feasibility");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("--partition", partition, "comma-separated vertices of one side")
      ->required();

  CLI::App* certificate =
      app.add_subcommand("certificate", "build and check a witness for a partition");
  certificate->add_option("file", file, "instance file")->required();
  certificate->add_option("--partition", partition, "comma-separated vertices of one side")
      ->required();

  CLI::App* emit = app.add_subcommand("emit-lp", "write the integer program");
  emit->add_option("file", file, "instance file")->required();
  emit->add_option("-o,--output", out_path, "output path (default stdout)");

  CLI::App* check =
      app.add_subcommand("check-solution", "validate an external solver's solution");
  check->add_option("file", file, "instance file")->required();
  check->add_option("--lp-solution", sol_path, "solution listing file")->required();

  CLI::App* generate = app.add_subcommand("generate", "write a random instance");
  generate->add_option("--n", gen.n, "vertex count (even)");
  generate->add_option("--p", gen.edge_probability, "non-tree edge probability");
  generate->add_option("--k", gen.k, "weight dimension");
  generate->add_option("--lo", gen.weight_lo, "smallest weight");
  generate->add_option("--hi", gen.weight_hi, "largest weight");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("-o,--output", out_path, "output path (default stdout)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve))
      return detail::cmd_solve(out, file, engine, time_limit, seed);
    if (app.got_subcommand(verify)) return detail::cmd_verify(out, file, partition);
    if (app.got_subcommand(certificate))
      return detail::cmd_certificate(out, file, partition);
    if (app.got_subcommand(emit)) return detail::cmd_emit_lp(out, file, out_path);
    if (app.got_subcommand(check))
      return detail::cmd_check_solution(out, file, sol_path);
    if (app.got_subcommand(generate)) return detail::cmd_generate(out, gen, out_path);
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << "\n";
    return e.code() == Errc::InfeasibleBisection || e.code() == Errc::InfeasibleAssignment
               ? 2
               : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cmmbp
