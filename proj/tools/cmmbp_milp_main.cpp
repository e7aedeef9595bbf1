// Reference solver for LP files written by emit-lp: parses the model,
// recovers the embedded instance, optimizes exactly, and writes the witness
// assignment as a "name value" listing. Lets check-solution be exercised
// end to end without an external MILP package.

#include <fstream>
#include <iostream>
#include <string>

#include "cmmbp/certificate.hpp"
#include "cmmbp/lp_format.hpp"
#include "cmmbp/solve.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cmmbp-milp <model.lp> <out.sol>\n";
    return 1;
  }
  try {
    std::ifstream lp(argv[1]);
    if (!lp) {
      std::cerr << "error: cannot open '" << argv[1] << "'\n";
      return 1;
    }
    const cmmbp::MilpModel model = cmmbp::parse_lp(lp);
    const cmmbp::SolveReport report = cmmbp::branch_and_bound_solve(model.graph.base);
    if (report.status == cmmbp::SolveStatus::Infeasible) {
      std::cerr << "infeasible\n";
      return 2;
    }
    const cmmbp::Certificate cert =
        cmmbp::build_certificate(model.graph, report.best->first);
    std::ofstream sol(argv[2]);
    if (!sol) {
      std::cerr << "error: cannot write '" << argv[2] << "'\n";
      return 1;
    }
    for (std::size_t idx = 0; idx < cert.model.vars.size(); ++idx) {
      const double v = cert.assignment.values[idx];
      if (v == 0.0) continue;
      sol << cert.model.vars[idx].name << ' ' << cmmbp::format_number(v) << "\n";
    }
  } catch (const cmmbp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
