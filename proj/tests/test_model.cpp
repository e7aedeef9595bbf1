#include <limits>
#include <map>
#include <random>
#include <set>

#include "cmmbp/certificate.hpp"
#include "cmmbp/model.hpp"
#include "test_common.hpp"

using namespace cmmbp;
using testutil::expect_error;
using testutil::load_fixture;

namespace {

std::map<int, int> rows_per_family(const MilpModel& model) {
  std::map<int, int> count;
  for (const LinearConstraint& c : model.constraints) ++count[c.tag];
  return count;
}

}  // namespace

TEST_CASE("variable table follows the fixed layout", "[model]") {
  const Graph g = load_fixture("cycle4.graph");
  const MilpModel model = build_model(extend_graph(g));
  const int n = 4, m = 4;
  REQUIRE(model.var_count() == 4 * n + 4 * m + 1);
  CHECK(model.vars[static_cast<std::size_t>(model.x_index(3))].name == "x_3");
  CHECK(model.vars[static_cast<std::size_t>(model.t_index(1))].name == "t_1_4");
  CHECK(model.vars[static_cast<std::size_t>(model.y_index(2))].name == "y_2_3");
  CHECK(model.vars[static_cast<std::size_t>(model.y_index(4))].name == "y_0_1");
  CHECK(model.vars[static_cast<std::size_t>(model.z_index(7))].name == "z_0_4");
  CHECK(model.vars[static_cast<std::size_t>(model.u_index(0))].name == "u_1_2");
  CHECK(model.vars[static_cast<std::size_t>(model.obj_index())].name == "U");
  CHECK(model.find_var("z_0_4") == model.z_index(7));
  CHECK(model.find_var("nope") == -1);

  int binaries = 0, continuous = 0;
  for (const VarInfo& v : model.vars) (v.binary ? binaries : continuous)++;
  CHECK(binaries == model.binary_count());
  CHECK(continuous == model.continuous_count());
}

TEST_CASE("model dimensions match the counting formulas", "[model][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    GeneratorConfig cfg;
    cfg.n = 4 + 2 * static_cast<int>(rng() % 4);
    cfg.edge_probability = 0.5;
    cfg.k = 1 + static_cast<int>(rng() % 3);
    cfg.seed = rng();
    const Graph g = random_instance(cfg);
    const MilpModel model = build_model(extend_graph(g));
    const int n = g.n, m = g.m(), k = g.k;
    CHECK(static_cast<int>(model.constraints.size()) == k + 6 * m + 5 * n + 5);
    CHECK(model.binary_count() == 3 * n + 3 * m);
    CHECK(model.continuous_count() == m + n + 1);
    const std::map<int, int> families = rows_per_family(model);
    CHECK(families == std::map<int, int>{{7, k},
                                         {8, m},
                                         {9, m},
                                         {10, 1},
                                         {11, m},
                                         {12, m},
                                         {13, n},
                                         {14, n},
                                         {15, m + n},
                                         {16, m + n},
                                         {17, n},
                                         {18, 1},
                                         {19, 1},
                                         {20, 1},
                                         {21, 1}});
  }
}

TEST_CASE("fixture models have the expected sizes", "[model]") {
  const MilpModel six = build_model(extend_graph(load_fixture("six.graph")));
  CHECK(six.binary_count() == 48);
  CHECK(six.continuous_count() == 17);
  CHECK(six.constraints.size() == 97);

  const MilpModel cyc = build_model(extend_graph(load_fixture("cycle4.graph")));
  CHECK(cyc.binary_count() == 24);
  CHECK(cyc.continuous_count() == 9);
  CHECK(cyc.constraints.size() == 51);

  const MilpModel tiny = build_model(extend_graph(load_fixture("n2_k1.graph")));
  CHECK(tiny.constraints.size() == 22);
}

TEST_CASE("row coefficients encode the instance", "[model]") {
  const Graph g = load_fixture("six.graph");
  const MilpModel model = build_model(extend_graph(g));
  const double half = g.n / 2.0;

  for (const LinearConstraint& c : model.constraints) {
    if (c.tag == 7) {
      // one term per edge, coefficient -w_el, plus the objective variable
      REQUIRE(c.terms.size() == static_cast<std::size_t>(g.m()) + 1);
      CHECK(c.relation == Relation::LessEq);
      CHECK(c.rhs == 0.0);
      for (const auto& [idx, coeff] : c.terms) {
        const VarInfo& v = model.vars[static_cast<std::size_t>(idx)];
        if (v.kind == VarKind::Obj) {
          CHECK(coeff == 1.0);
        } else {
          REQUIRE(v.kind == VarKind::T);
          const std::size_t e = static_cast<std::size_t>(idx - model.t_index(0));
          CHECK(coeff == -g.edges[e].w[static_cast<std::size_t>(c.tag_index - 1)]);
        }
      }
    }
    if (c.tag == 8) {
      CHECK(c.relation == Relation::GreaterEq);
      CHECK(c.rhs == 0.0);
      std::multiset<double> coeffs;
      for (const auto& [idx, coeff] : c.terms) coeffs.insert(coeff);
      CHECK(coeffs == std::multiset<double>{-1.0, 1.0, 1.0});
    }
    if (c.tag == 9) {
      CHECK(c.relation == Relation::LessEq);
      CHECK(c.rhs == 2.0);
      std::multiset<double> coeffs;
      for (const auto& [idx, coeff] : c.terms) coeffs.insert(coeff);
      CHECK(coeffs == std::multiset<double>{1.0, 1.0, 1.0});
    }
    if (c.tag == 15 || c.tag == 16) {
      REQUIRE(c.terms.size() == 3);
      const double sign = c.tag == 15 ? -1.0 : 1.0;
      for (const auto& [idx, coeff] : c.terms) {
        const VarInfo& v = model.vars[static_cast<std::size_t>(idx)];
        if (v.kind == VarKind::U)
          CHECK(coeff == 1.0);
        else
          CHECK(coeff == sign * half);
      }
    }
  }

  for (const VarInfo& v : model.vars) {
    if (v.kind == VarKind::U) {
      CHECK(v.lb == -half);
      CHECK(v.ub == half);
      CHECK_FALSE(v.binary);
    }
    if (v.kind == VarKind::Obj) {
      CHECK(v.lb == 0.0);
      CHECK(v.ub == std::numeric_limits<double>::infinity());
    }
  }
}

TEST_CASE("odd vertex counts are rejected", "[model][errors]") {
  const Graph g = build_graph(3, {{1, 2, {1.0}}, {2, 3, {1.0}}});
  expect_error(Errc::OddVertexCount, [&] { build_model(extend_graph(g)); });
}

TEST_CASE("check_assignment accepts a constructed witness exactly", "[model]") {
  const Graph g = load_fixture("six.graph");
  const Certificate cert = build_certificate(g, make_bisection(6, {1, 5, 6}));
  const ViolationReport report = check_assignment(cert.model, cert.assignment, 0.0);
  CHECK(report.feasible());
}

TEST_CASE("check_assignment pinpoints violated rows", "[model]") {
  const Graph g = load_fixture("six.graph");
  const MilpModel model = build_model(extend_graph(g));

  SECTION("placing every vertex on one side breaks the balance row") {
    Assignment a;
    a.values.assign(model.vars.size(), 0.0);
    for (int i = 1; i <= 6; ++i)
      a.values[static_cast<std::size_t>(model.x_index(i))] = 1.0;
    const ViolationReport report = check_assignment(model, a, 0.0);
    REQUIRE_FALSE(report.feasible());
    bool balance = false;
    for (const Violation& v : report.violations)
      if (v.row == "c10_1") {
        balance = true;
        CHECK(v.lhs == 6.0);
        CHECK(v.rhs == 3.0);
      }
    CHECK(balance);
  }

  SECTION("perturbing one flow breaks exactly its balance and total rows") {
    Certificate cert = build_certificate(g, make_bisection(6, {1, 5, 6}));
    const std::size_t star1 = static_cast<std::size_t>(g.m());  // extended id of (0,1)
    cert.assignment.values[static_cast<std::size_t>(cert.model.u_index(star1))] = 2.0;
    const ViolationReport report = check_assignment(cert.model, cert.assignment, 0.0);
    std::set<std::string> rows;
    for (const Violation& v : report.violations) rows.insert(v.row);
    CHECK(rows == std::set<std::string>{"c17_1", "c18_1"});
  }

  SECTION("tolerance masks small drift") {
    Certificate cert = build_certificate(g, make_bisection(6, {1, 5, 6}));
    cert.assignment.values[static_cast<std::size_t>(cert.model.x_index(1))] = 1.0 - 1e-9;
    CHECK_FALSE(check_assignment(cert.model, cert.assignment, 0.0).feasible());
    CHECK(check_assignment(cert.model, cert.assignment, 1e-6).feasible());
  }
}

TEST_CASE("check_assignment validates its inputs", "[model][errors]") {
  const MilpModel model = build_model(extend_graph(load_fixture("n2.graph")));
  Assignment a;
  a.values.assign(model.vars.size(), 0.0);
  expect_error(Errc::BadConfig, [&] { check_assignment(model, a, -1.0); });
  a.values.pop_back();
  expect_error(Errc::MissingVariable, [&] { check_assignment(model, a, 0.0); });
}
