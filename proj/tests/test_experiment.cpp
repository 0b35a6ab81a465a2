#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "spanorm/error.hpp"
#include "spanorm/experiment.hpp"
#include "spanorm/extremal.hpp"
#include "spanorm/families.hpp"

using namespace spanorm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("spanorm_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json small_spec(const std::string& out) {
  return json{{"name", "small"},
              {"families", {"er", "pg2"}},
              {"output", out},
              {"grid", {{"n", {30, 60}}, {"t", {3, 5}}, {"p", {1.5, 2}}, {"seeds", {0, 1}}, {"density", {1.3}}}}};
}

}  // namespace

TEST_CASE("verify_all on the Petersen graph") {
  const auto g = petersen_graph();
  const auto rep = verify_all(g, 3, NormSpec::finite(2));
  CHECK(rep.ok());
  for (const auto& c : rep.checks)
    if (c.applicable) CHECK_MESSAGE(c.passed, c.name);
  for (const char* name : {"greedy_stretch", "greedy_girth", "greedy_idempotent", "greedy_bound", "backtrack",
                           "oracle_dominance", "two_path_identity"}) {
    REQUIRE_MESSAGE(rep.find(name), name);
    CHECK(rep.find(name)->applicable);
  }
  CHECK(rep.find("no_such_check") == nullptr);
  CHECK_FALSE(rep.find("tree_uniqueness")->applicable);
  // bound value recomputed: 8 n^max(1, (k+p)/(kp)) with k = 2, p = 2
  CHECK(rep.find("greedy_bound")->bound == doctest::Approx(8 * 10.0));
}

TEST_CASE("verify_all with a supplied spanner") {
  const auto g = petersen_graph();
  auto ok = verify_all(g, 3, NormSpec::finite(2), &g);
  CHECK(ok.find("spanner_stretch")->passed);

  std::vector<Edge> es = g.edges();
  es.pop_back();
  const auto broken = Graph::from_edges(10, es);
  const auto rep = verify_all(g, 3, NormSpec::finite(2), &broken);
  CHECK_FALSE(rep.ok());
  CHECK(rep.find("spanner_subgraph")->passed);
  CHECK_FALSE(rep.find("spanner_stretch")->passed);
  CHECK(rep.find("spanner_stretch")->value >= 1);

  const auto foreign = Graph::from_edges(10, {{0, 2}});
  const auto bad = verify_all(g, 3, NormSpec::finite(2), &foreign);
  CHECK_FALSE(bad.find("spanner_subgraph")->passed);
  CHECK(bad.find("spanner_stretch") == nullptr);
}

TEST_CASE("verify_all on a tree") {
  const auto g = random_connected_graph(40, 39, 3);
  const auto rep = verify_all(g, 5, NormSpec::finite(1.5));
  CHECK(rep.ok());
  CHECK(rep.find("tree_uniqueness")->applicable);
  CHECK(rep.find("tree_uniqueness")->passed);
  CHECK(rep.find("greedy_idempotent")->passed);
}

TEST_CASE("small lower-bound grid") {
  LbGridSpec s;
  s.p = {"1.5", "2", "3", "phi"};
  s.t = {3, 4, 5};
  s.lambda_points = 6;
  s.exact = true;
  const auto rows = lb_grid(s, 2);
  CHECK(rows.size() == 4 * 3 * 6);
  std::size_t verified = 0;
  for (const auto& r : rows) {
    CHECK_MESSAGE(r.agree, r.p, " ", r.t, " ", r.lambda);
    CHECK(r.branch != "error");
    CHECK(r.certificate != "failed");
    verified += r.certificate == "verified";
    if (r.closed_form && r.p != "phi") CHECK_MESSAGE(r.exact == "exact", r.branch, " ", r.p, " ", r.t, " ", r.lambda);
    if (r.p == "phi") CHECK(r.exact.empty());
  }
  CHECK(verified > 0);
  // lambda spacing k (1 + 1/p) / points
  CHECK(rows[0].lambda == doctest::Approx(1.0 / 6 * (1 + 1 / 1.5)));
  CHECK(lb_grid(s, 1).size() == rows.size());
  std::ostringstream a, b;
  write_lb_grid_csv(a, rows);
  write_lb_grid_csv(b, lb_grid(s, 3));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("t,p,lambda,lcr,lp_ell,branch,", 0) == 0);
}

TEST_CASE("grid specs") {
  const auto std_spec = LbGridSpec::from_json(json::object());
  CHECK(std_spec.p == LbGridSpec::standard().p);
  const auto j = LbGridSpec::from_json(json{{"p", {2, "phi"}}, {"t", {3}}});
  CHECK(j.p == std::vector<std::string>{"2", "phi"});
  for (const auto& bad : {json{{"p", json::array()}}, json{{"p", {"1"}}}, json{{"t", {1}}},
                          json{{"p", {"x"}}}, json{{"lambda_points", 0}}}) {
    try {
      LbGridSpec::from_json(bad);
      CHECK_MESSAGE(false, bad.dump());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RejectedSpec);
    }
  }
  for (const auto& bad : {json{{"name", "x"}}, json{{"grid", {{"n", json::array()}, {"t", {3}}, {"p", {2}}}}},
                          json{{"grid", {{"n", {10}}, {"t", {4}}, {"p", {2}}}}},
                          json{{"families", {"foo"}}, {"grid", {{"n", {10}}, {"t", {3}}, {"p", {2}}}}},
                          json{{"grid", {{"n", {10}}, {"t", {3}}, {"p", {0.5}}}}}}) {
    try {
      ExperimentSpec::from_json(bad);
      CHECK_MESSAGE(false, bad.dump());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RejectedSpec);
    }
  }
}

TEST_CASE("spec hash") {
  const auto a = ExperimentSpec::from_json(small_spec("x"));
  const auto b = ExperimentSpec::from_json(small_spec("y"));
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  auto j = small_spec("x");
  j["grid"]["seeds"] = {0, 2};
  CHECK(ExperimentSpec::from_json(j).hash() != a.hash());
  CHECK(ExperimentSpec::from_json(a.to_json()).hash() == a.hash());
}

TEST_CASE("run_row against independent recomputation") {
  const auto spec = ExperimentSpec::from_json(small_spec("x"));
  const auto grid = experiment_grid(spec);
  // er: 2 n x 1 density x 2 seeds x 2 t x 2 p; pg2: 2 n x 2 t x 2 p
  CHECK(grid.size() == 16 + 8);
  for (const auto& cell : grid) {
    const auto r = run_row(spec, cell);
    REQUIRE(r.status == "ok");
    const Graph g = r.family == "er"
                        ? random_graph(r.n, static_cast<std::size_t>(std::round(std::pow(r.n, r.density))), r.seed)
                        : high_girth_host(2, r.n).graph;
    CHECK(r.vertices == g.num_vertices());
    CHECK(r.m_in == g.num_edges());
    const auto kept = oracle::greedy(g, r.t);
    CHECK(r.m_out == kept.size());
    const auto h = g.edge_subgraph(kept);
    CHECK(r.norm_H == doctest::Approx(oracle::norm(oracle::degrees(h), r.p)));
    const double k = static_cast<double>((r.t + 1) / 2);
    const double n = static_cast<double>(r.vertices);
    CHECK(r.bound == doctest::Approx(std::max(n, std::pow(n, (k + r.p) / (k * r.p)))));
    CHECK(r.girth_ok == "1");
    CHECK(r.stretch_ok == "1");
    CHECK(r.bound_ok == "1");
  }
}

TEST_CASE("run_experiment is deterministic and resumable") {
  TempDir d1("exp1"), d2("exp2");
  auto s1 = ExperimentSpec::from_json(small_spec(d1.path.string()));
  auto s2 = ExperimentSpec::from_json(small_spec(d2.path.string()));
  const auto r1 = run_experiment(s1, 1);
  const auto r2 = run_experiment(s2, 4);
  CHECK(r1.failures == 0);
  CHECK(r1.rows.size() == 24);
  CHECK(r1.resumed == 0);
  const auto csv1 = slurp(d1.path / "results.csv");
  CHECK(csv1 == slurp(d2.path / "results.csv"));
  const auto summary = json::parse(slurp(d1.path / "summary.json"));
  CHECK(summary["spec_hash"] == s1.hash());
  CHECK(summary["rows"] == 24);

  // cut the file mid-row and resume
  const auto cut = csv1.size() / 2;
  std::ofstream(d2.path / "results.csv", std::ios::trunc) << csv1.substr(0, cut);
  const auto r3 = run_experiment(s2, 2);
  CHECK(r3.resumed > 0);
  CHECK(r3.resumed < 24);
  CHECK(slurp(d2.path / "results.csv") == csv1);

  // a complete file needs no work
  const auto r4 = run_experiment(s2, 2);
  CHECK(r4.resumed == 24);
  CHECK(slurp(d2.path / "results.csv") == csv1);

  std::ofstream(d2.path / "results.csv", std::ios::trunc) << "wrong,header\n";
  CHECK_THROWS_AS(run_experiment(s2, 1), Error);

  s1.output.clear();
  CHECK_THROWS_AS(run_experiment(s1, 1), Error);
}

TEST_CASE("csv helpers") {
  for (const std::string s : {"plain", "with,comma", "with \"quote\"", "", "a\nb", " lead"}) {
    const auto line = csv_field(s) + "," + csv_field("x");
    const auto f = parse_csv_line(line);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == s);
    CHECK(f[1] == "x");
  }
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("q\"") == "\"q\"\"\"");
  CHECK(parse_csv_line("a,,b").size() == 3);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(format_number(1e20) == "1e+20");
  CHECK(format_number(2) == "2");
}
