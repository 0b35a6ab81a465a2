#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "spanorm/families.hpp"
#include "spanorm/io.hpp"

using namespace spanorm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout only; stderr goes to /dev/null
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" SPANORM_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* f = ::popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, got);
  const int st = ::pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("spanorm_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("greedy --input /nonexistent/file -t 3").code == 2);
  CHECK(run("lb --t 3 --p 2 --lambda 9").code == 2);
  CHECK(run("lb --t 3 --p 2").code == 2);
  CHECK(run("--format xml lb --t 3 --p 2 --lambda 1").code == 2);
  CHECK(run("gen --family named --params name").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("cli greedy and norm") {
  Scratch s;
  std::ostringstream os;
  const auto g = random_graph(30, 90, 5);
  write_edge_list(os, g);
  const auto in = s.file("g.edges", os.str());
  const auto r = run("greedy --input " + in + " -t 3 --p 2 --output " + s.path("h.edges"));
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  const auto kept = oracle::greedy(g, 3);
  CHECK(j["m_in"] == 90);
  CHECK(j["m_out"] == kept.size());
  const auto h = g.edge_subgraph(kept);
  CHECK(j["norm_p"].get<double>() == doctest::Approx(oracle::norm(oracle::degrees(h), 2)));
  CHECK(read_edge_list(fs::path(s.path("h.edges"))) == h);

  const auto c = run("--format csv norm --input " + in + " --p 1 2 inf");
  REQUIRE(c.code == 0);
  std::istringstream lines(c.out);
  std::string head, row, extra;
  std::getline(lines, head);
  std::getline(lines, row);
  CHECK(head == "m,n,norms.1,norms.2,norms.inf");
  CHECK(row.rfind("90,30,180", 0) == 0);
  CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("cli lb") {
  const auto a = run("lb --t 3 --p 2 --lambda 1 --exact");
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["ell"] == "1/2");
  const auto b = run("lb --t 2 --p 1.5 --lambda 1", "SPANORM_EXACT=1");
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["ell"] == "3/5");
  const auto c = run("lb --t 3 --p 2 --lambda 1 --certificate");
  REQUIRE(c.code == 0);
  const auto j = json::parse(c.out);
  CHECK(j["ell"].get<double>() == doctest::Approx(0.5));
  CHECK(j["verified"] == true);
}

TEST_CASE("cli verify exit codes") {
  Scratch s;
  const auto g = s.file("p3.edges", "3 2\n0 1\n1 2\n");
  const auto bad = s.file("s.edges", "3 1\n0 1\n");
  CHECK(run("verify --input " + g + " -t 3 --spanner " + g).code == 0);
  const auto r = run("verify --input " + g + " -t 3 --spanner " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("spanner_stretch") != std::string::npos);
}

TEST_CASE("cli gen round trip and determinism") {
  Scratch s;
  const auto a = run("gen --family named --params name=petersen --out " + s.path("a"));
  REQUIRE(a.code == 0);
  CHECK(read_edge_list(fs::path(s.path("a.host.edges"))) == petersen_graph());
  const auto j = json::parse(a.out);
  CHECK(j["ok"] == true);
  CHECK(j["girth"] == 5);

  const std::string lcr = "gen --family lcr --params t=3,p=2,nL=16 --seed 3 --out ";
  const auto x = run(lcr + s.path("x"));
  const auto y = run(lcr + s.path("y"));
  REQUIRE(x.code == 0);
  CHECK(slurp(s.path("x.host.edges")) == slurp(s.path("y.host.edges")));
  CHECK(slurp(s.path("x.spanner.edges")) == slurp(s.path("y.spanner.edges")));
  CHECK_FALSE(slurp(s.path("x.host.edges")).empty());
}

TEST_CASE("cli oracle") {
  Scratch s;
  const auto in = s.file("k4.edges", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  const auto r = run("oracle --input " + in + " -t 3 --p 2");
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  std::string text = j.dump();
  CHECK(text.find("3.16227766") != std::string::npos);
}

TEST_CASE("cli gen rejects unknown parameters") {
  CHECK(run("gen --family lcr --params t=3,p=2,n_L=16").code == 2);
  CHECK(run("gen --family named --params name=nosuch").code == 2);
}
