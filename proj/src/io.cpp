#include "spanorm/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "spanorm/error.hpp"

namespace spanorm {

namespace {

bool next_record(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& msg) {
  fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_record(in, line, lineno)) fail(ErrorCode::Parse, "empty edge list");
  long long n = -1, m = -1;
  {
    std::istringstream hs(line);
    if (!(hs >> n >> m) || n < 0 || m < 0) parse_fail(lineno, "expected header 'n m'");
  }
  GraphBuilder b(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    if (!next_record(in, line, lineno))
      fail(ErrorCode::Parse, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream es(line);
    long long u = -1, v = -1;
    if (!(es >> u >> v)) parse_fail(lineno, "expected 'u v [w]'");
    double w = 1.0;
    std::string rest;
    if (es >> rest) {
      std::istringstream ws(rest);
      std::string extra;
      if (!(ws >> w) || !ws.eof() || (es >> extra)) parse_fail(lineno, "bad edge length '" + rest + "'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) parse_fail(lineno, "vertex id out of range");
    b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
  }
  if (next_record(in, line, lineno)) parse_fail(lineno, "trailing data after edge list");
  return b.build();
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges()[i];
    out << e.u << ' ' << e.v;
    if (g.weighted()) out << ' ' << g.lengths()[i];
    out << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace spanorm
