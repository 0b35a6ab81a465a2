#pragma once

#include <filesystem>
#include <iosfwd>

#include "spanorm/graph.hpp"

namespace spanorm {

// Edge-list text format: first non-comment line "n m", then m lines "u v" or
// "u v w". Lines starting with '#' are comments.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace spanorm
