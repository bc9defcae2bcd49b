#pragma once

#include <iosfwd>
#include <string>

#include "hamlab/hypergraph.hpp"

namespace hamlab {

// Text format: first line "n k"; every following line that does not start
// with '#' holds k strictly increasing 0-based labels separated by single
// spaces; edges appear in lexicographic order; the file ends with a newline.

auto parse_hypergraph(const std::string& text) -> Hypergraph;
auto read_hypergraph(std::istream& in) -> Hypergraph;
auto read_hypergraph_file(const std::string& path) -> Hypergraph;

/// Serialize the edge set; implicit backends are materialized under `budget`.
auto format_hypergraph(const Hypergraph& h, Budget& budget) -> std::string;
auto format_hypergraph(const Hypergraph& h) -> std::string;
auto write_hypergraph_file(const Hypergraph& h, const std::string& path) -> void;

}  // namespace hamlab
