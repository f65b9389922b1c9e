#pragma once

#include <iosfwd>
#include <string>

#include <dcsp/digraph.hpp>

namespace dcsp
{

// text format: line 1 "n <N>"; then "e <u> <v>" arc lines, optional "u <v>"
// mark lines, "#" comments; 0-based indices
MarkedDigraph read_digraph_text(std::istream & in);
MarkedDigraph read_digraph_file(const std::string & path);
void write_digraph_text(std::ostream & out, const MarkedDigraph & d);
std::string digraph_to_text(const MarkedDigraph & d);

std::string digraph_to_json(const MarkedDigraph & d);
MarkedDigraph digraph_from_json(const std::string & text);

std::string digraph_to_dot(const MarkedDigraph & d);

}
