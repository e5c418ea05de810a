#pragma once

#include "glv/grid.hpp"
#include "glv/links.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace glv {

// GLFIELD 1 text format:
//   GLFIELD 1
//   <dim> <n> <side> <origin components...> natural|mperiodic [flux]
//   one "re im" line per site, row-major, %.17g
void dump_field(const ComplexField& u, const std::string& path);
ComplexField load_field(const std::string& path);

// GLLINKS 1: grid line as above plus coupling, then per-axis theta blocks.
void dump_links(const LinkPhases& l, const std::string& path);

std::string format_g17(double x);

std::uint64_t fnv1a64(const std::string& s);

// Hash of the canonical "key = value" listing, sorted by key.
std::string config_hash(std::vector<std::pair<std::string, std::string>> kv);

} // namespace glv
