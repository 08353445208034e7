#pragma once

#include <cstdint>
#include <vector>

#include "rrp/rational.hpp"

namespace rrp {

struct WeightedEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  Rational weight;
};

// Maximum-weight matching in a general graph (not necessarily of maximum
// cardinality). Returns mate[v], or -1 for unmatched vertices. Self-loops and
// nonpositive edges never enter the matching.
std::vector<std::int64_t> max_weight_matching(std::uint32_t vertex_count, const std::vector<WeightedEdge>& edges);

// Maximum-weight simple subgraph with deg(v) <= capacity[v]. Returns the
// indices of the chosen edges in increasing order. Parallel edges are
// rejected (the input must be simple).
std::vector<std::size_t> max_weight_b_matching(const std::vector<std::uint32_t>& capacity,
                                               const std::vector<WeightedEdge>& edges);

}  // namespace rrp
