#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rrp/network.hpp"

namespace rrp {

enum class FamilyKind { kHypercube, kComplete, kCycle, kCompleteBinaryTree, kSquareGrid, kIndependentSet };

// Size sequences, by index i >= 0:
//   hypercube            Q_i, 2^i nodes
//   complete             K_{i+1}
//   cycle                C_{i+3}
//   complete-binary-tree height i, 2^{i+1}-1 nodes
//   square-grid          (i+1) x (i+1)
//   independent-set      i+1 isolated nodes
FamilyKind parse_family(std::string_view name);
std::string to_string(FamilyKind kind);

std::uint64_t family_size(FamilyKind kind, std::uint64_t index);

struct FamilyMember {
  std::uint64_t index = 0;
  std::uint64_t size = 0;
};

FamilyMember smallest_member_at_least(FamilyKind kind, std::uint64_t n);

inline constexpr std::uint64_t kExplicitHypercubeThreshold = std::uint64_t{1} << 16;

// Static network with unit weights and no switches. Hypercubes above the
// threshold use the implicit neighbour oracle.
HybridNetwork generate_family(FamilyKind kind, std::uint64_t index,
                              std::uint64_t explicit_threshold = kExplicitHypercubeThreshold);

// One switch with k*|V| ports; node of rank v uses ports k*v .. k*v+k-1.
// k = 0 returns the static network unchanged.
HybridNetwork attach_uniform_switch(const HybridNetwork& net, std::uint32_t ports_per_node,
                                    const std::string& switch_id = "s");

}  // namespace rrp
