#include "rrp/topology.hpp"

#include "rrp/errors.hpp"

namespace rrp {

FamilyKind parse_family(std::string_view name) {
  if (name == "hypercube") return FamilyKind::kHypercube;
  if (name == "complete") return FamilyKind::kComplete;
  if (name == "cycle") return FamilyKind::kCycle;
  if (name == "complete-binary-tree") return FamilyKind::kCompleteBinaryTree;
  if (name == "square-grid") return FamilyKind::kSquareGrid;
  if (name == "independent-set") return FamilyKind::kIndependentSet;
  throw ParseError("unknown family \"" + std::string(name) + "\"");
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kHypercube:
      return "hypercube";
    case FamilyKind::kComplete:
      return "complete";
    case FamilyKind::kCycle:
      return "cycle";
    case FamilyKind::kCompleteBinaryTree:
      return "complete-binary-tree";
    case FamilyKind::kSquareGrid:
      return "square-grid";
    case FamilyKind::kIndependentSet:
      return "independent-set";
  }
  return "unknown";
}

std::uint64_t family_size(FamilyKind kind, std::uint64_t i) {
  switch (kind) {
    case FamilyKind::kHypercube:
      if (i > 62) throw TooLargeError("hypercube index too large");
      return std::uint64_t{1} << i;
    case FamilyKind::kComplete:
    case FamilyKind::kIndependentSet:
      return i + 1;
    case FamilyKind::kCycle:
      return i + 3;
    case FamilyKind::kCompleteBinaryTree:
      if (i > 61) throw TooLargeError("tree height too large");
      return (std::uint64_t{1} << (i + 1)) - 1;
    case FamilyKind::kSquareGrid:
      return (i + 1) * (i + 1);
  }
  return 0;
}

FamilyMember smallest_member_at_least(FamilyKind kind, std::uint64_t n) {
  if (n == 0) throw PreconditionError("family lookup needs n >= 1");
  std::uint64_t i = 0;
  while (family_size(kind, i) < n) ++i;
  return {i, family_size(kind, i)};
}

HybridNetwork generate_family(FamilyKind kind, std::uint64_t index, std::uint64_t explicit_threshold) {
  std::uint64_t n = family_size(kind, index);
  if (kind == FamilyKind::kHypercube && n > explicit_threshold) {
    return HybridNetwork(StaticGraph::hypercube(static_cast<unsigned>(index)), {}, ExplicitWiring{});
  }
  if (n > (std::uint64_t{1} << 26)) throw TooLargeError("family member too large to generate explicitly");
  std::vector<std::string> names(n);
  std::vector<StaticLink> links;
  auto add = [&](std::uint64_t u, std::uint64_t v) {
    links.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), Rational(1)});
  };
  if (kind == FamilyKind::kHypercube) {
    StaticGraph cube = StaticGraph::hypercube(static_cast<unsigned>(index));
    for (NodeId v = 0; v < n; ++v) names[v] = cube.node_name(v);
    for (NodeId v = 0; v < n; ++v) {
      for (unsigned b = 0; b < index; ++b) {
        NodeId w = v ^ (NodeId{1} << b);
        if (v < w) add(v, w);
      }
    }
  } else {
    for (std::uint64_t v = 0; v < n; ++v) names[v] = std::to_string(v);
    switch (kind) {
      case FamilyKind::kComplete:
        for (std::uint64_t u = 0; u < n; ++u) {
          for (std::uint64_t v = u + 1; v < n; ++v) add(u, v);
        }
        break;
      case FamilyKind::kCycle:
        for (std::uint64_t u = 0; u < n; ++u) add(u, (u + 1) % n);
        break;
      case FamilyKind::kCompleteBinaryTree:
        for (std::uint64_t v = 1; v < n; ++v) add((v - 1) / 2, v);
        break;
      case FamilyKind::kSquareGrid: {
        std::uint64_t side = index + 1;
        for (std::uint64_t r = 0; r < side; ++r) {
          for (std::uint64_t c = 0; c < side; ++c) {
            if (c + 1 < side) add(r * side + c, r * side + c + 1);
            if (r + 1 < side) add(r * side + c, (r + 1) * side + c);
          }
        }
        break;
      }
      default:
        break;
    }
  }
  return HybridNetwork(StaticGraph(std::move(names), std::move(links)), {}, ExplicitWiring{});
}

HybridNetwork attach_uniform_switch(const HybridNetwork& net, std::uint32_t k, const std::string& switch_id) {
  if (k == 0) return HybridNetwork(net.graph(), {}, ExplicitWiring{});
  std::uint64_t ports = std::uint64_t{k} * net.node_count();
  if (ports > 0xffffffffULL) throw TooLargeError("switch would need more than 2^32 ports");
  return HybridNetwork(net.graph(), {Switch{switch_id, static_cast<std::uint32_t>(ports)}}, UniformWiring{k});
}

}  // namespace rrp
