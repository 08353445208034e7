#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rrp/network.hpp"

namespace rrp {

struct PortPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  auto operator<=>(const PortPair&) const = default;
};

// Per-switch port matchings, indexed by switch position in the network.
// Pairs are stored with a <= b and sorted.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<std::vector<PortPair>> per_switch);

  std::size_t switch_count() const { return matchings_.size(); }
  std::span<const PortPair> matching(std::size_t switch_index) const;
  std::size_t pair_count() const;

  bool operator==(const Configuration& other) const;

 private:
  std::vector<std::vector<PortPair>> matchings_;
};

enum class SelfLoops { kReject, kAllow };

// Throws ValidationError naming the first problem found.
void validate_configuration(const HybridNetwork& net, const Configuration& cfg,
                            SelfLoops self_loops = SelfLoops::kReject);

struct DynamicLink {
  NodeId u = 0;
  NodeId v = 0;
  std::uint32_t switch_index = 0;
  PortPair ports;

  bool operator==(const DynamicLink&) const = default;
};

// One link per matched pair, sorted by switch id and then port pair.
std::vector<DynamicLink> dynamic_links(const HybridNetwork& net, const Configuration& cfg,
                                       SelfLoops self_loops = SelfLoops::kReject);

// G(N): the static network together with the dynamic links of a
// configuration. Keeps a reference to the network.
class AugmentedNetwork {
 public:
  AugmentedNetwork(const HybridNetwork& net, const Configuration& cfg, Rational mu,
                   SelfLoops self_loops = SelfLoops::kReject);
  // Dynamic links given directly as node pairs, without port provenance.
  AugmentedNetwork(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& pairs, Rational mu);

  const HybridNetwork& network() const { return *net_; }
  const Rational& mu() const { return mu_; }

  template <class F>
  void for_each_dynamic_neighbor(NodeId u, F&& f) const {
    for (std::uint32_t i = offsets_[u]; i < offsets_[u + 1]; ++i) f(neighbors_[i]);
  }
  bool has_dynamic(NodeId u, NodeId v) const;

 private:
  void build(const std::vector<std::pair<NodeId, NodeId>>& pairs);

  const HybridNetwork* net_;
  Rational mu_;
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeId> neighbors_;
};

}  // namespace rrp
