#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "rrp/rational.hpp"

namespace rrp {

using NodeId = std::uint32_t;

struct StaticLink {
  NodeId u = 0;
  NodeId v = 0;
  Rational weight;

  bool operator==(const StaticLink&) const = default;
};

// Static part of a hybrid network. Either an explicit weighted multigraph or
// the implicit hypercube Q_d (unit weights, neighbours by single bit flips).
class StaticGraph {
 public:
  StaticGraph() = default;

  // Throws ValidationError on out-of-range endpoints or duplicate names.
  StaticGraph(std::vector<std::string> names, std::vector<StaticLink> links);

  static StaticGraph hypercube(unsigned dimension);

  bool is_hypercube() const { return hypercube_dim_.has_value(); }
  unsigned hypercube_dimension() const { return *hypercube_dim_; }

  std::size_t node_count() const { return node_count_; }
  std::string node_name(NodeId v) const;
  std::optional<NodeId> find_node(std::string_view name) const;

  // Explicit mode only; empty for the hypercube.
  std::span<const StaticLink> links() const { return links_; }
  // Number of static links, counted without materializing the hypercube.
  std::uint64_t link_count() const;

  // Calls f(neighbour, weight) for each static link at u, skipping self-loops.
  template <class F>
  void for_each_neighbor(NodeId u, F&& f) const {
    if (hypercube_dim_) {
      for (unsigned b = 0; b < *hypercube_dim_; ++b) f(static_cast<NodeId>(u ^ (NodeId{1} << b)), unit_);
      return;
    }
    for (std::uint32_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
      const auto& a = adjacency_[i];
      f(a.first, links_[a.second].weight);
    }
  }

  // Minimum weight over static links joining u and v, if any.
  std::optional<Rational> link_weight(NodeId u, NodeId v) const;
  std::size_t degree(NodeId v) const;

  bool operator==(const StaticGraph& other) const;

 private:
  std::size_t node_count_ = 0;
  std::optional<unsigned> hypercube_dim_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<StaticLink> links_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::pair<NodeId, std::uint32_t>> adjacency_;  // (neighbour, link index)
  Rational unit_{1};
};

struct Switch {
  std::string id;
  std::uint32_t port_count = 0;

  bool operator==(const Switch&) const = default;
};

struct SwitchLink {
  NodeId node = 0;
  std::uint32_t ext_port = 0;
  std::uint32_t switch_index = 0;
  std::uint32_t switch_port = 0;

  bool operator==(const SwitchLink&) const = default;
};

struct PortEnd {
  NodeId node = 0;
  std::uint32_t ext_port = 0;
};

struct SwitchPort {
  std::uint32_t switch_index = 0;
  std::uint32_t port = 0;
};

struct ExplicitWiring {
  std::vector<SwitchLink> links;
};

// One switch (index 0); node v owns ports k*v .. k*v+k-1.
struct UniformWiring {
  std::uint32_t ports_per_node = 0;
};

using Wiring = std::variant<ExplicitWiring, UniformWiring>;

// Static graph plus switches and switch links. Immutable once built.
// Construction does not reject semantic violations (port reuse, dangling
// wiring); call validate_network for the full report.
class HybridNetwork {
 public:
  HybridNetwork() = default;
  HybridNetwork(StaticGraph graph, std::vector<Switch> switches, Wiring wiring);

  const StaticGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  std::string node_name(NodeId v) const { return graph_.node_name(v); }
  std::optional<NodeId> find_node(std::string_view name) const { return graph_.find_node(name); }

  const std::vector<Switch>& switches() const { return switches_; }
  std::optional<std::uint32_t> find_switch(std::string_view id) const;

  bool has_uniform_wiring() const { return std::holds_alternative<UniformWiring>(wiring_); }
  const Wiring& wiring() const { return wiring_; }
  // All switch links; generated on demand for uniform wiring.
  std::vector<SwitchLink> switch_links() const;

  std::optional<PortEnd> port_owner(std::uint32_t switch_index, std::uint32_t port) const;
  // rho_e(v): number of wired external ports of v.
  std::uint32_t external_port_count(NodeId v) const;
  std::vector<SwitchPort> ports_of(NodeId v) const;
  // Delta_S: the maximum of rho_e over all nodes.
  std::uint32_t max_external_ports() const;
  // Number of wired switch ports over all switches.
  std::uint64_t wired_port_count() const;

  bool operator==(const HybridNetwork& other) const;

 private:
  StaticGraph graph_;
  std::vector<Switch> switches_;
  Wiring wiring_;
  // Explicit wiring lookup tables. Out-of-range links are left out here and
  // reported by validate_network.
  std::vector<std::vector<std::optional<PortEnd>>> port_table_;
  std::vector<std::uint32_t> node_port_offsets_;
  std::vector<SwitchPort> node_ports_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_network(const HybridNetwork& net);

}  // namespace rrp
