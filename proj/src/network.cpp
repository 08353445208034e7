#include <algorithm>
#include <set>

#include "rrp/errors.hpp"
#include "rrp/network.hpp"

namespace rrp {

HybridNetwork::HybridNetwork(StaticGraph graph, std::vector<Switch> switches, Wiring wiring)
    : graph_(std::move(graph)), switches_(std::move(switches)), wiring_(std::move(wiring)) {
  if (auto* uniform = std::get_if<UniformWiring>(&wiring_)) {
    std::uint64_t expected = std::uint64_t{uniform->ports_per_node} * graph_.node_count();
    if (switches_.size() != 1 || switches_[0].port_count != expected) {
      throw ValidationError("uniform wiring needs exactly one switch with " + std::to_string(expected) + " ports");
    }
    return;
  }
  const auto& links = std::get<ExplicitWiring>(wiring_).links;
  port_table_.resize(switches_.size());
  for (std::size_t s = 0; s < switches_.size(); ++s) port_table_[s].resize(switches_[s].port_count);
  std::vector<std::uint32_t> count(graph_.node_count() + 1, 0);
  for (const auto& l : links) {
    if (l.node >= graph_.node_count()) throw ValidationError("switch link names a node out of range");
    if (l.switch_index >= switches_.size()) throw ValidationError("switch link names an unknown switch");
    if (l.switch_port >= switches_[l.switch_index].port_count) continue;
    auto& slot = port_table_[l.switch_index][l.switch_port];
    if (!slot) slot = PortEnd{l.node, l.ext_port};
    ++count[l.node];
  }
  node_port_offsets_.assign(graph_.node_count() + 1, 0);
  for (std::size_t v = 0; v < graph_.node_count(); ++v) node_port_offsets_[v + 1] = node_port_offsets_[v] + count[v];
  node_ports_.resize(node_port_offsets_.back());
  std::vector<std::uint32_t> fill(node_port_offsets_.begin(), node_port_offsets_.end() - 1);
  for (const auto& l : links) {
    if (l.switch_port >= switches_[l.switch_index].port_count) continue;
    node_ports_[fill[l.node]++] = SwitchPort{l.switch_index, l.switch_port};
  }
}

std::optional<std::uint32_t> HybridNetwork::find_switch(std::string_view id) const {
  for (std::uint32_t s = 0; s < switches_.size(); ++s) {
    if (switches_[s].id == id) return s;
  }
  return std::nullopt;
}

std::vector<SwitchLink> HybridNetwork::switch_links() const {
  if (const auto* e = std::get_if<ExplicitWiring>(&wiring_)) return e->links;
  std::uint32_t k = std::get<UniformWiring>(wiring_).ports_per_node;
  std::vector<SwitchLink> out;
  out.reserve(graph_.node_count() * k);
  for (NodeId v = 0; v < graph_.node_count(); ++v) {
    for (std::uint32_t i = 0; i < k; ++i) out.push_back(SwitchLink{v, i, 0, k * v + i});
  }
  return out;
}

std::optional<PortEnd> HybridNetwork::port_owner(std::uint32_t switch_index, std::uint32_t port) const {
  if (switch_index >= switches_.size() || port >= switches_[switch_index].port_count) return std::nullopt;
  if (const auto* u = std::get_if<UniformWiring>(&wiring_)) {
    return PortEnd{port / u->ports_per_node, port % u->ports_per_node};
  }
  return port_table_[switch_index][port];
}

std::uint32_t HybridNetwork::external_port_count(NodeId v) const {
  if (const auto* u = std::get_if<UniformWiring>(&wiring_)) return u->ports_per_node;
  return node_port_offsets_[v + 1] - node_port_offsets_[v];
}

std::vector<SwitchPort> HybridNetwork::ports_of(NodeId v) const {
  if (const auto* u = std::get_if<UniformWiring>(&wiring_)) {
    std::vector<SwitchPort> out;
    for (std::uint32_t i = 0; i < u->ports_per_node; ++i) out.push_back({0, u->ports_per_node * v + i});
    return out;
  }
  return {node_ports_.begin() + node_port_offsets_[v], node_ports_.begin() + node_port_offsets_[v + 1]};
}

std::uint32_t HybridNetwork::max_external_ports() const {
  if (const auto* u = std::get_if<UniformWiring>(&wiring_)) return graph_.node_count() ? u->ports_per_node : 0;
  std::uint32_t best = 0;
  for (std::size_t v = 0; v < graph_.node_count(); ++v) {
    best = std::max(best, node_port_offsets_[v + 1] - node_port_offsets_[v]);
  }
  return best;
}

std::uint64_t HybridNetwork::wired_port_count() const {
  if (const auto* u = std::get_if<UniformWiring>(&wiring_)) return std::uint64_t{u->ports_per_node} * graph_.node_count();
  return node_ports_.size();
}

bool HybridNetwork::operator==(const HybridNetwork& other) const {
  if (!(graph_ == other.graph_) || switches_ != other.switches_) return false;
  if (has_uniform_wiring() && other.has_uniform_wiring()) {
    return std::get<UniformWiring>(wiring_).ports_per_node == std::get<UniformWiring>(other.wiring_).ports_per_node;
  }
  return switch_links() == other.switch_links();
}

ValidationReport validate_network(const HybridNetwork& net) {
  ValidationReport report;
  auto& out = report.violations;
  const auto& g = net.graph();
  for (const auto& l : g.links()) {
    if (l.u == l.v) out.push_back("self-loop static link (" + g.node_name(l.u) + "," + g.node_name(l.v) + ")");
    if (l.weight < 0) out.push_back("negative static link weight (" + g.node_name(l.u) + "," + g.node_name(l.v) + ")");
  }
  std::set<std::string> ids;
  for (const auto& s : net.switches()) {
    if (s.port_count < 2) out.push_back("switch " + s.id + " has fewer than 2 ports");
    if (!ids.insert(s.id).second) out.push_back("duplicate switch id " + s.id);
  }
  if (net.has_uniform_wiring()) return report;

  const auto& links = std::get<ExplicitWiring>(net.wiring()).links;
  std::set<std::pair<std::uint32_t, std::uint32_t>> used_switch_ports;
  std::set<std::pair<NodeId, std::uint32_t>> used_ext_ports;
  for (const auto& l : links) {
    const auto& sw = net.switches()[l.switch_index];
    if (l.switch_port >= sw.port_count) {
      out.push_back("dangling port wiring: switch " + sw.id + " has no port " + std::to_string(l.switch_port));
      continue;
    }
    if (!used_switch_ports.insert({l.switch_index, l.switch_port}).second) {
      out.push_back("switch port reused: (" + sw.id + "," + std::to_string(l.switch_port) + ")");
    }
    if (!used_ext_ports.insert({l.node, l.ext_port}).second) {
      out.push_back("external port reused: (" + g.node_name(l.node) + "," + std::to_string(l.ext_port) + ")");
    }
  }
  for (std::uint32_t s = 0; s < net.switches().size(); ++s) {
    for (std::uint32_t p = 0; p < net.switches()[s].port_count; ++p) {
      if (!used_switch_ports.count({s, p})) {
        out.push_back("unwired switch port: (" + net.switches()[s].id + "," + std::to_string(p) + ")");
      }
    }
  }
  return report;
}

}  // namespace rrp
