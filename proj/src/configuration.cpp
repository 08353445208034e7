#include <algorithm>

#include "rrp/configuration.hpp"
#include "rrp/errors.hpp"

namespace rrp {

Configuration::Configuration(std::vector<std::vector<PortPair>> per_switch) : matchings_(std::move(per_switch)) {
  for (auto& m : matchings_) {
    for (auto& p : m) {
      if (p.a > p.b) std::swap(p.a, p.b);
    }
    std::sort(m.begin(), m.end());
  }
  while (!matchings_.empty() && matchings_.back().empty()) matchings_.pop_back();
}

std::span<const PortPair> Configuration::matching(std::size_t switch_index) const {
  if (switch_index >= matchings_.size()) return {};
  return matchings_[switch_index];
}

std::size_t Configuration::pair_count() const {
  std::size_t n = 0;
  for (const auto& m : matchings_) n += m.size();
  return n;
}

bool Configuration::operator==(const Configuration& other) const { return matchings_ == other.matchings_; }

void validate_configuration(const HybridNetwork& net, const Configuration& cfg, SelfLoops self_loops) {
  if (cfg.switch_count() > net.switches().size()) throw ValidationError("configuration names an unknown switch");
  for (std::uint32_t s = 0; s < cfg.switch_count(); ++s) {
    const auto& sw = net.switches()[s];
    std::vector<bool> used(sw.port_count, false);
    for (const auto& p : cfg.matching(s)) {
      for (std::uint32_t port : {p.a, p.b}) {
        if (!net.port_owner(s, port)) {
          throw ValidationError("unwired port in matching: (" + sw.id + "," + std::to_string(port) + ")");
        }
        if (used[port]) {
          throw ValidationError("port matched twice: (" + sw.id + "," + std::to_string(port) + ")");
        }
        used[port] = true;
      }
      if (self_loops == SelfLoops::kReject && net.port_owner(s, p.a)->node == net.port_owner(s, p.b)->node) {
        throw ValidationError("self-loop dynamic link at node " + net.node_name(net.port_owner(s, p.a)->node));
      }
    }
  }
}

std::vector<DynamicLink> dynamic_links(const HybridNetwork& net, const Configuration& cfg, SelfLoops self_loops) {
  validate_configuration(net, cfg, self_loops);
  std::vector<std::uint32_t> order(cfg.switch_count());
  for (std::uint32_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return net.switches()[a].id < net.switches()[b].id; });
  std::vector<DynamicLink> out;
  out.reserve(cfg.pair_count());
  for (std::uint32_t s : order) {
    for (const auto& p : cfg.matching(s)) {
      out.push_back(DynamicLink{net.port_owner(s, p.a)->node, net.port_owner(s, p.b)->node, s, p});
    }
  }
  return out;
}

namespace {

std::vector<std::pair<NodeId, NodeId>> node_pairs(const HybridNetwork& net, const Configuration& cfg,
                                                  SelfLoops self_loops) {
  validate_configuration(net, cfg, self_loops);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(cfg.pair_count());
  for (std::uint32_t s = 0; s < cfg.switch_count(); ++s) {
    for (const auto& p : cfg.matching(s)) {
      pairs.emplace_back(net.port_owner(s, p.a)->node, net.port_owner(s, p.b)->node);
    }
  }
  return pairs;
}

}  // namespace

AugmentedNetwork::AugmentedNetwork(const HybridNetwork& net, const Configuration& cfg, Rational mu,
                                   SelfLoops self_loops)
    : net_(&net), mu_(std::move(mu)) {
  build(node_pairs(net, cfg, self_loops));
}

AugmentedNetwork::AugmentedNetwork(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                   Rational mu)
    : net_(&net), mu_(std::move(mu)) {
  build(pairs);
}

void AugmentedNetwork::build(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::size_t n = net_->node_count();
  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : pairs) {
    if (u == v) continue;
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(offsets_[n]);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : pairs) {
    if (u == v) continue;
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  // Sort each list and drop parallel links; they all cost mu.
  std::uint32_t write = 0;
  std::uint32_t begin = 0;
  for (std::size_t u = 0; u < n; ++u) {
    std::uint32_t end = offsets_[u + 1];
    std::sort(neighbors_.begin() + begin, neighbors_.begin() + end);
    offsets_[u] = write;
    for (std::uint32_t i = begin; i < end; ++i) {
      if (i == begin || neighbors_[i] != neighbors_[i - 1]) neighbors_[write++] = neighbors_[i];
    }
    begin = end;
  }
  offsets_[n] = write;
  neighbors_.resize(write);
  neighbors_.shrink_to_fit();
}

bool AugmentedNetwork::has_dynamic(NodeId u, NodeId v) const {
  return std::binary_search(neighbors_.begin() + offsets_[u], neighbors_.begin() + offsets_[u + 1], v);
}

}  // namespace rrp
