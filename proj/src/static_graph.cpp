#include <algorithm>

#include "rrp/errors.hpp"
#include "rrp/network.hpp"

namespace rrp {

StaticGraph::StaticGraph(std::vector<std::string> names, std::vector<StaticLink> links)
    : node_count_(names.size()), names_(std::move(names)), links_(std::move(links)) {
  index_.reserve(names_.size());
  for (NodeId v = 0; v < names_.size(); ++v) {
    if (!index_.emplace(names_[v], v).second) {
      throw ValidationError("duplicate node name \"" + names_[v] + "\"");
    }
  }
  std::vector<std::uint32_t> degree(node_count_ + 1, 0);
  for (const auto& l : links_) {
    if (l.u >= node_count_ || l.v >= node_count_) throw ValidationError("static link endpoint out of range");
    if (l.u == l.v) continue;
    ++degree[l.u];
    ++degree[l.v];
  }
  offsets_.assign(node_count_ + 1, 0);
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < links_.size(); ++i) {
    const auto& l = links_[i];
    if (l.u == l.v) continue;
    adjacency_[fill[l.u]++] = {l.v, i};
    adjacency_[fill[l.v]++] = {l.u, i};
  }
}

StaticGraph StaticGraph::hypercube(unsigned dimension) {
  if (dimension > 30) throw TooLargeError("hypercube dimension above 30 is not supported");
  StaticGraph g;
  g.node_count_ = std::size_t{1} << dimension;
  g.hypercube_dim_ = dimension;
  return g;
}

std::string StaticGraph::node_name(NodeId v) const {
  if (!hypercube_dim_) return names_.at(v);
  unsigned d = *hypercube_dim_;
  std::string s(d, '0');
  for (unsigned i = 0; i < d; ++i) {
    if ((v >> (d - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

std::optional<NodeId> StaticGraph::find_node(std::string_view name) const {
  if (!hypercube_dim_) {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  if (name.size() != *hypercube_dim_) return std::nullopt;
  NodeId v = 0;
  for (char c : name) {
    if (c != '0' && c != '1') return std::nullopt;
    v = (v << 1) | static_cast<NodeId>(c == '1');
  }
  return v;
}

std::uint64_t StaticGraph::link_count() const {
  if (hypercube_dim_) return (*hypercube_dim_ == 0) ? 0 : std::uint64_t{*hypercube_dim_} << (*hypercube_dim_ - 1);
  return links_.size();
}

std::optional<Rational> StaticGraph::link_weight(NodeId u, NodeId v) const {
  if (hypercube_dim_) {
    NodeId x = u ^ v;
    if (x != 0 && (x & (x - 1)) == 0) return Rational(1);
    return std::nullopt;
  }
  std::optional<Rational> best;
  for (std::uint32_t i = offsets_[u]; i < offsets_[u + 1]; ++i) {
    if (adjacency_[i].first != v) continue;
    const Rational& w = links_[adjacency_[i].second].weight;
    if (!best || w < *best) best = w;
  }
  return best;
}

std::size_t StaticGraph::degree(NodeId v) const {
  if (hypercube_dim_) return *hypercube_dim_;
  return offsets_[v + 1] - offsets_[v];
}

bool StaticGraph::operator==(const StaticGraph& other) const {
  return node_count_ == other.node_count_ && hypercube_dim_ == other.hypercube_dim_ && names_ == other.names_ &&
         links_ == other.links_;
}

}  // namespace rrp
