#include "rrp/routing.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <unordered_map>

#include "rrp/errors.hpp"
#include "rrp/instance_io.hpp"

namespace rrp {
namespace {

enum : std::uint8_t { kNone = 0, kStatic = 1, kDynamic = 2 };

struct Label {
  Rational cost;
  NodeId node;
  std::uint32_t links;
  std::uint32_t dyns;
  std::uint32_t alts;
  std::uint8_t last;
  std::int32_t parent;
};

class LabelSearch {
 public:
  LabelSearch(const AugmentedNetwork& g, const RoutingPolicy& policy) : g_(g), policy_(policy) {
    // With sigma unbounded the last link kind never affects feasibility.
    track_kind_ = policy.sigma.is_finite();
  }

  std::vector<std::optional<Route>> run(NodeId src, std::span<const NodeId> targets) {
    std::vector<std::optional<Route>> result(targets.size());
    std::unordered_map<NodeId, std::vector<std::size_t>> wanted;
    std::size_t remaining = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (targets[i] == src) {
        result[i] = Route{Rational(0), FlowPath{src, src, {}}};
      } else {
        if (wanted[targets[i]].empty()) ++remaining;
        wanted[targets[i]].push_back(i);
      }
    }
    if (remaining == 0) return result;

    auto cmp = [this](std::int32_t a, std::int32_t b) { return less(b, a); };
    std::priority_queue<std::int32_t, std::vector<std::int32_t>, decltype(cmp)> heap(cmp);
    labels_.push_back(Label{Rational(0), src, 0, 0, 0, kNone, -1});
    heap.push(0);

    while (!heap.empty() && remaining > 0) {
      std::int32_t id = heap.top();
      heap.pop();
      const Label cur = labels_[id];
      if (dominated(cur)) continue;
      settled_[state_key(cur.node, cur.last)].push_back(id);

      auto w = wanted.find(cur.node);
      if (w != wanted.end() && !w->second.empty()) {
        Route route{cur.cost, FlowPath{src, cur.node, path_links(id)}};
        for (std::size_t i : w->second) result[i] = route;
        w->second.clear();
        --remaining;
      }

      g_.network().graph().for_each_neighbor(cur.node, [&](NodeId v, const Rational& weight) {
        extend(heap, id, v, kStatic, weight);
      });
      g_.for_each_dynamic_neighbor(cur.node, [&](NodeId v) { extend(heap, id, v, kDynamic, g_.mu()); });
    }
    return result;
  }

 private:
  std::uint64_t state_key(NodeId v, std::uint8_t last) const {
    return (std::uint64_t{v} << 2) | (track_kind_ ? last : 0);
  }

  template <class Heap>
  void extend(Heap& heap, std::int32_t from, NodeId v, std::uint8_t kind, const Rational& weight) {
    const Label& cur = labels_[from];
    Label next{cur.cost + weight, v, cur.links + 1, cur.dyns + (kind == kDynamic ? 1u : 0u),
               cur.alts + ((cur.last != kNone && cur.last != kind) ? 1u : 0u), kind, from};
    if (!policy_.lambda.allows(next.links) || !policy_.delta.allows(next.dyns) || !policy_.sigma.allows(next.alts)) {
      return;
    }
    if (dominated(next)) return;
    labels_.push_back(std::move(next));
    heap.push(static_cast<std::int32_t>(labels_.size() - 1));
  }

  // A settled label at the same state was popped earlier, so its key is no
  // larger; it dominates when its bounded counters are no larger either.
  bool dominated(const Label& l) const {
    auto it = settled_.find(state_key(l.node, l.last));
    if (it == settled_.end()) return false;
    for (std::int32_t sid : it->second) {
      const Label& s = labels_[sid];
      if (policy_.sigma.is_finite() && s.alts > l.alts) continue;
      if (policy_.delta.is_finite() && s.dyns > l.dyns) continue;
      if (policy_.lambda.is_finite() && s.links > l.links) continue;
      return true;
    }
    return false;
  }

  bool less(std::int32_t a, std::int32_t b) const {
    const Label& x = labels_[a];
    const Label& y = labels_[b];
    if (x.cost != y.cost) return x.cost < y.cost;
    if (x.links != y.links) return x.links < y.links;
    if (x.dyns != y.dyns) return x.dyns < y.dyns;
    return node_sequence(a) < node_sequence(b);
  }

  std::vector<NodeId> node_sequence(std::int32_t id) const {
    std::vector<NodeId> seq;
    for (std::int32_t i = id; i >= 0; i = labels_[i].parent) seq.push_back(labels_[i].node);
    std::reverse(seq.begin(), seq.end());
    return seq;
  }

  std::vector<LinkRef> path_links(std::int32_t id) const {
    std::vector<LinkRef> links;
    for (std::int32_t i = id; labels_[i].parent >= 0; i = labels_[i].parent) {
      const Label& l = labels_[i];
      links.push_back({l.last == kDynamic ? LinkKind::kDynamic : LinkKind::kStatic, labels_[l.parent].node, l.node});
    }
    std::reverse(links.begin(), links.end());
    return links;
  }

  const AugmentedNetwork& g_;
  const RoutingPolicy& policy_;
  bool track_kind_ = true;
  std::vector<Label> labels_;
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> settled_;
};

}  // namespace

std::vector<std::optional<Route>> constrained_shortest_paths_from(const AugmentedNetwork& g,
                                                                  const RoutingPolicy& policy, NodeId src,
                                                                  std::span<const NodeId> targets) {
  LabelSearch search(g, policy);
  return search.run(src, targets);
}

std::optional<Route> constrained_shortest_path(const AugmentedNetwork& g, const RoutingPolicy& policy, NodeId src,
                                               NodeId dst) {
  NodeId t[1] = {dst};
  return constrained_shortest_paths_from(g, policy, src, t)[0];
}

std::optional<Route> constrained_shortest_path(const HybridNetwork& net, const Configuration& cfg,
                                               const RoutingPolicy& policy, const Rational& mu, NodeId src,
                                               NodeId dst) {
  AugmentedNetwork g(net, cfg, mu);
  return constrained_shortest_path(g, policy, src, dst);
}

PathUsage evaluate_flow_path_usage(const AugmentedNetwork& g, const RoutingPolicy& policy, const FlowPath& path) {
  PathUsage usage;
  const auto& graph = g.network().graph();
  NodeId current = path.src;
  std::uint8_t last = kNone;
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    const LinkRef& l = path.links[i];
    if (l.u >= graph.node_count() || l.v >= graph.node_count()) throw PathError("link not present", i);
    NodeId next;
    if (l.u == current) {
      next = l.v;
    } else if (l.v == current) {
      next = l.u;
    } else {
      throw PathError("discontinuous path", i);
    }
    std::uint8_t kind = l.kind == LinkKind::kDynamic ? kDynamic : kStatic;
    if (kind == kStatic) {
      auto w = l.u == l.v ? std::nullopt : graph.link_weight(l.u, l.v);
      if (!w) throw PathError("link not present", i);
      usage.cost += *w;
    } else {
      if (l.u == l.v || !g.has_dynamic(l.u, l.v)) throw PathError("link not present", i);
      usage.cost += g.mu();
      ++usage.dynamic_links;
    }
    if (last != kNone && last != kind) ++usage.alternations;
    last = kind;
    ++usage.links;
    if (!policy.sigma.allows(usage.alternations)) throw PathError("policy violated: σ", i);
    if (!policy.delta.allows(usage.dynamic_links)) throw PathError("policy violated: δ", i);
    if (!policy.lambda.allows(usage.links)) throw PathError("policy violated: λ", i);
    current = next;
  }
  if (current != path.dst) throw PathError("discontinuous path", path.links.size());
  return usage;
}

Rational evaluate_flow_path(const AugmentedNetwork& g, const RoutingPolicy& policy, const FlowPath& path) {
  return evaluate_flow_path_usage(g, policy, path).cost;
}

Rational evaluate_flow_path(const RRPInstance& inst, const Configuration& cfg, const FlowPath& path) {
  AugmentedNetwork g(inst.network, cfg, inst.mu);
  return evaluate_flow_path(g, inst.policy, path);
}

Rational evaluate_assignment(const RRPInstance& inst, const AugmentedNetwork& g, const FlowAssignment& flows) {
  const auto& demands = inst.workload.demands();
  if (flows.paths.size() != demands.size()) throw ValidationError("assignment does not cover the workload");
  Rational total = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& d = demands[i];
    const auto& p = flows.paths[i];
    std::string key = demand_key(inst.network, d.src, d.dst);
    if (p.src != d.src || p.dst != d.dst) throw ValidationError("demand " + key + ": path endpoints do not match");
    try {
      total += d.amount * evaluate_flow_path(g, inst.policy, p);
    } catch (const PathError& e) {
      throw ValidationError("demand " + key + ": " + e.what());
    }
  }
  return total;
}

CostOutcome total_routing_cost(const RRPInstance& inst, const AugmentedNetwork& g, const Rational* cutoff,
                               bool want_paths) {
  const auto& demands = inst.workload.demands();
  std::map<NodeId, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < demands.size(); ++i) by_source[demands[i].src].push_back(i);

  CostOutcome out;
  out.cost = 0;
  if (want_paths) out.paths.resize(demands.size());
  for (const auto& [src, idx] : by_source) {
    std::vector<NodeId> targets;
    targets.reserve(idx.size());
    for (std::size_t i : idx) targets.push_back(demands[i].dst);
    auto routes = constrained_shortest_paths_from(g, inst.policy, src, targets);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (!routes[k]) {
        out.status = CostStatus::kInfeasible;
        out.paths.clear();
        return out;
      }
      out.cost += demands[idx[k]].amount * routes[k]->cost;
      if (want_paths) out.paths[idx[k]] = std::move(routes[k]->path);
    }
    if (cutoff && out.cost >= *cutoff) {
      out.status = CostStatus::kCutoff;
      out.paths.clear();
      return out;
    }
  }
  return out;
}

std::optional<FlowAssignment> min_total_cost_for_configuration(const RRPInstance& inst, const AugmentedNetwork& g) {
  CostOutcome outcome = total_routing_cost(inst, g, nullptr, true);
  if (outcome.status != CostStatus::kFeasible) return std::nullopt;
  return FlowAssignment{std::move(outcome.paths), std::move(outcome.cost)};
}

std::optional<FlowAssignment> min_total_cost_for_configuration(const RRPInstance& inst, const Configuration& cfg) {
  AugmentedNetwork g(inst.network, cfg, inst.mu);
  return min_total_cost_for_configuration(inst, g);
}

}  // namespace rrp
