#include "rrp/tractable.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "rrp/errors.hpp"
#include "rrp/matching.hpp"
#include "rrp/routing.hpp"

namespace rrp {

std::vector<std::optional<Rational>> static_baseline(const RRPInstance& inst) {
  const auto& demands = inst.workload.demands();
  std::vector<std::optional<Rational>> out(demands.size());
  AugmentedNetwork g(inst.network, std::vector<std::pair<NodeId, NodeId>>{}, inst.mu);
  RoutingPolicy static_only{Bound::infinite(), Bound(0), inst.policy.lambda};
  std::map<NodeId, std::vector<std::size_t>> by_source;
  for (std::size_t i = 0; i < demands.size(); ++i) by_source[demands[i].src].push_back(i);
  for (const auto& [src, idx] : by_source) {
    std::vector<NodeId> targets;
    for (std::size_t i : idx) targets.push_back(demands[i].dst);
    auto routes = constrained_shortest_paths_from(g, static_only, src, targets);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (routes[k]) out[idx[k]] = routes[k]->cost;
    }
  }
  return out;
}

namespace {

bool dynamic_usable(const RoutingPolicy& p) { return p.delta.allows(1) && p.lambda.allows(1); }

}  // namespace

SavingsGraph build_savings_graph(const RRPInstance& inst, const std::vector<std::optional<Rational>>& baseline) {
  const auto& net = inst.network;
  SavingsGraph graph;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    std::uint32_t rho = net.external_port_count(v);
    if (rho > 0) {
      graph.vertices.push_back(v);
      graph.capacity.push_back(rho);
    }
  }
  if (!dynamic_usable(inst.policy)) return graph;
  std::map<std::pair<NodeId, NodeId>, SavingsEdge> acc;
  const auto& demands = inst.workload.demands();
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& d = demands[i];
    if (net.external_port_count(d.src) == 0 || net.external_port_count(d.dst) == 0) continue;
    auto key = std::minmax(d.src, d.dst);
    auto& e = acc[key];
    e.u = key.first;
    e.v = key.second;
    if (!baseline[i]) {
      e.mandatory = true;
    } else if (*baseline[i] > inst.mu) {
      e.saving += d.amount * (*baseline[i] - inst.mu);
    }
  }
  for (auto& [key, e] : acc) {
    if (e.mandatory || e.saving > 0) graph.edges.push_back(std::move(e));
  }
  return graph;
}

std::vector<std::size_t> max_weight_b_matching(const SavingsGraph& graph) {
  std::map<NodeId, std::uint32_t> local;
  for (std::uint32_t i = 0; i < graph.vertices.size(); ++i) local[graph.vertices[i]] = i;
  Rational finite = 0;
  for (const auto& e : graph.edges) finite += e.saving;
  std::vector<WeightedEdge> edges;
  for (const auto& e : graph.edges) {
    edges.push_back({local.at(e.u), local.at(e.v), e.mandatory ? Rational(finite + 1 + e.saving) : e.saving});
  }
  return max_weight_b_matching(graph.capacity, edges);
}

std::string to_string(TractableCase c) {
  switch (c) {
    case TractableCase::kSegregatedSingleSwitch:
      return "segregated-single-switch";
    case TractableCase::kSingleExternalPortSegregated:
      return "single-port-segregated";
    case TractableCase::kCompleteGraphUniform:
      return "complete-graph-uniform";
  }
  return "unknown";
}

namespace {

bool uniform_complete_graph(const StaticGraph& g) {
  std::size_t n = g.node_count();
  if (n > 2048) return false;
  std::optional<Rational> weight;
  for (const auto& l : g.links()) {
    if (l.u == l.v) return false;
    if (weight && *weight != l.weight) return false;
    weight = l.weight;
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      auto w = g.link_weight(u, v);
      if (!w) return false;
      if (weight && *weight != *w) return false;
      weight = w;
    }
  }
  return true;
}

}  // namespace

std::optional<TractableCase> tractable_case(const RRPInstance& inst) {
  const auto& net = inst.network;
  if (net.switches().size() != 1) return std::nullopt;
  const auto& p = inst.policy;
  if (p.sigma == Bound(0) && p.delta == Bound(1)) return TractableCase::kSegregatedSingleSwitch;
  std::uint32_t delta_s = net.max_external_ports();
  if (p.sigma == Bound(0) && delta_s <= 1) return TractableCase::kSingleExternalPortSegregated;
  if (delta_s == 1) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (net.external_port_count(v) != 1) return std::nullopt;
    }
    if (uniform_complete_graph(net.graph())) return TractableCase::kCompleteGraphUniform;
  }
  return std::nullopt;
}

SolveResult solve_segregated_single_switch(const RRPInstance& inst) {
  if (!tractable_case(inst)) throw PreconditionError("precondition violated: not single-switch σ=0 δ=1");
  const auto& net = inst.network;
  const auto& demands = inst.workload.demands();
  auto baseline = static_baseline(inst);
  SavingsGraph graph = build_savings_graph(inst, baseline);
  auto chosen = max_weight_b_matching(graph);

  std::map<std::pair<NodeId, NodeId>, bool> linked;
  for (std::size_t k : chosen) linked[{graph.edges[k].u, graph.edges[k].v}] = true;

  SolveResult result;
  result.configurations_examined = 1;
  Rational expected = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& d = demands[i];
    bool direct = linked.count(std::minmax(d.src, d.dst)) > 0;
    if (!baseline[i] && !direct) return result;  // infeasible
    Rational cost = baseline[i] ? *baseline[i] : inst.mu;
    if (direct && inst.mu < cost) cost = inst.mu;
    expected += d.amount * cost;
  }

  // Realize each chosen pair with the next free port of each endpoint.
  std::map<NodeId, std::size_t> next_port;
  std::vector<PortPair> matching;
  for (std::size_t k : chosen) {
    const auto& e = graph.edges[k];
    auto pu = net.ports_of(e.u);
    auto pv = net.ports_of(e.v);
    std::sort(pu.begin(), pu.end(), [](auto a, auto b) { return a.port < b.port; });
    std::sort(pv.begin(), pv.end(), [](auto a, auto b) { return a.port < b.port; });
    matching.push_back({pu[next_port[e.u]++].port, pv[next_port[e.v]++].port});
  }
  result.best_configuration = Configuration({std::move(matching)});

  auto assignment = min_total_cost_for_configuration(inst, result.best_configuration);
  if (!assignment || assignment->total_cost != expected) {
    throw std::logic_error("matching solver disagrees with routing re-evaluation");
  }
  result.optimal_cost = expected;
  result.assignment = std::move(*assignment);
  return result;
}

DispatchResult dispatch(const RRPInstance& inst, const ExactOptions& options) {
  if (auto c = tractable_case(inst)) return {to_string(*c), solve_segregated_single_switch(inst)};
  return {"exact", solve_exact(inst, options)};
}

}  // namespace rrp
