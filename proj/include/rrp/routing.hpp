#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rrp/configuration.hpp"
#include "rrp/instance.hpp"

namespace rrp {

struct Route {
  Rational cost;
  FlowPath path;
};

// Minimum-weight policy-feasible path from src to dst in G(N). Ties are
// broken by fewest links, then fewest dynamic links, then the
// lexicographically smallest node sequence (by node rank). Returns nullopt
// when no feasible path exists.
std::optional<Route> constrained_shortest_path(const AugmentedNetwork& g, const RoutingPolicy& policy, NodeId src,
                                               NodeId dst);
std::optional<Route> constrained_shortest_path(const HybridNetwork& net, const Configuration& cfg,
                                               const RoutingPolicy& policy, const Rational& mu, NodeId src,
                                               NodeId dst);

// One search from src serving several targets; result[i] answers targets[i].
std::vector<std::optional<Route>> constrained_shortest_paths_from(const AugmentedNetwork& g,
                                                                  const RoutingPolicy& policy, NodeId src,
                                                                  std::span<const NodeId> targets);

struct PathUsage {
  Rational cost;
  std::uint64_t alternations = 0;
  std::uint64_t dynamic_links = 0;
  std::uint64_t links = 0;
};

// Checks continuity, link presence and the policy; throws PathError naming
// the first offending link.
PathUsage evaluate_flow_path_usage(const AugmentedNetwork& g, const RoutingPolicy& policy, const FlowPath& path);
Rational evaluate_flow_path(const AugmentedNetwork& g, const RoutingPolicy& policy, const FlowPath& path);
Rational evaluate_flow_path(const RRPInstance& inst, const Configuration& cfg, const FlowPath& path);

// Total cost of an assignment aligned with inst.workload. Throws
// ValidationError naming the offending demand.
Rational evaluate_assignment(const RRPInstance& inst, const AugmentedNetwork& g, const FlowAssignment& flows);

// Optimal routing of every demand under a fixed configuration; nullopt when
// some demand is unreachable.
std::optional<FlowAssignment> min_total_cost_for_configuration(const RRPInstance& inst, const Configuration& cfg);
std::optional<FlowAssignment> min_total_cost_for_configuration(const RRPInstance& inst, const AugmentedNetwork& g);

enum class CostStatus { kFeasible, kInfeasible, kCutoff };

struct CostOutcome {
  CostStatus status = CostStatus::kFeasible;
  Rational cost;
  std::vector<FlowPath> paths;  // filled only when requested and feasible
};

// Same as min_total_cost_for_configuration, but stops early once the
// running total reaches *cutoff (when given).
CostOutcome total_routing_cost(const RRPInstance& inst, const AugmentedNetwork& g, const Rational* cutoff,
                               bool want_paths);

}  // namespace rrp
