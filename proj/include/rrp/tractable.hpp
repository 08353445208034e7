#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrp/exact_solver.hpp"
#include "rrp/instance.hpp"

namespace rrp {

// wt_G(src, dst) for every demand, in workload order; nullopt when the pair
// is disconnected in the static network. A finite lambda bounds the hop
// count of the static path.
std::vector<std::optional<Rational>> static_baseline(const RRPInstance& inst);

struct SavingsEdge {
  NodeId u = 0;
  NodeId v = 0;
  Rational saving;
  bool mandatory = false;  // some demand between u and v has no static path
};

struct SavingsGraph {
  std::vector<NodeId> vertices;          // nodes with at least one wired port
  std::vector<std::uint32_t> capacity;   // rho_e, aligned with vertices
  std::vector<SavingsEdge> edges;        // endpoints are node ids, u < v
};

SavingsGraph build_savings_graph(const RRPInstance& inst, const std::vector<std::optional<Rational>>& baseline);

// Maximum-weight b-matching of a savings graph; returns indices into
// graph.edges. Mandatory edges are weighted above the sum of all finite
// savings.
std::vector<std::size_t> max_weight_b_matching(const SavingsGraph& graph);

enum class TractableCase {
  kSegregatedSingleSwitch,      // one switch, sigma = 0, delta = 1
  kSingleExternalPortSegregated,  // one switch, sigma = 0, Delta_S = 1
  kCompleteGraphUniform,        // one switch, Delta_S = 1, each node wired once, uniform complete graph
};

std::string to_string(TractableCase c);

std::optional<TractableCase> tractable_case(const RRPInstance& inst);

// Polynomial solver. Throws PreconditionError unless tractable_case(inst)
// holds. The result is re-evaluated through the routing engine.
SolveResult solve_segregated_single_switch(const RRPInstance& inst);

struct DispatchResult {
  std::string solver;  // the tractable case name, or "exact"
  SolveResult result;
};

DispatchResult dispatch(const RRPInstance& inst, const ExactOptions& options = {});

}  // namespace rrp
