#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrp/configuration.hpp"
#include "rrp/instance.hpp"
#include "rrp/instance_io.hpp"

namespace rrp {

// Output of a reduction: the generated instance, a role for every node and
// the instantiated construction parameters (in a fixed order).
struct ReductionArtifact {
  std::string construction;  // "bisection", "rxc3-tree" or "rxc3-cube"
  RRPInstance instance;      // workload left empty when the demands are streamed
  DemandSource stream;       // set only for streamed artifacts
  std::uint64_t demand_count = 0;
  std::function<std::string(NodeId)> role_of;
  std::vector<NodeId> listed_nodes;  // nodes written to the role sidecar
  std::vector<std::pair<std::string, Rational>> parameters;
  std::vector<std::string> warnings;

  bool streamed() const { return static_cast<bool>(stream); }
  void for_each_demand(const DemandSink& sink) const;
  // Throws std::out_of_range for an unknown name.
  const Rational& parameter(std::string_view name) const;
};

struct Witness {
  Configuration configuration;
  FlowAssignment assignment;
};

// Exact cost of a witness, split by demand amount (each construction uses
// one amount per demand class).
struct WitnessEvaluation {
  Rational total;
  std::map<Rational, Rational> cost_by_amount;
  std::uint64_t demands = 0;
  std::uint64_t max_alternations = 0;
  std::uint32_t max_dynamic_degree = 0;  // dynamic links at the busiest node

  Rational component(const Rational& amount) const;
};

// Validates the configuration and every flow-path under the instance policy.
WitnessEvaluation evaluate_witness(const RRPInstance& inst, const Witness& witness);

// Assigns each node its ports in increasing order, one port per incident
// pair. Throws CertificateError when a node runs out of ports.
Configuration configuration_from_pairs(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& pairs);

// Largest number of pairs sharing one node.
std::uint32_t max_pair_degree(const std::vector<std::pair<NodeId, NodeId>>& pairs);

// <prefix>.instance.json, <prefix>.roles.json and <prefix>.params.json.
void write_artifact(const ReductionArtifact& artifact, const std::string& prefix);
void write_parameters(std::ostream& out, const ReductionArtifact& artifact);
void write_roles(std::ostream& out, const ReductionArtifact& artifact);

}  // namespace rrp
