#pragma once

#include <cstdint>
#include <vector>

#include "rrp/network.hpp"
#include "rrp/rational.hpp"

namespace rrp {

struct Demand {
  NodeId src = 0;
  NodeId dst = 0;
  Rational amount;

  bool operator==(const Demand&) const = default;
};

// Sparse workload matrix. Entries have src != dst, a positive amount, and at
// most one entry per ordered pair.
class Workload {
 public:
  Workload() = default;
  // Throws ValidationError on a self-demand, a non-positive amount or a
  // repeated ordered pair.
  explicit Workload(std::vector<Demand> demands);

  const std::vector<Demand>& demands() const { return demands_; }
  std::size_t size() const { return demands_.size(); }
  bool empty() const { return demands_.empty(); }

  bool operator==(const Workload&) const = default;

 private:
  std::vector<Demand> demands_;
};

struct RoutingPolicy {
  Bound sigma;
  Bound delta;
  Bound lambda;

  bool operator==(const RoutingPolicy&) const = default;
};

struct RRPInstance {
  HybridNetwork network;
  Rational mu;
  Workload workload;
  Rational kappa;
  RoutingPolicy policy;

  bool operator==(const RRPInstance&) const = default;
};

enum class LinkKind : std::uint8_t { kStatic, kDynamic };

struct LinkRef {
  LinkKind kind = LinkKind::kStatic;
  NodeId u = 0;
  NodeId v = 0;

  bool operator==(const LinkRef&) const = default;
};

struct FlowPath {
  NodeId src = 0;
  NodeId dst = 0;
  std::vector<LinkRef> links;

  bool operator==(const FlowPath&) const = default;
};

// paths[i] serves workload.demands()[i].
struct FlowAssignment {
  std::vector<FlowPath> paths;
  Rational total_cost;

  bool operator==(const FlowAssignment&) const = default;
};

}  // namespace rrp
