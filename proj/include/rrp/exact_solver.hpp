#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rrp/configuration.hpp"
#include "rrp/instance.hpp"

namespace rrp {

struct SolveResult {
  std::optional<Rational> optimal_cost;  // nullopt: infeasible
  Configuration best_configuration;
  FlowAssignment assignment;
  std::uint64_t configurations_examined = 0;
};

// Calls visit once per matching of ports 0..port_count-1 (empty and partial
// matchings included). Order: the lowest free port is first left unmatched,
// then paired with each higher free port in increasing order.
void for_each_switch_matching(std::uint32_t port_count, const std::function<void(const std::vector<PortPair>&)>& visit);
std::vector<std::vector<PortPair>> enumerate_switch_matchings(std::uint32_t port_count);

// Involution (telephone) number T(n).
std::uint64_t telephone_number(std::uint32_t n);

struct ExactOptions {
  std::uint64_t port_budget = 12;
  bool force = false;
  int jobs = 1;  // OpenMP threads for the enumeration
};

// Default budget, overridden by the RRP_PORT_BUDGET environment variable.
std::uint64_t default_port_budget();

// Throws TooLargeError when the wired port count exceeds the budget and
// force is not set.
void check_exact_budget(const RRPInstance& inst, const ExactOptions& options);

// Branch-and-bound over the product of per-switch matchings, parallelized
// over the first switch's matchings. Ties go to the first configuration in
// enumeration order.
SolveResult solve_exact(const RRPInstance& inst, const ExactOptions& options = {});

// Plain exhaustive enumeration without pruning or threads; reference for
// testing solve_exact.
SolveResult solve_exact_serial(const RRPInstance& inst, const ExactOptions& options = {});

// Searches for the optimum and compares it with kappa.
bool decide(const RRPInstance& inst, const ExactOptions& options = {});

// Certificate mode: validates the configuration and evaluates the
// assignment, with no search. Throws on an invalid certificate.
bool decide_with_certificate(const RRPInstance& inst, const Configuration& cfg, const FlowAssignment& flows);

}  // namespace rrp
