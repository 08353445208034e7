#pragma once

// Independent reference computations for the test suites. None of these call
// the routing engine, the solvers or the reductions they are used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rrp/configuration.hpp"
#include "rrp/instance.hpp"
#include "rrp/matching.hpp"
#include "rrp/network.hpp"
#include "rrp/source_problems.hpp"

namespace rrp::testing {

// Dynamic links of a configuration as node pairs, read straight from the
// port owners.
std::vector<std::pair<NodeId, NodeId>> owner_pairs(const HybridNetwork& net, const Configuration& cfg);

// Minimum cost over every simple node sequence from src to dst, choosing per
// hop between the cheapest static link and a dynamic link. nullopt when no
// feasible sequence exists.
std::optional<Rational> enumerate_paths(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& dyn,
                                        const Rational& mu, const RoutingPolicy& policy, NodeId src, NodeId dst);

// Every matching of ports 0..n-1, by plain recursion.
std::vector<std::vector<PortPair>> all_port_matchings(std::uint32_t n);

// Enumerates every configuration (self-loops skipped) and routes each demand
// with enumerate_paths.
std::optional<Rational> brute_force_optimum(const RRPInstance& inst);

// Best total weight over all simple subgraphs with deg(v) <= capacity[v].
Rational brute_force_b_matching_weight(const std::vector<std::uint32_t>& capacity,
                                       const std::vector<WeightedEdge>& edges);

// Minimum balanced cut by enumeration of all bit masks with n/2 ones.
std::uint64_t enumerate_bisection_width(const SimpleGraph& g);

// Random cubic graph on n nodes (n even, n >= 4) by rejection sampling.
SimpleGraph random_cubic_graph(std::uint32_t n, std::mt19937_64& rng);

// Closed forms of the bisection reduction, rewritten over a common
// denominator.
struct BisectionFormulas {
  Rational L, alpha, beta, mu, kappa_alpha, kappa_beta, kappa_1;
};
BisectionFormulas bisection_formulas(std::uint64_t n, std::uint64_t k);

struct TreeFormulas {
  std::uint64_t d, N, E_prime, E_double_prime;
  Rational alpha, mu, kappa;
};
TreeFormulas tree_formulas(std::uint64_t n);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Random explicit instance: up to max_nodes nodes, at most one switch with up
// to max_ports wired ports, static weights from weights.
struct RandomInstanceSpec {
  std::uint32_t min_nodes = 2;
  std::uint32_t max_nodes = 6;
  std::uint32_t max_ports = 6;
  std::uint32_t max_demands = 5;
  std::uint32_t max_amount = 4;
  std::vector<Rational> weights{Rational(1), Rational(2)};
  std::vector<Rational> mus{Rational(1, 4), Rational(1, 2)};
  double link_probability = 0.4;
};
RRPInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);

// Random self-loop-free matching of the single switch's wired ports.
Configuration random_configuration(const HybridNetwork& net, std::mt19937_64& rng);

// Explicit network from named nodes, weighted links and (node, switch port)
// wiring on one switch "s".
HybridNetwork make_network(const std::vector<std::string>& names,
                           const std::vector<std::tuple<std::uint32_t, std::uint32_t, Rational>>& links,
                           std::uint32_t switch_ports, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& wiring);

}  // namespace rrp::testing
