#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rrp/errors.hpp"
#include "rrp/routing.hpp"

using namespace rrp;
using rrp::testing::make_network;

namespace {

const RoutingPolicy kOpen{Bound::infinite(), Bound::infinite(), Bound::infinite()};

// Path a-b-c-d with unit weights; a and d wired to a two-port switch.
HybridNetwork path_abcd() {
  return make_network({"a", "b", "c", "d"}, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}}, 2,
                      {{0, 0}, {3, 1}});
}

const Configuration kAD(std::vector<std::vector<PortPair>>{{{0, 1}}});

std::vector<NodeId> node_sequence(const FlowPath& p) {
  std::vector<NodeId> out{p.src};
  for (const auto& l : p.links) out.push_back(out.back() == l.u ? l.v : l.u);
  return out;
}

std::string path_error(const AugmentedNetwork& g, const RoutingPolicy& pol, const FlowPath& p) {
  try {
    evaluate_flow_path(g, pol, p);
  } catch (const PathError& e) {
    return e.reason() + "@" + std::to_string(e.index());
  }
  return "ok";
}

}  // namespace

TEST(ConstrainedShortestPath, DynamicShortcut) {
  auto net = path_abcd();
  auto r = constrained_shortest_path(net, kAD, kOpen, Rational(1, 2), 0, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, Rational(1, 2));
  ASSERT_EQ(r->path.links.size(), 1u);
  EXPECT_EQ(r->path.links[0].kind, LinkKind::kDynamic);
}

TEST(ConstrainedShortestPath, SegregatedForcesStaticRoute) {
  auto net = path_abcd();
  auto r = constrained_shortest_path(net, kAD, {Bound(0), Bound::infinite(), Bound::infinite()}, Rational(1, 2), 1, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, Rational(2));
  EXPECT_EQ(node_sequence(r->path), (std::vector<NodeId>{1, 2, 3}));
}

TEST(ConstrainedShortestPath, OneAlternationAllowsMixedRoute) {
  auto net = path_abcd();
  auto r = constrained_shortest_path(net, kAD, {Bound(1), Bound::infinite(), Bound::infinite()}, Rational(1, 2), 1, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, Rational(3, 2));
  EXPECT_EQ(node_sequence(r->path), (std::vector<NodeId>{1, 0, 3}));
  EXPECT_EQ(r->path.links[0].kind, LinkKind::kStatic);
  EXPECT_EQ(r->path.links[1].kind, LinkKind::kDynamic);
}

TEST(ConstrainedShortestPath, LambdaTooSmallIsUnreachable) {
  auto net = path_abcd();
  EXPECT_FALSE(constrained_shortest_path(net, kAD, {Bound::infinite(), Bound::infinite(), Bound(1)}, Rational(1, 2), 1, 3));
}

TEST(ConstrainedShortestPath, SameNodeIsEmptyPath) {
  auto net = path_abcd();
  auto r = constrained_shortest_path(net, kAD, kOpen, Rational(1, 2), 2, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, Rational(0));
  EXPECT_TRUE(r->path.links.empty());
}

TEST(EvaluateFlowPath, TwoTermSum) {
  auto net = make_network({"a", "b", "c", "d", "e"}, {{0, 1, Rational(1)}}, 2, {{1, 0}, {4, 1}});
  AugmentedNetwork g(net, Configuration(std::vector<std::vector<PortPair>>{{{0, 1}}}), Rational(1, 4));
  FlowPath p{0, 4, {{LinkKind::kStatic, 0, 1}, {LinkKind::kDynamic, 1, 4}}};
  EXPECT_EQ(evaluate_flow_path(g, kOpen, p), Rational(5, 4));
}

TEST(EvaluateFlowPath, AbsentDynamicLink) {
  auto net = path_abcd();
  AugmentedNetwork g(net, Configuration(std::vector<std::vector<PortPair>>(1)), Rational(1, 2));
  FlowPath p{0, 3, {{LinkKind::kDynamic, 0, 3}}};
  EXPECT_EQ(path_error(g, kOpen, p), "link not present@0");
}

TEST(EvaluateFlowPath, TooManyAlternations) {
  auto net = make_network({"a", "b", "c", "d", "e"}, {{1, 2, Rational(1)}, {3, 4, Rational(1)}}, 4,
                          {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  AugmentedNetwork g(net, Configuration(std::vector<std::vector<PortPair>>{{{0, 1}, {2, 3}}}), Rational(1));
  FlowPath p{0, 4, {{LinkKind::kDynamic, 0, 1}, {LinkKind::kStatic, 1, 2}, {LinkKind::kDynamic, 2, 3}, {LinkKind::kStatic, 3, 4}}};
  EXPECT_EQ(path_error(g, {Bound(2), Bound::infinite(), Bound::infinite()}, p), "policy violated: σ@3");
  EXPECT_EQ(path_error(g, {Bound(3), Bound::infinite(), Bound::infinite()}, p), "ok");
  EXPECT_EQ(path_error(g, {Bound::infinite(), Bound(1), Bound::infinite()}, p), "policy violated: δ@2");
  EXPECT_EQ(path_error(g, {Bound::infinite(), Bound::infinite(), Bound(3)}, p), "policy violated: λ@3");
}

TEST(EvaluateFlowPath, Discontinuous) {
  auto net = path_abcd();
  AugmentedNetwork g(net, kAD, Rational(1, 2));
  FlowPath p{0, 3, {{LinkKind::kStatic, 0, 1}, {LinkKind::kStatic, 2, 3}}};
  EXPECT_EQ(path_error(g, kOpen, p), "discontinuous path@1");
  FlowPath short_path{0, 3, {{LinkKind::kStatic, 0, 1}}};
  EXPECT_EQ(path_error(g, kOpen, short_path), "discontinuous path@1");
}

TEST(MinTotalCost, Examples) {
  RRPInstance inst;
  inst.network = make_network({"a", "b", "c"}, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 2, {{0, 0}, {2, 1}});
  inst.mu = Rational(1, 2);
  inst.policy = {Bound(0), Bound(1), Bound::infinite()};
  auto empty = min_total_cost_for_configuration(inst, Configuration(std::vector<std::vector<PortPair>>(1)));
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->total_cost, Rational(0));

  inst.workload = Workload({{0, 2, Rational(2)}, {0, 1, Rational(1)}});
  auto none = min_total_cost_for_configuration(inst, Configuration(std::vector<std::vector<PortPair>>(1)));
  ASSERT_TRUE(none);
  EXPECT_EQ(none->total_cost, Rational(5));
  auto with = min_total_cost_for_configuration(inst, Configuration(std::vector<std::vector<PortPair>>{{{0, 1}}}));
  ASSERT_TRUE(with);
  EXPECT_EQ(with->total_cost, Rational(2));
}

TEST(MinTotalCost, UnreachableIsInfeasible) {
  RRPInstance inst;
  inst.network = make_network({"u", "v"}, {}, 0, {});
  inst.mu = Rational(1);
  inst.workload = Workload({{0, 1, Rational(1)}});
  EXPECT_FALSE(min_total_cost_for_configuration(inst, Configuration()));
}

// Randomized comparison against simple-path enumeration, plus the
// monotonicity and re-evaluation properties.
TEST(ConstrainedShortestPath, MatchesEnumerationOnRandomInstances) {
  std::mt19937_64 rng(2024);
  rrp::testing::RandomInstanceSpec spec;
  spec.max_nodes = 7;
  spec.weights = {Rational(1), Rational(2), Rational(1, 2), Rational(3)};
  spec.mus = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(2)};
  const std::vector<Bound> sigmas{Bound(0), Bound(1), Bound(3), Bound::infinite()};
  const std::vector<Bound> deltas{Bound(0), Bound(1), Bound::infinite()};
  const std::vector<Bound> lambdas{Bound(1), Bound(3), Bound::infinite()};
  for (int trial = 0; trial < 150; ++trial) {
    auto inst = rrp::testing::random_instance(spec, rng);
    auto cfg = rrp::testing::random_configuration(inst.network, rng);
    auto dyn = rrp::testing::owner_pairs(inst.network, cfg);
    AugmentedNetwork g(inst.network, cfg, inst.mu);
    const auto n = static_cast<NodeId>(inst.network.node_count());
    for (const auto& s : sigmas) {
      for (const auto& d : deltas) {
        for (const auto& l : lambdas) {
          RoutingPolicy pol{s, d, l};
          for (NodeId a = 0; a < n; ++a) {
            for (NodeId b = 0; b < n; ++b) {
              auto got = constrained_shortest_path(g, pol, a, b);
              auto want = rrp::testing::enumerate_paths(inst.network, dyn, inst.mu, pol, a, b);
              ASSERT_EQ(got.has_value(), want.has_value()) << "trial " << trial;
              if (!got) continue;
              ASSERT_EQ(got->cost, *want) << "trial " << trial;
              ASSERT_EQ(evaluate_flow_path(g, pol, got->path), got->cost);
              auto relaxed = constrained_shortest_path(g, kOpen, a, b);
              ASSERT_TRUE(relaxed);
              ASSERT_LE(relaxed->cost, got->cost);
              if (s == Bound(0)) {
                for (const auto& link : got->path.links) ASSERT_EQ(link.kind, got->path.links[0].kind);
              }
            }
          }
        }
      }
    }
  }
}

TEST(ConstrainedShortestPath, MonotoneInMu) {
  std::mt19937_64 rng(99);
  rrp::testing::RandomInstanceSpec spec;
  const std::vector<Rational> mus{Rational(0), Rational(1, 4), Rational(1, 2), Rational(1), Rational(3)};
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = rrp::testing::random_instance(spec, rng);
    auto cfg = rrp::testing::random_configuration(inst.network, rng);
    const auto n = static_cast<NodeId>(inst.network.node_count());
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        std::optional<Rational> prev;
        for (const auto& mu : mus) {
          auto r = constrained_shortest_path(inst.network, cfg, kOpen, mu, a, b);
          if (!r) break;
          if (prev) {
            EXPECT_LE(*prev, r->cost);
          }
          prev = r->cost;
        }
      }
    }
  }
}

TEST(ConstrainedShortestPaths, SingleSourceMatchesPairwise) {
  std::mt19937_64 rng(5);
  rrp::testing::RandomInstanceSpec spec;
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = rrp::testing::random_instance(spec, rng);
    auto cfg = rrp::testing::random_configuration(inst.network, rng);
    AugmentedNetwork g(inst.network, cfg, inst.mu);
    const auto n = static_cast<NodeId>(inst.network.node_count());
    std::vector<NodeId> targets;
    for (NodeId v = 0; v < n; ++v) targets.push_back(v);
    RoutingPolicy pol{Bound(1), Bound(2), Bound::infinite()};
    auto all = constrained_shortest_paths_from(g, pol, 0, targets);
    for (NodeId v = 0; v < n; ++v) {
      auto one = constrained_shortest_path(g, pol, 0, v);
      ASSERT_EQ(all[v].has_value(), one.has_value());
      if (one) {
        EXPECT_EQ(all[v]->cost, one->cost);
      }
    }
  }
}
