#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rrp/configuration.hpp"
#include "rrp/errors.hpp"
#include "rrp/instance_io.hpp"
#include "rrp/topology.hpp"

using namespace rrp;
using rrp::testing::make_network;

namespace {

HybridNetwork path_abc() {
  return make_network({"a", "b", "c"}, {{0, 1, Rational(1)}, {1, 2, Rational(1)}}, 3, {{0, 0}, {1, 1}, {2, 2}});
}

bool has_violation(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(format_rational(Rational(103, 48)), "103/48");
  EXPECT_EQ(format_rational(Rational(428)), "428");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Bound, ParseAndCompare) {
  EXPECT_FALSE(Bound::parse("inf").is_finite());
  EXPECT_EQ(Bound::parse("3").value(), 3u);
  EXPECT_TRUE(Bound(2).allows(2));
  EXPECT_FALSE(Bound(2).allows(3));
  EXPECT_TRUE(Bound::infinite().allows(1000000));
  EXPECT_TRUE(Bound(5) <= Bound::infinite());
  EXPECT_FALSE(Bound::infinite() <= Bound(5));
}

TEST(ValidateNetwork, PathWithSwitchIsOk) { EXPECT_TRUE(validate_network(path_abc()).ok()); }

TEST(ValidateNetwork, SelfLoopStaticLink) {
  auto net = make_network({"a", "b"}, {{0, 0, Rational(1)}}, 0, {});
  EXPECT_TRUE(has_violation(validate_network(net), "self-loop static link"));
}

TEST(ValidateNetwork, SwitchPortReused) {
  auto net = make_network({"a", "b"}, {}, 2, {{0, 0}, {1, 0}});
  EXPECT_TRUE(has_violation(validate_network(net), "switch port reused"));
}

TEST(DynamicLinks, PortTranslation) {
  auto net = make_network({"a", "b", "c", "d"}, {}, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  Configuration cfg(std::vector<std::vector<PortPair>>{{{0, 3}}});
  auto links = dynamic_links(net, cfg);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].u, 0u);
  EXPECT_EQ(links[0].v, 3u);
  EXPECT_TRUE(dynamic_links(net, Configuration(std::vector<std::vector<PortPair>>(1))).empty());
}

TEST(DynamicLinks, SelfLoopPolicyBothWays) {
  auto net = make_network({"a", "b", "c"}, {}, 4, {{0, 0}, {0, 1}, {1, 2}, {2, 3}});
  Configuration cfg(std::vector<std::vector<PortPair>>{{{0, 1}, {2, 3}}});
  EXPECT_THROW(dynamic_links(net, cfg), ValidationError);
  auto links = dynamic_links(net, cfg, SelfLoops::kAllow);
  ASSERT_EQ(links.size(), 2u);
  EXPECT_EQ(links[0].u, links[0].v);
}

TEST(DynamicLinks, UnwiredPortInMatching) {
  auto net = make_network({"a", "b"}, {}, 3, {{0, 0}, {1, 1}});
  try {
    dynamic_links(net, Configuration(std::vector<std::vector<PortPair>>{{{0, 2}}}));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unwired port in matching"), std::string::npos);
  }
}

TEST(DynamicLinks, CountAndDegreeProperties) {
  std::mt19937_64 rng(7);
  rrp::testing::RandomInstanceSpec spec;
  for (int i = 0; i < 50; ++i) {
    auto inst = rrp::testing::random_instance(spec, rng);
    auto cfg = rrp::testing::random_configuration(inst.network, rng);
    auto links = dynamic_links(inst.network, cfg);
    EXPECT_EQ(links.size(), cfg.pair_count());
    std::vector<std::uint32_t> deg(inst.network.node_count(), 0);
    for (const auto& l : links) {
      ++deg[l.u];
      ++deg[l.v];
    }
    for (NodeId v = 0; v < inst.network.node_count(); ++v) EXPECT_LE(deg[v], inst.network.external_port_count(v));
  }
}

TEST(InstanceIo, RoundTripPathInstance) {
  RRPInstance inst;
  inst.network = make_network({"a", "b", "c"}, {{0, 1, Rational(1, 3)}, {1, 2, Rational(1)}}, 3, {{0, 0}, {1, 1}, {2, 2}});
  inst.mu = Rational(1, 2);
  inst.workload = Workload({{0, 2, Rational(2)}, {0, 1, Rational(1)}});
  inst.kappa = Rational(99, 100);
  inst.policy = {Bound(0), Bound(1), Bound::infinite()};
  auto back = parse_instance(serialize_instance(inst));
  EXPECT_EQ(back, inst);
  EXPECT_EQ(back.network.graph().links()[0].weight, Rational(1, 3));
}

TEST(InstanceIo, RoundTripImplicitHypercube) {
  RRPInstance inst;
  inst.network = attach_uniform_switch(generate_family(FamilyKind::kHypercube, 5, 16), 1);
  ASSERT_TRUE(inst.network.graph().is_hypercube());
  inst.mu = Rational(1, 2);
  inst.workload = Workload({{0, 31, Rational(3)}});
  inst.kappa = Rational(7);
  inst.policy = {Bound(3), Bound::infinite(), Bound::infinite()};
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(InstanceIo, SelfDemandRejected) {
  const char* text = R"({"nodes":["a","b"],"static_links":[["a","b","1"]],"switches":[],"switch_links":[],
    "adjacency":"explicit","mu":"1","demands":[["a","a","1"]],"kappa":"0",
    "policy":{"sigma":"inf","delta":"inf","lambda":"inf"}})";
  try {
    parse_instance(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("self-demand"), std::string::npos);
  }
}

TEST(InstanceIo, MalformedInputs) {
  const std::string head = R"({"nodes":["a","b"],"switches":[],"switch_links":[],"adjacency":"explicit","mu":"1","kappa":"0",
    "policy":{"sigma":"inf","delta":"inf","lambda":"inf"},)";
  EXPECT_THROW(parse_instance(head + R"("static_links":[["a","b","x/2"]],"demands":[]})"), Error);
  EXPECT_THROW(parse_instance(head + R"("static_links":[["a","z","1"]],"demands":[]})"), Error);
  EXPECT_THROW(parse_instance(head + R"("static_links":[],"demands":[["a","b","1"],["a","b","2"]]})"), Error);
  EXPECT_NO_THROW(parse_instance(head + R"("static_links":[],"demands":[["a","b","1"],["b","a","2"]]})"));
}

TEST(InstanceIo, StreamedRoundTrip) {
  RRPInstance inst;
  inst.network = make_network({"a", "b", "c"}, {{0, 1, Rational(1)}}, 0, {});
  inst.mu = Rational(1);
  inst.kappa = Rational(5, 2);
  std::vector<Demand> demands{{0, 1, Rational(1, 7)}, {2, 0, Rational(3)}};
  std::stringstream ss;
  write_instance_streamed(ss, inst, [&](const DemandSink& sink) {
    for (const auto& d : demands) sink(d);
  });
  std::vector<Demand> seen;
  auto back = read_instance_streamed(ss, [&](const Demand& d) { seen.push_back(d); });
  EXPECT_EQ(seen, demands);
  EXPECT_TRUE(back.workload.empty());
  EXPECT_EQ(back.kappa, inst.kappa);
}

TEST(ConfigurationIo, RoundTrip) {
  auto net = path_abc();
  Configuration cfg(std::vector<std::vector<PortPair>>{{{0, 2}}});
  EXPECT_EQ(parse_configuration(serialize_configuration(cfg, net), net), cfg);
  EXPECT_THROW(validate_configuration(net, Configuration(std::vector<std::vector<PortPair>>{{{0, 2}, {1, 2}}})), ValidationError);
}

TEST(Workload, Invariants) {
  EXPECT_THROW(Workload({{0, 0, Rational(1)}}), ValidationError);
  EXPECT_THROW(Workload({{0, 1, Rational(0)}}), ValidationError);
  EXPECT_THROW(Workload({{0, 1, Rational(1)}, {0, 1, Rational(2)}}), ValidationError);
}
