#include <algorithm>
#include <memory>
#include <set>

#include "rrp/errors.hpp"
#include "rrp/reductions.hpp"

namespace rrp {
namespace {

// Rank layout shared by the reduction and the witness builder.
struct ChainLayout {
  std::int64_t n;
  std::int64_t half;  // L/2

  NodeId v(std::uint32_t i) const { return i; }
  NodeId x(std::int64_t i) const { return static_cast<NodeId>(n + i + half); }
  NodeId y(std::int64_t i) const { return static_cast<NodeId>(n + (2 * half + 1) + i + half); }
  std::uint64_t used() const { return static_cast<std::uint64_t>(n + 2 * (2 * half + 1)); }
};

}  // namespace

ReductionArtifact reduce_bisection(const BisectionInstance& src_in, FamilyKind family, Bound sigma) {
  validate_bisection(src_in);
  BisectionInstance src = src_in;
  const std::uint64_t n = src.graph.size();
  ReductionArtifact art;
  art.construction = "bisection";

  const std::uint64_t clamp = n / 3 + 46;
  if (src.k > clamp) {
    art.warnings.push_back("k = " + std::to_string(src.k) + " exceeds n/3 + 46; clamped to " + std::to_string(clamp));
    src.k = clamp;
  }

  const std::uint64_t L = 3 * n * n;
  ChainLayout lay{static_cast<std::int64_t>(n), static_cast<std::int64_t>(L / 2)};
  FamilyMember member = smallest_member_at_least(family, n + 6 * n * n + 2);
  HybridNetwork net = attach_uniform_switch(generate_family(family, member.index), 2);

  const Rational nq(n);
  const Rational alpha = 24 * nq * nq * nq * nq * nq * nq;
  const Rational beta = 6 * nq * nq * nq;
  const Rational mu = Rational(1) / (6 * nq * nq);
  const Rational k(src.k);
  const Rational kappa_alpha = alpha;
  const Rational kappa_beta = 3 * nq * nq * nq * nq + nq * nq * nq / 2 + nq * nq;
  const Rational kappa_1 = k / 2 + Rational(1, 8) - Rational(1) / (4 * nq) + k / (3 * nq * nq);

  std::vector<Demand> demands;
  const std::int64_t h = lay.half;
  for (std::int64_t i = 0; i < h; ++i) demands.push_back({lay.x(i), lay.x(i + 1), alpha});
  for (std::int64_t i = 0; i > -h; --i) demands.push_back({lay.x(i), lay.x(i - 1), alpha});
  for (std::int64_t i = 0; i < h; ++i) demands.push_back({lay.y(i), lay.y(i + 1), alpha});
  for (std::int64_t i = 0; i > -h; --i) demands.push_back({lay.y(i), lay.y(i - 1), alpha});
  for (std::uint32_t v = 0; v < n; ++v) demands.push_back({lay.x(0), lay.v(v), beta});
  for (std::uint32_t v = 0; v < n; ++v) demands.push_back({lay.y(0), lay.v(v), beta});
  for (auto [a, b] : src.graph.edges) demands.push_back({std::min(a, b), std::max(a, b), Rational(1)});

  art.instance.network = std::move(net);
  art.instance.mu = mu;
  art.instance.workload = Workload(std::move(demands));
  art.instance.kappa = kappa_alpha + kappa_beta + kappa_1;
  art.instance.policy = {sigma, Bound::infinite(), Bound::infinite()};
  art.demand_count = art.instance.workload.size();

  auto roles = std::make_shared<std::vector<std::string>>(member.size, "filler");
  for (std::uint32_t v = 0; v < n; ++v) (*roles)[lay.v(v)] = "V:" + src.graph.labels[v];
  for (std::int64_t i = -h; i <= h; ++i) {
    (*roles)[lay.x(i)] = "chain:x" + std::to_string(i);
    (*roles)[lay.y(i)] = "chain:y" + std::to_string(i);
  }
  art.role_of = [roles](NodeId v) { return (*roles)[v]; };
  for (NodeId v = 0; v < member.size; ++v) art.listed_nodes.push_back(v);

  art.parameters = {{"n", nq},
                    {"k", k},
                    {"L", Rational(L)},
                    {"n_bar", Rational(member.size)},
                    {"alpha", alpha},
                    {"beta", beta},
                    {"mu", mu},
                    {"kappa_alpha", kappa_alpha},
                    {"kappa_beta", kappa_beta},
                    {"kappa_1", kappa_1},
                    {"kappa", art.instance.kappa},
                    {"E_alpha", Rational(2 * L)},
                    {"E_beta", Rational(2 * n)},
                    {"E_1", Rational(src.graph.edges.size())},
                    {"V_c", Rational(2 * (L + 1))},
                    {"U", Rational(member.size - lay.used())}};
  return art;
}

Witness witness_bisection(const ReductionArtifact& art, const BisectionInstance& src,
                          const std::vector<std::uint32_t>& side_a) {
  if (art.construction != "bisection") throw PreconditionError("artifact is not a bisection reduction");
  const std::uint32_t n = static_cast<std::uint32_t>(src.graph.size());
  std::set<std::uint32_t> a(side_a.begin(), side_a.end());
  bool balanced = a.size() == side_a.size() && a.size() * 2 == n && (a.empty() || *a.rbegin() < n);
  std::vector<bool> in_a(n, false);
  for (auto v : a) {
    if (v < n) in_a[v] = true;
  }
  const auto k = static_cast<std::uint64_t>(numerator(art.parameter("k")));
  if (!balanced || cut_size(src.graph, in_a) > k) {
    throw CertificateError("certificate invalid: unbalanced or cut > k");
  }

  const auto L = static_cast<std::int64_t>(numerator(art.parameter("L")));
  ChainLayout lay{n, L / 2};
  const std::int64_t h = lay.half;

  // x- ... x+ , A , y+ ... y- , B , back to x-.
  std::vector<NodeId> cycle;
  for (std::int64_t i = -h; i <= h; ++i) cycle.push_back(lay.x(i));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (in_a[v]) cycle.push_back(lay.v(v));
  }
  for (std::int64_t i = h; i >= -h; --i) cycle.push_back(lay.y(i));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!in_a[v]) cycle.push_back(lay.v(v));
  }

  const auto& net = art.instance.network;
  std::vector<std::int64_t> position(net.node_count(), -1);
  for (std::size_t i = 0; i < cycle.size(); ++i) position[cycle[i]] = static_cast<std::int64_t>(i);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < cycle.size(); ++i) pairs.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);

  Witness w;
  w.configuration = configuration_from_pairs(net, pairs);
  const auto len = static_cast<std::int64_t>(cycle.size());
  for (const auto& d : art.instance.workload.demands()) {
    std::int64_t ps = position[d.src];
    std::int64_t pt = position[d.dst];
    FlowPath path{d.src, d.dst, {}};
    std::int64_t forward = ((pt - ps) % len + len) % len;
    std::int64_t step = forward <= len - forward ? 1 : -1;
    for (std::int64_t p = ps; p != pt; p = ((p + step) % len + len) % len) {
      NodeId from = cycle[p];
      NodeId to = cycle[((p + step) % len + len) % len];
      path.links.push_back({LinkKind::kDynamic, from, to});
    }
    w.assignment.paths.push_back(std::move(path));
  }
  w.assignment.total_cost = evaluate_assignment(art.instance, AugmentedNetwork(net, w.configuration, art.instance.mu),
                                                w.assignment);
  return w;
}

}  // namespace rrp
