#include <algorithm>
#include <memory>

#include "rrp/errors.hpp"
#include "rrp/reductions.hpp"

namespace rrp {

TreeLayout build_tree_layout(const RXC3Instance& src) {
  validate_rxc3(src);
  TreeLayout t;
  t.n = static_cast<std::uint32_t>(src.n());
  if (t.n < 2) throw PreconditionError("degenerate tree: the tree reduction needs n >= 2");
  while ((std::uint64_t{1} << t.d) < t.n) ++t.d;
  const std::uint32_t leaves = 1u << t.d;
  const std::uint32_t n = t.n;

  auto add = [&](std::string role) {
    t.roles.push_back(std::move(role));
    return static_cast<NodeId>(t.roles.size() - 1);
  };
  auto edge = [&](NodeId from, NodeId to) { t.inner_edges.emplace_back(from, to); };

  // Tree in BFS order; the last 2^d nodes are the leaves l_1 .. l_{2^d}.
  const std::uint32_t tree_nodes = 2 * leaves - 1;
  for (std::uint32_t i = 0; i < tree_nodes; ++i) {
    if (i == 0) {
      add("root");
    } else if (i >= leaves - 1) {
      add("leaf:l" + std::to_string(i - (leaves - 1) + 1));
    } else {
      add("tree:" + std::to_string(i));
    }
  }
  t.root = 0;
  for (std::uint32_t i = 1; i < tree_nodes; ++i) edge((i - 1) / 2, i);
  for (std::uint32_t i = 0; i < leaves; ++i) t.leaves.push_back(leaves - 1 + i);

  for (std::uint32_t j = 0; j < 3 * n; ++j) {
    std::string tag = std::to_string(j + 1);
    t.clause_u.push_back(add("clause:u" + tag));
    t.clause_v.push_back(add("clause:v" + tag));
    t.clause_w.push_back(add("clause:w" + tag));
    edge(t.clause_v[j], t.clause_u[j]);
    edge(t.clause_v[j], t.clause_w[j]);
  }
  for (std::uint32_t i = 0; i < 3 * n; ++i) t.elements.push_back(add("element:" + src.elements[i]));
  for (std::uint32_t j = 0; j < 3 * n; ++j) {
    const auto& c = src.clauses[j];
    edge(t.clause_u[j], t.elements[c[0]]);
    edge(t.clause_w[j], t.elements[c[1]]);
    edge(t.clause_w[j], t.elements[c[2]]);
  }

  // Gadget: 4-clique on a, b, c, d with the edge a-d subdivided by z.
  auto gadget = [&](NodeId owner, bool grey) {
    std::string base = "gadget:" + t.roles[owner].substr(t.roles[owner].find(':') + 1) + ".";
    if (t.roles[owner] == "root") base = "gadget:root.";
    NodeId z = owner;
    if (grey) {
      z = add(base + "z");
      edge(owner, z);
    }
    NodeId a = add(base + "a");
    NodeId b = add(base + "b");
    NodeId c = add(base + "c");
    NodeId d = add(base + "d");
    edge(z, a);
    edge(z, d);
    edge(a, b);
    edge(a, c);
    edge(d, b);
    edge(d, c);
    edge(b, c);
  };
  gadget(t.root, true);
  for (std::uint32_t i = 0; i < n; ++i) gadget(t.leaves[i], true);
  for (std::uint32_t j = 0; j < 3 * n; ++j) gadget(t.clause_u[j], true);
  for (std::uint32_t i = n; i < leaves; ++i) gadget(t.leaves[i], false);

  for (std::uint32_t i = 0; i < 3 * n; ++i) t.root_edges.emplace_back(t.root, t.elements[i]);

  t.node_count = t.roles.size();
  t.inner_edge_count = t.inner_edges.size();
  t.edge_count = t.inner_edge_count + t.root_edges.size();
  return t;
}

ReductionArtifact reduce_rxc3_tree(const RXC3Instance& src, FamilyKind family, Bound sigma) {
  TreeLayout t = build_tree_layout(src);
  ReductionArtifact art;
  art.construction = "rxc3-tree";
  FamilyMember member = smallest_member_at_least(family, t.node_count);
  HybridNetwork net = attach_uniform_switch(generate_family(family, member.index), 3);

  const Rational nq(t.n);
  const Rational d(t.d);
  const Rational alpha = 4 * nq * d;
  const Rational mu = Rational(1) / (2 * d);
  const Rational kappa_alpha = mu * alpha * Rational(t.inner_edge_count);
  const Rational kappa_1 = 3 * mu * nq * (d + 3);

  std::vector<Demand> demands;
  for (auto [u, v] : t.inner_edges) demands.push_back({u, v, alpha});
  for (auto [u, v] : t.root_edges) demands.push_back({u, v, Rational(1)});

  art.instance.network = std::move(net);
  art.instance.mu = mu;
  art.instance.workload = Workload(std::move(demands));
  art.instance.kappa = kappa_alpha + kappa_1;
  art.instance.policy = {sigma, Bound::infinite(), Bound::infinite()};
  art.demand_count = art.instance.workload.size();

  auto roles = std::make_shared<std::vector<std::string>>(std::move(t.roles));
  roles->resize(member.size, "filler");
  art.role_of = [roles](NodeId v) { return (*roles)[v]; };
  for (NodeId v = 0; v < member.size; ++v) art.listed_nodes.push_back(v);

  art.parameters = {{"n", nq},
                    {"d", d},
                    {"N", Rational(t.node_count)},
                    {"E_prime", Rational(t.edge_count)},
                    {"E_double_prime", Rational(t.inner_edge_count)},
                    {"E_root", Rational(t.root_edges.size())},
                    {"n_bar", Rational(member.size)},
                    {"alpha", alpha},
                    {"mu", mu},
                    {"kappa_alpha", kappa_alpha},
                    {"kappa_1", kappa_1},
                    {"kappa", art.instance.kappa}};
  return art;
}

Witness witness_rxc3_tree(const ReductionArtifact& art, const RXC3Instance& src,
                          const std::vector<std::size_t>& cover_in) {
  if (art.construction != "rxc3-tree") throw PreconditionError("artifact is not a tree reduction");
  check_exact_cover(src, cover_in);
  std::vector<std::size_t> cover = cover_in;
  std::sort(cover.begin(), cover.end());
  TreeLayout t = build_tree_layout(src);
  const auto& net = art.instance.network;

  // The k-th cover clause (in index order) is hung below grey leaf l_{k+1}.
  std::vector<NodeId> leaf_of_clause(src.clauses.size(), 0);
  std::vector<std::size_t> covering(src.elements.size(), 0);
  std::vector<std::pair<NodeId, NodeId>> pairs = t.inner_edges;
  for (std::size_t k = 0; k < cover.size(); ++k) {
    std::size_t j = cover[k];
    leaf_of_clause[j] = t.leaves[k];
    pairs.emplace_back(t.clause_v[j], t.leaves[k]);
    for (auto e : src.clauses[j]) covering[e] = j;
  }

  Witness w;
  w.configuration = configuration_from_pairs(net, pairs);
  for (const auto& d : art.instance.workload.demands()) {
    FlowPath path{d.src, d.dst, {}};
    if (d.src != t.root || d.amount != 1) {
      path.links.push_back({LinkKind::kDynamic, d.src, d.dst});
    } else {
      std::uint32_t i = static_cast<std::uint32_t>(
          std::find(t.elements.begin(), t.elements.end(), d.dst) - t.elements.begin());
      std::size_t j = covering[i];
      std::vector<NodeId> down;
      for (NodeId v = leaf_of_clause[j]; v != t.root; v = (v - 1) / 2) down.push_back(v);
      NodeId at = t.root;
      for (auto it = down.rbegin(); it != down.rend(); ++it) {
        path.links.push_back({LinkKind::kDynamic, at, *it});
        at = *it;
      }
      NodeId mid = src.clauses[j][0] == i ? t.clause_u[j] : t.clause_w[j];
      path.links.push_back({LinkKind::kDynamic, at, t.clause_v[j]});
      path.links.push_back({LinkKind::kDynamic, t.clause_v[j], mid});
      path.links.push_back({LinkKind::kDynamic, mid, d.dst});
    }
    w.assignment.paths.push_back(std::move(path));
  }
  w.assignment.total_cost = evaluate_assignment(art.instance, AugmentedNetwork(net, w.configuration, art.instance.mu),
                                                w.assignment);
  return w;
}

}  // namespace rrp
