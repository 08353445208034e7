#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace rrp::testing {

std::vector<std::pair<NodeId, NodeId>> owner_pairs(const HybridNetwork& net, const Configuration& cfg) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t s = 0; s < cfg.switch_count(); ++s) {
    for (const auto& p : cfg.matching(s)) {
      auto a = net.port_owner(static_cast<std::uint32_t>(s), p.a);
      auto b = net.port_owner(static_cast<std::uint32_t>(s), p.b);
      if (a && b) out.emplace_back(a->node, b->node);
    }
  }
  return out;
}

std::optional<Rational> enumerate_paths(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& dyn,
                                        const Rational& mu, const RoutingPolicy& policy, NodeId src, NodeId dst) {
  const std::size_t n = net.node_count();
  std::map<std::pair<NodeId, NodeId>, Rational> stat;
  for (const auto& l : net.graph().links()) {
    if (l.u == l.v) continue;
    auto key = std::minmax(l.u, l.v);
    auto it = stat.find(key);
    if (it == stat.end() || l.weight < it->second) stat[key] = l.weight;
  }
  std::set<std::pair<NodeId, NodeId>> dynamic;
  for (auto [u, v] : dyn) {
    if (u != v) dynamic.insert(std::minmax(u, v));
  }
  if (src == dst) return Rational(0);

  std::optional<Rational> best;
  std::vector<bool> seen(n, false);
  // kind: 0 none, 1 static, 2 dynamic
  std::function<void(NodeId, int, std::uint64_t, std::uint64_t, std::uint64_t, Rational)> dfs =
      [&](NodeId at, int kind, std::uint64_t alt, std::uint64_t dyn_used, std::uint64_t links, Rational cost) {
        if (at == dst) {
          if (!best || cost < *best) best = cost;
          return;
        }
        for (NodeId next = 0; next < n; ++next) {
          if (seen[next]) continue;
          auto key = std::minmax(at, next);
          for (int k = 1; k <= 2; ++k) {
            Rational w;
            if (k == 1) {
              auto it = stat.find(key);
              if (it == stat.end()) continue;
              w = it->second;
            } else {
              if (!dynamic.count(key)) continue;
              w = mu;
            }
            std::uint64_t a2 = alt + (kind != 0 && kind != k ? 1 : 0);
            std::uint64_t d2 = dyn_used + (k == 2 ? 1 : 0);
            std::uint64_t l2 = links + 1;
            if (!policy.sigma.allows(a2) || !policy.delta.allows(d2) || !policy.lambda.allows(l2)) continue;
            seen[next] = true;
            dfs(next, k, a2, d2, l2, cost + w);
            seen[next] = false;
          }
        }
      };
  seen[src] = true;
  dfs(src, 0, 0, 0, 0, Rational(0));
  return best;
}

std::vector<std::vector<PortPair>> all_port_matchings(std::uint32_t n) {
  std::vector<std::vector<PortPair>> out;
  std::vector<bool> used(n, false);
  std::vector<PortPair> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t i) {
    while (i < n && used[i]) ++i;
    if (i == n) {
      auto sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(sorted);
      return;
    }
    used[i] = true;
    rec(i + 1);
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.push_back({i, j});
      rec(i + 1);
      cur.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(0);
  return out;
}

std::optional<Rational> brute_force_optimum(const RRPInstance& inst) {
  const auto& net = inst.network;
  std::vector<std::vector<std::vector<PortPair>>> per_switch;
  for (const auto& sw : net.switches()) per_switch.push_back(all_port_matchings(sw.port_count));

  std::optional<Rational> best;
  std::vector<std::vector<PortPair>> choice(per_switch.size());
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == per_switch.size()) {
      std::vector<std::pair<NodeId, NodeId>> dyn;
      for (std::size_t i = 0; i < choice.size(); ++i) {
        for (const auto& p : choice[i]) {
          auto a = net.port_owner(static_cast<std::uint32_t>(i), p.a);
          auto b = net.port_owner(static_cast<std::uint32_t>(i), p.b);
          if (!a || !b || a->node == b->node) return;
          dyn.emplace_back(a->node, b->node);
        }
      }
      Rational total(0);
      for (const auto& d : inst.workload.demands()) {
        auto c = enumerate_paths(net, dyn, inst.mu, inst.policy, d.src, d.dst);
        if (!c) return;
        total += d.amount * *c;
      }
      if (!best || total < *best) best = total;
      return;
    }
    for (const auto& m : per_switch[s]) {
      choice[s] = m;
      rec(s + 1);
    }
  };
  rec(0);
  return best;
}

Rational brute_force_b_matching_weight(const std::vector<std::uint32_t>& capacity,
                                       const std::vector<WeightedEdge>& edges) {
  Rational best(0);
  const std::size_t m = edges.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::uint32_t> deg(capacity.size(), 0);
    Rational w(0);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      ok = ++deg[edges[i].u] <= capacity[edges[i].u] && ++deg[edges[i].v] <= capacity[edges[i].v];
      w += edges[i].weight;
    }
    if (ok && w > best) best = w;
  }
  return best;
}

std::uint64_t enumerate_bisection_width(const SimpleGraph& g) {
  const auto n = static_cast<std::uint32_t>(g.size());
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) * 2 != n) continue;
    std::uint64_t cut = 0;
    for (auto [u, v] : g.edges) cut += ((mask >> u) & 1) != ((mask >> v) & 1);
    best = std::min(best, cut);
  }
  return best;
}

SimpleGraph random_cubic_graph(std::uint32_t n, std::mt19937_64& rng) {
  // Pairing model: three stubs per node, retried until simple.
  for (;;) {
    std::vector<std::uint32_t> stubs;
    for (std::uint32_t v = 0; v < n; ++v) stubs.insert(stubs.end(), {v, v, v});
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      auto e = std::minmax(stubs[i], stubs[i + 1]);
      ok = e.first != e.second && edges.insert(e).second;
    }
    if (!ok) continue;
    SimpleGraph g;
    for (std::uint32_t v = 0; v < n; ++v) g.labels.push_back(std::to_string(v + 1));
    g.edges.assign(edges.begin(), edges.end());
    return g;
  }
}

BisectionFormulas bisection_formulas(std::uint64_t n, std::uint64_t k) {
  BisectionFormulas f;
  const std::uint64_t n2 = n * n;
  const std::uint64_t n3 = n2 * n;
  f.L = Rational(3 * n2);
  f.alpha = Rational(24 * n3 * n3);
  f.beta = Rational(6 * n3);
  f.mu = Rational(1) / Rational(2 * 3 * n2);
  f.kappa_alpha = f.alpha;
  f.kappa_beta = Rational(6 * n2 * n2 + n3 + 2 * n2) / Rational(2);
  f.kappa_1 = Rational(12 * n2 * k + 3 * n2 + 8 * k - 6 * n) / Rational(24 * n2);
  return f;
}

TreeFormulas tree_formulas(std::uint64_t n) {
  TreeFormulas f;
  f.d = 0;
  while ((std::uint64_t{1} << f.d) < n) ++f.d;
  const std::uint64_t p = std::uint64_t{1} << f.d;
  f.N = 6 * p + 28 * n + 4;
  f.E_prime = 9 * p + 43 * n + 6;
  f.E_double_prime = f.E_prime - 3 * n;
  f.alpha = Rational(4 * n * f.d);
  f.mu = Rational(1) / Rational(2 * f.d);
  f.kappa = f.mu * f.alpha * Rational(f.E_double_prime) + Rational(3 * n * (f.d + 3)) * f.mu;
  return f;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

HybridNetwork make_network(const std::vector<std::string>& names,
                           const std::vector<std::tuple<std::uint32_t, std::uint32_t, Rational>>& links,
                           std::uint32_t switch_ports,
                           const std::vector<std::pair<std::uint32_t, std::uint32_t>>& wiring) {
  std::vector<StaticLink> sl;
  for (const auto& [u, v, w] : links) sl.push_back({u, v, w});
  std::vector<Switch> switches;
  ExplicitWiring wl;
  if (switch_ports > 0 || !wiring.empty()) {
    switches.push_back({"s", switch_ports});
    std::vector<std::uint32_t> next_ext(names.size(), 0);
    for (auto [node, port] : wiring) wl.links.push_back({node, next_ext[node]++, 0, port});
  }
  return HybridNetwork(StaticGraph(names, sl), switches, wl);
}

RRPInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  const std::uint32_t n = pick(spec.min_nodes, spec.max_nodes);
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::bernoulli_distribution coin(spec.link_probability);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Rational>> links;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (coin(rng)) links.emplace_back(u, v, spec.weights[pick(0, static_cast<std::uint32_t>(spec.weights.size() - 1))]);
    }
  }
  const std::uint32_t ports = pick(0, spec.max_ports);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> wiring;
  for (std::uint32_t p = 0; p < ports; ++p) wiring.emplace_back(pick(0, n - 1), p);

  RRPInstance inst;
  inst.network = make_network(names, links, ports, wiring);
  inst.mu = spec.mus[pick(0, static_cast<std::uint32_t>(spec.mus.size() - 1))];
  std::vector<Demand> demands;
  std::set<std::pair<NodeId, NodeId>> used;
  const std::uint32_t count = pick(0, spec.max_demands);
  for (std::uint32_t i = 0; i < count; ++i) {
    NodeId s = pick(0, n - 1);
    NodeId t = pick(0, n - 1);
    if (s == t || !used.insert({s, t}).second) continue;
    demands.push_back({s, t, Rational(pick(1, spec.max_amount))});
  }
  inst.workload = Workload(std::move(demands));
  inst.kappa = Rational(0);
  return inst;
}

Configuration random_configuration(const HybridNetwork& net, std::mt19937_64& rng) {
  std::vector<std::vector<PortPair>> per_switch(net.switches().size());
  for (std::size_t s = 0; s < net.switches().size(); ++s) {
    std::vector<std::uint32_t> ports;
    for (std::uint32_t p = 0; p < net.switches()[s].port_count; ++p) {
      if (net.port_owner(static_cast<std::uint32_t>(s), p)) ports.push_back(p);
    }
    std::shuffle(ports.begin(), ports.end(), rng);
    std::bernoulli_distribution coin(0.6);
    for (std::size_t i = 0; i + 1 < ports.size(); i += 2) {
      auto a = net.port_owner(static_cast<std::uint32_t>(s), ports[i])->node;
      auto b = net.port_owner(static_cast<std::uint32_t>(s), ports[i + 1])->node;
      if (a != b && coin(rng)) per_switch[s].push_back({std::min(ports[i], ports[i + 1]), std::max(ports[i], ports[i + 1])});
    }
  }
  return Configuration(std::move(per_switch));
}

}  // namespace rrp::testing
