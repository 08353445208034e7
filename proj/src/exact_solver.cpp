#include "rrp/exact_solver.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "rrp/errors.hpp"
#include "rrp/routing.hpp"

namespace rrp {

void for_each_switch_matching(std::uint32_t port_count, const std::function<void(const std::vector<PortPair>&)>& visit) {
  std::vector<bool> used(port_count, false);
  std::vector<PortPair> current;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    std::uint32_t p = from;
    while (p < port_count && used[p]) ++p;
    if (p == port_count) {
      visit(current);
      return;
    }
    used[p] = true;
    rec(p + 1);
    for (std::uint32_t q = p + 1; q < port_count; ++q) {
      if (used[q]) continue;
      used[q] = true;
      current.push_back({p, q});
      rec(p + 1);
      current.pop_back();
      used[q] = false;
    }
    used[p] = false;
  };
  rec(0);
}

std::vector<std::vector<PortPair>> enumerate_switch_matchings(std::uint32_t port_count) {
  std::vector<std::vector<PortPair>> out;
  for_each_switch_matching(port_count, [&](const std::vector<PortPair>& m) { out.push_back(m); });
  return out;
}

std::uint64_t telephone_number(std::uint32_t n) {
  std::uint64_t a = 1, b = 1;  // T(0), T(1)
  if (n == 0) return 1;
  for (std::uint32_t i = 2; i <= n; ++i) {
    std::uint64_t c = b + (i - 1) * a;
    a = b;
    b = c;
  }
  return b;
}

std::uint64_t default_port_budget() {
  if (const char* env = std::getenv("RRP_PORT_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 12;
}

void check_exact_budget(const RRPInstance& inst, const ExactOptions& options) {
  std::uint64_t ports = inst.network.wired_port_count();
  if (ports > options.port_budget && !options.force) {
    throw TooLargeError("instance too large for exact solver: " + std::to_string(ports) +
                        " wired switch ports exceed the budget of " + std::to_string(options.port_budget));
  }
}

namespace {

using NodePairs = std::vector<std::pair<NodeId, NodeId>>;

// Per-switch search space: the wired ports, every admissible matching
// expressed as node pairs, and the complete relaxation used as a bound.
struct SwitchSpace {
  std::vector<std::vector<PortPair>> matchings;
  std::vector<NodePairs> node_pairs;
  NodePairs complete;
};

std::vector<SwitchSpace> build_spaces(const HybridNetwork& net) {
  std::vector<SwitchSpace> spaces(net.switches().size());
  for (std::uint32_t s = 0; s < spaces.size(); ++s) {
    std::vector<std::uint32_t> wired;
    for (std::uint32_t p = 0; p < net.switches()[s].port_count; ++p) {
      if (net.port_owner(s, p)) wired.push_back(p);
    }
    auto& space = spaces[s];
    for_each_switch_matching(static_cast<std::uint32_t>(wired.size()), [&](const std::vector<PortPair>& m) {
      std::vector<PortPair> ports;
      NodePairs pairs;
      for (const auto& pp : m) {
        NodeId u = net.port_owner(s, wired[pp.a])->node;
        NodeId v = net.port_owner(s, wired[pp.b])->node;
        if (u == v) return;  // self-loop; never useful and rejected by default
        ports.push_back({wired[pp.a], wired[pp.b]});
        pairs.emplace_back(u, v);
      }
      space.matchings.push_back(std::move(ports));
      space.node_pairs.push_back(std::move(pairs));
    });
    std::set<std::pair<NodeId, NodeId>> all;
    for (std::size_t i = 0; i < wired.size(); ++i) {
      for (std::size_t j = i + 1; j < wired.size(); ++j) {
        NodeId u = net.port_owner(s, wired[i])->node;
        NodeId v = net.port_owner(s, wired[j])->node;
        if (u != v) all.insert(std::minmax(u, v));
      }
    }
    space.complete.assign(all.begin(), all.end());
  }
  return spaces;
}

Configuration to_configuration(const std::vector<SwitchSpace>& spaces, const std::vector<std::uint32_t>& choice) {
  std::vector<std::vector<PortPair>> per_switch(spaces.size());
  for (std::size_t s = 0; s < spaces.size(); ++s) per_switch[s] = spaces[s].matchings[choice[s]];
  return Configuration(std::move(per_switch));
}

struct Best {
  std::optional<Rational> cost;
  std::vector<std::uint32_t> choice;
  std::uint64_t examined = 0;
};

bool better(const Best& a, const Best& b) {
  if (!a.cost) return false;
  if (!b.cost) return true;
  if (*a.cost != *b.cost) return *a.cost < *b.cost;
  return a.choice < b.choice;
}

SolveResult finish(const RRPInstance& inst, const std::vector<SwitchSpace>& spaces, const Best& best) {
  SolveResult result;
  result.configurations_examined = best.examined;
  if (!best.cost) return result;
  result.best_configuration = to_configuration(spaces, best.choice);
  result.optimal_cost = best.cost;
  AugmentedNetwork g(inst.network, result.best_configuration, inst.mu);
  auto assignment = min_total_cost_for_configuration(inst, g);
  result.assignment = std::move(*assignment);
  return result;
}

class BranchAndBound {
 public:
  BranchAndBound(const RRPInstance& inst, const std::vector<SwitchSpace>& spaces) : inst_(inst), spaces_(spaces) {}

  // Explores every configuration whose first switch uses matching `first`.
  void explore_first(std::uint32_t first, Best& best) {
    std::vector<std::uint32_t> choice(spaces_.size(), 0);
    NodePairs fixed;
    choice[0] = first;
    descend(0, first, choice, fixed, best);
  }

  // Lower bound with switches [level+1, S) fully relaxed.
  std::optional<Rational> bound(const NodePairs& fixed, std::size_t free_from) const {
    NodePairs pairs = fixed;
    for (std::size_t s = free_from; s < spaces_.size(); ++s) {
      pairs.insert(pairs.end(), spaces_[s].complete.begin(), spaces_[s].complete.end());
    }
    AugmentedNetwork g(inst_.network, pairs, inst_.mu);
    CostOutcome out = total_routing_cost(inst_, g, nullptr, false);
    if (out.status == CostStatus::kInfeasible) return std::nullopt;
    return out.cost;
  }

 private:
  void descend(std::size_t level, std::uint32_t index, std::vector<std::uint32_t>& choice, NodePairs& fixed,
               Best& best) {
    choice[level] = index;
    const auto& add = spaces_[level].node_pairs[index];
    fixed.insert(fixed.end(), add.begin(), add.end());
    if (level + 1 == spaces_.size()) {
      leaf(choice, fixed, best);
    } else {
      auto lb = bound(fixed, level + 1);
      if (lb && (!best.cost || *lb < *best.cost)) {
        for (std::uint32_t i = 0; i < spaces_[level + 1].matchings.size(); ++i) {
          descend(level + 1, i, choice, fixed, best);
        }
      }
    }
    fixed.resize(fixed.size() - add.size());
  }

  void leaf(const std::vector<std::uint32_t>& choice, const NodePairs& fixed, Best& best) {
    ++best.examined;
    AugmentedNetwork g(inst_.network, fixed, inst_.mu);
    const Rational* cutoff = best.cost ? &*best.cost : nullptr;
    CostOutcome out = total_routing_cost(inst_, g, cutoff, false);
    if (out.status != CostStatus::kFeasible) return;
    if (!best.cost || out.cost < *best.cost) {
      best.cost = out.cost;
      best.choice = choice;
    }
  }

  const RRPInstance& inst_;
  const std::vector<SwitchSpace>& spaces_;
};

}  // namespace

SolveResult solve_exact(const RRPInstance& inst, const ExactOptions& options) {
  check_exact_budget(inst, options);
  auto spaces = build_spaces(inst.network);
  if (spaces.empty()) {
    Best best;
    best.examined = 1;
    AugmentedNetwork g(inst.network, NodePairs{}, inst.mu);
    CostOutcome out = total_routing_cost(inst, g, nullptr, false);
    if (out.status == CostStatus::kFeasible) best.cost = out.cost;
    return finish(inst, spaces, best);
  }

  BranchAndBound bnb(inst, spaces);
  if (!bnb.bound({}, 0)) {
    // Unreachable even with every possible dynamic link present.
    return finish(inst, spaces, Best{});
  }

  const auto first_count = static_cast<std::int64_t>(spaces[0].matchings.size());
  std::vector<Best> per_thread;
  int jobs = std::max(1, options.jobs);
#pragma omp parallel num_threads(jobs)
  {
    Best local;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < first_count; ++i) {
      bnb.explore_first(static_cast<std::uint32_t>(i), local);
    }
#pragma omp critical
    per_thread.push_back(std::move(local));
  }

  Best best;
  for (const auto& b : per_thread) {
    best.examined += b.examined;
    if (better(b, best)) {
      best.cost = b.cost;
      best.choice = b.choice;
    }
  }
  return finish(inst, spaces, best);
}

SolveResult solve_exact_serial(const RRPInstance& inst, const ExactOptions& options) {
  check_exact_budget(inst, options);
  auto spaces = build_spaces(inst.network);
  std::vector<std::uint32_t> choice(spaces.size(), 0);
  Best best;
  while (true) {
    NodePairs pairs;
    for (std::size_t s = 0; s < spaces.size(); ++s) {
      const auto& add = spaces[s].node_pairs[choice[s]];
      pairs.insert(pairs.end(), add.begin(), add.end());
    }
    ++best.examined;
    AugmentedNetwork g(inst.network, pairs, inst.mu);
    CostOutcome out = total_routing_cost(inst, g, nullptr, false);
    if (out.status == CostStatus::kFeasible && (!best.cost || out.cost < *best.cost)) {
      best.cost = out.cost;
      best.choice = choice;
    }
    // Odometer with the last switch varying fastest.
    std::size_t s = spaces.size();
    while (s > 0) {
      --s;
      if (++choice[s] < spaces[s].matchings.size()) break;
      choice[s] = 0;
      if (s == 0) {
        s = spaces.size() + 1;
        break;
      }
    }
    if (spaces.empty() || s == spaces.size() + 1) break;
  }
  return finish(inst, spaces, best);
}

bool decide(const RRPInstance& inst, const ExactOptions& options) {
  SolveResult r = solve_exact(inst, options);
  return r.optimal_cost && *r.optimal_cost <= inst.kappa;
}

bool decide_with_certificate(const RRPInstance& inst, const Configuration& cfg, const FlowAssignment& flows) {
  AugmentedNetwork g(inst.network, cfg, inst.mu);
  return evaluate_assignment(inst, g, flows) <= inst.kappa;
}

}  // namespace rrp
