#include "rrp/artifact.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "rrp/errors.hpp"
#include "rrp/routing.hpp"

namespace rrp {

void ReductionArtifact::for_each_demand(const DemandSink& sink) const {
  if (stream) {
    stream(sink);
    return;
  }
  for (const auto& d : instance.workload.demands()) sink(d);
}

const Rational& ReductionArtifact::parameter(std::string_view name) const {
  for (const auto& [key, value] : parameters) {
    if (key == name) return value;
  }
  throw std::out_of_range("no parameter " + std::string(name));
}

Rational WitnessEvaluation::component(const Rational& amount) const {
  auto it = cost_by_amount.find(amount);
  return it == cost_by_amount.end() ? Rational(0) : it->second;
}

WitnessEvaluation evaluate_witness(const RRPInstance& inst, const Witness& witness) {
  const auto& net = inst.network;
  const auto& demands = inst.workload.demands();
  const auto& paths = witness.assignment.paths;
  if (paths.size() != demands.size()) throw CertificateError("witness does not cover every demand");
  AugmentedNetwork g(net, witness.configuration, inst.mu);

  WitnessEvaluation out;
  std::vector<std::uint32_t> degree(net.node_count(), 0);
  for (const auto& l : dynamic_links(net, witness.configuration)) {
    out.max_dynamic_degree = std::max({out.max_dynamic_degree, ++degree[l.u], ++degree[l.v]});
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& d = demands[i];
    const auto& p = paths[i];
    if (p.src != d.src || p.dst != d.dst) {
      throw CertificateError("witness path " + std::to_string(i) + " does not match demand " +
                             demand_key(net, d.src, d.dst));
    }
    PathUsage usage;
    try {
      usage = evaluate_flow_path_usage(g, inst.policy, p);
    } catch (const PathError& e) {
      throw ValidationError("demand " + demand_key(net, d.src, d.dst) + ": " + e.what());
    }
    Rational cost = d.amount * usage.cost;
    out.total += cost;
    out.cost_by_amount[d.amount] += cost;
    out.max_alternations = std::max(out.max_alternations, usage.alternations);
    ++out.demands;
  }
  return out;
}

Configuration configuration_from_pairs(const HybridNetwork& net, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<std::vector<PortPair>> per_switch(net.switches().size());
  std::vector<std::uint32_t> used(net.node_count(), 0);
  if (net.has_uniform_wiring()) {
    const std::uint32_t k = std::get<UniformWiring>(net.wiring()).ports_per_node;
    auto next = [&](NodeId v) {
      if (used[v] >= k) throw CertificateError("node " + net.node_name(v) + " has no free port left");
      return k * v + used[v]++;
    };
    per_switch[0].reserve(pairs.size());
    for (auto [u, v] : pairs) {
      std::uint32_t a = next(u);
      std::uint32_t b = next(v);
      per_switch[0].push_back({a, b});
    }
    return Configuration(std::move(per_switch));
  }
  // With several switches both endpoints must reach the same one; take the
  // first switch where both still have a free port.
  std::vector<std::vector<SwitchPort>> free(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    free[v] = net.ports_of(v);
    std::sort(free[v].begin(), free[v].end(), [](const SwitchPort& a, const SwitchPort& b) {
      return std::tie(a.switch_index, a.port) > std::tie(b.switch_index, b.port);
    });
  }
  for (auto [u, v] : pairs) {
    bool placed = false;
    for (std::size_t i = free[u].size(); i-- > 0 && !placed;) {
      for (std::size_t j = free[v].size(); j-- > 0;) {
        if (free[u][i].switch_index != free[v][j].switch_index) continue;
        per_switch[free[u][i].switch_index].push_back({free[u][i].port, free[v][j].port});
        free[u].erase(free[u].begin() + static_cast<std::ptrdiff_t>(i));
        free[v].erase(free[v].begin() + static_cast<std::ptrdiff_t>(j));
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw CertificateError("no common free switch port for " + net.node_name(u) + " and " + net.node_name(v));
    }
  }
  return Configuration(std::move(per_switch));
}

std::uint32_t max_pair_degree(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::map<NodeId, std::uint32_t> degree;
  std::uint32_t best = 0;
  for (auto [u, v] : pairs) best = std::max({best, ++degree[u], ++degree[v]});
  return best;
}

void write_parameters(std::ostream& out, const ReductionArtifact& artifact) {
  nlohmann::ordered_json doc;
  doc["construction"] = artifact.construction;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : artifact.parameters) params[name] = format_rational(value);
  doc["parameters"] = params;
  doc["demand_count"] = artifact.demand_count;
  doc["warnings"] = artifact.warnings;
  out << doc.dump(2) << "\n";
}

void write_roles(std::ostream& out, const ReductionArtifact& artifact) {
  const auto& net = artifact.instance.network;
  out << "{";
  bool first = true;
  for (NodeId v : artifact.listed_nodes) {
    out << (first ? "\n  " : ",\n  ") << nlohmann::json(net.node_name(v)).dump() << ": "
        << nlohmann::json(artifact.role_of(v)).dump();
    first = false;
  }
  out << (first ? "}\n" : "\n}\n");
}

void write_artifact(const ReductionArtifact& artifact, const std::string& prefix) {
  auto open = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    return f;
  };
  {
    auto f = open(prefix + ".instance.json");
    write_instance_streamed(f, artifact.instance, [&](const DemandSink& sink) { artifact.for_each_demand(sink); });
  }
  {
    auto f = open(prefix + ".roles.json");
    write_roles(f, artifact);
  }
  {
    auto f = open(prefix + ".params.json");
    write_parameters(f, artifact);
  }
}

}  // namespace rrp
