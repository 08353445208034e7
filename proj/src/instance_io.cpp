#include "rrp/instance_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "rrp/errors.hpp"

namespace rrp {
namespace {

using json = nlohmann::json;

std::string as_name(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(std::string("expected a node name in ") + what);
}

Rational as_rational(const json& j, const char* what) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " in " + what);
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError(std::string("malformed rational in ") + what);
}

Rational as_nonnegative(const json& j, const char* what) {
  Rational r = as_rational(j, what);
  if (r < 0) throw ParseError(std::string("negative rational in ") + what);
  return r;
}

std::uint32_t as_index(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ParseError(std::string("expected a natural number in ") + what);
  }
  auto v = j.get<unsigned long long>();
  if (v > 0xffffffffULL) throw ParseError(std::string("index too large in ") + what);
  return static_cast<std::uint32_t>(v);
}

Bound as_bound(const json& j, const char* what) {
  if (j.is_string()) return Bound::parse(j.get<std::string>());
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) {
    return Bound(j.get<unsigned long long>());
  }
  throw ParseError(std::string("malformed bound in ") + what);
}

NodeId resolve(const HybridNetwork& net, const std::string& name) {
  auto v = net.find_node(name);
  if (!v) throw ParseError("unknown node reference \"" + name + "\"");
  return *v;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

// Resolves node names while the document is still being read. Hypercube
// names need only the dimension; explicit names need the node list.
struct NameResolver {
  std::optional<unsigned> dimension;
  bool explicit_mode = false;
  std::unordered_map<std::string, NodeId> index;

  bool ready() const { return dimension.has_value() || explicit_mode; }

  NodeId operator()(const std::string& name) const {
    if (dimension) {
      if (name.size() == *dimension) {
        NodeId v = 0;
        bool ok = true;
        for (char c : name) {
          if (c != '0' && c != '1') ok = false;
          v = (v << 1) | static_cast<NodeId>(c == '1');
        }
        if (ok) return v;
      }
    } else {
      auto it = index.find(name);
      if (it != index.end()) return it->second;
    }
    throw ParseError("unknown node reference \"" + name + "\"");
  }
};

struct PendingDemand {
  NodeId src;
  NodeId dst;
  Rational amount;
};

std::optional<unsigned> hypercube_dimension(const json& adjacency) {
  if (adjacency.is_string()) {
    if (adjacency.get<std::string>() != "explicit") throw ParseError("unknown adjacency mode");
    return std::nullopt;
  }
  if (adjacency.is_object() && adjacency.contains("hypercube")) {
    return as_index(adjacency.at("hypercube"), "adjacency");
  }
  throw ParseError("unknown adjacency mode");
}

RRPInstance parse_instance_impl(const std::function<json(json::parser_callback_t)>& run_parser,
                                const DemandSink* sink = nullptr) {
  NameResolver resolver;
  std::vector<PendingDemand> demands;
  std::vector<std::array<std::string, 3>> raw_demands;
  std::string top_key;

  auto convert = [&](const json& triple) {
    if (!triple.is_array() || triple.size() != 3) throw ParseError("demand entries must be [src, dst, amount]");
    std::string s = as_name(triple[0], "demands");
    std::string d = as_name(triple[1], "demands");
    if (s == d) throw ParseError("self-demand \"" + s + "->" + d + "\"");
    if (resolver.ready()) {
      Rational amount = as_rational(triple[2], "demands");
      if (sink) {
        if (amount <= 0) throw ParseError("demand amount must be positive for " + s + "->" + d);
        (*sink)(Demand{resolver(s), resolver(d), std::move(amount)});
        return;
      }
      demands.push_back({resolver(s), resolver(d), std::move(amount)});
    } else {
      raw_demands.push_back({s, d, triple[2].is_string() ? triple[2].get<std::string>() : triple[2].dump()});
    }
  };

  json doc = run_parser([&](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) {
      top_key = parsed.get<std::string>();
      return true;
    }
    if (top_key == "demands" && depth == 2 && event == json::parse_event_t::array_end) {
      convert(parsed);
      return false;
    }
    bool value_done = event == json::parse_event_t::value || event == json::parse_event_t::array_end ||
                      event == json::parse_event_t::object_end;
    if (depth == 1 && value_done) {
      if (top_key == "adjacency") {
        auto dim = hypercube_dimension(parsed);
        if (dim) resolver.dimension = dim;
      } else if (top_key == "nodes" && parsed.is_array()) {
        for (NodeId v = 0; v < parsed.size(); ++v) resolver.index.emplace(as_name(parsed[v], "nodes"), v);
        resolver.explicit_mode = true;
      }
    }
    return true;
  });

  if (!doc.is_object()) throw ParseError("instance must be a JSON object");

  std::optional<unsigned> dim;
  if (doc.contains("adjacency")) dim = hypercube_dimension(doc.at("adjacency"));

  StaticGraph graph;
  if (dim) {
    if (doc.contains("nodes") && !doc.at("nodes").empty()) {
      throw ParseError("hypercube instances derive their nodes; omit \"nodes\"");
    }
    if (doc.contains("static_links") && !doc.at("static_links").empty()) {
      throw ParseError("hypercube instances derive their static links; omit \"static_links\"");
    }
    graph = StaticGraph::hypercube(*dim);
  } else {
    std::vector<std::string> names;
    if (doc.contains("nodes")) {
      for (const auto& n : doc.at("nodes")) names.push_back(as_name(n, "nodes"));
    }
    std::unordered_map<std::string, NodeId> index;
    for (NodeId v = 0; v < names.size(); ++v) {
      if (!index.emplace(names[v], v).second) throw ParseError("duplicate node name \"" + names[v] + "\"");
    }
    auto lookup = [&](const std::string& name) {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown node reference \"" + name + "\"");
      return it->second;
    };
    std::vector<StaticLink> links;
    if (doc.contains("static_links")) {
      for (const auto& l : doc.at("static_links")) {
        if (!l.is_array() || l.size() != 3) throw ParseError("static_links entries must be [u, v, weight]");
        links.push_back({lookup(as_name(l[0], "static_links")), lookup(as_name(l[1], "static_links")),
                         as_nonnegative(l[2], "static_links")});
      }
    }
    graph = StaticGraph(std::move(names), std::move(links));
  }

  std::vector<Switch> switches;
  if (doc.contains("switches")) {
    for (const auto& s : doc.at("switches")) {
      if (!s.is_object() || !s.contains("id") || !s.contains("ports")) {
        throw ParseError("switches entries must be {\"id\", \"ports\"}");
      }
      switches.push_back({as_name(s.at("id"), "switches"), as_index(s.at("ports"), "switches")});
    }
  }
  auto switch_index = [&](const std::string& id) -> std::uint32_t {
    for (std::uint32_t i = 0; i < switches.size(); ++i) {
      if (switches[i].id == id) return i;
    }
    throw ParseError("unknown switch reference \"" + id + "\"");
  };

  Wiring wiring = ExplicitWiring{};
  if (doc.contains("switch_links")) {
    const auto& sl = doc.at("switch_links");
    if (sl.is_object()) {
      if (!sl.contains("uniform")) throw ParseError("switch_links object form must be {\"uniform\": k}");
      wiring = UniformWiring{as_index(sl.at("uniform"), "switch_links")};
    } else {
      std::vector<SwitchLink> links;
      for (const auto& l : sl) {
        if (!l.is_array() || l.size() != 4) throw ParseError("switch_links entries must be [node, ext_port, switch, sw_port]");
        std::string name = as_name(l[0], "switch_links");
        auto v = graph.find_node(name);
        if (!v) throw ParseError("unknown node reference \"" + name + "\"");
        links.push_back({*v, as_index(l[1], "switch_links"), switch_index(as_name(l[2], "switch_links")),
                         as_index(l[3], "switch_links")});
      }
      wiring = ExplicitWiring{std::move(links)};
    }
  }

  RRPInstance inst;
  try {
    inst.network = HybridNetwork(std::move(graph), std::move(switches), std::move(wiring));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  if (!doc.contains("mu")) throw ParseError("missing \"mu\"");
  if (!doc.contains("kappa")) throw ParseError("missing \"kappa\"");
  inst.mu = as_nonnegative(doc.at("mu"), "mu");
  inst.kappa = as_nonnegative(doc.at("kappa"), "kappa");
  if (doc.contains("policy")) {
    const auto& p = doc.at("policy");
    if (!p.is_object()) throw ParseError("policy must be an object");
    if (p.contains("sigma")) inst.policy.sigma = as_bound(p.at("sigma"), "policy");
    if (p.contains("delta")) inst.policy.delta = as_bound(p.at("delta"), "policy");
    if (p.contains("lambda")) inst.policy.lambda = as_bound(p.at("lambda"), "policy");
  }

  std::vector<Demand> out;
  out.reserve(demands.size() + raw_demands.size());
  for (auto& d : demands) out.push_back({d.src, d.dst, std::move(d.amount)});
  for (const auto& r : raw_demands) {
    out.push_back({resolve(inst.network, r[0]), resolve(inst.network, r[1]), as_rational(json(r[2]), "demands")});
  }
  if (sink) {
    for (auto& d : out) {
      if (d.amount <= 0) throw ParseError("demand amount must be positive for " + demand_key(inst.network, d.src, d.dst));
      (*sink)(d);
    }
    return inst;
  }
  for (const auto& d : out) {
    if (d.amount <= 0) {
      throw ParseError("demand amount must be positive for " + demand_key(inst.network, d.src, d.dst));
    }
  }
  try {
    inst.workload = Workload(std::move(out));
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

template <class Source>
json run(Source&& src, json::parser_callback_t cb) {
  try {
    return json::parse(std::forward<Source>(src), cb);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string demand_key(const HybridNetwork& net, NodeId src, NodeId dst) {
  return net.node_name(src) + "->" + net.node_name(dst);
}

RRPInstance parse_instance(std::string_view text) {
  return parse_instance_impl([&](json::parser_callback_t cb) { return run(text, cb); });
}

RRPInstance read_instance(std::istream& in) {
  return parse_instance_impl([&](json::parser_callback_t cb) { return run(in, cb); });
}

RRPInstance read_instance_streamed(std::istream& in, const DemandSink& sink) {
  return parse_instance_impl([&](json::parser_callback_t cb) { return run(in, cb); }, &sink);
}

RRPInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const RRPInstance& inst) {
  write_instance_streamed(out, inst, [&](const DemandSink& sink) {
    for (const auto& d : inst.workload.demands()) sink(d);
  });
}

void write_instance_streamed(std::ostream& out, const RRPInstance& inst, const DemandSource& demands) {
  const auto& net = inst.network;
  const auto& g = net.graph();
  out << "{\n";
  if (g.is_hypercube()) {
    out << "  \"adjacency\": {\"hypercube\": " << g.hypercube_dimension() << "},\n";
  } else {
    out << "  \"adjacency\": \"explicit\",\n";
    out << "  \"nodes\": [";
    for (NodeId v = 0; v < g.node_count(); ++v) out << (v ? ", " : "") << quoted(g.node_name(v));
    out << "],\n";
    out << "  \"static_links\": [";
    bool first = true;
    for (const auto& l : g.links()) {
      out << (first ? "\n    " : ",\n    ") << "[" << quoted(g.node_name(l.u)) << ", " << quoted(g.node_name(l.v))
          << ", \"" << format_rational(l.weight) << "\"]";
      first = false;
    }
    out << (first ? "],\n" : "\n  ],\n");
  }
  out << "  \"switches\": [";
  for (std::size_t s = 0; s < net.switches().size(); ++s) {
    out << (s ? ", " : "") << "{\"id\": " << quoted(net.switches()[s].id)
        << ", \"ports\": " << net.switches()[s].port_count << "}";
  }
  out << "],\n";
  if (net.has_uniform_wiring()) {
    out << "  \"switch_links\": {\"uniform\": " << std::get<UniformWiring>(net.wiring()).ports_per_node << "},\n";
  } else {
    out << "  \"switch_links\": [";
    bool first = true;
    for (const auto& l : std::get<ExplicitWiring>(net.wiring()).links) {
      out << (first ? "\n    " : ",\n    ") << "[" << quoted(g.node_name(l.node)) << ", " << l.ext_port << ", "
          << quoted(net.switches()[l.switch_index].id) << ", " << l.switch_port << "]";
      first = false;
    }
    out << (first ? "],\n" : "\n  ],\n");
  }
  out << "  \"mu\": \"" << format_rational(inst.mu) << "\",\n";
  out << "  \"kappa\": \"" << format_rational(inst.kappa) << "\",\n";
  auto bound = [](const Bound& b) { return b.is_finite() ? std::to_string(b.value()) : std::string("\"inf\""); };
  out << "  \"policy\": {\"sigma\": " << bound(inst.policy.sigma) << ", \"delta\": " << bound(inst.policy.delta)
      << ", \"lambda\": " << bound(inst.policy.lambda) << "},\n";
  out << "  \"demands\": [";
  bool first = true;
  demands([&](const Demand& d) {
    out << (first ? "\n    " : ",\n    ") << "[" << quoted(g.node_name(d.src)) << ", " << quoted(g.node_name(d.dst))
        << ", \"" << format_rational(d.amount) << "\"]";
    first = false;
  });
  out << (first ? "]\n" : "\n  ]\n");
  out << "}\n";
}

std::string serialize_instance(const RRPInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

namespace {

Configuration configuration_from(const json& doc, const HybridNetwork& net) {
  if (!doc.is_object()) throw ParseError("configuration must be a JSON object");
  std::vector<std::vector<PortPair>> per_switch(net.switches().size());
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto s = net.find_switch(it.key());
    if (!s) throw ParseError("unknown switch reference \"" + it.key() + "\"");
    for (const auto& pair : it.value()) {
      if (!pair.is_array() || pair.size() != 2) throw ParseError("matching entries must be [port, port]");
      per_switch[*s].push_back({as_index(pair[0], "configuration"), as_index(pair[1], "configuration")});
    }
  }
  return Configuration(std::move(per_switch));
}

}  // namespace

Configuration parse_configuration(std::string_view text, const HybridNetwork& net) {
  return configuration_from(run(text, nullptr), net);
}

Configuration read_configuration(std::istream& in, const HybridNetwork& net) {
  return configuration_from(run(in, nullptr), net);
}

void write_configuration(std::ostream& out, const Configuration& cfg, const HybridNetwork& net) {
  out << "{";
  for (std::size_t s = 0; s < net.switches().size(); ++s) {
    out << (s ? ",\n " : "\n ") << quoted(net.switches()[s].id) << ": [";
    bool first = true;
    for (const auto& p : cfg.matching(s)) {
      out << (first ? "" : ", ") << "[" << p.a << ", " << p.b << "]";
      first = false;
    }
    out << "]";
  }
  out << (net.switches().empty() ? "}\n" : "\n}\n");
}

std::string serialize_configuration(const Configuration& cfg, const HybridNetwork& net) {
  std::ostringstream out;
  write_configuration(out, cfg, net);
  return out.str();
}

namespace {

FlowAssignment flows_from(const std::function<json(json::parser_callback_t)>& run_parser, const RRPInstance& inst) {
  const auto& net = inst.network;
  const auto& demands = inst.workload.demands();
  std::vector<std::pair<std::uint64_t, std::size_t>> index;
  index.reserve(demands.size());
  for (std::size_t i = 0; i < demands.size(); ++i) {
    index.emplace_back((std::uint64_t{demands[i].src} << 32) | demands[i].dst, i);
  }
  std::sort(index.begin(), index.end());

  FlowAssignment result;
  result.paths.resize(demands.size());
  std::vector<bool> seen(demands.size(), false);
  std::string key;

  auto convert = [&](const json& links) {
    auto arrow = key.find("->");
    if (arrow == std::string::npos) throw ParseError("flow key \"" + key + "\" is not of the form src->dst");
    NodeId src = resolve(net, key.substr(0, arrow));
    NodeId dst = resolve(net, key.substr(arrow + 2));
    std::uint64_t k = (std::uint64_t{src} << 32) | dst;
    auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(k, std::size_t{0}));
    if (it == index.end() || it->first != k) throw ParseError("flow for unknown demand " + key);
    if (seen[it->second]) throw ParseError("duplicate flow for demand " + key);
    seen[it->second] = true;
    FlowPath path{src, dst, {}};
    if (!links.is_array()) throw ParseError("flow for " + key + " must be an array of links");
    for (const auto& l : links) {
      if (!l.is_object() || !l.contains("kind") || !l.contains("u") || !l.contains("v")) {
        throw ParseError("flow links must be {\"kind\", \"u\", \"v\"} in " + key);
      }
      std::string kind = l.at("kind").get<std::string>();
      LinkKind lk;
      if (kind == "static") {
        lk = LinkKind::kStatic;
      } else if (kind == "dynamic") {
        lk = LinkKind::kDynamic;
      } else {
        throw ParseError("unknown link kind \"" + kind + "\" in " + key);
      }
      path.links.push_back({lk, resolve(net, as_name(l.at("u"), "flows")), resolve(net, as_name(l.at("v"), "flows"))});
    }
    result.paths[it->second] = std::move(path);
  };

  json doc = run_parser([&](int depth, json::parse_event_t event, json& parsed) {
    if (depth == 1 && event == json::parse_event_t::key) {
      key = parsed.get<std::string>();
      return true;
    }
    if (depth == 1 && event == json::parse_event_t::array_end) {
      convert(parsed);
      return false;
    }
    return true;
  });
  if (!doc.is_object()) throw ParseError("flows must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_discarded()) throw ParseError("flow for " + it.key() + " must be an array of links");
  }
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (!seen[i]) throw ParseError("no flow-path for demand " + demand_key(net, demands[i].src, demands[i].dst));
  }
  return result;
}

}  // namespace

FlowAssignment parse_flows(std::string_view text, const RRPInstance& inst) {
  return flows_from([&](json::parser_callback_t cb) { return run(text, cb); }, inst);
}

FlowAssignment read_flows(std::istream& in, const RRPInstance& inst) {
  return flows_from([&](json::parser_callback_t cb) { return run(in, cb); }, inst);
}

void write_flows(std::ostream& out, const FlowAssignment& flows, const RRPInstance& inst) {
  write_flows_streamed(out, inst.network, [&](const PathSink& sink) {
    for (const auto& p : flows.paths) sink(p);
  });
}

void write_flows_streamed(std::ostream& out, const HybridNetwork& net, const PathSource& paths) {
  out << "{";
  bool first = true;
  paths([&](const FlowPath& p) {
    out << (first ? "\n  " : ",\n  ") << quoted(demand_key(net, p.src, p.dst)) << ": [";
    for (std::size_t i = 0; i < p.links.size(); ++i) {
      const auto& l = p.links[i];
      out << (i ? ", " : "") << "{\"kind\": \"" << (l.kind == LinkKind::kStatic ? "static" : "dynamic")
          << "\", \"u\": " << quoted(net.node_name(l.u)) << ", \"v\": " << quoted(net.node_name(l.v)) << "}";
    }
    out << "]";
    first = false;
  });
  out << (first ? "}\n" : "\n}\n");
}

std::string serialize_flows(const FlowAssignment& flows, const RRPInstance& inst) {
  std::ostringstream out;
  write_flows(out, flows, inst);
  return out.str();
}

}  // namespace rrp
