#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rrp/artifact.hpp"
#include "rrp/errors.hpp"
#include "rrp/exact_solver.hpp"
#include "rrp/instance_io.hpp"
#include "rrp/reductions.hpp"
#include "rrp/routing.hpp"
#include "rrp/source_problems.hpp"
#include "rrp/topology.hpp"
#include "rrp/tractable.hpp"

namespace {

using nlohmann::ordered_json;
using rrp::Rational;

bool g_decimal = false;

ordered_json number(const Rational& value) {
  if (!g_decimal) return rrp::format_rational(value);
  return ordered_json{{"exact", rrp::format_rational(value)}, {"decimal", rrp::format_decimal(value)}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rrp::Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json parse_json_file(const std::string& path) {
  try {
    return ordered_json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw rrp::ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw rrp::Error("cannot write " + path);
  body(out);
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string solver = "auto";
  bool decide = false;
  bool force = false;
  int jobs = 1;
};

int cmd_solve(const SolveArgs& a) {
  rrp::RRPInstance inst = rrp::read_instance_file(a.instance);
  rrp::ExactOptions opt;
  opt.force = a.force;
  opt.jobs = a.jobs;
  opt.port_budget = rrp::default_port_budget();

  std::string used;
  rrp::SolveResult res;
  if (a.solver == "exact") {
    used = "exact";
    res = rrp::solve_exact(inst, opt);
  } else if (a.solver == "poly") {
    auto c = rrp::tractable_case(inst);
    if (!c) throw rrp::PreconditionError("instance is not in a tractable case");
    used = rrp::to_string(*c);
    res = rrp::solve_segregated_single_switch(inst);
  } else {
    auto d = rrp::dispatch(inst, opt);
    used = d.solver;
    res = std::move(d.result);
  }

  ordered_json out;
  out["solver"] = used;
  out["feasible"] = res.optimal_cost.has_value();
  out["optimal_cost"] = res.optimal_cost ? number(*res.optimal_cost) : ordered_json(nullptr);
  out["configurations_examined"] = res.configurations_examined;
  if (res.optimal_cost) {
    out["configuration"] = ordered_json::parse(rrp::serialize_configuration(res.best_configuration, inst.network));
    out["flows"] = ordered_json::parse(rrp::serialize_flows(res.assignment, inst));
  }
  int code = res.optimal_cost ? 0 : 1;
  if (a.decide) {
    bool yes = res.optimal_cost && *res.optimal_cost <= inst.kappa;
    out["kappa"] = number(inst.kappa);
    out["decision"] = yes ? "yes" : "no";
    code = yes ? 0 : 1;
  }
  emit(out);
  return code;
}

// ---- reduce ---------------------------------------------------------------

struct ReduceArgs {
  std::string from;
  std::string source;
  std::string family = "hypercube";
  std::string mu = "1/2";
  std::string out;
  std::string certificate;
  std::string sigma;
  bool force = false;
  bool no_export = false;
  int jobs = 0;
};

ordered_json witness_report(const rrp::WitnessEvaluation& ev, const Rational& kappa,
                            const std::vector<std::pair<std::string, Rational>>& components) {
  ordered_json w;
  w["cost"] = number(ev.total);
  w["kappa"] = number(kappa);
  ordered_json parts = ordered_json::object();
  for (const auto& [name, amount] : components) parts[name] = number(ev.component(amount));
  w["components"] = parts;
  w["max_alternations"] = ev.max_alternations;
  w["max_dynamic_degree"] = ev.max_dynamic_degree;
  w["decision"] = ev.total <= kappa ? "yes" : "no";
  return w;
}

ordered_json artifact_summary(const rrp::ReductionArtifact& art) {
  ordered_json out;
  out["construction"] = art.construction;
  ordered_json params = ordered_json::object();
  for (const auto& [name, value] : art.parameters) params[name] = number(value);
  out["parameters"] = params;
  out["demand_count"] = art.demand_count;
  out["warnings"] = art.warnings;
  return out;
}

std::vector<std::size_t> read_cover(const std::string& path, const rrp::RXC3Instance& src) {
  auto doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("cover") || !doc["cover"].is_array()) {
    throw rrp::CertificateError("certificate invalid: expected {\"cover\": [clause numbers]}");
  }
  std::vector<std::size_t> cover;
  for (const auto& c : doc["cover"]) {
    if (!c.is_number_integer() || c.get<std::int64_t>() < 1 ||
        c.get<std::uint64_t>() > src.clauses.size()) {
      throw rrp::CertificateError("certificate invalid: clause numbers run from 1 to " +
                                  std::to_string(src.clauses.size()));
    }
    cover.push_back(c.get<std::size_t>() - 1);
  }
  return cover;
}

std::vector<std::uint32_t> read_side(const std::string& path, const rrp::BisectionInstance& src) {
  auto doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("A") || !doc["A"].is_array()) {
    throw rrp::CertificateError("certificate invalid: expected {\"A\": [vertex labels]}");
  }
  std::vector<std::uint32_t> side;
  for (const auto& v : doc["A"]) {
    std::string label = v.is_string() ? v.get<std::string>() : v.dump();
    auto idx = src.graph.find(label);
    if (!idx) throw rrp::CertificateError("certificate invalid: unknown vertex " + label);
    side.push_back(*idx);
  }
  return side;
}

void write_witness(const std::string& prefix, const rrp::RRPInstance& inst, const rrp::Witness& w) {
  write_file(prefix + ".config.json",
             [&](std::ostream& o) { rrp::write_configuration(o, w.configuration, inst.network); });
  write_file(prefix + ".flows.json", [&](std::ostream& o) { rrp::write_flows(o, w.assignment, inst); });
}

int cmd_reduce(const ReduceArgs& a) {
  const std::string text = slurp(a.source);
  rrp::FamilyKind family = rrp::parse_family(a.family);
  ordered_json out;
  bool yes = true;

  if (a.from == "bisection") {
    auto src = rrp::parse_bisection_source(text);
    rrp::Bound sigma = a.sigma.empty() ? rrp::Bound::infinite() : rrp::Bound::parse(a.sigma);
    auto art = rrp::reduce_bisection(src, family, sigma);
    for (const auto& w : art.warnings) std::cerr << "warning: " << w << "\n";
    if (!a.no_export) rrp::write_artifact(art, a.out);
    out = artifact_summary(art);
    if (!a.certificate.empty()) {
      auto w = rrp::witness_bisection(art, src, read_side(a.certificate, src));
      auto ev = rrp::evaluate_witness(art.instance, w);
      if (!a.no_export) write_witness(a.out, art.instance, w);
      out["witness"] = witness_report(ev, art.instance.kappa,
                                      {{"alpha", art.parameter("alpha")}, {"beta", art.parameter("beta")}, {"unit", Rational(1)}});
      yes = ev.total <= art.instance.kappa;
    }
  } else if (a.from == "rxc3-tree") {
    auto src = rrp::parse_rxc3_source(text);
    rrp::Bound sigma = a.sigma.empty() ? rrp::Bound::infinite() : rrp::Bound::parse(a.sigma);
    auto art = rrp::reduce_rxc3_tree(src, family, sigma);
    if (!a.no_export) rrp::write_artifact(art, a.out);
    out = artifact_summary(art);
    if (!a.certificate.empty()) {
      auto w = rrp::witness_rxc3_tree(art, src, read_cover(a.certificate, src));
      auto ev = rrp::evaluate_witness(art.instance, w);
      if (!a.no_export) write_witness(a.out, art.instance, w);
      out["witness"] = witness_report(ev, art.instance.kappa, {{"alpha", art.parameter("alpha")}, {"unit", Rational(1)}});
      yes = ev.total <= art.instance.kappa;
    }
  } else if (a.from == "rxc3-cube") {
    if (family != rrp::FamilyKind::kHypercube) throw rrp::PreconditionError("rxc3-cube needs the hypercube family");
    if (!a.sigma.empty()) std::cerr << "warning: --sigma is ignored; the cube reduction fixes sigma = 3\n";
    auto src = rrp::parse_rxc3_source(text);
    rrp::CubeReduction red(src, rrp::parse_rational(a.mu));
    if (!a.no_export && red.n() > rrp::kCubeExportLimit && !a.force) {
      throw rrp::TooLargeError("n = " + std::to_string(red.n()) + " exceeds the export limit of n <= " +
                               std::to_string(rrp::kCubeExportLimit) + " (use --force or --no-export)");
    }
    auto art = red.artifact();
    if (!a.no_export) rrp::write_artifact(art, a.out);
    out = artifact_summary(art);
    if (!a.certificate.empty()) {
      rrp::CubeWitness wit(red, read_cover(a.certificate, src));
      auto ev = rrp::evaluate_cube_witness(red, wit, a.jobs);
      if (!a.no_export) {
        const auto& net = art.instance.network;
        write_file(a.out + ".config.json",
                   [&](std::ostream& o) { rrp::write_configuration(o, wit.configuration(), net); });
        write_file(a.out + ".flows.json", [&](std::ostream& o) {
          rrp::write_flows_streamed(o, net, [&](const rrp::PathSink& sink) {
            red.for_each_demand([&](const rrp::Demand& d) { sink(wit.path_for(d)); });
          });
        });
      }
      out["witness"] = witness_report(ev, red.kappa(), {{"alpha", red.alpha()}, {"beta", red.beta()}, {"unit", Rational(1)}});
      yes = ev.total <= red.kappa();
    }
  } else {
    throw rrp::PreconditionError("unknown construction " + a.from);
  }
  if (!a.no_export) {
    out["files"] = {a.out + ".instance.json", a.out + ".roles.json", a.out + ".params.json"};
    if (!a.certificate.empty()) {
      out["files"].push_back(a.out + ".config.json");
      out["files"].push_back(a.out + ".flows.json");
    }
  }
  emit(out);
  return yes ? 0 : 1;
}

// ---- evaluate -------------------------------------------------------------

int cmd_evaluate(const std::string& instance_path, const std::string& config_path, const std::string& flows_path) {
  rrp::RRPInstance inst = rrp::read_instance_file(instance_path);
  std::ifstream cfg_in(config_path);
  if (!cfg_in) throw rrp::Error("cannot read " + config_path);
  rrp::Configuration cfg = rrp::read_configuration(cfg_in, inst.network);
  std::ifstream flows_in(flows_path);
  if (!flows_in) throw rrp::Error("cannot read " + flows_path);
  rrp::FlowAssignment flows = rrp::read_flows(flows_in, inst);

  rrp::Witness w{std::move(cfg), std::move(flows)};
  auto ev = rrp::evaluate_witness(inst, w);

  ordered_json out;
  ordered_json per = ordered_json::array();
  const auto& demands = inst.workload.demands();
  rrp::AugmentedNetwork g(inst.network, w.configuration, inst.mu);
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const auto& d = demands[i];
    Rational unit = rrp::evaluate_flow_path(g, inst.policy, w.assignment.paths[i]);
    per.push_back({{"demand", rrp::demand_key(inst.network, d.src, d.dst)},
                   {"amount", number(d.amount)},
                   {"cost", number(d.amount * unit)}});
  }
  out["demands"] = per;
  out["total"] = number(ev.total);
  out["kappa"] = number(inst.kappa);
  bool yes = ev.total <= inst.kappa;
  out["decision"] = yes ? "yes" : "no";
  emit(out);
  return yes ? 0 : 1;
}

// ---- oracle ---------------------------------------------------------------

int cmd_oracle(const std::string& problem, const std::string& path) {
  const std::string text = slurp(path);
  ordered_json out;
  if (problem == "bisection") {
    auto src = rrp::parse_bisection_source(text);
    auto res = rrp::oracle_bisection(src.graph);
    out["width"] = res.width;
    ordered_json side = ordered_json::array();
    for (auto v : res.side_a) side.push_back(src.graph.labels[v]);
    out["A"] = side;
    // A source without k only asks for the width.
    bool has_k = ordered_json::parse(text).contains("k");
    if (has_k) {
      out["k"] = src.k;
      out["decision"] = res.width <= src.k ? "yes" : "no";
    }
    emit(out);
    return !has_k || res.width <= src.k ? 0 : 1;
  }
  if (problem == "xc3") {
    auto src = rrp::parse_rxc3_source(text);
    rrp::validate_rxc3(src);
    auto cover = rrp::oracle_exact_cover(src);
    if (cover) {
      ordered_json c = ordered_json::array();
      for (auto j : *cover) c.push_back(j + 1);
      out["cover"] = c;
    } else {
      out["cover"] = nullptr;
    }
    out["decision"] = cover ? "yes" : "no";
    emit(out);
    return cover ? 0 : 1;
  }
  throw rrp::PreconditionError("unknown problem " + problem);
}

// ---- gen-family -----------------------------------------------------------

struct GenArgs {
  std::string family;
  std::int64_t index = -1;
  std::int64_t at_least = -1;
  std::uint32_t ports = 0;
  std::string out;
};

int cmd_gen_family(const GenArgs& a) {
  rrp::FamilyKind kind = rrp::parse_family(a.family);
  if ((a.index < 0) == (a.at_least < 0)) throw rrp::PreconditionError("give exactly one of --index and --at-least");
  std::uint64_t index = a.index >= 0 ? static_cast<std::uint64_t>(a.index)
                                     : rrp::smallest_member_at_least(kind, static_cast<std::uint64_t>(a.at_least)).index;
  rrp::RRPInstance inst;
  inst.network = rrp::attach_uniform_switch(rrp::generate_family(kind, index), a.ports);
  inst.mu = Rational(1);
  inst.kappa = Rational(0);
  if (a.out.empty()) {
    rrp::write_instance(std::cout, inst);
  } else {
    write_file(a.out, [&](std::ostream& o) { rrp::write_instance(o, inst); });
  }
  std::cerr << rrp::to_string(kind) << " index " << index << ": " << inst.network.node_count() << " nodes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfigurable routing: solvers, reductions and checkers"};
  app.require_subcommand(1);
  app.add_flag("--decimal", g_decimal, "Add approximate decimal renderings");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("instance", solve.instance)->required();
  s->add_option("--solver", solve.solver)->check(CLI::IsMember({"exact", "poly", "auto"}));
  s->add_flag("--decide", solve.decide, "Compare the optimum with kappa");
  s->add_flag("--force", solve.force, "Ignore the exact-solver port budget");
  s->add_option("--jobs", solve.jobs)->check(CLI::PositiveNumber);
  s->add_flag("--decimal", g_decimal);

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Build an RRP instance from a source problem");
  r->add_option("--from", reduce.from)->required()->check(CLI::IsMember({"bisection", "rxc3-tree", "rxc3-cube"}));
  r->add_option("--source", reduce.source)->required();
  r->add_option("--family", reduce.family);
  r->add_option("--mu", reduce.mu, "Cube reduction mu in (0, 1)");
  r->add_option("--sigma", reduce.sigma, "Policy sigma for bisection and tree (default inf)");
  r->add_option("--out", reduce.out, "Output file prefix");
  r->add_option("--certificate", reduce.certificate);
  r->add_flag("--force", reduce.force, "Allow large cube exports");
  r->add_flag("--no-export", reduce.no_export, "Only print the summary");
  r->add_option("--jobs", reduce.jobs);
  r->add_flag("--decimal", g_decimal);

  std::string ev_instance, ev_config, ev_flows;
  auto* e = app.add_subcommand("evaluate", "Evaluate a configuration and flow assignment");
  e->add_option("instance", ev_instance)->required();
  e->add_option("config", ev_config)->required();
  e->add_option("flows", ev_flows)->required();
  e->add_flag("--decimal", g_decimal);

  std::string or_problem, or_source;
  auto* o = app.add_subcommand("oracle", "Brute-force source problem oracle");
  o->add_option("problem", or_problem)->required()->check(CLI::IsMember({"bisection", "xc3"}));
  o->add_option("source", or_source)->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen-family", "Write a family member as an instance");
  g->add_option("--family", gen.family)->required();
  g->add_option("--index", gen.index);
  g->add_option("--at-least", gen.at_least);
  g->add_option("--ports-per-node", gen.ports);
  g->add_option("--out", gen.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (r->parsed()) {
      if (reduce.out.empty() && !reduce.no_export) throw rrp::PreconditionError("--out is required unless --no-export");
      return cmd_reduce(reduce);
    }
    if (e->parsed()) return cmd_evaluate(ev_instance, ev_config, ev_flows);
    if (o->parsed()) return cmd_oracle(or_problem, or_source);
    if (g->parsed()) return cmd_gen_family(gen);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
