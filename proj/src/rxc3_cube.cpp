#include <omp.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rrp/errors.hpp"
#include "rrp/reductions.hpp"

namespace rrp {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

HybridNetwork cube_network(unsigned dimension) {
  return attach_uniform_switch(generate_family(FamilyKind::kHypercube, dimension), 1);
}

}  // namespace

CubeReduction::CubeReduction(RXC3Instance src, Rational mu) : src_(std::move(src)), mu_(std::move(mu)) {
  validate_rxc3(src_);
  n_ = static_cast<std::uint32_t>(src_.n());
  if (n_ % 2 != 0) throw PreconditionError("unsupported: the cube construction needs n even (got n = " + std::to_string(n_) + ")");
  if (mu_ <= 0 || mu_ >= 1) throw PreconditionError("mu must lie strictly between 0 and 1");
  while ((std::uint64_t{1} << m_) < 3ull * n_) ++m_;
  if (8 * m_ > 30) throw TooLargeError("hypercube dimension " + std::to_string(8 * m_) + " is not supported");

  const Rational nq(n_);
  const Rational path = Rational(m_) + 1 + 2 * mu_;  // m + 1 + 2mu
  Rational bound = std::max<Rational>(3 * nq * path / mu_, 3 * nq * path / (1 - mu_));
  beta_ = Rational(floor_plus_one(bound));
  alpha_ = 15 * nq * beta_ + 9 * nq * nq + 9 * nq + 1;
  kappa_beta_ = 3 * nq * mu_ * beta_ + 6 * nq * (mu_ + 1) * beta_;
  kappa_1_ = 3 * nq * path;

  const std::uint32_t lo = 4 * m_ - 3;
  const std::uint32_t hi = 4 * m_ + 3;
  auto in_w = [&](NodeId v) {
    std::uint32_t l = level(v);
    return l >= lo && l <= hi;
  };
  for (std::uint32_t i = 0; i < 3 * n_; ++i) {
    excluded_.push_back(element(i));
    excluded_.push_back(element_associate(i, 0));
    excluded_.push_back(element_associate(i, 1));
    excluded_.push_back(clause(i));
    for (unsigned pos = 0; pos < 3; ++pos) excluded_.push_back(clause_associate(i, pos));
  }
  std::erase_if(excluded_, [&](NodeId v) { return !in_w(v); });
  std::sort(excluded_.begin(), excluded_.end());
  excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());

  // Nodes whose antipode was removed are re-paired among themselves.
  std::vector<NodeId> orphans;
  for (NodeId e : excluded_) {
    if (in_matching_domain(complement(e))) orphans.push_back(complement(e));
  }
  std::sort(orphans.begin(), orphans.end());
  orphans.erase(std::unique(orphans.begin(), orphans.end()), orphans.end());
  std::vector<bool> taken(orphans.size(), false);
  for (std::size_t i = 0; i < orphans.size(); ++i) {
    if (taken[i]) continue;
    std::size_t j = i + 1;
    while (j < orphans.size() && (taken[j] || std::popcount(orphans[i] ^ orphans[j]) < 2)) ++j;
    if (j == orphans.size()) throw std::logic_error("matching M: orphan without a non-adjacent partner");
    taken[i] = taken[j] = true;
    orphan_pairs_.emplace_back(orphans[i], orphans[j]);
  }

  const std::uint32_t dim = dimension();
  for (std::uint32_t l = 0; l <= m_ + 5; ++l) alpha_p_count_ += binomial(dim, l);
  alpha_p_count_ -= n_;
  std::uint64_t w = 0;
  for (std::uint32_t l = lo; l <= hi; ++l) w += binomial(dim, l);
  alpha_w_count_ = (w - excluded_.size()) / 2;
  kappa_alpha_ = Rational(alpha_p_count_ + alpha_w_count_) * mu_ * alpha_;
}

std::uint32_t CubeReduction::level(NodeId v) const {
  return dimension() - static_cast<std::uint32_t>(std::popcount(v));
}

NodeId CubeReduction::port_candidate(std::uint32_t z) const {
  const NodeId mask = (NodeId{1} << m_) - 1;
  return (z << (7 * m_)) | ((~z & mask) << (6 * m_)) | ((NodeId{1} << (6 * m_)) - 1);
}

NodeId CubeReduction::clause_candidate(std::uint32_t z) const {
  const NodeId mask = (NodeId{1} << m_) - 1;
  NodeId v = (NodeId{1} << (2 * m_)) - 1;
  for (std::uint32_t t = 0; t < 3; ++t) {
    v |= z << (8 * m_ - (2 * t + 1) * m_);
    v |= (~z & mask) << (8 * m_ - (2 * t + 2) * m_);
  }
  return v;
}

NodeId CubeReduction::element_candidate(std::uint32_t z) const {
  const NodeId mask = (NodeId{1} << m_) - 1;
  NodeId v = 0;
  for (std::uint32_t t = 0; t < 4; ++t) {
    v |= z << (8 * m_ - (2 * t + 1) * m_);
    v |= (~z & mask) << (8 * m_ - (2 * t + 2) * m_);
  }
  return v;
}

bool CubeReduction::is_port(NodeId v) const {
  std::uint32_t z = v >> (7 * m_);
  return z < n_ && port_candidate(z) == v;
}

bool CubeReduction::in_matching_domain(NodeId v) const {
  std::uint32_t l = level(v);
  if (l + 3 < 4 * m_ || l > 4 * m_ + 3) return false;
  return !std::binary_search(excluded_.begin(), excluded_.end(), v);
}

void CubeReduction::for_each_special_demand(const DemandSink& sink) const {
  for (std::uint32_t j = 0; j < 3 * n_; ++j) {
    for (unsigned pos = 0; pos < 3; ++pos) sink({clause_associate(j, pos), element(src_.clauses[j][pos]), beta_});
  }
  for (std::uint32_t i = 0; i < 3 * n_; ++i) sink({root(), element(i), Rational(1)});
}

void CubeReduction::for_each_alpha_demand(std::uint64_t lo, std::uint64_t hi, const DemandSink& sink) const {
  const std::uint32_t p_levels = m_ + 5;
  Demand d{0, 0, alpha_};
  for (std::uint64_t r = lo; r < hi; ++r) {
    NodeId u = static_cast<NodeId>(r);
    NodeId v = complement(u);
    std::uint32_t l = level(u);
    if (l <= p_levels) {
      if (is_port(u)) continue;
    } else if (!(u < v && in_matching_domain(u) && in_matching_domain(v))) {
      continue;
    }
    d.src = u;
    d.dst = v;
    sink(d);
  }
}

void CubeReduction::for_each_orphan_demand(const DemandSink& sink) const {
  for (auto [u, v] : orphan_pairs_) sink({u, v, alpha_});
}

void CubeReduction::for_each_demand(const DemandSink& sink) const {
  for_each_special_demand(sink);
  for_each_alpha_demand(0, node_count(), sink);
  for_each_orphan_demand(sink);
}

std::string CubeReduction::node_name(NodeId v) const {
  std::string s(dimension(), '0');
  for (std::uint32_t b = 0; b < dimension(); ++b) {
    if ((v >> b) & 1u) s[dimension() - 1 - b] = '1';
  }
  return s;
}

std::string CubeReduction::role(NodeId v) const {
  static const char* kClausePos[] = {"^001", "^010", "^100"};
  static const char* kElementPos[] = {"^01", "^10"};
  if (v == root()) return "root";
  if (is_port(v)) return "port:p" + std::to_string((v >> (7 * m_)) + 1);
  const std::uint32_t top = v >> (7 * m_);
  if (top < 3 * n_) {
    if (clause(top) == v) return "clause:c" + std::to_string(top + 1);
    for (unsigned pos = 0; pos < 3; ++pos) {
      if (clause_associate(top, pos) == v) return "clause-associate:c" + std::to_string(top + 1) + kClausePos[pos];
    }
    if (element(top) == v) return "element:" + src_.elements[top];
    for (unsigned which = 0; which < 2; ++which) {
      if (element_associate(top, which) == v) return "element-associate:" + src_.elements[top] + kElementPos[which];
    }
  }
  if (level(v) <= m_ + 5) return "alpha-P";
  if (level(complement(v)) <= m_ + 5 && !is_port(complement(v))) return "alpha-P-partner";
  if (in_matching_domain(v)) return "matching-W";
  return "filler";
}

ReductionArtifact CubeReduction::artifact() const {
  ReductionArtifact art;
  art.construction = "rxc3-cube";
  art.instance.network = cube_network(dimension());
  art.instance.mu = mu_;
  art.instance.kappa = kappa();
  art.instance.policy = {Bound(3), Bound::infinite(), Bound::infinite()};
  art.stream = [this](const DemandSink& sink) { for_each_demand(sink); };
  art.demand_count = demand_count();
  art.role_of = [this](NodeId v) { return role(v); };
  art.listed_nodes.push_back(root());
  for (std::uint32_t i = 0; i < n_; ++i) art.listed_nodes.push_back(port(i));
  for (std::uint32_t j = 0; j < 3 * n_; ++j) {
    art.listed_nodes.push_back(clause(j));
    for (unsigned pos = 0; pos < 3; ++pos) art.listed_nodes.push_back(clause_associate(j, pos));
  }
  for (std::uint32_t i = 0; i < 3 * n_; ++i) {
    art.listed_nodes.push_back(element(i));
    art.listed_nodes.push_back(element_associate(i, 0));
    art.listed_nodes.push_back(element_associate(i, 1));
  }
  art.parameters = {{"n", Rational(n_)},
                    {"m", Rational(m_)},
                    {"dimension", Rational(dimension())},
                    {"mu", mu_},
                    {"beta", beta_},
                    {"alpha", alpha_},
                    {"kappa_alpha", kappa_alpha_},
                    {"kappa_beta", kappa_beta_},
                    {"kappa_1", kappa_1_},
                    {"kappa", kappa()},
                    {"E_beta", Rational(beta_demand_count())},
                    {"E_1", Rational(unit_demand_count())},
                    {"E_alpha_P", Rational(alpha_p_count_)},
                    {"E_alpha_W", Rational(alpha_w_count_)}};
  return art;
}

RRPInstance CubeReduction::materialize(bool force) const {
  if (n_ > kCubeExportLimit && !force) {
    throw TooLargeError("hypercube reduction with n = " + std::to_string(n_) + " exceeds the export limit of n <= " +
                        std::to_string(kCubeExportLimit) + " (use --force)");
  }
  RRPInstance inst;
  inst.network = cube_network(dimension());
  inst.mu = mu_;
  inst.kappa = kappa();
  inst.policy = {Bound(3), Bound::infinite(), Bound::infinite()};
  std::vector<Demand> demands;
  demands.reserve(demand_count());
  for_each_demand([&](const Demand& d) { demands.push_back(d); });
  inst.workload = Workload(std::move(demands));
  return inst;
}

CubeWitness::CubeWitness(const CubeReduction& red, const std::vector<std::size_t>& cover) : red_(&red), cover_(cover) {
  const auto& src = red.source();
  check_exact_cover(src, cover_);
  std::sort(cover_.begin(), cover_.end());
  const std::uint32_t n = red.n();
  cover_of_element_.assign(3 * n, 0);
  port_of_clause_.assign(3 * n, ~0u);
  std::vector<bool> in_cover(3 * n, false);
  for (std::uint32_t k = 0; k < cover_.size(); ++k) {
    std::size_t j = cover_[k];
    in_cover[j] = true;
    port_of_clause_[j] = k;
    for (unsigned pos = 0; pos < 3; ++pos) {
      cover_of_element_[src.clauses[j][pos]] = j;
      assoc_link_[red.clause_associate(static_cast<std::uint32_t>(j), pos)] = red.element(src.clauses[j][pos]);
    }
  }
  // Remaining associate clause nodes go to the element's associates, in
  // clause order: the first gets x^{+01}, the second x^{+10}.
  std::vector<unsigned> used(3 * n, 0);
  for (std::uint32_t j = 0; j < 3 * n; ++j) {
    if (in_cover[j]) continue;
    for (unsigned pos = 0; pos < 3; ++pos) {
      std::uint32_t e = src.clauses[j][pos];
      assoc_link_[red.clause_associate(j, pos)] = red.element_associate(e, used[e]++);
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> CubeWitness::links() const {
  const auto& red = *red_;
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(red.alpha_p_count() + red.alpha_w_count() + 10ull * red.n());
  for (std::uint32_t k = 0; k < cover_.size(); ++k) {
    out.emplace_back(red.port(k), red.clause(static_cast<std::uint32_t>(cover_[k])));
  }
  std::vector<std::pair<NodeId, NodeId>> assoc(assoc_link_.begin(), assoc_link_.end());
  std::sort(assoc.begin(), assoc.end());
  out.insert(out.end(), assoc.begin(), assoc.end());
  red.for_each_alpha_demand(0, red.node_count(), [&](const Demand& d) { out.emplace_back(d.src, d.dst); });
  for (auto p : red.orphan_pairs()) out.push_back(p);
  return out;
}

Configuration CubeWitness::configuration() const {
  HybridNetwork net = cube_network(red_->dimension());
  return configuration_from_pairs(net, links());
}

FlowPath CubeWitness::path_for(const Demand& d) const {
  const auto& red = *red_;
  FlowPath path{d.src, d.dst, {}};
  if (d.amount == red.alpha()) {
    path.links.push_back({LinkKind::kDynamic, d.src, d.dst});
    return path;
  }
  if (d.amount == red.beta()) {
    auto it = assoc_link_.find(d.src);
    if (it == assoc_link_.end()) throw std::logic_error("beta demand from a non-associate node");
    path.links.push_back({LinkKind::kDynamic, d.src, it->second});
    if (it->second != d.dst) path.links.push_back({LinkKind::kStatic, it->second, d.dst});
    return path;
  }
  // r -> x_i: static down to the port, dynamic to the clause, static to the
  // associate, dynamic to the element.
  std::uint32_t i = d.dst >> (7 * red.m());
  std::size_t j = cover_of_element_[i];
  NodeId p = red.port(port_of_clause_[j]);
  NodeId at = d.src;
  for (std::uint32_t b = red.dimension(); b-- > 0;) {
    NodeId bit = NodeId{1} << b;
    if ((at & bit) && !(p & bit)) {
      path.links.push_back({LinkKind::kStatic, at, at ^ bit});
      at ^= bit;
    }
  }
  const auto& clause = red.source().clauses[j];
  unsigned pos = static_cast<unsigned>(std::find(clause.begin(), clause.end(), i) - clause.begin());
  NodeId c = red.clause(static_cast<std::uint32_t>(j));
  NodeId assoc = red.clause_associate(static_cast<std::uint32_t>(j), pos);
  path.links.push_back({LinkKind::kDynamic, p, c});
  path.links.push_back({LinkKind::kStatic, c, assoc});
  path.links.push_back({LinkKind::kDynamic, assoc, d.dst});
  return path;
}

namespace {

struct Accumulator {
  std::map<Rational, Rational> cost_by_amount;
  std::uint64_t demands = 0;
  std::uint64_t max_alternations = 0;
  // Paths of one class often share a cost; sum those as counts first.
  std::map<std::pair<Rational, Rational>, std::uint64_t> counts;

  void add(const Rational& amount, const PathUsage& usage) {
    ++counts[{amount, usage.cost}];
    ++demands;
    max_alternations = std::max(max_alternations, usage.alternations);
  }

  void merge(const Accumulator& other) {
    for (const auto& [key, c] : other.counts) counts[key] += c;
    demands += other.demands;
    max_alternations = std::max(max_alternations, other.max_alternations);
  }

  WitnessEvaluation finish() const {
    WitnessEvaluation out;
    for (const auto& [key, c] : counts) {
      Rational cost = key.first * key.second * Rational(c);
      out.cost_by_amount[key.first] += cost;
      out.total += cost;
    }
    out.demands = demands;
    out.max_alternations = max_alternations;
    return out;
  }
};

struct CubeEvalContext {
  HybridNetwork net;
  std::vector<std::pair<NodeId, NodeId>> links;
  std::uint32_t max_degree = 0;
};

CubeEvalContext prepare(const CubeReduction& red, const CubeWitness& wit) {
  CubeEvalContext ctx{cube_network(red.dimension()), wit.links(), 0};
  // One external port per node: any node in two links breaks Delta_S = 1.
  std::vector<std::uint8_t> degree(red.node_count(), 0);
  for (auto [u, v] : ctx.links) {
    if (u == v) throw CertificateError("certificate invalid: self-loop dynamic link");
    ctx.max_degree = std::max<std::uint32_t>({ctx.max_degree, ++degree[u], ++degree[v]});
  }
  if (ctx.max_degree > 1) throw CertificateError("certificate invalid: a node has two dynamic links");
  return ctx;
}

void evaluate_one(const AugmentedNetwork& g, const RoutingPolicy& policy, const CubeWitness& wit, const Demand& d,
                  Accumulator& acc) {
  FlowPath path = wit.path_for(d);
  PathUsage usage;
  try {
    usage = evaluate_flow_path_usage(g, policy, path);
  } catch (const PathError& e) {
    const auto& net = g.network();
    throw ValidationError("demand " + demand_key(net, d.src, d.dst) + ": " + e.what());
  }
  acc.add(d.amount, usage);
}

}  // namespace

WitnessEvaluation evaluate_cube_witness_serial(const CubeReduction& red, const CubeWitness& wit) {
  CubeEvalContext ctx = prepare(red, wit);
  AugmentedNetwork g(ctx.net, ctx.links, red.mu());
  RoutingPolicy policy{Bound(3), Bound::infinite(), Bound::infinite()};
  Accumulator acc;
  red.for_each_demand([&](const Demand& d) { evaluate_one(g, policy, wit, d, acc); });
  WitnessEvaluation out = acc.finish();
  out.max_dynamic_degree = ctx.max_degree;
  return out;
}

WitnessEvaluation evaluate_cube_witness(const CubeReduction& red, const CubeWitness& wit, int jobs) {
  CubeEvalContext ctx = prepare(red, wit);
  AugmentedNetwork g(ctx.net, ctx.links, red.mu());
  RoutingPolicy policy{Bound(3), Bound::infinite(), Bound::infinite()};
  Accumulator total;
  red.for_each_special_demand([&](const Demand& d) { evaluate_one(g, policy, wit, d, total); });
  red.for_each_orphan_demand([&](const Demand& d) { evaluate_one(g, policy, wit, d, total); });

  const std::int64_t blocks = 1024;
  const std::uint64_t span = (red.node_count() + blocks - 1) / blocks;
  std::string error;
  if (jobs <= 0) jobs = omp_get_max_threads();
#pragma omp parallel num_threads(jobs)
  {
    Accumulator local;
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t b = 0; b < blocks; ++b) {
      std::uint64_t lo = b * span;
      std::uint64_t hi = std::min(red.node_count(), lo + span);
      try {
        red.for_each_alpha_demand(lo, hi, [&](const Demand& d) { evaluate_one(g, policy, wit, d, local); });
      } catch (const std::exception& e) {
#pragma omp critical(cube_error)
        if (error.empty()) error = e.what();
      }
    }
#pragma omp critical(cube_merge)
    total.merge(local);
  }
  if (!error.empty()) throw ValidationError(error);
  WitnessEvaluation out = total.finish();
  out.max_dynamic_degree = ctx.max_degree;
  return out;
}

Witness materialize_cube_witness(const CubeReduction& red, const CubeWitness& wit, bool force) {
  if (red.n() > kCubeExportLimit && !force) {
    throw TooLargeError("hypercube witness with n = " + std::to_string(red.n()) + " exceeds the export limit");
  }
  Witness w;
  w.configuration = wit.configuration();
  w.assignment.paths.reserve(red.demand_count());
  red.for_each_demand([&](const Demand& d) { w.assignment.paths.push_back(wit.path_for(d)); });
  w.assignment.total_cost = evaluate_cube_witness(red, wit).total;
  return w;
}

}  // namespace rrp
