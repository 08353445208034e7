#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rrp/artifact.hpp"
#include "rrp/routing.hpp"
#include "rrp/source_problems.hpp"
#include "rrp/topology.hpp"

namespace rrp {

// ---- 3-Min-Bisection to RRP(Delta_S = 2) ----------------------------------

// Node layout by rank: V (source order), x_{-L/2..L/2}, y_{-L/2..L/2}, then
// the filler nodes U. k above floor(n/3) + 46 is clamped with a warning.
ReductionArtifact reduce_bisection(const BisectionInstance& src, FamilyKind family,
                                   Bound sigma = Bound::infinite());

// side_a holds source vertex indices; B is the complement. Throws
// CertificateError("certificate invalid: unbalanced or cut > k").
Witness witness_bisection(const ReductionArtifact& artifact, const BisectionInstance& src,
                          const std::vector<std::uint32_t>& side_a);

// ---- RXC3 to RRP(Delta_S = 3) via a complete binary tree -------------------

struct TreeLayout {
  std::uint32_t n = 0;
  std::uint32_t d = 0;
  std::uint64_t node_count = 0;  // N
  std::uint64_t edge_count = 0;  // |E'|
  std::uint64_t inner_edge_count = 0;  // |E''|
  std::vector<std::string> roles;  // by rank within V'
  std::vector<std::pair<NodeId, NodeId>> inner_edges;  // E'', oriented down
  std::vector<std::pair<NodeId, NodeId>> root_edges;   // (r, x_i)
  NodeId root = 0;
  std::vector<NodeId> leaves;    // l_1 .. l_{2^d}
  std::vector<NodeId> clause_v;  // v_1 .. v_{3n}
  std::vector<NodeId> clause_u;
  std::vector<NodeId> clause_w;
  std::vector<NodeId> elements;  // x_1 .. x_{3n}
};

// The demand digraph D' alone. Needs n >= 2 ("degenerate tree" otherwise).
TreeLayout build_tree_layout(const RXC3Instance& src);

ReductionArtifact reduce_rxc3_tree(const RXC3Instance& src, FamilyKind family, Bound sigma = Bound::infinite());

// cover: 0-based clause indices. Throws CertificateError on anything but an
// exact cover.
Witness witness_rxc3_tree(const ReductionArtifact& artifact, const RXC3Instance& src,
                          const std::vector<std::size_t>& cover);

// ---- RXC3 to RRP(Delta_S = 1, sigma = 3) on the hypercube Q_{8m} ------------

// Nodes are hypercube ranks; bit 8m-1 is the first character of a name.
class CubeReduction {
 public:
  // Throws PreconditionError for odd n or mu outside (0, 1).
  CubeReduction(RXC3Instance src, Rational mu);

  std::uint32_t n() const { return n_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t dimension() const { return 8 * m_; }
  std::uint64_t node_count() const { return std::uint64_t{1} << dimension(); }
  const RXC3Instance& source() const { return src_; }

  const Rational& mu() const { return mu_; }
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  const Rational& kappa_alpha() const { return kappa_alpha_; }
  const Rational& kappa_beta() const { return kappa_beta_; }
  const Rational& kappa_1() const { return kappa_1_; }
  Rational kappa() const { return kappa_alpha_ + kappa_beta_ + kappa_1_; }

  // Distance from the root 1^{8m}: the number of zero bits.
  std::uint32_t level(NodeId v) const;
  NodeId root() const { return static_cast<NodeId>(node_count() - 1); }
  NodeId complement(NodeId v) const { return static_cast<NodeId>(v ^ (node_count() - 1)); }
  NodeId port_candidate(std::uint32_t z) const;     // z zbar 1^{6m}
  NodeId clause_candidate(std::uint32_t z) const;   // (z zbar)^3 1^{2m}
  NodeId element_candidate(std::uint32_t z) const;  // (z zbar)^4
  NodeId port(std::uint32_t i) const { return port_candidate(i); }          // p_{i+1}
  NodeId clause(std::uint32_t j) const { return clause_candidate(j); }      // c_{j+1}
  NodeId element(std::uint32_t i) const { return element_candidate(i); }    // x_{i+1}
  // pos 0, 1, 2 flips the last, second-to-last, third-to-last bit (001, 010, 100).
  NodeId clause_associate(std::uint32_t j, unsigned pos) const { return clause(j) ^ (NodeId{1} << pos); }
  // which 0 is x^{+01}, which 1 is x^{+10}.
  NodeId element_associate(std::uint32_t i, unsigned which) const { return element(i) ^ (NodeId{1} << which); }

  bool is_port(NodeId v) const;
  // Node set of the matching M: W minus X and its associates, minus the
  // clause nodes and their associates.
  bool in_matching_domain(NodeId v) const;
  // Domain nodes whose complement lies outside the domain, paired greedily.
  const std::vector<std::pair<NodeId, NodeId>>& orphan_pairs() const { return orphan_pairs_; }

  // The whole matching M, lazily: antipodal pairs by rank, then the orphan
  // pairs. f(u, v) with u < v for antipodal pairs.
  template <class F>
  void for_each_matching_pair(F&& f) const;

  std::uint64_t beta_demand_count() const { return 9ull * n_; }
  std::uint64_t unit_demand_count() const { return 3ull * n_; }
  std::uint64_t alpha_p_count() const { return alpha_p_count_; }
  std::uint64_t alpha_w_count() const { return alpha_w_count_; }
  std::uint64_t demand_count() const {
    return beta_demand_count() + unit_demand_count() + alpha_p_count_ + alpha_w_count_;
  }

  // Canonical demand order: E_beta by clause and position, E_1 by element,
  // then the alpha demands of ranks [0, 2^{8m}) and finally the orphan pairs.
  void for_each_demand(const DemandSink& sink) const;
  void for_each_special_demand(const DemandSink& sink) const;  // E_beta then E_1
  // Rank-driven alpha demands whose source rank lies in [lo, hi).
  void for_each_alpha_demand(std::uint64_t lo, std::uint64_t hi, const DemandSink& sink) const;
  void for_each_orphan_demand(const DemandSink& sink) const;

  std::string role(NodeId v) const;
  std::string node_name(NodeId v) const;

  // Streamed artifact (no workload is stored).
  ReductionArtifact artifact() const;
  // Stores every demand. Refuses n > 4 unless forced.
  RRPInstance materialize(bool force = false) const;

 private:
  RXC3Instance src_;
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  Rational mu_, alpha_, beta_, kappa_alpha_, kappa_beta_, kappa_1_;
  std::vector<NodeId> excluded_;  // sorted; removed from W
  std::vector<std::pair<NodeId, NodeId>> orphan_pairs_;
  std::uint64_t alpha_p_count_ = 0;
  std::uint64_t alpha_w_count_ = 0;
};

inline constexpr std::uint32_t kCubeExportLimit = 4;

template <class F>
void CubeReduction::for_each_matching_pair(F&& f) const {
  const std::uint64_t total = node_count();
  for (std::uint64_t r = 0; r < total; ++r) {
    NodeId u = static_cast<NodeId>(r);
    NodeId v = complement(u);
    if (u < v && in_matching_domain(u) && in_matching_domain(v)) f(u, v);
  }
  for (auto [u, v] : orphan_pairs_) f(u, v);
}

// Witness for the hypercube reduction. Flow-paths are produced per demand so
// the alpha part never has to be stored.
class CubeWitness {
 public:
  // cover: 0-based clause indices. Throws CertificateError on anything but an
  // exact cover.
  CubeWitness(const CubeReduction& reduction, const std::vector<std::size_t>& cover);

  // Dynamic links as node pairs (one switch port per node).
  std::vector<std::pair<NodeId, NodeId>> links() const;
  Configuration configuration() const;
  FlowPath path_for(const Demand& d) const;

 private:
  const CubeReduction* red_;
  std::vector<std::size_t> cover_;
  std::vector<std::size_t> cover_of_element_;  // clause covering x_i
  std::vector<std::uint32_t> port_of_clause_;  // p index for cover clauses
  std::unordered_map<NodeId, NodeId> assoc_link_;  // associate clause node -> partner
};

// Streamed evaluation of every demand with OpenMP over rank blocks; the
// serial version is the reference.
WitnessEvaluation evaluate_cube_witness(const CubeReduction& reduction, const CubeWitness& witness, int jobs = 0);
WitnessEvaluation evaluate_cube_witness_serial(const CubeReduction& reduction, const CubeWitness& witness);

// Materialized witness, for export; same guard as CubeReduction::materialize.
Witness materialize_cube_witness(const CubeReduction& reduction, const CubeWitness& witness, bool force = false);

}  // namespace rrp
