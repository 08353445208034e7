#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rrp {

// Undirected simple graph with labelled vertices 0..n-1.
struct SimpleGraph {
  std::vector<std::string> labels;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t size() const { return labels.size(); }
  std::optional<std::uint32_t> find(std::string_view label) const;
};

struct BisectionInstance {
  SimpleGraph graph;
  std::uint64_t k = 0;
};

// {"nodes": [...] (optional), "edges": [[u, v], ...], "k": k (optional)}.
// Labels may be strings or integers. Only JSON syntax is checked here.
BisectionInstance parse_bisection_source(std::string_view text);

// Throws ValidationError unless the graph is simple, 3-regular, has an even
// number of nodes and k <= n^2.
void validate_bisection(const BisectionInstance& src);

std::uint64_t cut_size(const SimpleGraph& g, const std::vector<bool>& in_a);

struct BisectionResult {
  std::uint64_t width = 0;
  std::vector<std::uint32_t> side_a;  // a minimizing half, containing vertex 0
};

// Minimum balanced cut by enumeration. Any graph with an even number of at
// most 16 nodes is accepted.
BisectionResult oracle_bisection(const SimpleGraph& g);

struct RXC3Instance {
  std::vector<std::string> elements;
  std::vector<std::array<std::uint32_t, 3>> clauses;  // element indices

  std::size_t n() const { return elements.size() / 3; }
};

// {"elements": [...], "clauses": [[a, b, c], ...]}.
RXC3Instance parse_rxc3_source(std::string_view text);

// Throws ValidationError unless |X| = |C| = 3n, n >= 1, every clause has three
// distinct elements and every element occurs in exactly three clauses.
// Duplicate clauses are allowed.
void validate_rxc3(const RXC3Instance& src);

// Backtracking over the uncovered element with fewest candidate clauses;
// returns clause indices in increasing order, or nullopt. |X| <= 30.
std::optional<std::vector<std::size_t>> oracle_exact_cover(const RXC3Instance& src);

// Throws CertificateError unless the clause indices form an exact cover.
void check_exact_cover(const RXC3Instance& src, const std::vector<std::size_t>& cover);

}  // namespace rrp
