#include "rrp/source_problems.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

#include "rrp/errors.hpp"

namespace rrp {
namespace {

using json = nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string label_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("labels must be strings or integers");
}

bool numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric labels sort by value and before non-numeric ones.
bool label_less(const std::string& a, const std::string& b) {
  bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;
  if (na && a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::uint32_t index_of(const std::vector<std::string>& labels, const std::string& label, const char* what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ParseError(std::string("unknown ") + what + " \"" + label + "\"");
  return static_cast<std::uint32_t>(it - labels.begin());
}

}  // namespace

std::optional<std::uint32_t> SimpleGraph::find(std::string_view label) const {
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

BisectionInstance parse_bisection_source(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("edges") || !doc.at("edges").is_array()) {
    throw ParseError("graph source needs an \"edges\" array");
  }
  BisectionInstance src;
  auto& labels = src.graph.labels;
  if (doc.contains("nodes")) {
    for (const auto& n : doc.at("nodes")) labels.push_back(label_of(n));
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size()) throw ParseError("duplicate node label");
  } else {
    std::set<std::string> uniq;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs");
      uniq.insert(label_of(e[0]));
      uniq.insert(label_of(e[1]));
    }
    labels.assign(uniq.begin(), uniq.end());
    std::sort(labels.begin(), labels.end(), label_less);
  }
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("edges must be [u, v] pairs");
    src.graph.edges.emplace_back(index_of(labels, label_of(e[0]), "node"), index_of(labels, label_of(e[1]), "node"));
  }
  if (doc.contains("k")) {
    const auto& k = doc.at("k");
    if (!k.is_number_integer() || k.get<long long>() < 0) throw ParseError("k must be a natural number");
    src.k = k.get<std::uint64_t>();
  }
  return src;
}

void validate_bisection(const BisectionInstance& src) {
  const auto& g = src.graph;
  std::size_t n = g.size();
  if (n == 0 || n % 2 != 0) throw ValidationError("bisection source needs an even, positive number of nodes");
  std::vector<std::uint32_t> degree(n, 0);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u == v) throw ValidationError("bisection source has a self-loop at " + g.labels[u]);
    if (!seen.insert(std::minmax(u, v)).second) {
      throw ValidationError("bisection source has a repeated edge " + g.labels[u] + "-" + g.labels[v]);
    }
    ++degree[u];
    ++degree[v];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] != 3) throw ValidationError("bisection source is not 3-regular at node " + g.labels[v]);
  }
  if (src.k > n * n) throw ValidationError("k exceeds n^2");
}

std::uint64_t cut_size(const SimpleGraph& g, const std::vector<bool>& in_a) {
  std::uint64_t cut = 0;
  for (auto [u, v] : g.edges) cut += in_a[u] != in_a[v];
  return cut;
}

BisectionResult oracle_bisection(const SimpleGraph& g) {
  std::size_t n = g.size();
  if (n > 16) throw TooLargeError("too large for oracle: " + std::to_string(n) + " nodes (limit 16)");
  if (n % 2 != 0) throw PreconditionError("bisection oracle needs an even number of nodes");
  BisectionResult best;
  bool found = false;
  if (n == 0) return best;
  // Vertex 0 is always on side A, which removes the A/B symmetry.
  for (std::uint32_t rest = 0; rest < (1u << (n - 1)); ++rest) {
    std::uint32_t mask = (rest << 1) | 1u;
    if (static_cast<std::size_t>(std::popcount(mask)) != n / 2) continue;
    std::uint64_t cut = 0;
    for (auto [u, v] : g.edges) cut += ((mask >> u) & 1u) != ((mask >> v) & 1u);
    if (!found || cut < best.width) {
      found = true;
      best.width = cut;
      best.side_a.clear();
      for (std::uint32_t v = 0; v < n; ++v) {
        if ((mask >> v) & 1u) best.side_a.push_back(v);
      }
    }
  }
  return best;
}

RXC3Instance parse_rxc3_source(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("elements") || !doc.contains("clauses")) {
    throw ParseError("RXC3 source needs \"elements\" and \"clauses\"");
  }
  RXC3Instance src;
  for (const auto& e : doc.at("elements")) src.elements.push_back(label_of(e));
  std::set<std::string> uniq(src.elements.begin(), src.elements.end());
  if (uniq.size() != src.elements.size()) throw ParseError("duplicate element label");
  for (const auto& c : doc.at("clauses")) {
    if (!c.is_array() || c.size() != 3) throw ParseError("clauses must list exactly three elements");
    std::array<std::uint32_t, 3> clause{};
    for (int i = 0; i < 3; ++i) clause[i] = index_of(src.elements, label_of(c[i]), "element");
    src.clauses.push_back(clause);
  }
  return src;
}

void validate_rxc3(const RXC3Instance& src) {
  std::size_t x = src.elements.size();
  if (x == 0 || x % 3 != 0) throw ValidationError("malformed RXC3: |X| must be a positive multiple of 3");
  if (src.clauses.size() != x) throw ValidationError("malformed RXC3: |C| must equal |X|");
  std::vector<std::uint32_t> occurrences(x, 0);
  for (std::size_t j = 0; j < src.clauses.size(); ++j) {
    const auto& c = src.clauses[j];
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
      throw ValidationError("malformed RXC3: clause " + std::to_string(j + 1) + " repeats an element");
    }
    for (auto e : c) ++occurrences[e];
  }
  for (std::size_t e = 0; e < x; ++e) {
    if (occurrences[e] != 3) {
      throw ValidationError("malformed RXC3: element " + src.elements[e] + " occurs in " +
                            std::to_string(occurrences[e]) + " clauses, not 3");
    }
  }
}

std::optional<std::vector<std::size_t>> oracle_exact_cover(const RXC3Instance& src) {
  std::size_t x = src.elements.size();
  if (x > 30) throw TooLargeError("too large for oracle: " + std::to_string(x) + " elements (limit 30)");
  std::vector<std::uint32_t> masks;
  for (const auto& c : src.clauses) masks.push_back((1u << c[0]) | (1u << c[1]) | (1u << c[2]));
  const std::uint32_t full = x == 32 ? ~0u : ((1u << x) - 1);
  std::vector<std::size_t> chosen;

  std::function<bool(std::uint32_t)> search = [&](std::uint32_t covered) -> bool {
    if (covered == full) return true;
    int best_element = -1;
    std::size_t best_count = SIZE_MAX;
    for (std::uint32_t e = 0; e < x; ++e) {
      if (covered & (1u << e)) continue;
      std::size_t count = 0;
      for (auto m : masks) count += (m & (1u << e)) && !(m & covered);
      if (count < best_count) {
        best_count = count;
        best_element = static_cast<int>(e);
      }
    }
    if (best_count == 0) return false;
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (!(masks[j] & (1u << best_element)) || (masks[j] & covered)) continue;
      chosen.push_back(j);
      if (search(covered | masks[j])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

void check_exact_cover(const RXC3Instance& src, const std::vector<std::size_t>& cover) {
  std::vector<int> hits(src.elements.size(), 0);
  std::set<std::size_t> uniq;
  for (std::size_t j : cover) {
    if (j >= src.clauses.size()) throw CertificateError("certificate invalid: not an exact cover (unknown clause)");
    if (!uniq.insert(j).second) throw CertificateError("certificate invalid: not an exact cover (repeated clause)");
    for (auto e : src.clauses[j]) ++hits[e];
  }
  for (int h : hits) {
    if (h != 1) throw CertificateError("certificate invalid: not an exact cover");
  }
}

}  // namespace rrp
