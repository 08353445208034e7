#include <algorithm>

#include "rrp/errors.hpp"
#include "rrp/instance.hpp"

namespace rrp {

Workload::Workload(std::vector<Demand> demands) : demands_(std::move(demands)) {
  std::vector<std::uint64_t> keys;
  keys.reserve(demands_.size());
  for (const auto& d : demands_) {
    if (d.src == d.dst) throw ValidationError("self-demand at node rank " + std::to_string(d.src));
    if (d.amount <= 0) throw ValidationError("demand amount must be positive");
    keys.push_back((std::uint64_t{d.src} << 32) | d.dst);
  }
  std::sort(keys.begin(), keys.end());
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    throw ValidationError("duplicate demand pair (ranks " + std::to_string(*dup >> 32) + "," +
                          std::to_string(*dup & 0xffffffffu) + ")");
  }
}

}  // namespace rrp
