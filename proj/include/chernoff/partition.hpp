#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chernoff/errors.hpp"
#include "chernoff/philox.hpp"

namespace chernoff {

// Closed time interval [s, t].
struct TimeInterval {
  double s = 0.0;
  double t = 0.0;

  TimeInterval() = default;
  TimeInterval(double s_, double t_) : s(s_), t(t_) {
    if (!(s <= t))
      throw InvalidIntervalError("TimeInterval requires s <= t, got [" +
                                 std::to_string(s) + ", " + std::to_string(t) +
                                 "]");
  }

  double length() const { return t - s; }
  bool contains(double x) const { return s <= x && x <= t; }
};

// Strictly increasing time grid t0 < t1 < ... < tn, n >= 1.
class Partition {
 public:
  explicit Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
      throw InvalidCountError("partition needs at least two nodes");
    for (std::size_t j = 0; j < nodes_.size(); ++j)
      if (!std::isfinite(nodes_[j]))
        throw InvalidIntervalError("partition node is not finite");
    for (std::size_t j = 1; j < nodes_.size(); ++j) {
      if (!(nodes_[j - 1] < nodes_[j]))
        throw InvalidIntervalError("partition nodes must be strictly increasing");
      mesh_ = std::max(mesh_, nodes_[j] - nodes_[j - 1]);
    }
  }

  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t intervals() const { return nodes_.size() - 1; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }

  // Largest consecutive gap, computed exactly from the stored nodes.
  double mesh() const { return mesh_; }

 private:
  std::vector<double> nodes_;
  double mesh_ = 0.0;
};

enum class PartitionScheme { kUniform, kRandomRefinement };

// Builds an (n+1)-node partition of [s, t]. The random-refinement scheme
// draws n-1 interior points as sorted uniforms from a counter-based stream,
// so the result depends only on (s, t, n, seed), not on iteration order.
inline Partition make_partition(double s, double t, std::size_t n,
                                PartitionScheme scheme = PartitionScheme::kUniform,
                                std::uint64_t seed = 0) {
  if (!(s < t))
    throw InvalidIntervalError("make_partition requires s < t, got [" +
                               std::to_string(s) + ", " + std::to_string(t) +
                               "]");
  if (n == 0) throw InvalidCountError("make_partition requires n >= 1");

  std::vector<double> nodes(n + 1);
  nodes.front() = s;
  nodes.back() = t;
  if (scheme == PartitionScheme::kUniform) {
    for (std::size_t j = 1; j < n; ++j)
      nodes[j] = s + (t - s) * (double(j) / double(n));
  } else {
    const std::uint64_t key = derive_seed(seed, /*stream_id=*/0x9a27);
    for (std::size_t j = 1; j < n; ++j)
      nodes[j] = s + (t - s) * philox_uniform_open(key, 0, j);
    std::sort(nodes.begin() + 1, nodes.end() - 1);
    // Double ties are vanishingly rare; nudge instead of redrawing.
    for (std::size_t j = 1; j < nodes.size(); ++j)
      if (!(nodes[j - 1] < nodes[j]) && j + 1 < nodes.size())
        nodes[j] = std::nextafter(nodes[j - 1], t);
  }
  return Partition(std::move(nodes));
}

}  // namespace chernoff
