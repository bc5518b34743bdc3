#pragma once

// Homology of induced subcomplexes Δ(S) for graphs with at most 64 vertices,
// with S given as a bit mask.

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coedge/graph.hpp"
#include "coedge/homology.hpp"

namespace coedge::detail {

using Mask = std::uint64_t;

class SubsetHomology {
 public:
  SubsetHomology(const Graph& g, const CoefficientField& field);

  /// Reduced Betti numbers of Δ(S): out[q + 1] = β̃_q for q = -1, 0, ...;
  /// `out` is resized to cover the highest nonzero degree.
  void reduced(Mask s, std::vector<std::uint64_t>& out);
  /// β̃_q(Δ(S)) for a single degree.
  std::uint64_t reduced_in(Mask s, int q);

  /// Removes dominated vertices until none is left.
  Mask strong_collapse(Mask s) const;
  /// Connected component of s containing the lowest vertex in `seed`.
  Mask component(Mask s, Mask seed) const;

  std::size_t cache_size() const noexcept { return cache_.size(); }

 private:
  /// β̃_q for q >= 1 (entry q-1) of a connected, collapsed component.
  const std::vector<std::uint64_t>& component_betti(Mask c);

  const Graph& g_;
  CoefficientField field_;
  int n_;
  std::array<Mask, 64> adj_{};
  std::unordered_map<Mask, std::vector<std::uint64_t>> cache_;
};

}  // namespace coedge::detail
