#include "subset_kernel.hpp"

#include <bit>

#include "coedge/complex.hpp"
#include "coedge/errors.hpp"

namespace coedge::detail {

namespace {

constexpr Mask bit(int v) { return Mask{1} << v; }

constexpr std::size_t kCacheLimit = std::size_t{1} << 20;

}  // namespace

SubsetHomology::SubsetHomology(const Graph& g, const CoefficientField& field) : g_(g), field_(field), n_(g.n()) {
  if (n_ > 64) throw ArgumentError("subset homology kernel supports at most 64 vertices");
  for (int v = 0; v < n_; ++v) adj_[v] = g.row(v)[0];
}

Mask SubsetHomology::strong_collapse(Mask s) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const Mask closed_v = (adj_[v] & s) | bit(v);
      for (Mask cand = adj_[v] & s; cand; cand &= cand - 1) {
        const int u = std::countr_zero(cand);
        if ((closed_v & ~(adj_[u] | bit(u))) == 0) {
          s &= ~bit(v);
          changed = true;
          break;
        }
      }
    }
  }
  return s;
}

Mask SubsetHomology::component(Mask s, Mask seed) const {
  Mask comp = seed & -seed;
  Mask frontier = comp;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= adj_[std::countr_zero(f)];
    next &= s & ~comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

const std::vector<std::uint64_t>& SubsetHomology::component_betti(Mask c) {
  if (auto it = cache_.find(c); it != cache_.end()) return it->second;
  if (cache_.size() >= kCacheLimit) cache_.clear();

  std::vector<std::uint64_t> betti;
  int vertices = std::popcount(c);
  int edges = 0;
  bool triangle = false;
  for (Mask rest = c; rest; rest &= rest - 1) {
    const int u = std::countr_zero(rest);
    const Mask up = u == 63 ? 0 : adj_[u] & c & (~Mask{0} << (u + 1));
    edges += std::popcount(up);
    for (Mask w = up; w && !triangle; w &= w - 1)
      if (adj_[std::countr_zero(w)] & up) triangle = true;
  }
  if (!triangle) {
    // Connected graph: β̃_1 = e - v + 1.
    const auto b1 = static_cast<std::uint64_t>(edges - vertices + 1);
    if (b1) betti.push_back(b1);
  } else {
    std::vector<int> verts;
    for (Mask rest = c; rest; rest &= rest - 1) verts.push_back(std::countr_zero(rest));
    const CliqueComplex cx = clique_complex(induced_subgraph(g_, verts));
    const int top = cx.dimension();
    if (top >= 1) {
      const HomologyProfile h = reduced_betti(cx, field_, 1, top);
      for (int q = 1; q <= top; ++q) betti.push_back(h[q]);
      while (!betti.empty() && betti.back() == 0) betti.pop_back();
    }
  }
  return cache_.emplace(c, std::move(betti)).first->second;
}

void SubsetHomology::reduced(Mask s, std::vector<std::uint64_t>& out) {
  out.assign(2, 0);
  if (s == 0) {
    out[0] = 1;
    return;
  }
  const Mask core = strong_collapse(s);
  int components = 0;
  for (Mask rest = core; rest;) {
    const Mask c = component(core, rest);
    rest &= ~c;
    ++components;
    if (std::popcount(c) < 4) continue;  // collapsed components this small are points
    const auto& b = component_betti(c);
    if (out.size() < b.size() + 2) out.resize(b.size() + 2, 0);
    for (std::size_t q = 0; q < b.size(); ++q) out[q + 2] += b[q];
  }
  out[1] = static_cast<std::uint64_t>(components - 1);
  while (out.size() > 2 && out.back() == 0) out.pop_back();
}

std::uint64_t SubsetHomology::reduced_in(Mask s, int q) {
  if (q < -1) return 0;
  if (q == -1) return s == 0 ? 1 : 0;
  if (s == 0) return 0;
  const Mask core = strong_collapse(s);
  std::uint64_t total = 0;
  int components = 0;
  for (Mask rest = core; rest;) {
    const Mask c = component(core, rest);
    rest &= ~c;
    ++components;
    if (q >= 1 && std::popcount(c) >= 4) {
      const auto& b = component_betti(c);
      if (static_cast<std::size_t>(q) <= b.size()) total += b[q - 1];
    }
  }
  return q == 0 ? static_cast<std::uint64_t>(components - 1) : total;
}

}  // namespace coedge::detail
