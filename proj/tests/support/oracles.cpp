#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

using Faces = std::vector<std::vector<std::vector<int>>>;

std::vector<int> vertices_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int v = 0; mask >> v; ++v)
    if (mask >> v & 1U) out.push_back(v);
  return out;
}

bool is_clique(const Graph& g, const std::vector<int>& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!g.adjacent(s[a], s[b])) return false;
  return true;
}

/// Dense ∂_k : C_k -> C_{k-1}, with C_{-1} spanned by the empty face.
std::vector<std::vector<std::int64_t>> dense_boundary(const Faces& faces, int k) {
  const std::size_t cols = k < static_cast<int>(faces.size()) ? faces[k].size() : 0;
  if (k == 0) return {std::vector<std::int64_t>(cols, 1)};
  const auto& lower = faces[k - 1];
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t r = 0; r < lower.size(); ++r) index[lower[r]] = r;
  std::vector<std::vector<std::int64_t>> m(lower.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c) {
    const auto& f = faces[k][c];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      std::vector<int> sub;
      for (std::size_t t = 0; t < f.size(); ++t)
        if (t != drop) sub.push_back(f[t]);
      m[index.at(sub)][c] = drop % 2 ? -1 : 1;
    }
  }
  return m;
}

int rank_of(const std::vector<std::int64_t>& diag, std::uint32_t p) {
  if (p == 0) return static_cast<int>(diag.size());
  return static_cast<int>(std::count_if(diag.begin(), diag.end(), [p](std::int64_t x) { return x % p != 0; }));
}

}  // namespace

coedge::FaceTable closure_from_facets(const std::vector<std::vector<int>>& facets) {
  std::vector<std::vector<std::vector<int>>> by_dim;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    const std::uint32_t full = (1U << f.size()) - 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
      std::vector<int> sub;
      for (std::size_t b = 0; b < f.size(); ++b)
        if (m >> b & 1U) sub.push_back(f[b]);
      const std::size_t k = sub.size() - 1;
      if (by_dim.size() <= k) by_dim.resize(k + 1);
      by_dim[k].push_back(sub);
    }
  }
  std::vector<std::vector<int>> flat(by_dim.size());
  for (std::size_t k = 0; k < by_dim.size(); ++k) {
    std::sort(by_dim[k].begin(), by_dim[k].end());
    by_dim[k].erase(std::unique(by_dim[k].begin(), by_dim[k].end()), by_dim[k].end());
    for (const auto& f : by_dim[k]) flat[k].insert(flat[k].end(), f.begin(), f.end());
  }
  return coedge::FaceTable(std::move(flat));
}

std::vector<std::vector<int>> rp2_facets() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
}

std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const std::int64_t q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) std::swap(m[t], m[i]), changed = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const std::int64_t q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          changed = true;
        }
      }
      if (changed) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols && !fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
            fixed = true;
          }
      if (!fixed) break;
    }
    diag.push_back(std::llabs(m[t][t]));
  }
  return diag;
}

IntegralHomology integral_homology(const Faces& faces, int k) {
  const int top = static_cast<int>(faces.size()) - 1;
  const std::size_t ck = k <= top ? faces[k].size() : 0;
  const auto dk = k <= top ? smith_diagonal(dense_boundary(faces, k)) : std::vector<std::int64_t>{};
  const auto dk1 = k + 1 <= top ? smith_diagonal(dense_boundary(faces, k + 1)) : std::vector<std::int64_t>{};
  IntegralHomology h;
  h.free_rank = static_cast<int>(ck) - static_cast<int>(dk.size()) - static_cast<int>(dk1.size());
  for (auto x : dk1)
    if (x > 1) h.torsion.push_back(x);
  return h;
}

std::vector<int> reduced_betti_snf(const Faces& faces, std::uint32_t p) {
  const int top = static_cast<int>(faces.size()) - 1;
  std::vector<int> ranks(static_cast<std::size_t>(top + 2), 0);  // ranks[k] = rank ∂_k, k = 0..top+1
  for (int k = 0; k <= top; ++k)
    if (!faces[k].empty()) ranks[k] = rank_of(smith_diagonal(dense_boundary(faces, k)), p);
  std::vector<int> betti(static_cast<std::size_t>(top + 2), 0);
  betti[0] = 1 - ranks[0];
  for (int k = 0; k <= top; ++k)
    betti[k + 1] = static_cast<int>(faces[k].size()) - ranks[k] - (k + 1 <= top ? ranks[k + 1] : 0);
  return betti;
}

Faces all_cliques(const Graph& g, std::uint32_t mask) {
  Faces out;
  for (std::uint32_t s = mask; s; s = (s - 1) & mask) {
    auto vs = vertices_of(s);
    if (!is_clique(g, vs)) continue;
    const std::size_t k = vs.size() - 1;
    if (out.size() <= k) out.resize(k + 1);
    out[k].push_back(std::move(vs));
  }
  for (auto& level : out) std::sort(level.begin(), level.end());
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

Faces all_cliques(const Graph& g) { return all_cliques(g, g.n() ? (1U << g.n()) - 1 : 0U); }

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (const auto& level : all_cliques(g))
    for (const auto& c : level) {
      bool extendable = false;
      for (int v = 0; v < g.n() && !extendable; ++v) {
        if (std::find(c.begin(), c.end(), v) != c.end()) continue;
        extendable = std::all_of(c.begin(), c.end(), [&](int u) { return g.adjacent(u, v); });
      }
      if (!extendable) out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

int clique_number(const Graph& g) { return static_cast<int>(all_cliques(g).size()); }

int components(const Graph& g, std::uint32_t mask) {
  int count = 0;
  std::uint32_t left = mask;
  while (left) {
    ++count;
    std::vector<int> stack{std::countr_zero(left)};
    left &= left - 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < g.n(); ++v)
        if ((left >> v & 1U) && g.adjacent(u, v)) {
          left &= ~(1U << v);
          stack.push_back(v);
        }
    }
  }
  return count;
}

std::optional<int> vertex_connectivity(const Graph& g) {
  const int n = g.n();
  const std::uint32_t full = n ? (1U << n) - 1 : 0U;
  for (int size = 0; size <= n; ++size)
    for (std::uint32_t s = 0; s <= full; ++s)
      if (std::popcount(s) == size && components(g, full & ~s) >= 2) return size;
  return std::nullopt;
}

std::vector<std::vector<std::uint64_t>> hochster(const Graph& g, std::uint32_t p) {
  const int n = g.n();
  std::vector<std::vector<std::uint64_t>> beta(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    const auto b = reduced_betti_snf(all_cliques(g, s), p);
    const int j = std::popcount(s);
    for (std::size_t t = 0; t < b.size(); ++t) {
      const int q = static_cast<int>(t) - 1;
      const int i = j - q - 1;
      if (b[t] && i >= 0 && i <= n) beta[i][j] += static_cast<std::uint64_t>(b[t]);
    }
  }
  return beta;
}

long long reduced_euler(const Graph& g, std::uint32_t mask) {
  long long chi = -1;
  const auto faces = all_cliques(g, mask);
  for (std::size_t k = 0; k < faces.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long long>(faces[k].size());
  return chi;
}

namespace {

struct FacetData {
  std::vector<std::uint32_t> masks;           // vertex mask of each facet
  std::vector<std::uint64_t> ridge_neighbors;  // facets sharing d+1 vertices
};

FacetData facets_of(const Graph& g, int d, std::uint32_t within) {
  FacetData fd;
  const auto faces = all_cliques(g, within);
  if (static_cast<int>(faces.size()) > d + 1)
    for (const auto& f : faces[d + 1]) {
      std::uint32_t m = 0;
      for (int v : f) m |= 1U << v;
      fd.masks.push_back(m);
    }
  if (fd.masks.size() > 64) throw std::length_error("oracle: more than 64 facets");
  fd.ridge_neighbors.assign(fd.masks.size(), 0);
  for (std::size_t a = 0; a < fd.masks.size(); ++a)
    for (std::size_t b = 0; b < fd.masks.size(); ++b)
      if (a != b && std::popcount(fd.masks[a] & fd.masks[b]) == d + 1) fd.ridge_neighbors[a] |= 1ULL << b;
  return fd;
}

bool connected_subset(const FacetData& fd, std::uint64_t set) {
  std::uint64_t seen = set & (~set + 1), frontier = seen;
  while (frontier) {
    const int f = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const std::uint64_t next = fd.ridge_neighbors[f] & set & ~seen;
    seen |= next;
    frontier |= next;
  }
  return seen == set;
}

bool min_degree_ok(const FacetData& fd, std::uint64_t set, int need) {
  std::map<int, std::uint32_t> nbrs;
  for (std::uint64_t s = set; s; s &= s - 1) {
    const std::uint32_t m = fd.masks[std::countr_zero(s)];
    for (std::uint32_t r = m; r; r &= r - 1) nbrs[std::countr_zero(r)] |= m;
  }
  for (const auto& [v, m] : nbrs)
    if (std::popcount(m & ~(1U << v)) < need) return false;
  return true;
}

}  // namespace

std::optional<bool> bad_subcomplex_by_facets(const Graph& g, int d, int max_facets) {
  const FacetData fd = facets_of(g, d, g.n() ? (1U << g.n()) - 1 : 0U);
  const int m = static_cast<int>(fd.masks.size());
  if (m > max_facets) return std::nullopt;
  for (std::uint64_t set = 1; set < (1ULL << m); ++set)
    if (connected_subset(fd, set) && min_degree_ok(fd, set, 2 * d + 2)) return true;
  return false;
}

bool bad_subcomplex_by_vertices(const Graph& g, int d) {
  const std::uint32_t full = g.n() ? (1U << g.n()) - 1 : 0U;
  for (std::uint32_t w = 1; w <= full && w != 0; ++w) {
    const FacetData fd = facets_of(g, d, w);
    const int m = static_cast<int>(fd.masks.size());
    std::uint64_t left = m == 64 ? ~0ULL : (1ULL << m) - 1;
    while (left) {
      std::uint64_t comp = left & (~left + 1), frontier = comp;
      while (frontier) {
        const int f = std::countr_zero(frontier);
        frontier &= frontier - 1;
        const std::uint64_t next = fd.ridge_neighbors[f] & left & ~comp;
        comp |= next;
        frontier |= next;
      }
      left &= ~comp;
      if (min_degree_ok(fd, comp, 2 * d + 2)) return true;
    }
  }
  return false;
}

}  // namespace oracle
