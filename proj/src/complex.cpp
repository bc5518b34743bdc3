#include "coedge/complex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bits.hpp"
#include "coedge/errors.hpp"

namespace coedge {

namespace {

bool tuple_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

FaceTable::FaceTable(std::vector<std::vector<int>> by_dim) : flat_(std::move(by_dim)) {
  for (int k = 0; k < stored_dimensions(); ++k) {
    auto& flat = flat_[k];
    const std::size_t w = static_cast<std::size_t>(k) + 1;
    if (flat.size() % w != 0) throw ArgumentError("face array length is not a multiple of the face size");
    const std::size_t m = flat.size() / w;
    bool sorted = true;
    for (std::size_t i = 0; i < m; ++i) {
      std::span<const int> f(flat.data() + i * w, w);
      if (!std::is_sorted(f.begin(), f.end()) || std::adjacent_find(f.begin(), f.end()) != f.end())
        throw ArgumentError("face tuples must be strictly increasing");
      if (i > 0 && !tuple_less(std::span<const int>(flat.data() + (i - 1) * w, w), f)) sorted = false;
    }
    if (sorted) continue;
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return tuple_less({flat.data() + a * w, w}, {flat.data() + b * w, w});
    });
    std::vector<int> out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < m; ++i) {
      std::span<const int> f(flat.data() + order[i] * w, w);
      if (i > 0 && std::equal(f.begin(), f.end(), out.end() - static_cast<std::ptrdiff_t>(w)))
        throw ArgumentError("duplicate face");
      out.insert(out.end(), f.begin(), f.end());
    }
    flat = std::move(out);
  }
}

int FaceTable::top_dimension() const noexcept {
  for (int k = stored_dimensions() - 1; k >= 0; --k)
    if (!flat_[k].empty()) return k;
  return -1;
}

std::optional<std::size_t> FaceTable::index_of(std::span<const int> f) const noexcept {
  const int k = static_cast<int>(f.size()) - 1;
  const std::size_t m = count(k);
  if (m == 0) return std::nullopt;
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (tuple_less(face(k, mid), f))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < m && std::ranges::equal(face(k, lo), f)) return lo;
  return std::nullopt;
}

std::vector<std::size_t> FaceTable::f_vector() const {
  std::vector<std::size_t> f(static_cast<std::size_t>(top_dimension() + 1));
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = count(static_cast<int>(k));
  return f;
}

CliqueComplex::CliqueComplex(Graph base, int dim_cap, FaceTable faces, bool truncated, std::vector<int> labels)
    : base_(std::move(base)), dim_cap_(dim_cap), faces_(std::move(faces)), truncated_(truncated),
      labels_(std::move(labels)) {
  if (labels_.empty() && base_.n() > 0) {
    labels_.resize(static_cast<std::size_t>(base_.n()));
    std::iota(labels_.begin(), labels_.end(), 0);
  }
}

namespace {

struct Enumerator {
  const Graph& g;
  int cap;
  int words;
  std::vector<std::vector<int>> flat;
  std::vector<int> stack;
  bool truncated = false;

  void extend(const std::vector<bits::Word>& cand) {
    const int k = static_cast<int>(stack.size()) - 1;
    flat[k].insert(flat[k].end(), stack.begin(), stack.end());
    if (k == cap) {
      if (!bits::none(cand)) truncated = true;
      return;
    }
    std::vector<bits::Word> next(words);
    bits::for_each(cand, [&](int v) {
      const auto nv = g.row(v);
      // Only candidates above v keep tuples increasing.
      const int vw = v >> 6;
      for (int w = 0; w < words; ++w) {
        bits::Word keep = w < vw ? 0 : ~bits::Word{0};
        if (w == vw) keep = (v & 63) == 63 ? 0 : ~bits::Word{0} << ((v & 63) + 1);
        next[w] = cand[w] & nv[w] & keep;
      }
      stack.push_back(v);
      extend(next);
      stack.pop_back();
    });
  }
};

}  // namespace

CliqueComplex clique_complex(const Graph& g, int dim_cap) {
  if (dim_cap < 0) throw ArgumentError("dim_cap must be nonnegative");
  Enumerator e{g, dim_cap, g.words(), std::vector<std::vector<int>>(static_cast<std::size_t>(dim_cap) + 1), {}};
  std::vector<bits::Word> cand(g.words());
  for (int v = 0; v < g.n(); ++v) {
    const auto nv = g.row(v);
    for (int w = 0; w < g.words(); ++w) cand[w] = nv[w];
    // Drop neighbors <= v.
    for (int u = 0; u <= v; ++u) bits::reset(cand, u);
    e.stack.assign(1, v);
    e.extend(cand);
  }
  return CliqueComplex(g, dim_cap, FaceTable(std::move(e.flat)), e.truncated, {});
}

CliqueComplex clique_complex(const Graph& g) { return clique_complex(g, std::max(0, clique_number(g) - 1)); }

FVector f_vector(const CliqueComplex& c) { return FVector{c.faces().f_vector()}; }

CliqueComplex induced_complex(const Graph& g, std::span<const int> vertices, int dim_cap) {
  return clique_complex(induced_subgraph(g, vertices), dim_cap);
}

CliqueComplex induced_complex(const CliqueComplex& c, std::span<const int> vertices) {
  std::vector<int> s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  CliqueComplex sub = clique_complex(induced_subgraph(c.base(), s), c.dim_cap());
  std::vector<int> labels;
  labels.reserve(s.size());
  for (int v : s) labels.push_back(c.labels()[v]);
  return CliqueComplex(sub.base(), sub.dim_cap(), sub.faces(), sub.truncated(), std::move(labels));
}

namespace {

void require_clique(const Graph& g, std::span<const int> sigma) {
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (sigma[a] < 0 || sigma[a] >= g.n()) throw ArgumentError("vertex " + std::to_string(sigma[a]) + " out of range");
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (!g.adjacent(sigma[a], sigma[b])) throw ArgumentError("face is not a clique");
  }
}

}  // namespace

std::vector<int> common_neighbors(const Graph& g, std::span<const int> sigma) {
  require_clique(g, sigma);
  std::vector<bits::Word> c(g.words(), ~bits::Word{0});
  for (int v = g.n(); v < g.words() * 64; ++v) bits::reset(c, v);
  for (int v : sigma) {
    const auto nv = g.row(v);
    for (int w = 0; w < g.words(); ++w) c[w] &= nv[w];
  }
  std::vector<int> out;
  bits::for_each(c, [&](int v) { out.push_back(v); });
  return out;
}

Graph link_graph(const Graph& g, std::span<const int> sigma) {
  const auto c = common_neighbors(g, sigma);
  return induced_subgraph(g, c);
}

std::optional<std::vector<int>> first_uncovered_face(const CliqueComplex& c, int k) {
  if (k > c.dim_cap()) throw ArgumentError("skeleton_purity: k exceeds dim_cap");
  if (k <= 0) return std::nullopt;
  const FaceTable& f = c.faces();
  std::vector<std::vector<char>> covered(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) covered[j].assign(f.count(j), 0);
  std::vector<int> sub;
  const unsigned full = (1U << (k + 1)) - 1;
  for (std::size_t t = 0; t < f.count(k); ++t) {
    const auto top = f.face(k, t);
    for (unsigned m = 1; m < full; ++m) {
      sub.clear();
      for (int b = 0; b <= k; ++b)
        if (m >> b & 1U) sub.push_back(top[b]);
      const int j = static_cast<int>(sub.size()) - 1;
      if (auto idx = f.index_of(sub)) covered[j][*idx] = 1;
    }
  }
  for (int j = 0; j < k; ++j)
    for (std::size_t i = 0; i < covered[j].size(); ++i)
      if (!covered[j][i]) {
        const auto face = f.face(j, i);
        return std::vector<int>(face.begin(), face.end());
      }
  return std::nullopt;
}

bool skeleton_purity(const CliqueComplex& c, int k) { return !first_uncovered_face(c, k).has_value(); }

CliqueComplex strong_collapse(const CliqueComplex& c) {
  const Graph& g = c.base();
  const int n = g.n();
  const int words = g.words();
  std::vector<bits::Word> alive(words, 0);
  for (int v = 0; v < n; ++v) bits::set(alive, v);
  std::vector<bits::Word> closed_v(words);

  auto dominated = [&](int v) {
    const auto nv = g.row(v);
    for (int w = 0; w < words; ++w) closed_v[w] = nv[w] & alive[w];
    bits::set(closed_v, v);
    bool found = false;
    bits::for_each(std::span<const bits::Word>(nv), [&](int u) {
      if (found || !bits::test(alive, u)) return;
      const auto nu = g.row(u);
      bool inside = true;
      for (int w = 0; w < words && inside; ++w) {
        bits::Word cu = nu[w];
        if (w == (u >> 6)) cu |= bits::Word{1} << (u & 63);
        if (closed_v[w] & ~cu) inside = false;
      }
      found = inside;
    });
    return found;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (bits::test(alive, v) && dominated(v)) {
        bits::reset(alive, v);
        changed = true;
        break;
      }
    }
  }
  std::vector<int> keep;
  bits::for_each(alive, [&](int v) { keep.push_back(v); });
  return induced_complex(c, keep);
}

}  // namespace coedge
