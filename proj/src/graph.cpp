#include "coedge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bits.hpp"
#include "coedge/errors.hpp"
#include "coedge/rng.hpp"

namespace coedge {

BernoulliThreshold::BernoulliThreshold(double p) {
  if (p >= 1.0) {
    always_ = true;
  } else if (p > 0.0) {
    // p * 2^64 is exact in binary floating point; the cast truncates (floor).
    threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 64));
  }
}

Graph::Graph(int n) : n_(n), words_(bits::words_for(n)) {
  if (n < 0) throw ArgumentError("vertex count must be nonnegative");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ArgumentError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
    if (u == v) throw ArgumentError("self-loop at vertex " + std::to_string(u));
    if (adjacent(u, v))
      throw ArgumentError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    set_edge(u, v);
  }
}

void Graph::set_edge(int u, int v) noexcept {
  bits::set({bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)}, v);
  bits::set({bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)}, u);
  ++edge_count_;
}

int Graph::degree(int u) const noexcept { return bits::count(row(u)); }

std::vector<int> Graph::neighbors(int u) const {
  std::vector<int> out;
  bits::for_each(row(u), [&](int v) { out.push_back(v); });
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int u = 0; u < n_; ++u)
    bits::for_each(row(u), [&](int v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

double probability_from_alpha(int n, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (n <= 1) return 1.0;
  return std::exp(-alpha * std::log(static_cast<double>(n)));
}

double RandomGraphSpec::edge_probability() const {
  if (alpha) return probability_from_alpha(n, *alpha);
  return p;
}

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError(std::string(name) + " must lie in [0,1], got " + std::to_string(p));
}

}  // namespace

Graph sample_gnp(const RandomGraphSpec& spec) {
  if (spec.n < 0) throw ConfigError("n must be nonnegative");
  const double p = spec.edge_probability();
  check_probability(p, "p");
  const BernoulliThreshold coin(p);
  SplitMix64 rng(spec.seed);
  std::vector<Edge> edges;
  for (int u = 0; u < spec.n; ++u)
    for (int v = u + 1; v < spec.n; ++v)
      if (coin.accept(rng.next())) edges.emplace_back(u, v);
  Graph g(spec.n, edges);
  g.set_provenance({spec.n, p, spec.seed});
  return g;
}

TwoParameterSample sample_two_parameter(int n, double p0, double p1, std::uint64_t seed) {
  if (n < 0) throw ConfigError("n must be nonnegative");
  check_probability(p0, "p0");
  check_probability(p1, "p1");
  SplitMix64 vertex_rng(mix64(seed ^ 0x7665727465782121ULL));
  const BernoulliThreshold keep(p0);
  TwoParameterSample out;
  for (int v = 0; v < n; ++v)
    if (keep.accept(vertex_rng.next())) out.survivors.push_back(v);

  const BernoulliThreshold coin(p1);
  SplitMix64 edge_rng(seed);
  const int k = static_cast<int>(out.survivors.size());
  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (coin.accept(edge_rng.next())) edges.emplace_back(a, b);
  out.graph = Graph(k, edges);
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> s(vertices.begin(), vertices.end());
  for (int v : s)
    if (v < 0 || v >= g.n()) throw ArgumentError("vertex " + std::to_string(v) + " out of range");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ArgumentError("repeated vertex in subset");
  const int k = static_cast<int>(s.size());
  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.adjacent(s[a], s[b])) edges.emplace_back(a, b);
  return Graph(k, edges);
}

namespace {

using Set = std::vector<bits::Word>;

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g), words_(g.words()) {}

  void enumerate(std::vector<int>& r, Set p, Set x, std::vector<std::vector<int>>& out) {
    if (bits::none(p)) {
      if (bits::none(x)) out.push_back(r);
      return;
    }
    // Tomita pivot: u in P u X maximizing |P n N(u)|.
    int pivot = -1, best = -1;
    auto consider = [&](int u) {
      int c = 0;
      const auto nu = g_.row(u);
      for (int w = 0; w < words_; ++w) c += std::popcount(p[w] & nu[w]);
      if (c > best) best = c, pivot = u;
    };
    bits::for_each(p, consider);
    bits::for_each(x, consider);
    Set cand(words_);
    const auto np = g_.row(pivot);
    for (int w = 0; w < words_; ++w) cand[w] = p[w] & ~np[w];
    bits::for_each(cand, [&](int v) {
      const auto nv = g_.row(v);
      Set p2(words_), x2(words_);
      for (int w = 0; w < words_; ++w) {
        p2[w] = p[w] & nv[w];
        x2[w] = x[w] & nv[w];
      }
      r.push_back(v);
      enumerate(r, std::move(p2), std::move(x2), out);
      r.pop_back();
      bits::reset(p, v);
      bits::set(x, v);
    });
  }

  void maximum(int size, Set p, int& best) {
    if (bits::none(p)) {
      best = std::max(best, size);
      return;
    }
    while (!bits::none(p)) {
      if (size + bits::count(p) <= best) return;
      const int v = bits::first(p);
      const auto nv = g_.row(v);
      Set p2(words_);
      for (int w = 0; w < words_; ++w) p2[w] = p[w] & nv[w];
      maximum(size + 1, std::move(p2), best);
      bits::reset(p, v);
    }
  }

 private:
  const Graph& g_;
  int words_;
};

Set all_vertices(int n) {
  Set s(bits::words_for(n), 0);
  for (int v = 0; v < n; ++v) bits::set(s, v);
  return s;
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  if (g.n() == 0) return out;
  CliqueSearch search(g);
  std::vector<int> r;
  search.enumerate(r, all_vertices(g.n()), Set(g.words(), 0), out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

int clique_number(const Graph& g) {
  if (g.n() == 0) return 0;
  int best = 1;
  CliqueSearch search(g);
  search.maximum(0, all_vertices(g.n()), best);
  return best;
}

namespace {

// Number of connected components of the subgraph induced on `alive` (n <= 64).
int components_in_mask(const Graph& g, std::uint64_t alive) {
  int comps = 0;
  while (alive) {
    std::uint64_t frontier = alive & (~alive + 1);
    std::uint64_t seen = frontier;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint64_t next = g.row(v)[0] & alive & ~seen;
      seen |= next;
      frontier |= next;
    }
    alive &= ~seen;
    ++comps;
  }
  return comps;
}

}  // namespace

std::optional<int> vertex_connectivity(const Graph& g) {
  const int n = g.n();
  if (n > 64) throw ArgumentError("vertex_connectivity supports n <= 64");
  const std::uint64_t all = bits::low_mask(n);
  for (int s = 0; s + 2 <= n; ++s) {
    std::uint64_t del = bits::low_mask(s);
    // Enumerate all s-subsets in increasing numeric order.
    while (true) {
      if (components_in_mask(g, all & ~del) >= 2) return s;
      if (s == 0) break;
      const std::uint64_t nxt = bits::next_combination(del);
      if (nxt > all || nxt < del) break;
      del = nxt;
    }
  }
  return std::nullopt;
}

int component_count(const Graph& g) {
  const int n = g.n();
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      bits::for_each(g.row(v), [&](int w) {
        if (!seen[w]) seen[w] = 1, stack.push_back(w);
      });
    }
  }
  return comps;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

Rational essential_density(const Graph& h) {
  const int n = h.n();
  if (n == 0) throw ArgumentError("essential density of the empty graph is undefined");
  if (n > 30) throw ArgumentError("essential_density is exhaustive and supports n <= 30");
  std::int64_t best_e = 0, best_v = 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < limit; ++s) {
    std::int64_t e = 0;
    for (std::uint64_t t = s; t; t &= t - 1) {
      const int v = std::countr_zero(t);
      e += std::popcount(h.row(v)[0] & s);
    }
    e /= 2;
    const std::int64_t v = std::popcount(s);
    if (e * best_v > best_e * v) best_e = e, best_v = v;
  }
  return Rational(best_e, best_v);
}

namespace fixtures {

Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.emplace_back(std::min(u, (u + 1) % n), std::max(u, (u + 1) % n));
  return Graph(n, e);
}

Graph path(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph(n, e);
}

Graph empty(int n) { return Graph(n); }

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) e.emplace_back(u, a + v);
  return Graph(a + b, e);
}

Graph octahedron() {
  // Antipodal pairs {0,1}, {2,3}, {4,5}.
  std::vector<Edge> e;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (u / 2 != v / 2) e.emplace_back(u, v);
  return Graph(6, e);
}

Graph wheel(int m) {
  std::vector<Edge> e;
  for (int u = 0; u < m; ++u) {
    const int v = (u + 1) % m;
    e.emplace_back(std::min(u, v), std::max(u, v));
    e.emplace_back(u, m);
  }
  return Graph(m + 1, e);
}

}  // namespace fixtures

}  // namespace coedge
