#include "coedge/collapse.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "coedge/errors.hpp"
#include "coedge/rng.hpp"

namespace coedge {

const char* to_string(Verdict v) noexcept { return v == Verdict::Certified ? "certified" : "inconclusive"; }

namespace {

struct FaceRef {
  int dim;
  std::uint32_t ord;
  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

/// Mutable view of a complex for elementary collapses: alive flags plus, for
/// each face, its immediate faces and cofaces.
class CollapseState {
 public:
  explicit CollapseState(const FaceTable& faces) : faces_(faces) {
    const int top = faces.top_dimension();
    alive_.resize(static_cast<std::size_t>(top + 1));
    up_.resize(alive_.size());
    down_.resize(alive_.size());
    ups_alive_.resize(alive_.size());
    for (int k = 0; k <= top; ++k) {
      alive_[k].assign(faces.count(k), 1);
      up_[k].resize(faces.count(k));
      down_[k].resize(faces.count(k));
      ups_alive_[k].assign(faces.count(k), 0);
    }
    std::vector<int> sub;
    for (int k = 1; k <= top; ++k)
      for (std::uint32_t t = 0; t < faces.count(k); ++t) {
        const auto f = faces.face(k, t);
        for (int drop = 0; drop <= k; ++drop) {
          sub.clear();
          for (int b = 0; b <= k; ++b)
            if (b != drop) sub.push_back(f[b]);
          const auto r = static_cast<std::uint32_t>(*faces.index_of(sub));
          down_[k][t].push_back(r);
          up_[k - 1][r].push_back(t);
          ++ups_alive_[k - 1][r];
        }
      }
    for (int k = 0; k <= top; ++k) alive_count_.push_back(faces.count(k));
  }

  int top() const noexcept { return static_cast<int>(alive_.size()) - 1; }
  std::size_t alive_count(int k) const noexcept { return k < 0 || k > top() ? 0 : alive_count_[k]; }
  bool alive(FaceRef f) const noexcept { return alive_[f.dim][f.ord]; }

  int dimension() const noexcept {
    for (int k = top(); k >= 0; --k)
      if (alive_count_[k]) return k;
    return -1;
  }

  /// The unique coface if `f` is free.
  std::optional<std::uint32_t> free_coface(FaceRef f) const {
    if (!alive(f) || f.dim >= top() || ups_alive_[f.dim][f.ord] != 1) return std::nullopt;
    for (std::uint32_t u : up_[f.dim][f.ord])
      if (alive_[f.dim + 1][u]) {
        if (f.dim + 1 <= top() - 1 && ups_alive_[f.dim + 1][u] != 0) return std::nullopt;
        return u;
      }
    return std::nullopt;
  }

  /// Removes f and its coface; returns faces whose freeness may have changed.
  std::vector<FaceRef> collapse(FaceRef f, std::uint32_t coface) {
    std::vector<FaceRef> touched;
    remove({f.dim + 1, coface});
    remove(f);
    for (std::uint32_t r : down_[f.dim + 1][coface]) {
      touched.push_back({f.dim, r});
      for (std::uint32_t q : down_[f.dim][r]) touched.push_back({f.dim - 1, q});
    }
    if (f.dim > 0)
      for (std::uint32_t r : down_[f.dim][f.ord]) touched.push_back({f.dim - 1, r});
    return touched;
  }

  Face face(FaceRef f) const {
    const auto s = faces_.face(f.dim, f.ord);
    return Face(s.begin(), s.end());
  }

 private:
  void remove(FaceRef f) {
    alive_[f.dim][f.ord] = 0;
    --alive_count_[f.dim];
    if (f.dim > 0)
      for (std::uint32_t r : down_[f.dim][f.ord]) --ups_alive_[f.dim - 1][r];
  }

  const FaceTable& faces_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::vector<std::vector<std::uint32_t>>> up_, down_;
  std::vector<std::vector<std::uint32_t>> ups_alive_;
  std::vector<std::size_t> alive_count_;
};

const FaceTable& full_faces(const CliqueComplex& c, std::optional<CliqueComplex>& holder) {
  if (!c.truncated()) return c.faces();
  holder.emplace(clique_complex(c.base()));
  return holder->faces();
}

struct Run {
  std::vector<CollapseStep> trace;
  std::size_t left_above = 0;
  bool certified = false;
};

Run run_greedy(const FaceTable& faces, int d, const std::vector<std::vector<std::uint64_t>>* priority) {
  CollapseState st(faces);
  // Ordered by (-dim, priority, ordinal); entries are verified when popped.
  using Key = std::tuple<int, std::uint64_t, std::uint32_t>;
  std::set<Key> cand;
  auto key = [&](FaceRef f) {
    return Key{-f.dim, priority ? (*priority)[f.dim][f.ord] : 0, f.ord};
  };
  for (int k = std::max(d, 0); k < st.top(); ++k)
    for (std::uint32_t t = 0; t < faces.count(k); ++t) cand.insert(key({k, t}));

  auto above = [&] {
    std::size_t s = 0;
    for (int k = d + 1; k <= st.top(); ++k) s += st.alive_count(k);
    return s;
  };
  Run run;
  while (st.dimension() > d) {
    bool done = false;
    while (!cand.empty()) {
      const Key k = *cand.begin();
      cand.erase(cand.begin());
      const FaceRef f{-std::get<0>(k), std::get<2>(k)};
      if (auto co = st.free_coface(f)) {
        run.trace.push_back({st.face(f), st.face({f.dim + 1, *co})});
        for (const FaceRef& t : st.collapse(f, *co))
          if (t.dim >= d && st.alive(t)) cand.insert(key(t));
        done = true;
        break;
      }
    }
    if (!done) break;
  }
  run.certified = st.dimension() <= d;
  run.left_above = above();
  return run;
}

}  // namespace

std::vector<Face> free_faces(const CliqueComplex& c) {
  std::optional<CliqueComplex> holder;
  const FaceTable& faces = full_faces(c, holder);
  CollapseState st(faces);
  std::vector<Face> out;
  for (int k = 0; k < st.top(); ++k)
    for (std::uint32_t t = 0; t < faces.count(k); ++t)
      if (st.free_coface({k, t})) out.push_back(st.face({k, t}));
  return out;
}

CollapseCertificate greedy_collapse_to_dim(const CliqueComplex& c, int d, CollapsePolicy policy) {
  if (d < 0) throw ArgumentError("greedy_collapse_to_dim: d must be nonnegative");
  std::optional<CliqueComplex> holder;
  const FaceTable& faces = full_faces(c, holder);

  Run best = run_greedy(faces, d, nullptr);
  if (policy.kind == CollapsePolicy::Kind::RandomRestarts) {
    SplitMix64 rng(policy.seed);
    for (int r = 0; r < policy.restarts && !best.certified; ++r) {
      std::vector<std::vector<std::uint64_t>> prio(static_cast<std::size_t>(faces.top_dimension() + 1));
      for (int k = 0; k <= faces.top_dimension(); ++k) {
        prio[k].resize(faces.count(k));
        for (auto& x : prio[k]) x = rng.next();
      }
      Run run = run_greedy(faces, d, &prio);
      if (run.certified || run.left_above < best.left_above) best = std::move(run);
    }
  }
  CollapseCertificate cert;
  cert.target_dim = d;
  cert.verdict = best.certified ? Verdict::Certified : Verdict::Inconclusive;
  if (best.certified) cert.trace = std::move(best.trace);
  return cert;
}

int replay_collapse(const CliqueComplex& c, const std::vector<CollapseStep>& trace) {
  std::optional<CliqueComplex> holder;
  const FaceTable& faces = full_faces(c, holder);
  CollapseState st(faces);
  for (const auto& step : trace) {
    const int k = static_cast<int>(step.free_face.size()) - 1;
    const auto f = faces.index_of(step.free_face);
    const auto co = faces.index_of(step.coface);
    if (k < 0 || !f || !co || step.coface.size() != step.free_face.size() + 1)
      throw ArgumentError("replay_collapse: step names faces outside the complex");
    const auto free_co = st.free_coface({k, static_cast<std::uint32_t>(*f)});
    if (!free_co || *free_co != *co) throw ArgumentError("replay_collapse: step is not an elementary collapse");
    st.collapse({k, static_cast<std::uint32_t>(*f)}, *free_co);
  }
  return st.dimension();
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

CollapseCertificate malen_core(const CliqueComplex& c, int d) {
  if (d < 0) throw ArgumentError("malen_core: d must be nonnegative");
  if (c.dim_cap() < d + 1) throw ArgumentError("malen_core: dim_cap must be at least d+1");
  const FaceTable& faces = c.faces();
  const int k = d + 1;
  const int n = c.vertex_count();
  const std::uint32_t threshold = static_cast<std::uint32_t>(2 * d + 1);

  // Ridge ordinals of each facet.
  const std::size_t m = faces.count(k);
  std::vector<std::vector<std::uint32_t>> ridges(m);
  std::vector<int> sub;
  for (std::uint32_t t = 0; t < m; ++t) {
    const auto f = faces.face(k, t);
    for (int drop = 0; drop <= k; ++drop) {
      sub.clear();
      for (int b = 0; b <= k; ++b)
        if (b != drop) sub.push_back(f[b]);
      ridges[t].push_back(static_cast<std::uint32_t>(*faces.index_of(sub)));
    }
  }

  std::vector<std::uint32_t> current(m);
  std::iota(current.begin(), current.end(), 0U);
  std::vector<std::uint32_t> degree(static_cast<std::size_t>(n));
  while (!current.empty()) {
    UnionFind uf(current.size());
    std::unordered_map<std::uint32_t, std::uint32_t> owner;  // ridge -> position in current
    for (std::uint32_t pos = 0; pos < current.size(); ++pos)
      for (std::uint32_t r : ridges[current[pos]]) {
        auto [it, fresh] = owner.try_emplace(r, pos);
        if (!fresh) uf.unite(pos, it->second);
      }
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t pos = 0; pos < current.size(); ++pos) groups[uf.find(pos)].push_back(pos);

    std::vector<char> drop(current.size(), 0);
    bool any = false;
    for (auto& [root, members] : groups) {
      std::set<std::pair<int, int>> edges;
      for (std::uint32_t pos : members) {
        const auto f = faces.face(k, current[pos]);
        for (int a = 0; a <= k; ++a)
          for (int b = a + 1; b <= k; ++b) edges.emplace(f[a], f[b]);
      }
      std::fill(degree.begin(), degree.end(), 0);
      for (const auto& [u, v] : edges) ++degree[u], ++degree[v];
      for (std::uint32_t pos : members) {
        const auto f = faces.face(k, current[pos]);
        if (std::any_of(f.begin(), f.end(), [&](int v) { return degree[v] <= threshold; })) {
          drop[pos] = 1;
          any = true;
        }
      }
    }
    if (!any) break;
    std::vector<std::uint32_t> next;
    for (std::uint32_t pos = 0; pos < current.size(); ++pos)
      if (!drop[pos]) next.push_back(current[pos]);
    current = std::move(next);
  }

  CollapseCertificate cert;
  cert.target_dim = d;
  cert.verdict = current.empty() ? Verdict::Certified : Verdict::Inconclusive;
  std::sort(current.begin(), current.end());
  for (std::uint32_t t : current) {
    const auto f = faces.face(k, t);
    cert.core.emplace_back(f.begin(), f.end());
  }
  return cert;
}

bool certify_regularity_upper(const Graph& g, int d) {
  if (d < 0) throw ArgumentError("certify_regularity_upper: d must be nonnegative");
  return malen_core(clique_complex(g, d + 1), d).core.empty();
}

}  // namespace coedge
