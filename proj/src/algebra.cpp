#include "coedge/algebra.hpp"

#include <algorithm>
#include <bit>

#include "bits.hpp"
#include "coedge/collapse.hpp"
#include "coedge/complex.hpp"
#include "coedge/errors.hpp"
#include "subset_kernel.hpp"

namespace coedge {

std::uint64_t BettiTable::at(int i, int j) const {
  const auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

void BettiTable::add(int i, int j, std::uint64_t v) {
  if (v) entries_[{i, j}] += v;
}

int BettiTable::regularity() const {
  int reg = 0;
  for (const auto& [ij, v] : entries_) reg = std::max(reg, ij.second - ij.first);
  return reg;
}

int BettiTable::pdim() const {
  int p = 0;
  for (const auto& [ij, v] : entries_) p = std::max(p, ij.first);
  return p;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int t = 1; t <= k; ++t) c = c * static_cast<unsigned>(n - k + t) / static_cast<unsigned>(t);
  return static_cast<std::uint64_t>(c);
}

std::map<std::pair<int, int>, Rational> normalized_betti_table(const BettiTable& b) {
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [ij, v] : b.entries())
    out.emplace(ij, Rational(static_cast<std::int64_t>(v), static_cast<std::int64_t>(binomial(b.n(), ij.second))));
  return out;
}

const char* to_string(Provenance p) noexcept { return p == Provenance::Exact ? "exact" : "certified"; }

std::vector<std::pair<int, int>> extremal_positions(const BettiTable& b) {
  const auto& e = b.entries();
  std::vector<std::pair<int, int>> out;
  if (e.size() == 1 && e.begin()->first == std::pair{0, 0}) return {{0, 0}};
  for (const auto& [ij, v] : e) {
    const int i = ij.first, k = ij.second - ij.first;
    if (i == 0 && k == 0) continue;
    bool dominated = false;
    for (const auto& [ij2, v2] : e) {
      const int i2 = ij2.first, k2 = ij2.second - ij2.first;
      if (ij2 != ij && i2 >= i && k2 >= k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(ij);
  }
  return out;
}

Rational rho(const BettiTable& b, int k) {
  const int p = b.pdim();
  int hits = 0;
  for (int i = 0; i <= p; ++i)
    if (b.at(i, i + k)) ++hits;
  return Rational(hits, p + 1);
}

int krull_dimension_from_table(const BettiTable& b) {
  const int n = b.n();
  std::vector<__int128> c(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [ij, v] : b.entries()) c[ij.second] += (ij.first % 2 ? -1 : 1) * static_cast<__int128>(v);
  int order = 0;
  while (!c.empty()) {
    __int128 sum = 0;
    for (auto x : c) sum += x;
    if (sum != 0) break;
    // Divide by (t - 1): quotient coefficients are suffix sums.
    std::vector<__int128> q(c.size() - 1);
    __int128 acc = 0;
    for (std::size_t t = c.size() - 1; t >= 1; --t) {
      acc += c[t];
      q[t - 1] = acc;
    }
    c = std::move(q);
    ++order;
  }
  return n - order;
}

InvariantReport invariants_from_table(const BettiTable& b) {
  InvariantReport r;
  r.n = b.n();
  r.field = b.field();
  r.provenance = Provenance::Exact;
  const int reg = b.regularity();
  const int pdim = b.pdim();
  r.regularity = {reg, reg};
  r.pdim = {pdim, pdim};
  r.depth = {b.n() - pdim, b.n() - pdim};
  r.krull = krull_dimension_from_table(b);
  r.extremal = extremal_positions(b);
  for (int k = 0; k <= reg; ++k) r.rho[k] = rho(b, k);
  return r;
}

std::string KappaValue::to_string() const {
  switch (kind_) {
    case Kind::Exact: return std::to_string(value_);
    case Kind::AboveCap: return ">" + std::to_string(value_);
    case Kind::Infinite: return "inf";
  }
  return "?";
}

namespace {

/// Calls f(mask) for each k-subset of [n] in increasing numeric order until f
/// returns true. n <= 64.
template <class F>
bool any_subset(int n, int k, F&& f) {
  if (k == 0) return f(std::uint64_t{0});
  std::uint64_t x = bits::low_mask(k);
  const std::uint64_t total = binomial(n, k);
  for (std::uint64_t t = 0; t < total; ++t) {
    if (f(x)) return true;
    if (t + 1 < total) x = bits::next_combination(x);
  }
  return false;
}

/// Same for n > 64, with index vectors.
template <class F>
bool any_subset_large(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) idx[t] = t;
  for (;;) {
    if (f(idx)) return true;
    int t = k - 1;
    while (t >= 0 && idx[t] == n - k + t) --t;
    if (t < 0) return false;
    ++idx[t];
    for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
}

}  // namespace

KappaValue kappa(const Graph& g, int i, const CoefficientField& field, std::optional<int> cap) {
  const int n = g.n();
  const int c = cap.value_or(n);
  if (c < 0 || c > n) throw ArgumentError("kappa: cap must lie in [0, n]");
  if (i < -1) throw ArgumentError("kappa: degree must be at least -1");
  const auto not_found = [&] { return c == n ? KappaValue::infinite() : KappaValue::above(c); };
  if (i == -1) return c == n ? KappaValue::exact(n) : KappaValue::above(c);
  // No induced subcomplex has homology above dim Δ(G).
  if (i > clique_number(g) - 1) return not_found();

  if (n <= 64) {
    detail::SubsetHomology kernel(g, field);
    const std::uint64_t all = bits::low_mask(n);
    for (int s = 0; s <= c; ++s)
      if (any_subset(n, s, [&](std::uint64_t del) { return kernel.reduced_in(all & ~del, i) != 0; }))
        return KappaValue::exact(s);
    return not_found();
  }
  std::vector<char> deleted(static_cast<std::size_t>(n));
  std::vector<int> keep;
  for (int s = 0; s <= c; ++s) {
    const bool hit = any_subset_large(n, s, [&](const std::vector<int>& del) {
      std::fill(deleted.begin(), deleted.end(), 0);
      for (int v : del) deleted[v] = 1;
      keep.clear();
      for (int v = 0; v < n; ++v)
        if (!deleted[v]) keep.push_back(v);
      const CliqueComplex cx = induced_complex(g, keep, i + 1);
      return reduced_betti(cx, field, i, i)[i] != 0;
    });
    if (hit) return KappaValue::exact(s);
  }
  return not_found();
}

PdimEstimate pdim_via_kappa(const Graph& g, const CoefficientField& field, std::span<const int> caps) {
  const int n = g.n();
  const int top = clique_number(g) - 1;
  PdimEstimate out;
  int lo = 0, hi = 0;
  for (int j = 0; j <= top; ++j) {
    const int cap = j < static_cast<int>(caps.size()) ? std::clamp(caps[j], 0, n) : n;
    const KappaValue k = kappa(g, j, field, cap);
    out.kappas.push_back(k);
    const int base = n - (j + 1);
    if (k.kind() == KappaValue::Kind::Exact) {
      lo = std::max(lo, base - k.value());
      hi = std::max(hi, base - k.value());
    } else if (k.kind() == KappaValue::Kind::AboveCap) {
      hi = std::max(hi, base - (k.value() + 1));
    }
  }
  out.pdim = {lo, hi};
  return out;
}

PdimEstimate pdim_via_kappa(const Graph& g, const CoefficientField& field, std::optional<int> cap) {
  const int c = cap.value_or(g.n());
  const std::vector<int> caps(static_cast<std::size_t>(std::max(0, clique_number(g))), c);
  return pdim_via_kappa(g, field, std::span<const int>(caps));
}

bool kahle_connectivity_certificate(const Graph& g, int k) {
  const int n = g.n();
  if (k < 1) throw ArgumentError("kahle_connectivity_certificate: k must be at least 1");
  if (n < 2 * k + 1) throw ArgumentError("kahle_connectivity_certificate: need at least 2k+1 vertices");
  if (n > 64) throw ArgumentError("kahle_connectivity_certificate: at most 64 vertices");
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) adj[v] = g.row(v)[0];
  const auto common = [&](std::uint64_t t, bool closed) {
    std::uint64_t c = bits::low_mask(n);
    for (std::uint64_t r = t; r; r &= r - 1) {
      const int v = std::countr_zero(r);
      c &= adj[v] | (closed ? std::uint64_t{1} << v : 0);
    }
    return c;
  };
  if (any_subset(n, 2 * k + 1, [&](std::uint64_t t) { return common(t, false) == 0; })) return false;

  detail::SubsetHomology kernel(g, CoefficientField::rationals());
  // Given u, u' in every closed star, {u, u', v} is a clique for each v in T
  // exactly when u ~ u', so the intersection's 1-skeleton is induced on U.
  for (int l = 1; l <= 2 * k; ++l) {
    const bool bad = any_subset(n, l, [&](std::uint64_t t) {
      const std::uint64_t u = common(t, true);
      return u == 0 || kernel.component(u, u) != u;
    });
    if (bad) return false;
  }
  return true;
}

InvariantReport certified_invariants(const Graph& g, int d, const CoefficientField& field) {
  if (d < 0) throw ArgumentError("certified_invariants: d must be nonnegative");
  const int n = g.n();
  InvariantReport r;
  r.n = n;
  r.field = field;
  r.provenance = Provenance::Certified;
  if (static_cast<std::uint64_t>(g.edge_count()) == binomial(n, 2)) {
    // I_G = 0.
    r.regularity = r.pdim = {0, 0};
    r.depth = {n, n};
    r.krull = n;
    r.extremal = {{0, 0}};
    return r;
  }
  const int omega = clique_number(g);
  const HomologyProfile whole = reduced_betti(clique_complex(g, d + 2), field, -1, d + 1);
  int reg_lo = 1;
  for (int q = 0; q <= d + 1; ++q)
    if (whole[q]) reg_lo = std::max(reg_lo, q + 1);
  const int reg_hi = certify_regularity_upper(g, d) ? std::min(d + 1, omega) : omega;
  r.regularity = {reg_lo, std::max(reg_lo, reg_hi)};

  std::vector<int> caps(static_cast<std::size_t>(omega), 0);
  for (int j = 0; j < std::min(d, omega); ++j) caps[j] = d - j - 1;
  r.pdim = pdim_via_kappa(g, field, std::span<const int>(caps)).pdim;
  r.depth = {n - r.pdim.hi, n - r.pdim.lo};
  r.krull = omega;
  if (r.regularity == Bounds{d + 1, d + 1} && r.pdim == Bounds{n - d - 1, n - d - 1} && whole[d] != 0)
    r.extremal = {{n - d - 1, n}};
  return r;
}

}  // namespace coedge
