#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coedge/graph.hpp"
#include "coedge/homology.hpp"

namespace coedge {

/// Graded Betti numbers β_{i,j}(R/I_G) over one field. Only nonzero entries
/// are stored. In the usual display, row k = j - i and column i.
class BettiTable {
 public:
  BettiTable() = default;
  BettiTable(int n, CoefficientField field) : n_(n), field_(field) {}

  int n() const noexcept { return n_; }
  const CoefficientField& field() const noexcept { return field_; }

  std::uint64_t at(int i, int j) const;
  std::uint64_t at_row(int k, int i) const { return at(i, i + k); }
  void add(int i, int j, std::uint64_t v);
  /// Nonzero entries keyed by (i, j).
  const std::map<std::pair<int, int>, std::uint64_t>& entries() const noexcept { return entries_; }

  /// Largest row k with a nonzero entry (0 for the trivial table).
  int regularity() const;
  /// Largest column i with a nonzero entry.
  int pdim() const;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  int n_ = 0;
  CoefficientField field_ = CoefficientField::rationals();
  std::map<std::pair<int, int>, std::uint64_t> entries_;
};

struct HochsterOptions {
  int exhaustive_cap = 22;
  int threads = 0;  // 0: OpenMP default
};

/// Hochster's formula: β_{i,j} = Σ_{|S|=j} dim H̃_{j-i-1}(Δ(S)). Every subset
/// is reduced by strong collapse, split into components (which settle
/// H̃_0), and the homology of each remaining component is cached by its
/// vertex mask. Subsets are split across OpenMP threads with per-thread
/// tables summed at the end, so the result does not depend on scheduling.
/// Throws RefusalError when n exceeds options.exhaustive_cap (at most 63).
BettiTable hochster_betti_table(const Graph& g, const CoefficientField& field, const HochsterOptions& options = {});

/// Serial reference: builds Δ(S) and its full homology for every subset with
/// no preprocessing. For tests and benchmarks on small graphs.
BettiTable hochster_betti_table_reference(const Graph& g, const CoefficientField& field);

/// β_{i,j} / C(n, j) for every stored entry.
std::map<std::pair<int, int>, Rational> normalized_betti_table(const BettiTable& b);

std::uint64_t binomial(int n, int k);

struct Bounds {
  int lo = 0;
  int hi = 0;
  bool exact() const noexcept { return lo == hi; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class Provenance { Exact, Certified };
const char* to_string(Provenance p) noexcept;

struct InvariantReport {
  int n = 0;
  CoefficientField field = CoefficientField::rationals();
  Provenance provenance = Provenance::Exact;
  Bounds regularity;
  Bounds pdim;
  Bounds depth;
  int krull = 0;
  std::vector<std::pair<int, int>> extremal;  // (i, j); empty when unknown
  std::map<int, Rational> rho;                // k -> ρ_k for k = 0..reg; exact reports only
};

/// Positions (i, j) of extremal Betti numbers: nonzero entries with no other
/// nonzero entry at (i', i'+k') with i' >= i and k' >= k. (0,0) counts only
/// when it is the sole entry (I_G = 0).
std::vector<std::pair<int, int>> extremal_positions(const BettiTable& b);

/// ρ_k = |{i in [0, pdim] : β_{i,i+k} != 0}| / (pdim + 1).
Rational rho(const BettiTable& b, int k);

/// Krull dimension read off the table: n minus the order of vanishing at
/// t = 1 of Σ (-1)^i β_{i,j} t^j. Equals the clique number.
int krull_dimension_from_table(const BettiTable& b);

InvariantReport invariants_from_table(const BettiTable& b);

/// κ^i_K(G): an exact value, a lower bound "> cap", or infinity.
class KappaValue {
 public:
  enum class Kind { Exact, AboveCap, Infinite };

  static KappaValue exact(int v) { return {Kind::Exact, v}; }
  static KappaValue above(int cap) { return {Kind::AboveCap, cap}; }
  static KappaValue infinite() { return {Kind::Infinite, 0}; }

  Kind kind() const noexcept { return kind_; }
  /// The exact value, or the cap for AboveCap.
  int value() const noexcept { return value_; }
  /// "4", ">2" or "inf".
  std::string to_string() const;

  friend bool operator==(const KappaValue&, const KappaValue&) = default;

 private:
  KappaValue(Kind k, int v) : kind_(k), value_(v) {}
  Kind kind_;
  int value_;
};

/// min |S| with H̃_i(Δ(V \ S); K) != 0, searching |S| = 0..cap (default n)
/// in increasing size. Infinite only when cap = n and nothing is found.
/// Throws ArgumentError unless 0 <= cap <= n and i >= -1.
KappaValue kappa(const Graph& g, int i, const CoefficientField& field, std::optional<int> cap = {});

struct PdimEstimate {
  Bounds pdim;
  std::vector<KappaValue> kappas;  // κ^j for j = 0..dim Δ(G)
};

/// pdim = max_{i>=1} { n - i - κ^{i-1} } with i - 1 ranging over 0..dim Δ.
/// A lower-bounded κ turns the answer into an interval.
PdimEstimate pdim_via_kappa(const Graph& g, const CoefficientField& field, std::optional<int> cap = {});
/// caps[j] bounds the search for κ^j; degrees past the end use cap n.
PdimEstimate pdim_via_kappa(const Graph& g, const CoefficientField& field, std::span<const int> caps);

/// Sufficient condition for Δ(G) to be topologically k-connected: every
/// (2k+1)-set of vertices has a common neighbour, and for every set T of at
/// most 2k vertices the intersection of the closed stars of T is connected.
/// A vertex u lies in that intersection iff, for each v in T, u = v or u ~ v;
/// an edge {u, u'} does iff {u, u', v} is a clique for each v in T.
/// Throws ArgumentError unless k >= 1, n >= 2k+1 and n <= 64.
bool kahle_connectivity_certificate(const Graph& g, int k);

/// Certificate-based invariants for graphs too large for Hochster:
/// reg >= q+1 for each q <= d+1 with β̃_q(Δ(G)) != 0; reg <= d+1 when the
/// peeling core is empty, else reg <= ω; pdim from pdim_via_kappa with
/// caps d-j-1 for κ^j (j < d) and 0 otherwise, which pins pdim = n-(d+1) when
/// β̃_d != 0 and the lower κ are large enough; krull = ω; the extremal
/// position (n-d-1, n) is reported when reg and pdim are pinned to that corner.
InvariantReport certified_invariants(const Graph& g, int d, const CoefficientField& field);

}  // namespace coedge
