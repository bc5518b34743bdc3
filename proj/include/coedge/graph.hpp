#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace coedge {

using Edge = std::pair<int, int>;
using Rational = boost::rational<std::int64_t>;

/// Where a sampled graph came from. Absent for graphs read from files or
/// built by hand.
struct SampleProvenance {
  int n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// Simple undirected graph on vertices 0..n-1 stored as n adjacency bit rows.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws ArgumentError on loops, out-of-range endpoints, or duplicate edges.
  Graph(int n, std::span<const Edge> edges);

  int n() const noexcept { return n_; }
  int edge_count() const noexcept { return edge_count_; }
  int words() const noexcept { return words_; }

  bool adjacent(int u, int v) const noexcept {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(int u) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
  }
  int degree(int u) const noexcept;
  std::vector<int> neighbors(int u) const;
  /// All edges (u < v), lexicographically sorted.
  std::vector<Edge> edges() const;

  const std::optional<SampleProvenance>& provenance() const noexcept { return provenance_; }
  void set_provenance(SampleProvenance p) { provenance_ = p; }

  /// Structural equality; provenance is ignored.
  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  void set_edge(int u, int v) noexcept;

  int n_ = 0;
  int words_ = 0;
  int edge_count_ = 0;
  std::vector<std::uint64_t> bits_;
  std::optional<SampleProvenance> provenance_;
};

enum class GraphModel { OneParameter, TwoParameter };

/// Sampler configuration. When `alpha` is set, p = exp(-alpha * ln n)
/// evaluated in double precision (p = 1 for n <= 1) and `p` is ignored.
struct RandomGraphSpec {
  int n = 0;
  double p = 0.0;
  std::optional<double> alpha;
  GraphModel model = GraphModel::OneParameter;
  double p0 = 1.0;
  double p1 = 0.0;
  std::uint64_t seed = 0;

  double edge_probability() const;
};

/// p = n^{-alpha} as exp(-alpha * ln n).
double probability_from_alpha(int n, double alpha);

/// G(n, p): one SplitMix64 stream seeded with `seed`, one draw per potential
/// edge {u < v} in lexicographic order; the edge is kept iff
/// draw < floor(p * 2^64).
Graph sample_gnp(const RandomGraphSpec& spec);

struct TwoParameterSample {
  Graph graph;                 // relabeled 0..k-1 in increasing original order
  std::vector<int> survivors;  // original labels of the kept vertices
};

/// G(n; p0, p1). Vertex draws come from the stream seeded with
/// mix64(seed ^ 0x7665727465782121) ("vertex!!"), one per vertex 0..n-1; edge
/// draws come from the stream seeded with `seed`, one per surviving pair in
/// lexicographic order of original labels. With p0 = 1 the output equals
/// sample_gnp(n, p1, seed).
TwoParameterSample sample_two_parameter(int n, double p0, double p1, std::uint64_t seed);

/// Subgraph induced on `vertices`, relabeled 0..|S|-1 in increasing order.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Maximal cliques, each sorted ascending; the list is sorted lexicographically.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

int clique_number(const Graph& g);

/// Minimum |S| such that G - S has at least two components; nullopt (infinity)
/// when no such S exists, e.g. for complete graphs. Exhaustive, n <= 64.
std::optional<int> vertex_connectivity(const Graph& g);

bool is_connected(const Graph& g);
int component_count(const Graph& g);

/// max e(H')/v(H') over induced subgraphs H' with at least one vertex.
/// Exhaustive over vertex subsets; n <= 30.
Rational essential_density(const Graph& h);

namespace fixtures {
Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph empty(int n);
Graph complete_bipartite(int a, int b);
Graph octahedron();
/// Cone over C_m with apex m.
Graph wheel(int m);
}  // namespace fixtures

}  // namespace coedge
