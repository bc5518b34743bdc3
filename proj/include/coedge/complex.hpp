#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coedge/graph.hpp"

namespace coedge {

/// Faces of a simplicial complex grouped by dimension. Each face is a strictly
/// increasing vertex tuple; within a dimension faces are sorted
/// lexicographically, and a face's position in that order is its ordinal.
class FaceTable {
 public:
  FaceTable() = default;
  /// by_dim[k] is a flat array of (k+1)-tuples. Tuples are sorted on entry.
  explicit FaceTable(std::vector<std::vector<int>> by_dim);

  /// Largest k with at least one k-face; -1 when there are no faces.
  int top_dimension() const noexcept;
  /// Number of stored dimensions (top stored index + 1), including empty tails.
  int stored_dimensions() const noexcept { return static_cast<int>(flat_.size()); }

  std::size_t count(int k) const noexcept {
    return k < 0 || k >= stored_dimensions() ? 0 : flat_[k].size() / static_cast<std::size_t>(k + 1);
  }
  std::span<const int> face(int k, std::size_t ordinal) const noexcept {
    return {flat_[k].data() + ordinal * static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 1)};
  }
  /// Ordinal of `f` among the (|f|-1)-faces, or nullopt if absent.
  std::optional<std::size_t> index_of(std::span<const int> f) const noexcept;

  std::vector<std::size_t> f_vector() const;

 private:
  std::vector<std::vector<int>> flat_;
};

/// Flag complex of a graph with faces enumerated up to `dim_cap`.
class CliqueComplex {
 public:
  CliqueComplex(Graph base, int dim_cap, FaceTable faces, bool truncated, std::vector<int> labels);

  const Graph& base() const noexcept { return base_; }
  int dim_cap() const noexcept { return dim_cap_; }
  const FaceTable& faces() const noexcept { return faces_; }
  /// True when base has cliques of dimension above dim_cap that were not listed.
  bool truncated() const noexcept { return truncated_; }
  /// Dimension of the listed part; equals dim Δ(G) when not truncated.
  int dimension() const noexcept { return faces_.top_dimension(); }
  int vertex_count() const noexcept { return base_.n(); }
  /// labels()[v] is the vertex's name in the graph this complex was cut from.
  const std::vector<int>& labels() const noexcept { return labels_; }

 private:
  Graph base_;
  int dim_cap_;
  FaceTable faces_;
  bool truncated_;
  std::vector<int> labels_;
};

struct FVector {
  std::vector<std::size_t> counts;  // counts[k] = number of k-faces
  friend bool operator==(const FVector&, const FVector&) = default;
};

/// Cliques of G up to dimension dim_cap, found by extending cliques in
/// lexicographic order.
CliqueComplex clique_complex(const Graph& g, int dim_cap);
/// Full flag complex (dim_cap = clique_number(G) - 1, at least 0).
CliqueComplex clique_complex(const Graph& g);

FVector f_vector(const CliqueComplex& c);

/// Flag complex on the subgraph induced by `vertices`; labels compose.
CliqueComplex induced_complex(const CliqueComplex& c, std::span<const int> vertices);
CliqueComplex induced_complex(const Graph& g, std::span<const int> vertices, int dim_cap);

/// Common neighbors of the clique `sigma`.
std::vector<int> common_neighbors(const Graph& g, std::span<const int> sigma);
/// Link of sigma in Δ(G) as a graph: the subgraph induced on the common
/// neighborhood. Throws ArgumentError if sigma is not a clique.
Graph link_graph(const Graph& g, std::span<const int> sigma);

/// Every face of dimension < k lies in some k-face. Requires k <= dim_cap.
bool skeleton_purity(const CliqueComplex& c, int k);
/// First face (by dimension, then lexicographically) of dimension < k that
/// lies in no k-face; nullopt when the k-skeleton is pure.
std::optional<std::vector<int>> first_uncovered_face(const CliqueComplex& c, int k);

/// Repeatedly deletes the lowest-index vertex v whose closed neighborhood is
/// contained in that of another vertex. The result is homotopy equivalent.
CliqueComplex strong_collapse(const CliqueComplex& c);

}  // namespace coedge
