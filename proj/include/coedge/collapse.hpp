#pragma once

#include <cstdint>
#include <vector>

#include "coedge/complex.hpp"

namespace coedge {

using Face = std::vector<int>;

/// One elementary collapse: remove `free_face` together with its unique coface.
struct CollapseStep {
  Face free_face;
  Face coface;
};

enum class Verdict { Certified, Inconclusive };

const char* to_string(Verdict v) noexcept;

struct CollapseCertificate {
  Verdict verdict = Verdict::Inconclusive;
  int target_dim = 0;
  std::vector<CollapseStep> trace;  // greedy collapse only
  std::vector<Face> core;           // malen_core only; surviving (d+1)-faces
};

struct CollapsePolicy {
  enum class Kind { HighestDimFirst, RandomRestarts };
  Kind kind = Kind::HighestDimFirst;
  std::uint64_t seed = 0;
  int restarts = 0;

  static CollapsePolicy highest_dim_first() { return {}; }
  static CollapsePolicy random_restarts(std::uint64_t seed, int restarts) {
    return {Kind::RandomRestarts, seed, restarts};
  }
};

/// Faces with exactly one proper coface, sorted by (dimension, lex).
/// Faces are in the complex's own vertex numbering.
std::vector<Face> free_faces(const CliqueComplex& c);

/// Collapses until every face has dimension <= d (certified) or no free face
/// of dimension >= d remains (inconclusive). The default policy takes the
/// highest-dimensional free face, lexicographically first. RandomRestarts
/// runs the default order once and then `restarts` orders with seeded random
/// tie-breaks within a dimension, returning the first certified run or else
/// the run leaving the fewest faces above d.
/// A truncated complex is re-enumerated in full first.
CollapseCertificate greedy_collapse_to_dim(const CliqueComplex& c, int d,
                                           CollapsePolicy policy = CollapsePolicy::highest_dim_first());

/// Applies `trace` to a fresh copy of the complex and returns the dimension of
/// what is left (-1 if nothing). Throws ArgumentError if a step is not an
/// elementary collapse at the time it is applied.
int replay_collapse(const CliqueComplex& c, const std::vector<CollapseStep>& trace);

/// Peeling fixpoint on the (d+1)-faces: split the current facets into
/// ridge-connected components and, within each, delete every facet holding a
/// vertex of 1-skeleton degree <= 2d+1; repeat until stable. Any pure
/// ridge-connected (d+1)-subcomplex with minimum degree >= 2d+2 survives,
/// since degrees only drop when facets are removed. An empty core certifies
/// that every induced subcomplex is (d+1)-collapsible.
/// Requires d >= 0 and dim_cap >= d+1.
CollapseCertificate malen_core(const CliqueComplex& c, int d);

/// True iff malen_core(Δ(G), d) is empty, which gives reg(R/I_G) <= d+1 over
/// every field.
bool certify_regularity_upper(const Graph& g, int d);

}  // namespace coedge
