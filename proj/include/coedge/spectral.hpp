#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coedge/collapse.hpp"
#include "coedge/graph.hpp"

namespace coedge {

/// Normalized Laplacian I - D^{-1/2} A D^{-1/2} of a graph, dense row-major,
/// with its spectrum once computed.
struct SpectralData {
  int n = 0;
  std::vector<double> matrix;       // n*n
  std::vector<double> eigenvalues;  // ascending; empty until computed
  double gap = 0.0;                 // eigenvalues[1], or 0 for n < 2
  double tolerance = 1e-9;

  double at(int r, int c) const { return matrix[static_cast<std::size_t>(r) * n + c]; }
};

/// Throws PreconditionError naming the first isolated vertex.
SpectralData normalized_laplacian(const Graph& g);

/// Eigenvalues of a dense symmetric matrix (row-major, n*n), ascending.
/// Householder reduction to tridiagonal form, then implicit QL with
/// Wilkinson shifts.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// normalized_laplacian plus eigenvalues and gap.
SpectralData laplacian_spectrum(const Graph& g, double tol = 1e-9);

/// Second-smallest eigenvalue of the normalized Laplacian. Requires n >= 1
/// and no isolated vertices; a one-vertex graph has no λ2 and is rejected
/// by the isolated-vertex check.
double spectral_gap(const Graph& g, double tol = 1e-9);

/// Certified gaps must clear 1 - 1/(i+1) by at least this much.
inline constexpr double kGarlandMargin = 1e-6;

enum class LinkFailure { ImpureSkeleton, DisconnectedLink, SmallGap, IsolatedVertexInLink };

const char* to_string(LinkFailure f) noexcept;

struct LinkReport {
  Face face;
  int n_link = 0;
  std::optional<double> lambda2;  // absent when the link has an isolated vertex or is empty
  bool passed = false;
  std::optional<LinkFailure> reason;
};

struct GarlandCertificate {
  int degree = 1;
  Verdict verdict = Verdict::Inconclusive;
  /// First failing face and why (by dimension, then lexicographically).
  std::optional<std::pair<Face, LinkFailure>> failing_witness;
  std::vector<LinkReport> links;  // one row per (degree-1)-face, lexicographic
};

/// Vanishing test for H^i(Δ(G); Q). Checks that the (i+1)-skeleton is pure
/// and that for every (i-1)-face σ the link graph (common neighbourhood of σ)
/// is nonempty, has no isolated vertex, is connected, and has
/// λ2 >= 1 - 1/(i+1) + kGarlandMargin. For i = 1 the faces σ are the vertices.
/// The link graph is exactly the 1-skeleton of the link in the
/// (i+1)-skeleton, which is all the spectral condition sees.
/// Certified implies β̃_i(Δ(G); Q) = 0. Throws ArgumentError if i < 1.
GarlandCertificate garland_certificate(const Graph& g, int i, double tol = 1e-9);

}  // namespace coedge
