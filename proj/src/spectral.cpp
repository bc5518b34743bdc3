#include "coedge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "coedge/complex.hpp"
#include "coedge/errors.hpp"

namespace coedge {

const char* to_string(LinkFailure f) noexcept {
  switch (f) {
    case LinkFailure::ImpureSkeleton: return "impure_skeleton";
    case LinkFailure::DisconnectedLink: return "disconnected_link";
    case LinkFailure::SmallGap: return "small_gap";
    case LinkFailure::IsolatedVertexInLink: return "isolated_vertex_in_link";
  }
  return "?";
}

SpectralData normalized_laplacian(const Graph& g) {
  const int n = g.n();
  std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d == 0) throw PreconditionError("normalized Laplacian undefined: vertex " + std::to_string(v) + " is isolated");
    inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  SpectralData s;
  s.n = n;
  s.matrix.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 0; u < n; ++u) {
    s.matrix[static_cast<std::size_t>(u) * n + u] = 1.0;
    for (int v : g.neighbors(u)) s.matrix[static_cast<std::size_t>(u) * n + v] = -inv_sqrt[u] * inv_sqrt[v];
  }
  return s;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form.
// On return d is the diagonal and e[i] the entry (i+1, i); e[n-1] = 0.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
  auto A = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  std::vector<double> v(static_cast<std::size_t>(n)), p(static_cast<std::size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (int r = k + 1; r < n; ++r) norm = std::hypot(norm, A(r, k));
    if (norm == 0.0) continue;
    const double alpha = A(k + 1, k) > 0 ? -norm : norm;
    for (int r = k + 1; r < n; ++r) v[r] = A(r, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (int r = k + 1; r < n; ++r) vnorm = std::hypot(vnorm, v[r]);
    if (vnorm == 0.0) continue;
    for (int r = k + 1; r < n; ++r) v[r] /= vnorm;

    // A <- H A H on the trailing block, H = I - 2 v v^T.
    double kk = 0.0;
    for (int r = k + 1; r < n; ++r) {
      double s = 0.0;
      for (int c = k + 1; c < n; ++c) s += A(r, c) * v[c];
      p[r] = s;
      kk += v[r] * s;
    }
    for (int r = k + 1; r < n; ++r) p[r] -= kk * v[r];
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c) A(r, c) -= 2.0 * (v[r] * p[c] + p[r] * v[c]);
    A(k + 1, k) = A(k, k + 1) = alpha;
    for (int r = k + 2; r < n; ++r) A(r, k) = A(k, r) = 0.0;
  }
  d.resize(static_cast<std::size_t>(n));
  e.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) d[i] = A(i, i);
  for (int i = 0; i + 1 < n; ++i) e[i] = A(i + 1, i);
}

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (int i = m - 1; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (n == 0) return {};
  std::vector<double> d, e;
  tridiagonalize(a, n, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

SpectralData laplacian_spectrum(const Graph& g, double tol) {
  SpectralData s = normalized_laplacian(g);
  s.tolerance = tol;
  s.eigenvalues = symmetric_eigenvalues(s.matrix, s.n);
  s.gap = s.n >= 2 ? s.eigenvalues[1] : 0.0;
  return s;
}

double spectral_gap(const Graph& g, double tol) {
  if (g.n() == 0) throw PreconditionError("spectral gap of the empty graph is undefined");
  return laplacian_spectrum(g, tol).gap;
}

GarlandCertificate garland_certificate(const Graph& g, int i, double tol) {
  if (i < 1) throw ArgumentError("garland_certificate: degree must be at least 1");
  GarlandCertificate cert;
  cert.degree = i;
  const CliqueComplex c = clique_complex(g, i + 1);
  if (auto bad = first_uncovered_face(c, i + 1)) cert.failing_witness.emplace(std::move(*bad), LinkFailure::ImpureSkeleton);

  const double threshold = 1.0 - 1.0 / (i + 1) + kGarlandMargin;
  const FaceTable& faces = c.faces();
  for (std::size_t t = 0; t < faces.count(i - 1); ++t) {
    const auto sigma = faces.face(i - 1, t);
    LinkReport row;
    row.face.assign(sigma.begin(), sigma.end());
    const Graph link = link_graph(g, sigma);
    row.n_link = link.n();
    bool isolated = false;
    for (int v = 0; v < link.n() && !isolated; ++v) isolated = link.degree(v) == 0;
    if (link.n() == 0) {
      row.reason = LinkFailure::DisconnectedLink;
    } else if (isolated) {
      row.reason = LinkFailure::IsolatedVertexInLink;
    } else {
      row.lambda2 = spectral_gap(link, tol);
      if (!is_connected(link))
        row.reason = LinkFailure::DisconnectedLink;
      else if (*row.lambda2 < threshold)
        row.reason = LinkFailure::SmallGap;
    }
    row.passed = !row.reason;
    if (row.reason && !cert.failing_witness) cert.failing_witness.emplace(row.face, *row.reason);
    cert.links.push_back(std::move(row));
  }
  cert.verdict = cert.failing_witness ? Verdict::Inconclusive : Verdict::Certified;
  return cert;
}

}  // namespace coedge
