#include <algorithm>
#include <bit>
#include <string>
#include <vector>

#include <omp.h>

#include "coedge/algebra.hpp"
#include "coedge/errors.hpp"
#include "subset_kernel.hpp"

namespace coedge {

BettiTable hochster_betti_table(const Graph& g, const CoefficientField& field, const HochsterOptions& options) {
  const int n = g.n();
  const int cap = std::min(options.exhaustive_cap, 63);
  if (n > cap)
    throw RefusalError("n = " + std::to_string(n) + " exceeds the exhaustive cap of " + std::to_string(cap) +
                       " for Hochster enumeration; use `invariants --certified --d <d>` for certificate-based bounds");

  const std::size_t width = static_cast<std::size_t>(n) + 1;
  std::vector<std::uint64_t> total(width * width, 0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

#pragma omp parallel num_threads(threads)
  {
    detail::SubsetHomology kernel(g, field);
    std::vector<std::uint64_t> local(width * width, 0);
    std::vector<std::uint64_t> betti;
#pragma omp for schedule(dynamic, 1024) nowait
    for (std::uint64_t s = 0; s < subsets; ++s) {
      kernel.reduced(s, betti);
      const int j = std::popcount(s);
      for (std::size_t idx = 0; idx < betti.size(); ++idx) {
        if (!betti[idx]) continue;
        const int q = static_cast<int>(idx) - 1;
        const int i = j - q - 1;
        local[static_cast<std::size_t>(i) * width + j] += betti[idx];
      }
    }
#pragma omp critical
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += local[k];
  }

  BettiTable table(n, field);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) table.add(i, j, total[static_cast<std::size_t>(i) * width + j]);
  return table;
}

BettiTable hochster_betti_table_reference(const Graph& g, const CoefficientField& field) {
  const int n = g.n();
  if (n > 30) throw RefusalError("reference Hochster enumeration is limited to 30 vertices");
  BettiTable table(n, field);
  std::vector<int> verts;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    verts.clear();
    for (int v = 0; v < n; ++v)
      if (s >> v & 1U) verts.push_back(v);
    const HomologyProfile h = reduced_betti(induced_subgraph(g, verts), field);
    const int j = static_cast<int>(verts.size());
    for (int q = h.lo; q <= h.hi(); ++q) table.add(j - q - 1, j, h[q]);
  }
  return table;
}

}  // namespace coedge
