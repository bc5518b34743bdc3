#include "coedge/homology.hpp"

#include <algorithm>

#include "coedge/errors.hpp"
#include "elimination.hpp"

namespace coedge {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

CoefficientField CoefficientField::prime(std::uint32_t p) {
  if (p >= (1U << 31) || !is_prime(p)) throw ArgumentError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  return CoefficientField(Kind::Prime, p);
}

CoefficientField CoefficientField::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.rfind("Fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.size() > 10 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ArgumentError("bad field '" + text + "'; expected Q or Fp:<prime>");
    const auto p = std::stoull(digits);
    if (p >= (1ULL << 31)) throw ArgumentError("modulus " + digits + " is not a prime below 2^31");
    return prime(static_cast<std::uint32_t>(p));
  }
  throw ArgumentError("bad field '" + text + "'; expected Q or Fp:<prime>");
}

std::string CoefficientField::to_string() const {
  return is_rationals() ? std::string("Q") : "Fp:" + std::to_string(modulus_);
}

BoundaryMatrix boundary_matrix(const FaceTable& faces, int k) {
  BoundaryMatrix m;
  m.k = k;
  if (k == 0) {
    m.rows = 1;
    m.cols = faces.count(0);
    for (std::uint32_t c = 0; c < m.cols; ++c) m.entries.push_back({0, c, 1});
    return m;
  }
  m.rows = faces.count(k - 1);
  m.cols = faces.count(k);
  m.entries.reserve(m.cols * static_cast<std::size_t>(k + 1));
  std::vector<int> facet(static_cast<std::size_t>(k));
  for (std::uint32_t c = 0; c < m.cols; ++c) {
    const auto f = faces.face(k, c);
    const std::size_t first = m.entries.size();
    for (int drop = 0; drop <= k; ++drop) {
      for (int t = 0, o = 0; t <= k; ++t)
        if (t != drop) facet[o++] = f[t];
      const auto r = faces.index_of(facet);
      if (!r) throw ArgumentError("face table is not closed under taking faces");
      m.entries.push_back({static_cast<std::uint32_t>(*r), c, static_cast<std::int8_t>(drop % 2 == 0 ? 1 : -1)});
    }
    std::sort(m.entries.begin() + static_cast<std::ptrdiff_t>(first), m.entries.end(),
              [](const auto& a, const auto& b) { return a.row < b.row; });
  }
  return m;
}

BoundaryMatrix boundary_matrix(const CliqueComplex& c, int k) {
  if (k < 0 || k > c.dim_cap())
    throw ArgumentError("boundary_matrix: k=" + std::to_string(k) + " outside [0, " + std::to_string(c.dim_cap()) + "]");
  return boundary_matrix(c.faces(), k);
}

namespace {

template <class V, class Convert>
std::vector<detail::SparseRow<V>> rows_of(const BoundaryMatrix& m, Convert&& conv) {
  std::vector<detail::SparseRow<V>> rows(m.rows);
  // entries are sorted by column, so each row receives increasing columns.
  for (const auto& e : m.entries) rows[e.row].emplace_back(e.col, conv(e.value));
  return rows;
}

std::size_t rank_rational(const BoundaryMatrix& m) {
  try {
    using Ar = detail::CheckedInt;
    auto rows = rows_of<Ar::Value>(m, [](std::int8_t v) { return static_cast<Ar::Value>(v); });
    return detail::markowitz_rank<Ar::Value>(
        std::move(rows), m.cols,
        [](const auto& t, const auto& p, Ar::Value pv, Ar::Value tv) { return detail::integer_combine<Ar>(t, p, pv, tv); },
        [](Ar::Value v) { return Ar::is_unit(v); });
  } catch (const detail::Overflow&) {
    using Ar = detail::BigInt;
    auto rows = rows_of<Ar::Value>(m, [](std::int8_t v) { return Ar::Value(static_cast<int>(v)); });
    return detail::markowitz_rank<Ar::Value>(
        std::move(rows), m.cols,
        [](const auto& t, const auto& p, const Ar::Value& pv, const Ar::Value& tv) {
          return detail::integer_combine<Ar>(t, p, pv, tv);
        },
        [](const Ar::Value& v) { return Ar::is_unit(v); });
  }
}

std::size_t rank_mod_p(const BoundaryMatrix& m, std::uint32_t p) {
  const detail::ModP ar{p};
  auto rows = rows_of<std::uint32_t>(m, [p](std::int8_t v) { return v > 0 ? 1U % p : (p - 1U % p) % p; });
  // Drop entries that vanish mod p (only possible for p = 1, excluded, but keep rows clean).
  for (auto& r : rows) std::erase_if(r, [](const auto& e) { return e.second == 0; });
  return detail::markowitz_rank<std::uint32_t>(
      std::move(rows), m.cols,
      [&](const auto& t, const auto& piv, std::uint32_t pv, std::uint32_t tv) { return ar.combine(t, piv, pv, tv); },
      [](std::uint32_t) { return true; });
}

}  // namespace

std::size_t rank_over_field(const BoundaryMatrix& m, const CoefficientField& field) {
  if (m.entries.empty()) return 0;
  return field.is_rationals() ? rank_rational(m) : rank_mod_p(m, field.modulus());
}

HomologyProfile reduced_betti(const FaceTable& faces, const CoefficientField& field, int lo, int hi) {
  if (lo < -1 || hi < lo) throw ArgumentError("reduced_betti: bad degree range");
  HomologyProfile out;
  out.field = field;
  out.lo = lo;
  out.betti.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  // rank of ∂_k for k = lo..hi+1; ∂_{-1} = 0 and ∂_0 is the augmentation.
  auto rank_of = [&](int k) -> std::size_t {
    if (k < 0) return 0;
    if (k == 0) return faces.count(0) > 0 ? 1 : 0;
    if (faces.count(k) == 0) return 0;
    return rank_over_field(boundary_matrix(faces, k), field);
  };
  std::size_t next_rank = rank_of(lo);
  for (int i = lo; i <= hi; ++i) {
    const std::size_t ri = next_rank;
    next_rank = rank_of(i + 1);
    const std::size_t chains = i < 0 ? 1 : faces.count(i);
    out.betti[static_cast<std::size_t>(i - lo)] = chains - ri - next_rank;
  }
  return out;
}

HomologyProfile reduced_betti(const CliqueComplex& c, const CoefficientField& field, int lo, int hi) {
  if (lo < -1 || hi > c.dim_cap()) throw ArgumentError("reduced_betti: degrees must lie in [-1, dim_cap]");
  if (c.truncated() && hi + 1 > c.dim_cap()) {
    const CliqueComplex wider = clique_complex(c.base(), hi + 1);
    return reduced_betti(wider.faces(), field, lo, hi);
  }
  return reduced_betti(c.faces(), field, lo, hi);
}

HomologyProfile reduced_betti(const Graph& g, const CoefficientField& field) {
  const CliqueComplex c = clique_complex(g);
  return reduced_betti(c, field, -1, std::max(0, c.dimension()));
}

}  // namespace coedge
