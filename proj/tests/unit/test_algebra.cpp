#include <catch_amalgamated.hpp>

#include <bit>

#include "coedge/algebra.hpp"
#include "coedge/errors.hpp"
#include "coedge/rng.hpp"
#include "oracles.hpp"

using namespace coedge;

namespace {

const CoefficientField Q = CoefficientField::rationals();

Graph random_graph(SplitMix64& rng, int n, double p) {
  RandomGraphSpec spec;
  spec.n = n;
  spec.p = p;
  spec.seed = rng.next();
  return sample_gnp(spec);
}

BettiTable from_dense(int n, const std::vector<std::vector<std::uint64_t>>& beta, CoefficientField field) {
  BettiTable t(n, field);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) t.add(i, j, beta[i][j]);
  return t;
}

/// Rows k = 0..3 of a published n = 20 table, columns i = 0..19.
BettiTable published_instance() {
  const std::vector<std::vector<std::uint64_t>> rows = {
      {1},
      {0, 106, 867, 3506, 8852, 15496, 20257, 20942, 17682, 12213, 6764, 2914, 938, 212, 30, 2},
      {0, 0, 175, 2472, 15558, 58439, 148003, 270285, 370495, 390104, 318911, 202556, 99092, 36628, 9890, 1839, 210,
       11},
      {0, 0, 0, 2, 30, 207, 871, 2498, 5170, 7975, 9334, 8348, 5686, 2903, 1075, 272, 42, 3},
  };
  BettiTable t(20, Q);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < static_cast<int>(rows[k].size()); ++i) t.add(i, i + k, rows[k][i]);
  return t;
}

}  // namespace

TEST_CASE("closed-form Betti tables") {
  const BettiTable e3 = hochster_betti_table(fixtures::empty(3), Q);
  CHECK(e3.entries() == std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 1}, {{1, 2}, 3}, {{2, 3}, 2}});

  const BettiTable c4 = hochster_betti_table(fixtures::cycle(4), Q);
  CHECK(c4.entries() == std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}});

  for (int n = 1; n <= 8; ++n)
    CHECK(hochster_betti_table(fixtures::complete(n), Q).entries() ==
          std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 1}});

  CHECK(hochster_betti_table(fixtures::wheel(5), Q).regularity() == 2);
  CHECK(hochster_betti_table(fixtures::wheel(5), CoefficientField::prime(2)).regularity() == 2);
  CHECK(hochster_betti_table(Graph(0), Q).entries() == std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 1}});
}

TEST_CASE("Hochster kernel matches the brute-force oracle") {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 80; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 9, 0.2 + 0.7 * rng.uniform());
    for (std::uint32_t p : {0U, 2U}) {
      const CoefficientField field = p ? CoefficientField::prime(p) : Q;
      const BettiTable expect = from_dense(g.n(), oracle::hochster(g, p), field);
      CHECK(hochster_betti_table(g, field) == expect);
      CHECK(hochster_betti_table_reference(g, field) == expect);
    }
  }
}

TEST_CASE("parallel and serial kernels agree") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 12 + trial % 3, 0.3 + 0.4 * rng.uniform());
    HochsterOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const BettiTable a = hochster_betti_table(g, Q, one);
    CHECK(a == hochster_betti_table(g, Q, many));
    CHECK(a == hochster_betti_table_reference(g, Q));
  }
}

TEST_CASE("exhaustive cap refusal") {
  RandomGraphSpec spec;
  spec.n = 23;
  spec.p = 0.3;
  const Graph g = sample_gnp(spec);
  CHECK_THROWS_AS(hochster_betti_table(g, Q), RefusalError);
  try {
    hochster_betti_table(g, Q);
  } catch (const RefusalError& e) {
    CHECK(std::string(e.what()).find("invariants --certified") != std::string::npos);
  }
  HochsterOptions wide;
  wide.exhaustive_cap = 64;
  CHECK_THROWS_AS(hochster_betti_table(Graph(64), Q, wide), RefusalError);
}

TEST_CASE("table identities on random graphs") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_graph(rng, 3 + trial % 10, 0.2 + 0.7 * rng.uniform());
    const int n = g.n();
    const BettiTable t = hochster_betti_table(g, Q);
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(1, 2) == binomial(n, 2) - static_cast<std::uint64_t>(g.edge_count()));
    const int dim = clique_number(g) - 1;
    for (const auto& [pos, v] : t.entries()) {
      const auto [i, j] = pos;
      CHECK(j >= i);
      CHECK(j <= n);
      if (pos != std::pair{0, 0}) {
        CHECK(j - i >= 1);
        CHECK(j - i - 1 <= dim);
      }
    }
    // Column alternating sums against reduced Euler characteristics.
    std::vector<long long> euler_by_size(n + 1, 0);
    for (std::uint32_t s = 0; s < (1U << n); ++s) euler_by_size[std::popcount(s)] += oracle::reduced_euler(g, s);
    for (int j = 0; j <= n; ++j) {
      long long lhs = 0;
      for (int i = 0; i <= n; ++i) lhs += (i % 2 ? -1LL : 1LL) * static_cast<long long>(t.at(i, j));
      CHECK(lhs == ((j - 1) % 2 ? -euler_by_size[j] : euler_by_size[j]));
    }
    const InvariantReport r = invariants_from_table(t);
    CHECK(r.krull == clique_number(g));
    CHECK(r.depth.lo + r.pdim.lo == n);
    CHECK(r.regularity.lo == t.regularity());
    for (const auto& [k, v] : r.rho) {
      CHECK(v >= Rational(0));
      CHECK(v <= Rational(1));
      if (k >= 1) CHECK(v < Rational(1));
    }
    CHECK(rho(t, t.regularity() + 1) == Rational(0));
    // Extremal positions form a nonempty antichain in the lower-right order.
    const auto ext = extremal_positions(t);
    CHECK_FALSE(ext.empty());
    for (const auto& a : ext)
      for (const auto& b : ext)
        if (a != b) CHECK_FALSE((b.first >= a.first && b.second - b.first >= a.second - a.first));
  }
}

TEST_CASE("invariants of fixtures") {
  const InvariantReport c4 = invariants_from_table(hochster_betti_table(fixtures::cycle(4), Q));
  CHECK(c4.regularity == Bounds{2, 2});
  CHECK(c4.pdim == Bounds{2, 2});
  CHECK(c4.depth == Bounds{2, 2});
  CHECK(c4.extremal == std::vector<std::pair<int, int>>{{2, 4}});
  CHECK(c4.rho.at(1) == Rational(1, 3));
  CHECK(c4.krull == 2);

  const InvariantReport k5 = invariants_from_table(hochster_betti_table(fixtures::complete(5), Q));
  CHECK(k5.regularity.lo == 0);
  CHECK(k5.pdim.lo == 0);
  CHECK(k5.depth.lo == 5);
  CHECK(k5.krull == 5);
  CHECK(k5.extremal == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(rho(hochster_betti_table(fixtures::complete(5), Q), 1) == Rational(0));
}

TEST_CASE("published n = 20 table") {
  const BettiTable t = published_instance();
  const InvariantReport r = invariants_from_table(t);
  CHECK(r.regularity.lo == 3);
  CHECK(r.pdim.lo == 17);
  CHECK(r.depth.lo == 3);
  CHECK(r.extremal == std::vector<std::pair<int, int>>{{17, 20}});
  CHECK(r.rho.at(1) == Rational(15, 18));
  const auto norm = normalized_betti_table(t);
  CHECK(norm.at({1, 2}) == Rational(106, 190));
  CHECK(std::abs(boost::rational_cast<double>(norm.at({1, 2})) - 0.56) < 0.005);
  CHECK(norm.at({17, 20}) == Rational(3));
  CHECK(norm.at({0, 0}) == Rational(1));
  CHECK(t.at(1, 2) == binomial(20, 2) - 84);
}

TEST_CASE("krull dimension from the Hilbert numerator") {
  CHECK(krull_dimension_from_table(hochster_betti_table(fixtures::octahedron(), Q)) == 3);
  CHECK(krull_dimension_from_table(hochster_betti_table(fixtures::empty(4), Q)) == 1);
}

TEST_CASE("kappa fixtures") {
  CHECK(kappa(fixtures::cycle(5), 0, Q) == KappaValue::exact(2));
  CHECK(kappa(fixtures::octahedron(), 0, Q) == KappaValue::exact(4));
  CHECK(kappa(fixtures::octahedron(), 1, Q) == KappaValue::exact(2));
  CHECK(kappa(fixtures::octahedron(), 2, Q) == KappaValue::exact(0));
  CHECK(kappa(fixtures::complete(5), 0, Q) == KappaValue::infinite());
  CHECK(kappa(fixtures::complete(5), 0, Q, 3) == KappaValue::above(3));
  CHECK(kappa(fixtures::complete(5), 0, Q, 3).to_string() == ">3");
  CHECK(kappa(fixtures::cycle(5), 0, Q).to_string() == "2");
  CHECK(KappaValue::infinite().to_string() == "inf");
  CHECK(kappa(fixtures::empty(3), 0, Q) == KappaValue::exact(0));
  CHECK_THROWS_AS(kappa(fixtures::cycle(5), 0, Q, 6), ArgumentError);
  CHECK_THROWS_AS(kappa(fixtures::cycle(5), -2, Q), ArgumentError);
}

TEST_CASE("pdim via kappa") {
  const auto oct = pdim_via_kappa(fixtures::octahedron(), Q);
  CHECK(oct.pdim == Bounds{3, 3});
  CHECK(pdim_via_kappa(fixtures::empty(3), Q).pdim == Bounds{2, 2});

  SplitMix64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 2 + trial % 8, 0.2 + 0.7 * rng.uniform());
    for (const auto& field : {Q, CoefficientField::prime(2)}) {
      const int pdim = hochster_betti_table(g, field).pdim();
      CHECK(pdim_via_kappa(g, field).pdim == Bounds{pdim, pdim});
      const auto capped = pdim_via_kappa(g, field, 1).pdim;
      CHECK(capped.lo <= pdim);
      CHECK(pdim <= capped.hi);
    }
  }
}

TEST_CASE("kappa^0 is vertex connectivity") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 8, 0.2 + 0.7 * rng.uniform());
    const auto conn = vertex_connectivity(g);
    const auto k0 = kappa(g, 0, Q);
    if (conn)
      CHECK(k0 == KappaValue::exact(*conn));
    else
      CHECK(k0 == KappaValue::infinite());
  }
}

TEST_CASE("Kahle connectivity certificate") {
  CHECK(kahle_connectivity_certificate(fixtures::complete(5), 1));
  CHECK_FALSE(kahle_connectivity_certificate(fixtures::cycle(5), 1));
  CHECK_FALSE(kahle_connectivity_certificate(fixtures::octahedron(), 1));
  CHECK_THROWS_AS(kahle_connectivity_certificate(fixtures::complete(4), 2), ArgumentError);
  CHECK_THROWS_AS(kahle_connectivity_certificate(fixtures::complete(4), 0), ArgumentError);

  SplitMix64 rng(8);
  int fired = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = random_graph(rng, 5 + trial % 7, 0.6 + 0.39 * rng.uniform());
    if (!kahle_connectivity_certificate(g, 1)) continue;
    ++fired;
    for (const auto& field : {Q, CoefficientField::prime(2)}) {
      const auto b = reduced_betti(g, field);
      CHECK(b[0] == 0);
      CHECK(b[1] == 0);
    }
  }
  CHECK(fired > 0);
}

TEST_CASE("certified invariants") {
  const InvariantReport k6 = certified_invariants(fixtures::complete(6), 1, Q);
  CHECK(k6.regularity == Bounds{0, 0});
  CHECK(k6.provenance == Provenance::Certified);

  const InvariantReport oct = certified_invariants(fixtures::octahedron(), 2, Q);
  CHECK(oct.regularity == Bounds{3, 3});
  CHECK(oct.pdim == Bounds{3, 3});
  CHECK(oct.extremal == std::vector<std::pair<int, int>>{{3, 6}});

  const InvariantReport c6 = certified_invariants(fixtures::cycle(6), 1, Q);
  CHECK(c6.regularity == Bounds{2, 2});
  CHECK(c6.pdim == Bounds{4, 4});

  SplitMix64 rng(10);
  int exact_both = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_graph(rng, 6 + trial % 9, 0.2 + 0.6 * rng.uniform());
    const InvariantReport full = invariants_from_table(hochster_betti_table(g, Q));
    for (int d = 0; d <= 2; ++d) {
      const InvariantReport cert = certified_invariants(g, d, Q);
      CHECK(cert.regularity.lo <= full.regularity.lo);
      CHECK(full.regularity.lo <= cert.regularity.hi);
      CHECK(cert.pdim.lo <= full.pdim.lo);
      CHECK(full.pdim.lo <= cert.pdim.hi);
      CHECK(cert.krull == full.krull);
      if (cert.regularity.exact() && cert.pdim.exact()) {
        ++exact_both;
        CHECK(cert.depth == full.depth);
        if (!cert.extremal.empty()) CHECK(cert.extremal == full.extremal);
      }
    }
  }
  CHECK(exact_both > 20);
}
