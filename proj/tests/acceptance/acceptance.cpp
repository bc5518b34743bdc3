// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero if any criterion fails. Arguments, if any, pick
// criteria by number.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coedge/algebra.hpp"
#include "coedge/cli.hpp"
#include "coedge/collapse.hpp"
#include "coedge/experiment.hpp"
#include "coedge/io.hpp"
#include "coedge/rng.hpp"
#include "coedge/spectral.hpp"
#include "oracles.hpp"

using namespace coedge;
namespace fs = std::filesystem;

namespace {

const CoefficientField Q = CoefficientField::rationals();
const CoefficientField F2 = CoefficientField::prime(2);

struct Outcome {
  bool pass;
  std::string detail;
};

Graph graph_from_bits(int n, std::uint32_t bits) {
  std::vector<Edge> edges;
  int t = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++t)
      if (bits >> t & 1U) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph sample(int n, double p, std::uint64_t seed) {
  RandomGraphSpec spec;
  spec.n = n;
  spec.p = p;
  spec.seed = seed;
  return sample_gnp(spec);
}

Graph sample_alpha(int n, double alpha, std::uint64_t seed) {
  RandomGraphSpec spec;
  spec.n = n;
  spec.alpha = alpha;
  spec.seed = seed;
  return sample_gnp(spec);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------- 1

// Checks one table against the three identities; returns false on a mismatch.
bool hochster_identities(const Graph& g) {
  const int n = g.n();
  const BettiTable t = hochster_betti_table(g, Q);
  if (n >= 2 && t.at(1, 2) != binomial(n, 2) - static_cast<std::uint64_t>(g.edge_count())) return false;
  std::vector<long long> euler(n + 1, 0);
  for (std::uint32_t s = 0; s < (1U << n); ++s) euler[std::popcount(s)] += oracle::reduced_euler(g, s);
  for (int j = 0; j <= n; ++j) {
    long long lhs = 0;
    for (int i = 0; i <= n; ++i) lhs += (i % 2 ? -1LL : 1LL) * static_cast<long long>(t.at(i, j));
    if (lhs != ((j - 1) % 2 ? -euler[j] : euler[j])) return false;
  }
  const Bounds via = pdim_via_kappa(g, Q).pdim;
  return via.exact() && via.lo == t.pdim();
}

Outcome criterion1() {
  int graphs = 0, bad = 0, oracle_checked = 0;
  for (int n = 0; n <= 5; ++n)
    for (std::uint32_t bits = 0; bits < (1U << (n * (n - 1) / 2)); ++bits) {
      const Graph g = graph_from_bits(n, bits);
      ++graphs;
      bool ok = hochster_identities(g);
      // Entry-by-entry comparison with the Smith-form oracle as well.
      const auto dense = oracle::hochster(g, 0);
      const BettiTable t = hochster_betti_table(g, Q);
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) ok = ok && t.at(i, j) == dense[i][j];
      ++oracle_checked;
      bad += !ok;
    }
  SplitMix64 rng(20240601);
  for (int t = 0; t < 200; ++t) {
    const int n = 6 + t % 4;
    ++graphs;
    bad += !hochster_identities(sample(n, 0.15 + 0.7 * rng.uniform(), rng.next()));
  }
  return {bad == 0, fmt("%d graphs (%d also against the Smith-form oracle), %d mismatches", graphs,
                        oracle_checked, bad)};
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  std::vector<std::string> failures;
  const auto expect = [&](const char* name, const BettiTable& t, std::map<std::pair<int, int>, std::uint64_t> want) {
    if (t.entries() != want) failures.emplace_back(name);
  };
  expect("empty3", hochster_betti_table(fixtures::empty(3), Q), {{{0, 0}, 1}, {{1, 2}, 3}, {{2, 3}, 2}});
  expect("C4", hochster_betti_table(fixtures::cycle(4), Q), {{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}});
  for (int n = 1; n <= 7; ++n)
    for (const auto& field : {Q, F2}) expect("K_n", hochster_betti_table(fixtures::complete(n), field), {{{0, 0}, 1}});
  for (const auto& field : {Q, F2})
    if (hochster_betti_table(fixtures::wheel(5), field).regularity() != 2) failures.emplace_back("W5 " + field.to_string());
  std::string detail = "empty3, C4, K_1..K_7, W5 over Q and F2";
  for (const auto& f : failures) detail += "; mismatch " + f;
  return {failures.empty(), detail};
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  const double alphas[] = {0.4, 0.6, 0.8};
  SplitMix64 rng(777);
  int core_empty = 0, certified = 0, violations = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 4 + t % 9;
    const Graph g = sample_alpha(n, alphas[t % 3], rng.next());
    const BettiTable tq = hochster_betti_table_reference(g, Q);
    const BettiTable tf = hochster_betti_table_reference(g, F2);
    for (int d = 0; d <= 2; ++d) {
      if (!malen_core(clique_complex(g, d + 1), d).core.empty()) continue;
      ++core_empty;
      // reg <= d+1 iff every induced subcomplex has vanishing homology above d.
      if (tq.regularity() > d + 1 || tf.regularity() > d + 1) ++violations;
    }
    const auto b = reduced_betti(g, Q);
    for (int i = 1; i <= 3; ++i) {
      if (n < 2) continue;
      if (garland_certificate(g, i).verdict != Verdict::Certified) continue;
      ++certified;
      if (b[i] != 0) ++violations;
    }
  }
  return {violations == 0,
          fmt("%d empty cores, %d Garland certificates, %d violations", core_empty, certified, violations)};
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
  SplitMix64 rng(4242);
  int literal = 0, reduced = 0, discrepancies = 0, nonempty = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 7;
    const Graph g = sample(n, 0.3 + 0.65 * rng.uniform(), rng.next());
    for (int d = 0; d <= 1; ++d) {
      const bool core = !malen_core(clique_complex(g, d + 1), d).core.empty();
      nonempty += core;
      bool found;
      if (auto by_facets = oracle::bad_subcomplex_by_facets(g, d, 16)) {
        found = *by_facets;
        ++literal;
      } else {
        found = oracle::bad_subcomplex_by_vertices(g, d);
        ++reduced;
      }
      discrepancies += found != core;
    }
  }
  return {discrepancies == 0, fmt("%d literal facet-subset searches, %d vertex-reduced searches, %d nonempty cores, "
                                  "%d discrepancies",
                                  literal, reduced, nonempty, discrepancies)};
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  auto c = ExperimentConfig::from_json(R"({"schema_version":1,"n":[18],"alpha":[0.7],"trials":50,"seed":1,
    "field":"Q","mode":"full","d":1,
    "properties":["reg_equals","pdim_equals","unique_extremal_at","krull_in"]})");
  const auto r = run_experiment(c);
  const auto& p = r.aggregates.at(0).properties;
  const double reg = p.at("reg_equals").frequency, pdim = p.at("pdim_equals").frequency,
               ext = p.at("unique_extremal_at").frequency, krull = p.at("krull_in").frequency;
  return {reg >= 0.90 && pdim >= 0.90 && ext >= 0.85,
          fmt("freq(reg=2) %.2f [>=0.90], freq(pdim=16) %.2f [>=0.90], freq(unique extremal (16,18)) %.2f [>=0.85], "
              "freq(krull in {3,4}) %.2f",
              reg, pdim, ext, krull)};
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  auto run = [](double alpha, int omega) {
    const std::string text = R"({"schema_version":1,"n":[200],"trials":100,"seed":6,"mode":"certified","alpha":[)" +
                             std::to_string(alpha) + R"(],"properties":["clique_number_is:)" + std::to_string(omega) +
                             "\"]}";
    const auto c = ExperimentConfig::from_json(text);
    return run_experiment(c).aggregates.at(0).properties.begin()->second.frequency;
  };
  const double a = run(0.8, 3), b = run(0.55, 4);
  return {a >= 0.90 && b >= 0.80,
          fmt("alpha 0.8: freq(omega=3) %.2f [>=0.90]; alpha 0.55: freq(omega=4) %.2f [>=0.80]", a, b)};
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  auto c = ExperimentConfig::from_json(R"({"schema_version":1,"n":[60],"alpha":[0.45],"trials":30,"seed":7,
    "mode":"certified","d":2,"properties":["homology_concentration"]})");
  const auto r = run_experiment(c);
  const auto& a = r.aggregates.at(0);
  const double freq = a.properties.at("homology_concentration").frequency;
  const double mean3 = a.mean_betti_above.value_or(1e9);
  return {freq >= 0.80 && mean3 <= 0.2,
          fmt("freq(concentrated in degree 2) %.2f [>=0.80], mean betti_3 %.3f [<=0.2], mean betti_1 %.1f, "
              "mean betti_2 %.1f",
              freq, mean3, a.mean_betti_below.value_or(-1), a.mean_betti_at.value_or(-1))};
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  auto c = ExperimentConfig::from_json(R"({"schema_version":1,"n":[20],"alpha":[0.27],"trials":20,"seed":8,
    "mode":"full","d":3,"properties":["row_argmax_increasing"]})");
  const auto r = run_experiment(c);
  const auto& s = r.aggregates.at(0).properties.at("row_argmax_increasing");
  return {s.frequency >= 0.80, fmt("row argmax strictly increasing in %d of %d trials (%.2f) [>=0.80]", s.holds,
                                   s.evaluated, s.frequency)};
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
  double worst = 0;
  for (int m = 3; m <= 10; ++m) worst = std::max(worst, std::abs(spectral_gap(fixtures::complete(m)) - m / (m - 1.0)));
  const auto s = laplacian_spectrum(fixtures::cycle(4)).eigenvalues;
  const double want[] = {0, 1, 1, 2};
  bool shape = s.size() == 4;
  for (std::size_t t = 0; shape && t < 4; ++t) worst = std::max(worst, std::abs(s[t] - want[t]));
  return {shape && worst <= 1e-8, fmt("max deviation %.3g [<=1e-8]", worst)};
}

// ---------------------------------------------------------------- 10

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"coedge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string experiment_outputs(const fs::path& config, const fs::path& dir, const std::string& threads) {
  fs::remove_all(dir);
  if (cli({"experiment", "--config", config.string(), "--out", dir.string(), "--threads", threads}).code != 0)
    return "failed";
  std::string all;
  for (const char* f : {"trials.csv", "aggregate.csv", "plotdata.csv", "staircase.csv"}) all += slurp(dir / f);
  all += cli({"plot-data", "--trials", (dir / "trials.csv").string()}).out;
  return all;
}

Outcome criterion10() {
  const fs::path dir = fs::temp_directory_path() / "coedge_acceptance";
  fs::create_directories(dir);
  const fs::path graph = dir / "g.txt";
  {
    std::ofstream(graph) << "7 11\n0 1\n0 2\n1 2\n1 3\n2 4\n3 4\n3 5\n4 5\n4 6\n5 6\n0 6\n";
  }
  const std::vector<std::vector<std::string>> commands = {
      {"sample", "--n", "40", "--alpha", "0.6", "--seed", "10"},
      {"sample", "--n", "14", "--p", "0.5", "--seed", "10", "--f-vector"},
      {"betti", "--n", "14", "--alpha", "0.4", "--seed", "10"},
      {"betti", "--n", "14", "--alpha", "0.4", "--seed", "10", "--normalized", "--field", "Fp:2"},
      {"betti", "--graph-file", graph.string()},
      {"invariants", "--n", "14", "--alpha", "0.5", "--seed", "10"},
      {"invariants", "--n", "40", "--alpha", "0.7", "--seed", "10", "--certified", "--d", "1"},
      {"kappa", "--n", "12", "--alpha", "0.5", "--seed", "10"},
      {"collapse", "--n", "16", "--alpha", "0.5", "--seed", "10", "--d", "1", "--trace", "--restarts", "3"},
      {"spectral", "--n", "16", "--p", "0.6", "--seed", "10", "--i", "1"},
  };
  int compared = 0, differing = 0;
  for (const auto& cmd : commands) {
    std::vector<std::string> runs;
    for (const char* threads : {"1", "2", "1", "3"}) {
      auto args = cmd;
      args.insert(args.end(), {"--threads", threads});
      const CliRun r = cli(args);
      runs.push_back(r.code == 0 ? r.out : "exit " + std::to_string(r.code));
    }
    ++compared;
    if (runs[0].rfind("exit", 0) == 0 || runs[0].empty()) ++differing;
    for (const auto& r : runs) differing += r != runs[0];
  }
  const fs::path config = dir / "config.json";
  {
    std::ofstream(config) << R"({"schema_version":1,"n":[9,11],"alpha":[0.5,0.7],"trials":5,"seed":10,)"
                             R"("properties":["reg_equals","pdim_equals","row_argmax_increasing"],"gamma":[0.5],)"
                             R"("spectral":true})";
  }
  const std::string e1 = experiment_outputs(config, dir / "a", "1");
  const std::string e2 = experiment_outputs(config, dir / "b", "2");
  const std::string e3 = experiment_outputs(config, dir / "c", "1");
  ++compared;
  differing += e1 == "failed" || e1 != e2 || e1 != e3;
  fs::remove_all(dir);
  return {differing == 0, fmt("%d commands rerun at 1, 2 and 3 workers, %d differences", compared, differing)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::atoi(argv[a]));
  struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 300, criterion1},  {2, 60, criterion2},    {3, 900, criterion3}, {4, 600, criterion4},
      {5, 1800, criterion5}, {6, 120, criterion6},   {7, 1200, criterion7}, {8, 5400, criterion8},
      {9, 60, criterion9},   {10, 600, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %d: %s %s (%.1fs of %.0fs budget%s)\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
