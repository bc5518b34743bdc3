#include "coedge/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <omp.h>

#include <json.hpp>

#include "coedge/collapse.hpp"
#include "coedge/complex.hpp"
#include "coedge/errors.hpp"
#include "coedge/rng.hpp"
#include "coedge/spectral.hpp"

namespace coedge {

namespace {

using json = nlohmann::json;

const std::string kCliquePrefix = "clique_number_is:";

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::optional<int> clique_target(const std::string& prop) {
  if (prop.rfind(kCliquePrefix, 0) != 0) return std::nullopt;
  const std::string digits = prop.substr(kCliquePrefix.size());
  if (digits.empty() || digits.size() > 4 || !std::all_of(digits.begin(), digits.end(), ::isdigit)) return std::nullopt;
  return std::stoi(digits);
}

}  // namespace

const std::vector<std::string>& known_properties() {
  static const std::vector<std::string> names = {
      "reg_equals",          "pdim_equals",          "krull_in",
      "unique_extremal_at",  "not_cohen_macaulay",   "row_argmax_increasing",
      "homology_concentration"};
  return names;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys = {"schema_version", "n",          "alpha",      "p",
                                             "trials",         "seed",       "field",      "mode",
                                             "d",              "properties", "gamma",      "spectral",
                                             "exhaustive_cap", "output_dir"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw ConfigError("unknown config key '" + k + "'");

  ExperimentConfig c;
  try {
    if (j.value("schema_version", 1) != 1) throw ConfigError("unsupported schema_version");
    if (!j.contains("n") || !j.contains("trials")) throw ConfigError("config needs \"n\" and \"trials\"");
    c.n = j.at("n").get<std::vector<int>>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<std::vector<double>>();
    if (j.contains("p")) c.p = j.at("p").get<std::vector<double>>();
    c.trials = j.at("trials").get<int>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.field = CoefficientField::parse(j.value("field", std::string("Q")));
    const std::string mode = j.value("mode", std::string("full"));
    if (mode == "full")
      c.mode = ExperimentMode::Full;
    else if (mode == "certified")
      c.mode = ExperimentMode::Certified;
    else
      throw ConfigError("mode must be \"full\" or \"certified\"");
    c.d = j.value("d", 1);
    if (j.contains("properties")) c.properties = j.at("properties").get<std::vector<std::string>>();
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<std::vector<double>>();
    c.spectral = j.value("spectral", false);
    c.exhaustive_cap = j.value("exhaustive_cap", 22);
    c.output_dir = j.value("output_dir", std::string());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (n.empty()) throw ConfigError("empty grid: no n values");
  if (alpha.empty() == p.empty()) throw ConfigError("give exactly one of alpha or p, nonempty");
  for (int v : n)
    if (v < 0) throw ConfigError("n must be nonnegative");
  for (double a : alpha)
    if (!(a > 0) || !std::isfinite(a)) throw ConfigError("alpha must be positive");
  for (double q : p)
    if (!(q >= 0 && q <= 1)) throw ConfigError("p must lie in [0, 1]");
  if (d < 0) throw ConfigError("d must be nonnegative");
  for (const auto& prop : properties)
    if (!clique_target(prop) &&
        std::find(known_properties().begin(), known_properties().end(), prop) == known_properties().end())
      throw ConfigError("unknown property '" + prop + "'");
  if (mode == ExperimentMode::Full)
    for (int v : n)
      if (v > exhaustive_cap)
        throw ConfigError("full mode needs n <= exhaustive_cap (" + std::to_string(exhaustive_cap) + "); got n = " +
                          std::to_string(v) + "; use mode \"certified\"");
}

std::vector<Cell> experiment_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (int n : config.n) {
    if (!config.alpha.empty())
      for (double a : config.alpha) cells.push_back({static_cast<int>(cells.size()), n, a, probability_from_alpha(n, a)});
    else
      for (double q : config.p) cells.push_back({static_cast<int>(cells.size()), n, std::nullopt, q});
  }
  return cells;
}

std::pair<double, double> wilson_interval(int holds, int n) {
  if (n <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double ph = static_cast<double>(holds) / n;
  const double denom = 1 + z * z / n;
  const double center = (ph + z * z / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(ph * (1 - ph) / n + z * z / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::vector<std::pair<int, int>> row_argmax(const BettiTable& t) {
  const auto norm = normalized_betti_table(t);
  std::map<int, std::pair<int, Rational>> best;  // k -> (j, value)
  for (const auto& [ij, v] : norm) {
    const int k = ij.second - ij.first;
    if (k < 1) continue;
    auto it = best.find(k);
    if (it == best.end() || v > it->second.second) best[k] = {ij.second, v};
  }
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, jv] : best) out.emplace_back(k, jv.first);
  return out;
}

std::optional<bool> bounds_equal(const Bounds& b, int target) {
  if (b.exact()) return b.lo == target;
  if (target < b.lo || target > b.hi) return false;
  return std::nullopt;
}

void evaluate(const ExperimentConfig& cfg, const Graph& g, TrialRecord& rec) {
  const int n = g.n();
  const int d = cfg.d;
  rec.edges = g.edge_count();
  rec.clique_number = clique_number(g);

  bool needs_report = false, needs_whole = cfg.properties.empty();
  for (const auto& prop : cfg.properties) {
    if (prop == "reg_equals" || prop == "pdim_equals" || prop == "unique_extremal_at" || prop == "not_cohen_macaulay")
      needs_report = true;
    if (prop != "krull_in" && !clique_target(prop)) needs_whole = true;
  }
  if (cfg.mode == ExperimentMode::Full) {
    HochsterOptions opt;
    opt.exhaustive_cap = cfg.exhaustive_cap;
    opt.threads = 1;
    rec.table = hochster_betti_table(g, cfg.field, opt);
    rec.report = invariants_from_table(*rec.table);
    rec.row_argmax = row_argmax(*rec.table);
    needs_whole = true;
  } else if (needs_report) {
    rec.report = certified_invariants(g, d, cfg.field);
  }

  std::optional<HomologyProfile> whole_q;
  if (needs_whole) {
    const HomologyProfile h = reduced_betti(g, cfg.field);
    rec.betti_below = h[d - 1];
    rec.betti_at = h[d];
    rec.betti_above = h[d + 1];
    whole_q = cfg.field.is_rationals() ? h : reduced_betti(g, CoefficientField::rationals());
  }
  if (cfg.spectral) {
    bool isolated = n == 0;
    for (int v = 0; v < n && !isolated; ++v) isolated = g.degree(v) == 0;
    if (!isolated) rec.lambda2 = spectral_gap(g);
  }

  for (const auto& prop : cfg.properties) {
    std::optional<bool> val;
    const InvariantReport* r = rec.report ? &*rec.report : nullptr;
    if (auto m = clique_target(prop)) {
      val = rec.clique_number == *m;
    } else if (prop == "krull_in") {
      val = rec.clique_number == 2 * d + 1 || rec.clique_number == 2 * d + 2;
    } else if (prop == "reg_equals" && r) {
      val = bounds_equal(r->regularity, d + 1);
    } else if (prop == "pdim_equals" && r) {
      val = bounds_equal(r->pdim, n - d - 1);
    } else if (prop == "unique_extremal_at" && r) {
      const std::vector<std::pair<int, int>> corner = {{n - d - 1, n}};
      if (r->provenance == Provenance::Exact || !r->extremal.empty())
        val = r->extremal == corner;
      else if (bounds_equal(r->regularity, d + 1) == false || bounds_equal(r->pdim, n - d - 1) == false)
        val = false;
    } else if (prop == "not_cohen_macaulay" && r) {
      if (r->depth.hi < r->krull)
        val = true;
      else if (r->depth.lo >= r->krull)
        val = false;
    } else if (prop == "row_argmax_increasing" && rec.table) {
      bool inc = true;
      for (std::size_t t = 1; t < rec.row_argmax.size(); ++t) inc = inc && rec.row_argmax[t].second > rec.row_argmax[t - 1].second;
      val = inc;
    } else if (prop == "homology_concentration" && whole_q) {
      bool ok = (*whole_q)[d] != 0;
      for (int q = whole_q->lo; q <= whole_q->hi(); ++q)
        if (q != d && (*whole_q)[q] != 0) ok = false;
      val = ok;
    }
    rec.predicates[prop] = val;
  }
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& config, const Cell& cell, int trial) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.cell = cell;
  rec.trial = trial;
  rec.seed = derive_trial_seed(config.seed, static_cast<std::uint64_t>(cell.id), static_cast<std::uint64_t>(trial));
  RandomGraphSpec spec;
  spec.n = cell.n;
  spec.p = cell.p;
  spec.seed = rec.seed;
  const Graph g = sample_gnp(spec);
  evaluate(config, g, rec);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

TrialRecord evaluate_graph(const ExperimentConfig& config, const Graph& g) {
  TrialRecord rec;
  rec.cell.n = g.n();
  evaluate(config, g, rec);
  return rec;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

CellAggregate aggregate_cell(const ExperimentConfig& cfg, const Cell& cell, const TrialRecord* first, std::size_t count) {
  CellAggregate a;
  a.cell = cell;
  a.trials = static_cast<int>(count);
  double edges = 0, omega = 0;
  double below = 0, at = 0, above = 0;
  int betti_n = 0;
  std::vector<double> gaps;
  for (std::size_t t = 0; t < count; ++t) {
    const TrialRecord& r = first[t];
    edges += r.edges;
    omega += r.clique_number;
    if (r.betti_at) {
      ++betti_n;
      below += static_cast<double>(*r.betti_below);
      at += static_cast<double>(*r.betti_at);
      above += static_cast<double>(*r.betti_above);
    }
    if (r.lambda2) gaps.push_back(*r.lambda2);
  }
  a.mean_edges = count ? edges / static_cast<double>(count) : 0;
  a.mean_clique_number = count ? omega / static_cast<double>(count) : 0;
  if (betti_n) {
    a.mean_betti_below = below / betti_n;
    a.mean_betti_at = at / betti_n;
    a.mean_betti_above = above / betti_n;
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) a.lambda2_quantiles.push_back(quantile(gaps, q));
  }
  for (const auto& prop : cfg.properties) {
    PropertyStats s;
    for (std::size_t t = 0; t < count; ++t) {
      const auto it = first[t].predicates.find(prop);
      if (it == first[t].predicates.end() || !it->second) continue;
      ++s.evaluated;
      if (*it->second) ++s.holds;
    }
    s.frequency = s.evaluated ? static_cast<double>(s.holds) / s.evaluated : 0.0;
    std::tie(s.ci_lo, s.ci_hi) = wilson_interval(s.holds, s.evaluated);
    a.properties[prop] = s;
  }
  return a;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Cell> cells = experiment_cells(config);
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  ExperimentResult result;
  result.records.resize(cells.size() * trials);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const auto total = static_cast<std::int64_t>(result.records.size());

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t task = 0; task < total; ++task) {
    try {
      const Cell& cell = cells[static_cast<std::size_t>(task) / trials];
      result.records[static_cast<std::size_t>(task)] =
          run_trial(config, cell, static_cast<int>(static_cast<std::size_t>(task) % trials));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const Cell& cell : cells)
    result.aggregates.push_back(aggregate_cell(config, cell, &result.records[cell.id * trials], trials));
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

namespace {

std::string opt_u(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_d(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

std::string alpha_str(const Cell& c) { return c.alpha ? fmt(*c.alpha) : ""; }

std::string serialize_table(const BettiTable& t) {
  std::string s;
  for (const auto& [ij, v] : t.entries()) {
    if (!s.empty()) s += ';';
    s += std::to_string(ij.first) + ':' + std::to_string(ij.second) + ':' + std::to_string(v);
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

void plot_rows(int cell, int trial, int n, const std::map<std::pair<int, int>, std::uint64_t>& entries,
               std::ostream& out) {
  for (const auto& [ij, v] : entries) {
    const double value = static_cast<double>(v) / static_cast<double>(binomial(n, ij.second));
    out << cell << ',' << trial << ',' << ij.second - ij.first << ',' << ij.first << ',' << fmt6(value) << '\n';
  }
}

}  // namespace

void write_trials_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out) {
  out << "cell,n,alpha,p,trial,seed,edges,clique_number,reg_lo,reg_hi,pdim_lo,pdim_hi,depth_lo,depth_hi,krull,"
         "extremal,betti_d_minus_1,betti_d,betti_d_plus_1,lambda2,row_argmax";
  for (const auto& prop : config.properties) out << ',' << prop;
  out << ",betti_table\n";
  for (const auto& rec : r.records) {
    out << rec.cell.id << ',' << rec.cell.n << ',' << alpha_str(rec.cell) << ',' << fmt(rec.cell.p) << ','
        << rec.trial << ',' << rec.seed << ',' << rec.edges << ',' << rec.clique_number;
    if (rec.report) {
      const auto& rp = *rec.report;
      out << ',' << rp.regularity.lo << ',' << rp.regularity.hi << ',' << rp.pdim.lo << ',' << rp.pdim.hi << ','
          << rp.depth.lo << ',' << rp.depth.hi << ',' << rp.krull << ',';
      for (std::size_t t = 0; t < rp.extremal.size(); ++t)
        out << (t ? ";" : "") << rp.extremal[t].first << ':' << rp.extremal[t].second;
    } else {
      out << ",,,,,,,,";
    }
    out << ',' << opt_u(rec.betti_below) << ',' << opt_u(rec.betti_at) << ',' << opt_u(rec.betti_above) << ','
        << opt_d(rec.lambda2) << ',';
    for (std::size_t t = 0; t < rec.row_argmax.size(); ++t)
      out << (t ? ";" : "") << rec.row_argmax[t].first << ':' << rec.row_argmax[t].second;
    for (const auto& prop : config.properties) {
      const auto it = rec.predicates.find(prop);
      out << ',' << (it == rec.predicates.end() || !it->second ? "NA" : (*it->second ? "1" : "0"));
    }
    out << ',' << (rec.table ? serialize_table(*rec.table) : "") << '\n';
  }
}

void write_aggregate_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out) {
  out << "cell,n,alpha,p,trials,mean_edges,mean_clique_number,mean_betti_d_minus_1,mean_betti_d,mean_betti_d_plus_1,"
         "lambda2_min,lambda2_q25,lambda2_median,lambda2_q75,lambda2_max";
  for (const auto& prop : config.properties)
    out << ',' << prop << "_evaluated," << prop << "_holds," << prop << "_freq," << prop << "_ci_lo," << prop
        << "_ci_hi";
  out << '\n';
  for (const auto& a : r.aggregates) {
    out << a.cell.id << ',' << a.cell.n << ',' << alpha_str(a.cell) << ',' << fmt(a.cell.p) << ',' << a.trials << ','
        << fmt(a.mean_edges) << ',' << fmt(a.mean_clique_number) << ',' << opt_d(a.mean_betti_below) << ','
        << opt_d(a.mean_betti_at) << ',' << opt_d(a.mean_betti_above);
    for (std::size_t q = 0; q < 5; ++q) out << ',' << (q < a.lambda2_quantiles.size() ? fmt(a.lambda2_quantiles[q]) : "");
    for (const auto& prop : config.properties) {
      const PropertyStats& s = a.properties.at(prop);
      out << ',' << s.evaluated << ',' << s.holds << ',' << fmt(s.frequency) << ',' << fmt(s.ci_lo) << ','
          << fmt(s.ci_hi);
    }
    out << '\n';
  }
}

void write_plotdata_csv(const ExperimentResult& r, std::ostream& out) {
  out << "cell,trial,k,i,value\n";
  for (const auto& rec : r.records)
    if (rec.table) plot_rows(rec.cell.id, rec.trial, rec.table->n(), rec.table->entries(), out);
}

void write_staircase_csv(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out) {
  out << "cell,trial,gamma,convention,k,i,j,value\n";
  for (const auto& rec : r.records) {
    if (!rec.table) continue;
    const BettiTable& t = *rec.table;
    const int n = t.n();
    for (double gamma : config.gamma) {
      // Guard against n^γ landing a hair above an integer.
      const int base = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), gamma) - 1e-9));
      for (int k = 1; k <= t.regularity(); ++k)
        for (int conv = 0; conv < 2; ++conv) {
          const int i = conv == 0 ? base : base - k;
          const int j = i + k;
          if (i < 0 || j > n) continue;
          const double value = static_cast<double>(t.at(i, j)) / static_cast<double>(binomial(n, j));
          out << rec.cell.id << ',' << rec.trial << ',' << fmt(gamma) << ',' << (conv == 0 ? "statement" : "proof")
              << ',' << k << ',' << i << ',' << j << ',' << fmt6(value) << '\n';
        }
    }
  }
}

void write_run_meta(const ExperimentResult& r, const ExperimentConfig& config, std::ostream& out) {
  json j;
  j["schema_version"] = 1;
  j["threads"] = config.threads > 0 ? config.threads : omp_get_max_threads();
  j["wall_seconds"] = r.wall_seconds;
  json per = json::array();
  for (const auto& rec : r.records) per.push_back({{"cell", rec.cell.id}, {"trial", rec.trial}, {"wall_seconds", rec.wall_seconds}});
  j["trials"] = per;
  out << j.dump(2) << '\n';
}

void write_experiment_outputs(const ExperimentResult& r, const ExperimentConfig& config, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  auto open = [&](const char* name) {
    std::ofstream f(base / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (base / name).string());
    return f;
  };
  {
    auto f = open("trials.csv");
    write_trials_csv(r, config, f);
  }
  {
    auto f = open("aggregate.csv");
    write_aggregate_csv(r, config, f);
  }
  {
    auto f = open("plotdata.csv");
    write_plotdata_csv(r, f);
  }
  {
    auto f = open("staircase.csv");
    write_staircase_csv(r, config, f);
  }
  {
    auto f = open("run_meta.json");
    write_run_meta(r, config, f);
  }
}

void plot_data_from_trials(std::istream& in, std::ostream& out) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trials file", 1);
  const auto header = split(line, ',');
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("missing column '" + name + "'", 1);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_cell = column("cell"), c_trial = column("trial"), c_n = column("n"),
                    c_table = column("betti_table");
  out << "cell,trial,k,i,value\n";
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw ParseError("expected " + std::to_string(header.size()) + " fields", lineno);
    try {
      const int n = std::stoi(fields[c_n]);
      std::map<std::pair<int, int>, std::uint64_t> entries;
      if (!fields[c_table].empty())
        for (const auto& e : split(fields[c_table], ';')) {
          const auto parts = split(e, ':');
          if (parts.size() != 3) throw ParseError("bad betti_table entry '" + e + "'", lineno);
          entries[{std::stoi(parts[0]), std::stoi(parts[1])}] = std::stoull(parts[2]);
        }
      plot_rows(std::stoi(fields[c_cell]), std::stoi(fields[c_trial]), n, entries, out);
    } catch (const std::logic_error&) {
      throw ParseError("malformed number", lineno);
    }
  }
}

}  // namespace coedge
