#include "coedge/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coedge/algebra.hpp"
#include "coedge/collapse.hpp"
#include "coedge/complex.hpp"
#include "coedge/errors.hpp"
#include "coedge/experiment.hpp"
#include "coedge/io.hpp"
#include "coedge/spectral.hpp"

namespace coedge {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string field = "Q";
  std::string out;
  int threads = 0;
  std::string graph_file;
  std::optional<int> n;
  std::optional<double> alpha;
  std::optional<double> p;
  std::optional<int> cap;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed for sampling");
  sub->add_option("--field", c.field, "Coefficient field: Q or Fp:<prime>");
  sub->add_option("--out", c.out, "Write data here instead of standard output");
  sub->add_option("--threads", c.threads, "Worker threads (0: OpenMP default)");
  sub->add_option("--graph-file", c.graph_file, "Edge-list file instead of sampling");
  sub->add_option("--n", c.n, "Vertex count for sampling");
  sub->add_option("--alpha", c.alpha, "Edge probability n^-alpha");
  sub->add_option("--p", c.p, "Edge probability");
  sub->add_option("--cap", c.cap, "Search or enumeration cap");
}

CoefficientField parse_field(const std::string& text) {
  try {
    return CoefficientField::parse(text);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

Graph load_graph(const Common& c) {
  const bool sampling = c.n || c.alpha || c.p;
  if (!c.graph_file.empty()) {
    if (sampling) throw UsageError("--graph-file cannot be combined with --n/--alpha/--p");
    return read_graph_file(c.graph_file);
  }
  if (!c.n) throw UsageError("give --graph-file or --n with one of --alpha/--p");
  if (c.alpha.has_value() == c.p.has_value()) throw UsageError("give exactly one of --alpha and --p");
  if (*c.n < 0) throw UsageError("--n must be nonnegative");
  RandomGraphSpec spec;
  spec.n = *c.n;
  spec.seed = c.seed;
  if (c.alpha) {
    if (!(*c.alpha > 0)) throw UsageError("--alpha must be positive");
    spec.alpha = *c.alpha;
  } else {
    if (!(*c.p >= 0 && *c.p <= 1)) throw UsageError("--p must lie in [0, 1]");
    spec.p = *c.p;
  }
  return sample_gnp(spec);
}

/// Suggested d for the regime 1/(d+1) < alpha < 1/d.
std::string suggested_d(const Common& c) {
  if (c.alpha && *c.alpha > 0 && *c.alpha < 1) {
    const double inv = 1.0 / *c.alpha;
    if (inv != std::floor(inv)) return std::to_string(static_cast<int>(std::floor(inv)));
  }
  return "<d>";
}

void check_cap(const Graph& g, const Common& c) {
  const int cap = c.cap.value_or(22);
  if (g.n() > cap)
    throw RefusalError("n = " + std::to_string(g.n()) + " exceeds the exhaustive cap of " + std::to_string(cap) +
                       "; run `invariants --certified --d " + suggested_d(c) + "` for certificate-based bounds");
}

/// Sends data to the --out file when given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

nlohmann::ordered_json faces_json(const std::vector<Face>& faces) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : faces) arr.push_back(f);
  return arr;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Betti tables and certificates for coedge ideals of random graphs", "coedge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  bool want_f_vector = false, normalized = false, certified = false, trace = false;
  std::optional<int> d, degree;
  int restarts = 0;
  std::string config_path, trials_path;

  auto* sample = app.add_subcommand("sample", "Sample G(n, p) and print its edge list");
  add_common(sample, c);
  sample->add_flag("--f-vector", want_f_vector, "Print the f-vector of the clique complex instead");

  auto* betti = app.add_subcommand("betti", "Betti table via Hochster's formula (CSV)");
  add_common(betti, c);
  betti->add_flag("--normalized", normalized, "Divide entries by C(n, j)");

  auto* invariants = app.add_subcommand("invariants", "Invariant report (JSON)");
  add_common(invariants, c);
  invariants->add_flag("--certified", certified, "Use certificates instead of the full table");
  invariants->add_option("--d", d, "Target dimension for certificates");

  auto* kappa_cmd = app.add_subcommand("kappa", "Cohomological vertex connectivities and pdim (JSON)");
  add_common(kappa_cmd, c);
  kappa_cmd->add_option("--i", degree, "Only this degree");

  auto* collapse = app.add_subcommand("collapse", "Collapse and peeling certificates (JSON)");
  add_common(collapse, c);
  collapse->add_option("--d", d, "Target dimension")->required();
  collapse->add_flag("--trace", trace, "Include the collapse trace");
  collapse->add_option("--restarts", restarts, "Seeded random restarts for greedy collapse");

  auto* spectral = app.add_subcommand("spectral", "Garland link spectral gaps (CSV)");
  add_common(spectral, c);
  spectral->add_option("--i", degree, "Cohomological degree (default 1)");

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo sweep from a JSON config");
  experiment->add_option("--config", config_path, "Config file")->required();
  experiment->add_option("--out", c.out, "Output directory (overrides output_dir)");
  experiment->add_option("--threads", c.threads, "Worker threads");

  auto* plot = app.add_subcommand("plot-data", "Normalized Betti triples from a trials.csv");
  plot->add_option("--trials", trials_path, "trials.csv from an experiment run")->required();
  plot->add_option("--out", c.out, "Write data here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "coedge: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c.threads < 0) throw UsageError("--threads must be nonnegative");
    if (*sample) {
      const Graph g = load_graph(c);
      Sink sink(c.out, out);
      if (want_f_vector)
        write_f_vector_csv(f_vector(clique_complex(g)), *sink);
      else
        write_graph(g, *sink);
    } else if (*betti) {
      const CoefficientField field = parse_field(c.field);
      const Graph g = load_graph(c);
      check_cap(g, c);
      HochsterOptions opt;
      opt.exhaustive_cap = c.cap.value_or(22);
      opt.threads = c.threads;
      const BettiTable t = hochster_betti_table(g, field, opt);
      Sink sink(c.out, out);
      if (normalized)
        write_normalized_betti_csv(t, *sink);
      else
        write_betti_csv(t, *sink);
    } else if (*invariants) {
      const CoefficientField field = parse_field(c.field);
      if (certified && !d) throw UsageError("--certified needs --d");
      if (!certified && d) throw UsageError("--d applies only with --certified");
      const Graph g = load_graph(c);
      InvariantReport r;
      if (certified) {
        if (*d < 0) throw UsageError("--d must be nonnegative");
        r = certified_invariants(g, *d, field);
      } else {
        check_cap(g, c);
        HochsterOptions opt;
        opt.exhaustive_cap = c.cap.value_or(22);
        opt.threads = c.threads;
        r = invariants_from_table(hochster_betti_table(g, field, opt));
      }
      Sink sink(c.out, out);
      *sink << report_json(r) << '\n';
    } else if (*kappa_cmd) {
      const CoefficientField field = parse_field(c.field);
      const Graph g = load_graph(c);
      if (c.cap && (*c.cap < 0 || *c.cap > g.n())) throw UsageError("--cap must lie in [0, n]");
      nlohmann::ordered_json j;
      j["field"] = field.to_string();
      j["n"] = g.n();
      nlohmann::ordered_json ks = nlohmann::ordered_json::object();
      if (degree) {
        if (*degree < -1) throw UsageError("--i must be at least -1");
        ks[std::to_string(*degree)] = kappa(g, *degree, field, c.cap).to_string();
      } else {
        const PdimEstimate est = pdim_via_kappa(g, field, c.cap);
        for (std::size_t i = 0; i < est.kappas.size(); ++i) ks[std::to_string(i)] = est.kappas[i].to_string();
        j["pdim"] = est.pdim.exact() ? nlohmann::ordered_json(est.pdim.lo)
                                     : nlohmann::ordered_json{{"lo", est.pdim.lo}, {"hi", est.pdim.hi}};
      }
      j["kappa"] = ks;
      Sink sink(c.out, out);
      *sink << j.dump(2) << '\n';
    } else if (*collapse) {
      if (*d < 0) throw UsageError("--d must be nonnegative");
      if (restarts < 0) throw UsageError("--restarts must be nonnegative");
      const Graph g = load_graph(c);
      const CliqueComplex cx = clique_complex(g, std::max(*d + 1, std::max(0, clique_number(g) - 1)));
      const CollapseCertificate core = malen_core(cx, *d);
      const CollapsePolicy policy =
          restarts > 0 ? CollapsePolicy::random_restarts(c.seed, restarts) : CollapsePolicy::highest_dim_first();
      const CollapseCertificate greedy = greedy_collapse_to_dim(cx, *d, policy);
      nlohmann::ordered_json j;
      j["d"] = *d;
      j["regularity_upper_certified"] = core.core.empty();
      j["malen_core"] = {{"verdict", to_string(core.verdict)}, {"core", faces_json(core.core)}};
      nlohmann::ordered_json gj;
      gj["verdict"] = to_string(greedy.verdict);
      if (trace) {
        auto steps = nlohmann::ordered_json::array();
        for (const auto& s : greedy.trace) steps.push_back({{"free_face", s.free_face}, {"coface", s.coface}});
        gj["trace"] = steps;
      }
      j["greedy"] = gj;
      Sink sink(c.out, out);
      *sink << j.dump(2) << '\n';
    } else if (*spectral) {
      const int i = degree.value_or(1);
      if (i < 1) throw UsageError("--i must be at least 1");
      const Graph g = load_graph(c);
      const GarlandCertificate cert = garland_certificate(g, i);
      Sink sink(c.out, out);
      write_garland_csv(cert, *sink);
      err << "garland degree " << i << ": " << to_string(cert.verdict);
      if (cert.failing_witness) {
        err << " (";
        for (std::size_t t = 0; t < cert.failing_witness->first.size(); ++t)
          err << (t ? " " : "") << cert.failing_witness->first[t];
        err << ": " << to_string(cert.failing_witness->second) << ")";
      }
      err << '\n';
    } else if (*experiment) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config '" + config_path + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      ExperimentConfig config = ExperimentConfig::from_json(buf.str());
      config.threads = c.threads;
      if (!c.out.empty()) config.output_dir = c.out;
      if (config.output_dir.empty()) throw UsageError("no output directory: set output_dir or pass --out");
      const ExperimentResult r = run_experiment(config);
      write_experiment_outputs(r, config, config.output_dir);
      err << "wrote " << r.records.size() << " trials to " << config.output_dir << '\n';
    } else if (*plot) {
      std::ifstream f(trials_path);
      if (!f) throw std::runtime_error("cannot open '" + trials_path + "'");
      Sink sink(c.out, out);
      plot_data_from_trials(f, *sink);
    }
  } catch (const UsageError& e) {
    err << "coedge: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "coedge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "coedge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace coedge
