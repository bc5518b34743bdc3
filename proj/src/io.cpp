#include "coedge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coedge/errors.hpp"

namespace coedge {

namespace {

/// Reads exactly `count` integers from a line; false on anything else.
bool parse_ints(const std::string& line, long long* vals, int count) {
  std::istringstream in(line);
  for (int t = 0; t < count; ++t)
    if (!(in >> vals[t])) return false;
  std::string rest;
  return !(in >> rest);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long head[2];
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing header \"n m\"", lineno + 1);
    ++lineno;
    if (!blank(line)) break;
  }
  if (!parse_ints(line, head, 2) || head[0] < 0 || head[1] < 0)
    throw ParseError("header must be two nonnegative integers \"n m\"", lineno);
  const long long n = head[0], m = head[1];
  if (n > 1'000'000) throw ParseError("vertex count too large", lineno);
  if (m > n * (n - 1) / 2) throw ParseError("more edges than a simple graph on n vertices allows", lineno);

  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    long long uv[2];
    if (!parse_ints(line, uv, 2)) throw ParseError("expected \"u v\"", lineno);
    if (uv[0] < 0 || uv[0] >= n || uv[1] < 0 || uv[1] >= n)
      throw ParseError("endpoint out of range [0, " + std::to_string(n) + ")", lineno);
    if (uv[0] == uv[1]) throw ParseError("loop at vertex " + std::to_string(uv[0]), lineno);
    Edge e{static_cast<int>(std::min(uv[0], uv[1])), static_cast<int>(std::max(uv[0], uv[1]))};
    if (!seen.insert(e).second)
      throw ParseError("duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second), lineno);
    if (static_cast<long long>(edges.size()) == m) throw ParseError("more edge lines than the header's m", lineno);
    edges.push_back(e);
  }
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("header promises " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                     lineno + 1);
  std::sort(edges.begin(), edges.end());
  return Graph(static_cast<int>(n), edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open graph file '" + path + "'");
  return read_graph(f);
}

void write_graph(const Graph& g, std::ostream& out) {
  const auto edges = g.edges();
  out << g.n() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

namespace {

template <class Cell>
void write_box(const BettiTable& b, std::ostream& out, Cell&& cell) {
  const int reg = b.regularity(), pdim = b.pdim();
  out << "k\\i";
  for (int i = 0; i <= pdim; ++i) out << ',' << i;
  out << '\n';
  for (int k = 0; k <= reg; ++k) {
    out << k;
    for (int i = 0; i <= pdim; ++i) out << ',' << cell(i, i + k);
    out << '\n';
  }
}

}  // namespace

void write_betti_csv(const BettiTable& b, std::ostream& out) {
  write_box(b, out, [&](int i, int j) { return std::to_string(b.at(i, j)); });
}

void write_normalized_betti_csv(const BettiTable& b, std::ostream& out) {
  write_box(b, out, [&](int i, int j) {
    const std::uint64_t v = b.at(i, j);
    const std::uint64_t c = binomial(b.n(), j);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", c ? static_cast<double>(v) / static_cast<double>(c) : 0.0);
    return std::string(buf);
  });
}

void write_f_vector_csv(const FVector& f, std::ostream& out) {
  out << "k,f_k\n";
  for (std::size_t k = 0; k < f.counts.size(); ++k) out << k << ',' << f.counts[k] << '\n';
}

std::string report_json(const InvariantReport& r) {
  using json = nlohmann::ordered_json;
  auto bounds = [](const Bounds& b) -> json {
    if (b.exact()) return b.lo;
    return json{{"lo", b.lo}, {"hi", b.hi}};
  };
  json j;
  j["provenance"] = to_string(r.provenance);
  j["n"] = r.n;
  j["field"] = r.field.to_string();
  j["reg"] = bounds(r.regularity);
  j["pdim"] = bounds(r.pdim);
  j["depth"] = bounds(r.depth);
  j["krull"] = r.krull;
  json ext = json::array();
  for (const auto& [i, jj] : r.extremal) ext.push_back({i, jj});
  j["extremal"] = ext;
  json rho = json::object();
  for (const auto& [k, v] : r.rho)
    rho[std::to_string(k)] = std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
  j["rho"] = rho;
  return j.dump(2);
}

void write_garland_csv(const GarlandCertificate& c, std::ostream& out) {
  out << "face,n_link,lambda2,pass,reason\n";
  for (const auto& row : c.links) {
    for (std::size_t t = 0; t < row.face.size(); ++t) out << (t ? " " : "") << row.face[t];
    out << ',' << row.n_link << ',';
    if (row.lambda2) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12f", *row.lambda2);
      out << buf;
    }
    out << ',' << (row.passed ? "pass" : "fail") << ',' << (row.reason ? to_string(*row.reason) : "") << '\n';
  }
}

}  // namespace coedge
