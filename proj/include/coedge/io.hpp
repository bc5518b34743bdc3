#pragma once

#include <iosfwd>
#include <string>

#include "coedge/algebra.hpp"
#include "coedge/collapse.hpp"
#include "coedge/complex.hpp"
#include "coedge/graph.hpp"
#include "coedge/spectral.hpp"

namespace coedge {

/// Edge-list text: a first line "n m", then m lines "u v" with 0-based
/// endpoints. Any order is accepted on read; loops, duplicates, endpoints out
/// of range, malformed lines and a wrong edge count raise ParseError with the
/// offending line number.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
/// Canonical form: edges with u < v, sorted lexicographically.
void write_graph(const Graph& g, std::ostream& out);

/// Betti table in row/column layout: header "k\i,0,...,pdim", rows
/// k = 0..reg, explicit zeros inside that box.
void write_betti_csv(const BettiTable& b, std::ostream& out);
/// Same layout with β_{i,j}/C(n,j) to two decimal places.
void write_normalized_betti_csv(const BettiTable& b, std::ostream& out);

/// "k,f_k" rows.
void write_f_vector_csv(const FVector& f, std::ostream& out);

/// Keys: provenance, n, field, reg, pdim, depth, krull, extremal, rho. Bounds
/// print as a number when exact and as {"lo":..,"hi":..} otherwise; ρ_k
/// prints as a reduced fraction string.
std::string report_json(const InvariantReport& r);

/// Per-face rows: face (space separated), n_link, lambda2, pass, reason.
void write_garland_csv(const GarlandCertificate& c, std::ostream& out);

}  // namespace coedge
