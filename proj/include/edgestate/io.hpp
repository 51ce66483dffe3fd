#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "edgestate/graph.hpp"
#include "edgestate/posterior.hpp"
#include "edgestate/sampler.hpp"
#include "edgestate/score.hpp"

namespace edgestate {

// Shortest form is not needed; 17 significant digits always round-trip.
std::string format_double(double x);

// Splits one CSV line on commas; double-quoted fields may contain commas.
std::vector<std::string> split_csv_line(const std::string& line);

// Edge list: one "u v" pair per line (1-based), optional "nodes b" line,
// '#' comments. node_count 0 means the largest label (or the declared count).
CandidateGraph parse_edge_list(std::istream& in, std::size_t node_count = 0);
// Square 0/1 adjacency CSV with a header row of node names.
CandidateGraph parse_adjacency_csv(std::istream& in);
// Chooses the format by extension: .csv is adjacency, anything else an edge list.
CandidateGraph read_candidate_graph(const std::string& path, std::size_t node_count = 0);

DataMatrix parse_data_csv(std::istream& in);
DataMatrix read_data_csv(const std::string& path);
void write_data_csv(std::ostream& out, const DataMatrix& data);

// Columns edge_lo, edge_hi, p_forward, p_reverse, p_absent; 1-based nodes.
void write_posterior_csv(std::ostream& out, const PosteriorTable& table);
PosteriorTable parse_posterior_csv(std::istream& in);
PosteriorTable read_posterior_csv(const std::string& path);

// Columns iteration, loglik, states (digits 0/1/2, one per edge).
void write_trace_csv(std::ostream& out, const Trace& trace);

// Lines "u v forbid parent": node u may not be a parent of node v.
ConstraintSet parse_constraints(std::istream& in, const CandidateGraph& g);
ConstraintSet read_constraints(const std::string& path, const CandidateGraph& g);

}  // namespace edgestate
