#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "edgestate/graph.hpp"

namespace edgestate {

// A true DAG plus optional false candidate edges. Node labels are 0-based.
struct Topology {
    std::string name;
    std::size_t node_count = 0;
    std::vector<Arc> arcs;                   // true directed edges
    std::vector<CandidateEdge> false_edges;  // candidates absent from the truth

    // Skeleton of the true arcs plus the false edges.
    CandidateGraph candidate_graph() const;
    // True states over candidate_graph(); false edges are Absent.
    EdgeStateVector true_states() const;
    // Throws InputError on duplicate or cyclic arcs, or a false edge that
    // coincides with a true one.
    void validate() const;
};

// Built-in names: M1, M2, GN4, GN5, multiparent, GN8, GN11, m1f, m2f, gn4f, gn11f.
const std::vector<std::string>& topology_names();
// Case-insensitive lookup; throws InputError for unknown names.
Topology find_topology(const std::string& name);

// Text format: "nodes b", one "u v" arc per line (1-based, u -> v),
// "false u v" for false candidate edges, '#' comments.
Topology parse_dag(std::istream& in, const std::string& name);
Topology read_dag_file(const std::string& path);
void write_dag(std::ostream& out, const Topology& topo);

}  // namespace edgestate
