#include "edgestate/topology.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "edgestate/errors.hpp"

namespace edgestate {

CandidateGraph Topology::candidate_graph() const {
    std::vector<CandidateEdge> edges;
    for (const Arc& a : arcs) edges.push_back({std::min(a.from, a.to), std::max(a.from, a.to)});
    edges.insert(edges.end(), false_edges.begin(), false_edges.end());
    return CandidateGraph(node_count, std::move(edges));
}

EdgeStateVector Topology::true_states() const {
    const CandidateGraph g = candidate_graph();
    EdgeStateVector s(g.edge_count(), EdgeState::Absent);
    for (const Arc& a : arcs) {
        const auto e = static_cast<EdgeId>(g.find(a.from, a.to));
        s[e] = a.from < a.to ? EdgeState::Forward : EdgeState::Reverse;
    }
    return s;
}

void Topology::validate() const {
    for (const Arc& a : arcs) {
        if (a.from >= node_count || a.to >= node_count) throw InputError("arc node out of range");
        if (a.from == a.to) throw InputError("self-loop in topology");
    }
    for (const CandidateEdge& e : false_edges) {
        if (e.lo >= e.hi) throw InputError("false edge must be listed with lo < hi");
    }
    // The constructor rejects duplicates, including a false edge equal to a true one.
    const CandidateGraph g = candidate_graph();
    if (!is_acyclic(g, true_states())) throw InputError("topology '" + name + "' has a directed cycle");
}

namespace {

Topology make(std::string name, std::size_t b, std::vector<std::pair<int, int>> arcs,
              std::vector<std::pair<int, int>> false_edges = {}) {
    Topology t;
    t.name = std::move(name);
    t.node_count = b;
    for (auto [u, v] : arcs) t.arcs.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
    for (auto [u, v] : false_edges) {
        t.false_edges.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1)});
    }
    t.validate();
    return t;
}

std::vector<Topology> build_catalog() {
    const std::vector<std::pair<int, int>> m1{{1, 2}, {2, 3}};
    const std::vector<std::pair<int, int>> m2{{1, 2}, {3, 2}};
    const std::vector<std::pair<int, int>> gn4{{1, 2}, {1, 3}, {2, 4}, {4, 3}};
    const std::vector<std::pair<int, int>> gn11{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                                                {7, 6}, {7, 8}, {8, 9}, {9, 10}, {10, 11}};
    return {
        make("M1", 3, m1),
        make("M2", 3, m2),
        make("GN4", 4, gn4),
        make("GN5", 5, {{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}}),
        make("multiparent", 4, {{1, 4}, {2, 4}, {3, 4}}),
        make("GN8", 8, {{1, 2}, {1, 6}, {1, 8}, {2, 3}, {2, 5}, {5, 6}, {5, 8}, {6, 7}}),
        make("GN11", 11, gn11),
        make("m1f", 3, m1, {{1, 3}}),
        make("m2f", 3, m2, {{1, 3}}),
        make("gn4f", 4, gn4, {{2, 3}}),
        make("gn11f", 11, gn11, {{1, 3}, {1, 11}}),
    };
}

const std::vector<Topology>& catalog() {
    static const std::vector<Topology> topologies = build_catalog();
    return topologies;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

NodeId parse_label(const std::string& token, std::size_t line_no) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size() || v < 1) {
        throw InputError("line " + std::to_string(line_no) + ": bad node label '" + token + "'");
    }
    return static_cast<NodeId>(v - 1);
}

}  // namespace

const std::vector<std::string>& topology_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& t : catalog()) out.push_back(t.name);
        return out;
    }();
    return names;
}

Topology find_topology(const std::string& name) {
    for (const auto& t : catalog()) {
        if (lower(t.name) == lower(name)) return t;
    }
    std::string known;
    for (const auto& n : topology_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown topology '" + name + "' (known: " + known + ")");
}

Topology parse_dag(std::istream& in, const std::string& name) {
    Topology t;
    t.name = name;
    std::size_t declared = 0;
    std::size_t max_label = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok[0] == "nodes" && tok.size() == 2) {
            declared = parse_label(tok[1], line_no) + 1;
        } else if (tok[0] == "false" && tok.size() == 3) {
            NodeId u = parse_label(tok[1], line_no);
            NodeId v = parse_label(tok[2], line_no);
            if (u == v) throw InputError("line " + std::to_string(line_no) + ": self-loop");
            t.false_edges.push_back({std::min(u, v), std::max(u, v)});
            max_label = std::max({max_label, u + 1, v + 1});
        } else if (tok.size() == 2) {
            NodeId u = parse_label(tok[0], line_no);
            NodeId v = parse_label(tok[1], line_no);
            t.arcs.push_back({u, v});
            max_label = std::max({max_label, u + 1, v + 1});
        } else {
            throw InputError("line " + std::to_string(line_no) + ": expected 'u v', 'false u v' or 'nodes b'");
        }
    }
    if (declared != 0 && declared < max_label) {
        throw InputError("node label " + std::to_string(max_label) + " exceeds declared count " +
                         std::to_string(declared));
    }
    t.node_count = declared != 0 ? declared : max_label;
    if (t.node_count == 0) throw InputError("DAG file declares no nodes");
    t.validate();
    return t;
}

Topology read_dag_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem.erase(0, slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem.erase(dot);
    return parse_dag(in, stem);
}

void write_dag(std::ostream& out, const Topology& topo) {
    out << "# " << topo.name << "\n";
    out << "nodes " << topo.node_count << "\n";
    for (const Arc& a : topo.arcs) out << a.from + 1 << ' ' << a.to + 1 << "\n";
    for (const CandidateEdge& e : topo.false_edges) out << "false " << e.lo + 1 << ' ' << e.hi + 1 << "\n";
}

}  // namespace edgestate
