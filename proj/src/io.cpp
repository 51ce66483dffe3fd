#include "edgestate/io.hpp"

#include <algorithm>
#include <cmath>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "edgestate/errors.hpp"

namespace edgestate {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

double parse_double(const std::string& token, std::size_t line_no) {
    const std::string t = trim(token);
    if (t.empty()) throw InputError(where(line_no) + "empty numeric field");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) {
        throw InputError(where(line_no) + "cannot parse '" + t + "' as a number");
    }
    return v;
}

long long parse_integer(const std::string& token, std::size_t line_no) {
    const std::string t = trim(token);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw InputError(where(line_no) + "cannot parse '" + t + "' as an integer");
    }
    return v;
}

NodeId parse_node(const std::string& token, std::size_t line_no) {
    const long long v = parse_integer(token, line_no);
    if (v < 1) throw InputError(where(line_no) + "node labels start at 1");
    return static_cast<NodeId>(v - 1);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Reads the next line that is not blank.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) return true;
    }
    return false;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

CandidateGraph parse_edge_list(std::istream& in, std::size_t node_count) {
    std::vector<CandidateEdge> edges;
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
        if (tok.size() == 2 && tok[0] == "nodes") {
            declared = static_cast<std::size_t>(parse_node(tok[1], line_no)) + 1;
            continue;
        }
        if (tok.size() != 2) throw InputError(where(line_no) + "expected 'u v'");
        const NodeId u = parse_node(tok[0], line_no);
        const NodeId v = parse_node(tok[1], line_no);
        if (u == v) throw InputError(where(line_no) + "self-loop on node " + tok[0]);
        edges.push_back({std::min(u, v), std::max(u, v)});
        max_label = std::max({max_label, u + 1, v + 1});
    }
    std::size_t b = node_count != 0 ? node_count : (declared != 0 ? declared : max_label);
    if (declared != 0 && node_count != 0 && declared != node_count) {
        throw InputError("edge list declares " + std::to_string(declared) + " nodes, expected " +
                         std::to_string(node_count));
    }
    if (max_label > b) {
        throw InputError("edge list mentions node " + std::to_string(max_label) + " but only " +
                         std::to_string(b) + " nodes exist");
    }
    return CandidateGraph(b, std::move(edges));
}

CandidateGraph parse_adjacency_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw InputError("adjacency file is empty");
    const auto header = split_csv_line(line);
    const std::size_t b = header.size();
    AdjacencyMatrix a(b);
    std::size_t row = 0;
    while (next_line(in, line, line_no)) {
        auto fields = split_csv_line(line);
        // Tolerate a leading row-name column.
        if (fields.size() == b + 1) fields.erase(fields.begin());
        if (fields.size() != b) {
            throw InputError(where(line_no) + "expected " + std::to_string(b) + " entries");
        }
        if (row >= b) throw InputError(where(line_no) + "adjacency matrix has more rows than columns");
        for (std::size_t k = 0; k < b; ++k) {
            const long long v = parse_integer(fields[k], line_no);
            if (v != 0 && v != 1) throw InputError(where(line_no) + "adjacency entries must be 0 or 1");
            a(row, k) = static_cast<std::uint8_t>(v);
        }
        ++row;
    }
    if (row != b) throw InputError("adjacency matrix is not square");
    return candidate_from_adjacency(a);
}

CandidateGraph read_candidate_graph(const std::string& path, std::size_t node_count) {
    auto in = open_in(path);
    if (ends_with(path, ".csv")) {
        CandidateGraph g = parse_adjacency_csv(in);
        if (node_count != 0 && g.node_count() != node_count) {
            throw InputError("adjacency matrix has " + std::to_string(g.node_count()) +
                             " nodes, expected " + std::to_string(node_count));
        }
        return g;
    }
    return parse_edge_list(in, node_count);
}

DataMatrix parse_data_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw InputError("data file is empty");
    auto names = split_csv_line(line);
    const std::size_t b = names.size();
    std::vector<double> cells;
    std::size_t rows = 0;
    while (next_line(in, line, line_no)) {
        const auto fields = split_csv_line(line);
        if (fields.size() != b) {
            throw InputError(where(line_no) + "expected " + std::to_string(b) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (const auto& f : fields) cells.push_back(parse_double(f, line_no));
        ++rows;
    }
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(b));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells[i * b + j];
        }
    }
    return DataMatrix(std::move(x), std::move(names));
}

DataMatrix read_data_csv(const std::string& path) {
    auto in = open_in(path);
    return parse_data_csv(in);
}

void write_data_csv(std::ostream& out, const DataMatrix& data) {
    const auto& names = data.names();
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << csv_field(names[j]);
    out << "\n";
    const auto& x = data.values();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) out << (j ? "," : "") << format_double(x(i, j));
        out << "\n";
    }
}

void write_posterior_csv(std::ostream& out, const PosteriorTable& table) {
    out << "edge_lo,edge_hi,p_forward,p_reverse,p_absent\n";
    for (std::size_t e = 0; e < table.size(); ++e) {
        const auto& r = table.rows[e];
        out << table.edges[e].lo + 1 << ',' << table.edges[e].hi + 1 << ',' << format_double(r[0])
            << ',' << format_double(r[1]) << ',' << format_double(r[2]) << "\n";
    }
}

PosteriorTable parse_posterior_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) throw InputError("posterior file is empty");
    const std::vector<std::string> expected{"edge_lo", "edge_hi", "p_forward", "p_reverse", "p_absent"};
    if (split_csv_line(line) != expected) throw InputError("posterior file has an unexpected header");
    PosteriorTable table;
    while (next_line(in, line, line_no)) {
        const auto f = split_csv_line(line);
        if (f.size() != 5) throw InputError(where(line_no) + "expected 5 fields");
        const NodeId lo = parse_node(f[0], line_no);
        const NodeId hi = parse_node(f[1], line_no);
        if (lo >= hi) throw InputError(where(line_no) + "edge_lo must be below edge_hi");
        table.edges.push_back({lo, hi});
        const StateProbabilities row{parse_double(f[2], line_no), parse_double(f[3], line_no),
                                     parse_double(f[4], line_no)};
        for (double p : row) {
            if (!(p >= 0.0 && p <= 1.0)) throw InputError(where(line_no) + "probability outside [0, 1]");
        }
        if (std::abs(row[0] + row[1] + row[2] - 1.0) > 1e-6) {
            throw InputError(where(line_no) + "probabilities do not sum to 1");
        }
        table.rows.push_back(row);
    }
    if (!std::is_sorted(table.edges.begin(), table.edges.end()) ||
        std::adjacent_find(table.edges.begin(), table.edges.end()) != table.edges.end()) {
        throw InputError("posterior edges must be sorted and distinct");
    }
    return table;
}

PosteriorTable read_posterior_csv(const std::string& path) {
    auto in = open_in(path);
    return parse_posterior_csv(in);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    out << "iteration,loglik,states\n";
    for (const auto& row : trace.rows) {
        out << row.iteration << ',' << format_double(row.loglik) << ',' << state_string(row.s) << "\n";
    }
}

ConstraintSet parse_constraints(std::istream& in, const CandidateGraph& g) {
    ConstraintSet cs(g.edge_count());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string w; ls >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        if (tok.size() != 4 || tok[2] != "forbid" || tok[3] != "parent") {
            throw InputError(where(line_no) + "expected 'u v forbid parent'");
        }
        const NodeId u = parse_node(tok[0], line_no);
        const NodeId v = parse_node(tok[1], line_no);
        if (u >= g.node_count() || v >= g.node_count()) {
            throw InputError(where(line_no) + "node out of range");
        }
        cs.forbid_parent(g, u, v);
    }
    return cs;
}

ConstraintSet read_constraints(const std::string& path, const CandidateGraph& g) {
    auto in = open_in(path);
    return parse_constraints(in, g);
}

}  // namespace edgestate
