#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kmap/errors.hpp"
#include "kmap/numerics.hpp"

namespace kmap {

// One directed edge given by node labels. Weight 0 is legal here: an explicit
// zero edge stays in the adjacency structure (it contributes nothing to any
// path sum, but keeps the support fixed, which matters when comparing nets
// edge-for-edge).
struct EdgeSpec {
    std::string from;
    std::string to;
    double weight = 0.0;
};

struct ValidationIssue {
    std::string code;      // stable machine-readable tag, e.g. "self-loop"
    std::string message;   // human-readable description
    std::string location;  // where in the input, when known
};

struct NetValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool ok() const { return errors.empty(); }
};

// Checks a proposed net definition without building it. Errors cover duplicate
// labels, edges touching unknown nodes, self-loops, duplicate edges and
// non-finite weights.
inline NetValidationReport check_definition(const std::vector<std::string>& labels,
                                            const std::vector<EdgeSpec>& edges) {
    NetValidationReport report;
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty())
            report.errors.push_back({"empty-label", "node label at position " + std::to_string(i) + " is empty", ""});
        auto [it, fresh] = seen.emplace(labels[i], static_cast<int>(i));
        if (!fresh)
            report.errors.push_back({"duplicate-label", "duplicate node label '" + labels[i] + "'", ""});
    }
    std::map<std::pair<std::string, std::string>, int> edge_seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeSpec& e = edges[i];
        const std::string loc = "edge " + std::to_string(i);
        if (!seen.count(e.from))
            report.errors.push_back({"unknown-node", "edge endpoint '" + e.from + "' is not a declared node", loc});
        if (!seen.count(e.to))
            report.errors.push_back({"unknown-node", "edge endpoint '" + e.to + "' is not a declared node", loc});
        if (e.from == e.to)
            report.errors.push_back({"self-loop", "self-loop on node '" + e.from + "'", loc});
        if (!std::isfinite(e.weight))
            report.errors.push_back({"bad-weight", "edge '" + e.from + "' -> '" + e.to + "' has non-finite weight", loc});
        auto [it, fresh] = edge_seen.emplace(std::make_pair(e.from, e.to), static_cast<int>(i));
        if (!fresh)
            report.errors.push_back({"duplicate-edge", "duplicate edge '" + e.from + "' -> '" + e.to + "'", loc});
    }
    return report;
}

// Immutable directed weighted graph over labelled nodes. Adjacency lists are
// sorted by target index so that every traversal in the library is
// deterministic.
class ConceptNet {
public:
    struct Edge {
        int to = 0;
        double weight = 0.0;
    };

    ConceptNet(std::vector<std::string> labels, const std::vector<EdgeSpec>& edges)
        : labels_(std::move(labels)) {
        NetValidationReport report = check_definition(labels_, edges);
        if (!report.ok()) throw Error("invalid net definition: " + report.errors.front().message);
        for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = static_cast<int>(i);
        out_.resize(labels_.size());
        for (const EdgeSpec& e : edges)
            out_[index_.at(e.from)].push_back({index_.at(e.to), e.weight});
        for (auto& adj : out_)
            std::sort(adj.begin(), adj.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
        edge_count_ = static_cast<int>(edges.size());
    }

    int node_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return edge_count_; }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

    // Index of a labelled node; throws UnknownNodeError if absent.
    int index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw UnknownNodeError(label);
        return it->second;
    }

    std::optional<int> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<Edge>& out_edges(int u) const { return out_.at(static_cast<std::size_t>(u)); }

    // Weight of edge u -> v, or nullopt when the edge is absent. An explicit
    // zero edge reports 0, distinct from "no edge".
    std::optional<double> edge_weight(int u, int v) const {
        const auto& adj = out_.at(static_cast<std::size_t>(u));
        auto it = std::lower_bound(adj.begin(), adj.end(), v,
                                   [](const Edge& e, int t) { return e.to < t; });
        if (it == adj.end() || it->to != v) return std::nullopt;
        return it->weight;
    }

    double weight_or_zero(int u, int v) const { return edge_weight(u, v).value_or(0.0); }

    // Adjacency matrix W with W(i,j) = weight of edge i -> j.
    DenseMatrix to_dense() const {
        DenseMatrix w(node_count(), node_count());
        for (int u = 0; u < node_count(); ++u)
            for (const Edge& e : out_[static_cast<std::size_t>(u)]) w(u, e.to) = e.weight;
        return w;
    }

    // Edge list in deterministic (source index, target index) order.
    std::vector<EdgeSpec> edge_specs() const {
        std::vector<EdgeSpec> specs;
        specs.reserve(static_cast<std::size_t>(edge_count_));
        for (int u = 0; u < node_count(); ++u)
            for (const Edge& e : out_[static_cast<std::size_t>(u)])
                specs.push_back({labels_[static_cast<std::size_t>(u)],
                                 labels_[static_cast<std::size_t>(e.to)], e.weight});
        return specs;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<std::vector<Edge>> out_;
    int edge_count_ = 0;
};

// Structural lint of a built net: flags sinks (no outgoing edges) and isolated
// nodes (no edges at all). These are warnings, not errors — dead-end concepts
// are common in hand-drawn maps.
inline NetValidationReport validate(const ConceptNet& net) {
    NetValidationReport report;
    std::vector<int> in_degree(static_cast<std::size_t>(net.node_count()), 0);
    for (int u = 0; u < net.node_count(); ++u)
        for (const auto& e : net.out_edges(u)) ++in_degree[static_cast<std::size_t>(e.to)];
    for (int u = 0; u < net.node_count(); ++u) {
        const bool sink = net.out_edges(u).empty();
        if (sink)
            report.warnings.push_back({"sink", "node '" + net.label(u) + "' has no outgoing edges", ""});
        if (sink && in_degree[static_cast<std::size_t>(u)] == 0)
            report.warnings.push_back({"isolated", "node '" + net.label(u) + "' is isolated (no incident edges)", ""});
    }
    return report;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::string_view field = (comma == std::string_view::npos)
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        fields.emplace_back(trim(field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

inline double parse_number(std::string_view token, const std::string& location) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty())
        throw ParseError("'" + std::string(token) + "' is not a number", location);
    if (!std::isfinite(value))
        throw ParseError("'" + std::string(token) + "' is not finite", location);
    return value;
}

}  // namespace detail

// Parses the CSV adjacency-matrix format:
//
//   node,a,b,c
//   a,0,1.5,0
//   b,0,0,-2
//   c,1,0,0
//
// Blank lines and lines starting with '#' are skipped. Cell (i,j) is the
// weight of edge i -> j; a zero cell means "no edge". The diagonal must be
// zero and row labels must repeat the header labels in order.
inline ConceptNet parse_matrix(const std::string& text) {
    std::vector<std::string> labels;
    std::vector<EdgeSpec> edges;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    bool header_done = false;
    std::size_t row = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const std::string loc = "line " + std::to_string(line_no);
        std::vector<std::string> fields = detail::split_csv(line);
        if (!header_done) {
            if (fields.front() != "node")
                throw ParseError("matrix header must start with 'node'", loc);
            labels.assign(fields.begin() + 1, fields.end());
            if (labels.empty()) throw ParseError("matrix header declares no nodes", loc);
            header_done = true;
            continue;
        }
        if (row >= labels.size())
            throw ParseError("matrix has more rows than header columns", loc);
        if (fields.size() != labels.size() + 1)
            throw ParseError("row has " + std::to_string(fields.size() - 1) + " values, expected " +
                                 std::to_string(labels.size()),
                             loc);
        if (fields.front() != labels[row])
            throw ParseError("row label '" + fields.front() + "' does not match header label '" +
                                 labels[row] + "'",
                             loc);
        for (std::size_t j = 0; j < labels.size(); ++j) {
            const std::string cell_loc = loc + ", column " + std::to_string(j + 2);
            double w = detail::parse_number(fields[j + 1], cell_loc);
            if (j == row) {
                if (w != 0.0) throw ParseError("diagonal entry for node '" + labels[row] + "' must be 0", cell_loc);
                continue;
            }
            if (w != 0.0) edges.push_back({labels[row], labels[j], w});
        }
        ++row;
    }
    if (!header_done) throw ParseError("empty matrix input", "line " + std::to_string(line_no));
    if (row != labels.size())
        throw ParseError("matrix has " + std::to_string(row) + " rows for " +
                             std::to_string(labels.size()) + " header columns",
                         "line " + std::to_string(line_no));
    NetValidationReport report = check_definition(labels, edges);
    if (!report.ok()) throw ParseError(report.errors.front().message, report.errors.front().location);
    return ConceptNet(labels, edges);
}

inline ConceptNet parse_matrix(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix(buf.str());
}

// Parses the JSON edge-list format:
//
//   {"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "weight": 1.5}]}
//
// Unlike the matrix format, an explicit weight of 0 is kept as a real edge.
inline ConceptNet parse_edge_list(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "");
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw ParseError("edge-list document must be an object with 'nodes' and 'edges'", "");
    std::vector<std::string> labels;
    if (!doc["nodes"].is_array()) throw ParseError("'nodes' must be an array of labels", "");
    for (const auto& n : doc["nodes"]) {
        if (!n.is_string()) throw ParseError("'nodes' must contain only strings", "");
        labels.push_back(n.get<std::string>());
    }
    std::vector<EdgeSpec> edges;
    if (!doc["edges"].is_array()) throw ParseError("'edges' must be an array of objects", "");
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
        const auto& e = doc["edges"][i];
        const std::string loc = "edges[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("weight"))
            throw ParseError("edge needs 'from', 'to' and 'weight'", loc);
        if (!e["from"].is_string() || !e["to"].is_string())
            throw ParseError("edge endpoints must be strings", loc);
        if (!e["weight"].is_number())
            throw ParseError("edge weight must be a number", loc);
        edges.push_back({e["from"].get<std::string>(), e["to"].get<std::string>(),
                         e["weight"].get<double>()});
    }
    NetValidationReport report = check_definition(labels, edges);
    if (!report.ok()) throw ParseError(report.errors.front().message, report.errors.front().location);
    return ConceptNet(labels, edges);
}

inline ConceptNet parse_edge_list(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

namespace detail {

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
    if (v == 0.0) return "0";  // avoid "-0"
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace detail

// Fixed 9-significant-digit form used by every emitted report, so identical
// values always print identically, byte for byte.
inline std::string format_sig9(double v) {
    if (v == 0.0) return "0";  // avoid "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
}

// Renders the adjacency matrix back to the CSV format parse_matrix reads.
inline std::string render_matrix(const ConceptNet& net) {
    std::string out = "node";
    for (const std::string& l : net.labels()) {
        out += ',';
        out += l;
    }
    out += '\n';
    for (int i = 0; i < net.node_count(); ++i) {
        out += net.label(i);
        for (int j = 0; j < net.node_count(); ++j) {
            out += ',';
            out += detail::format_double(net.weight_or_zero(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace kmap
