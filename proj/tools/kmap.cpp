// kmap — batch analysis of directed weighted concept networks.
//
// Subcommands:
//   k-matrix   full pairwise coupling matrix
//   k-pair     coupling of one ordered pair (optionally with circuit DOT)
//   rank       node ranking by pressure/influence measures
//   impulse    pulse-propagation baseline
//   compare    coupling method vs pulse baseline, with rank correlations
//   paths      list the simple paths behind one pair
//
// Exit codes: 0 success, 1 input error, 2 work budget exhausted,
// 3 numerical failure. Diagnostics go to standard error.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kmap/kmap.hpp"

namespace {

enum class DocFormat { text, csv, json };

struct CommonOpts {
    std::string input;
    std::string in_format;  // "", "matrix-csv" or "edges-json"
    int max_len = 0;        // 0 = no cap requested
    std::uint64_t budget = 100000000ULL;
    int jobs = 0;  // 0 = all cores
    std::string output;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_limits, bool with_jobs) {
    cmd->add_option("-i,--input", o.input, "network file to analyze")->required();
    cmd->add_option("--format", o.in_format, "input format (default: by file extension)")
        ->check(CLI::IsMember({"matrix-csv", "edges-json"}));
    if (with_limits) {
        cmd->add_option("--max-len", o.max_len, "maximum path length in edges")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--budget", o.budget, "node-visit budget per pair")
            ->check(CLI::PositiveNumber);
    }
    if (with_jobs)
        cmd->add_option("-j,--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", o.output, "write the report to this file instead of stdout");
    cmd->add_flag("--json", o.json, "emit JSON regardless of destination");
}

kmap::ConceptNet load_net(const CommonOpts& o) {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw kmap::Error("cannot open input file '" + o.input + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string fmt = o.in_format;
    if (fmt.empty()) fmt = o.input.ends_with(".json") ? "edges-json" : "matrix-csv";
    return fmt == "edges-json" ? kmap::parse_edge_list(buf.str()) : kmap::parse_matrix(buf.str());
}

kmap::SearchLimits limits_of(const CommonOpts& o) {
    kmap::SearchLimits l;
    if (o.max_len > 0) l.max_len = o.max_len;
    l.budget = o.budget;
    return l;
}

int jobs_of(const CommonOpts& o) {
    if (o.jobs > 0) return o.jobs;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

DocFormat pick_format(const CommonOpts& o, DocFormat fallback) {
    if (o.json) return DocFormat::json;
    if (o.output.ends_with(".json")) return DocFormat::json;
    if (o.output.ends_with(".csv")) return DocFormat::csv;
    return fallback;
}

void write_file(const std::string& path, const std::string& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kmap::Error("cannot open output file '" + path + "'");
    out << doc;
    out.flush();
    if (!out) throw kmap::Error("failed writing '" + path + "'");
}

void emit(const CommonOpts& o, const std::string& doc) {
    if (o.output.empty())
        std::cout << doc;
    else
        write_file(o.output, doc);
}

std::string jq(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

const char* jbool(bool b) { return b ? "true" : "false"; }

std::string join_labels_json(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += jq(labels[i]);
    }
    return out;
}

std::string join_values_json(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += kmap::format_sig9(values[i]);
    }
    return out;
}

std::string join_ranks_json(const std::vector<int>& ranks) {
    std::string out;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(ranks[i]);
    }
    return out;
}

// Left-aligned columns, two spaces between them, no trailing padding.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (width.size() <= c) width.resize(c + 1, 0);
            width[c] = std::max(width[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c + 1 == row.size()) {
                out += row[c];
            } else {
                out += row[c];
                out.append(width[c] + 2 - row[c].size(), ' ');
            }
        }
        out += '\n';
    }
    return out;
}

// ---- k-matrix ----

int run_k_matrix(const CommonOpts& o) {
    const kmap::ConceptNet net = load_net(o);
    kmap::KMatrixOptions options;
    options.limits = limits_of(o);
    options.jobs = jobs_of(o);
    const kmap::KMatrix k = kmap::k_matrix(net, options);

    std::string doc;
    if (pick_format(o, DocFormat::csv) == DocFormat::json) {
        doc += "{\n  \"labels\": [" + join_labels_json(k.labels) + "],\n  \"rows\": [\n";
        for (int i = 0; i < k.values.rows(); ++i) {
            doc += "    [";
            for (int j = 0; j < k.values.cols(); ++j) {
                if (j) doc += ", ";
                doc += kmap::format_sig9(k.values(i, j));
            }
            doc += i + 1 < k.values.rows() ? "],\n" : "]\n";
        }
        doc += "  ],\n  \"truncated\": " + std::string(jbool(k.truncated)) + "\n}\n";
    } else {
        if (k.truncated) doc += "# truncated\n";
        doc += "node";
        for (const std::string& l : k.labels) doc += "," + l;
        doc += '\n';
        for (int i = 0; i < k.values.rows(); ++i) {
            doc += k.labels[static_cast<std::size_t>(i)];
            for (int j = 0; j < k.values.cols(); ++j) doc += "," + kmap::format_sig9(k.values(i, j));
            doc += '\n';
        }
    }
    emit(o, doc);
    return 0;
}

// ---- k-pair ----

int run_k_pair(const CommonOpts& o, const std::string& from, const std::string& to,
               const std::string& emit_circuit) {
    const kmap::ConceptNet net = load_net(o);
    const int s = net.index_of(from);
    const int t = net.index_of(to);
    const kmap::SearchLimits limits = limits_of(o);
    kmap::PairAccumulator acc;
    const double k = kmap::k_pair(net, s, t, limits, &acc);

    if (!emit_circuit.empty())
        write_file(emit_circuit, kmap::export_circuit_dot(kmap::build_circuit(net, s, t, limits)));

    std::string doc;
    if (pick_format(o, DocFormat::json) == DocFormat::csv) {
        doc += "from,to,k,paths,truncated\n";
        doc += from + "," + to + "," + kmap::format_sig9(k) + "," + std::to_string(acc.path_count) +
               "," + jbool(acc.truncated) + "\n";
    } else {
        doc += "{\n";
        doc += "  \"from\": " + jq(from) + ",\n";
        doc += "  \"to\": " + jq(to) + ",\n";
        doc += "  \"k\": " + kmap::format_sig9(k) + ",\n";
        doc += "  \"paths\": " + std::to_string(acc.path_count) + ",\n";
        doc += "  \"truncated\": " + std::string(jbool(acc.truncated)) + "\n";
        doc += "}\n";
    }
    emit(o, doc);
    return 0;
}

// ---- rank ----

int run_rank(const CommonOpts& o, const std::string& method, const std::string& measure) {
    const kmap::ConceptNet net = load_net(o);
    const bool impulse = method == "impulse";
    if (impulse && measure.starts_with("amplitude-"))
        throw kmap::Error("measure '" + measure + "' is not defined for the impulse method");

    kmap::MeasureVector mv;
    bool truncated = false;
    double rho = 0.0;
    bool converged = false;
    if (impulse) {
        const kmap::ImpulseResult r = kmap::impulse_closed_form(net);
        rho = r.rho.rho;
        converged = r.converged;
        mv = measure == "pressure" ? kmap::impulse_pressure(r, net.labels())
                                   : kmap::impulse_influence(r, net.labels());
    } else {
        kmap::KMatrixOptions options;
        options.limits = limits_of(o);
        options.jobs = jobs_of(o);
        const kmap::KMatrix k = kmap::k_matrix(net, options);
        truncated = k.truncated;
        if (measure == "pressure")
            mv = kmap::pressure(k);
        else if (measure == "influence")
            mv = kmap::influence(k);
        else if (measure == "amplitude-pressure")
            mv = kmap::amplitude_pressure(k);
        else
            mv = kmap::amplitude_influence(k);
    }
    const kmap::RankVector rv = kmap::rank_nodes(mv);

    std::string doc;
    const DocFormat f = pick_format(o, DocFormat::text);
    if (f == DocFormat::json) {
        doc += "{\n";
        doc += "  \"method\": " + jq(method) + ",\n";
        doc += "  \"measure\": " + jq(measure) + ",\n";
        if (impulse) {
            doc += "  \"rho\": " + kmap::format_sig9(rho) + ",\n";
            doc += "  \"converged\": " + std::string(jbool(converged)) + ",\n";
        } else {
            doc += "  \"truncated\": " + std::string(jbool(truncated)) + ",\n";
        }
        doc += "  \"nodes\": [\n";
        for (std::size_t i = 0; i < mv.labels.size(); ++i) {
            doc += "    {\"node\": " + jq(mv.labels[i]) +
                   ", \"value\": " + kmap::format_sig9(mv.values[i]) +
                   ", \"rank\": " + std::to_string(rv.ranks[i]) + "}";
            doc += i + 1 < mv.labels.size() ? ",\n" : "\n";
        }
        doc += "  ]\n}\n";
    } else if (f == DocFormat::csv) {
        doc += "# method " + method + "\n# measure " + measure + "\n";
        if (impulse)
            doc += "# rho " + kmap::format_sig9(rho) + "\n# converged " + jbool(converged) + "\n";
        else if (truncated)
            doc += "# truncated\n";
        doc += "node,value,rank\n";
        for (std::size_t i = 0; i < mv.labels.size(); ++i)
            doc += mv.labels[i] + "," + kmap::format_sig9(mv.values[i]) + "," +
                   std::to_string(rv.ranks[i]) + "\n";
    } else {
        std::vector<std::vector<std::string>> meta = {{"method", method}, {"measure", measure}};
        if (impulse) {
            meta.push_back({"rho", kmap::format_sig9(rho)});
            meta.push_back({"converged", converged ? "true" : "false"});
        } else if (truncated) {
            meta.push_back({"truncated", "true"});
        }
        doc += render_table(meta);
        doc += '\n';
        std::vector<std::vector<std::string>> rows = {{"node", "value", "rank"}};
        for (std::size_t i = 0; i < mv.labels.size(); ++i)
            rows.push_back({mv.labels[i], kmap::format_sig9(mv.values[i]),
                            std::to_string(rv.ranks[i])});
        doc += render_table(rows);
    }
    emit(o, doc);
    return 0;
}

// ---- impulse ----

int run_impulse(const CommonOpts& o, int steps) {
    const kmap::ConceptNet net = load_net(o);
    const kmap::ImpulseResult r = kmap::impulse_closed_form(net);

    // Optional step series with the default excitation: unit pulse everywhere,
    // zero initial values.
    std::optional<kmap::ImpulseTrajectory> traj;
    if (steps >= 0) {
        const std::size_t n = static_cast<std::size_t>(net.node_count());
        traj = kmap::impulse_series(net, std::vector<double>(n, 1.0),
                                    std::vector<double>(n, 0.0), steps);
    }

    std::string doc;
    const DocFormat f = pick_format(o, DocFormat::text);
    if (f == DocFormat::json) {
        doc += "{\n";
        doc += "  \"rho\": " + kmap::format_sig9(r.rho.rho) + ",\n";
        doc += "  \"converged\": " + std::string(jbool(r.converged)) + ",\n";
        doc += "  \"labels\": [" + join_labels_json(net.labels()) + "],\n";
        doc += "  \"psi_imp\": [" + join_values_json(r.psi_imp) + "],\n";
        doc += "  \"v_imp\": [" + join_values_json(r.v_imp) + "]";
        if (traj) {
            doc += ",\n  \"series\": {\"steps\": " + std::to_string(steps) +
                   ", \"diverging\": " + jbool(traj->diverging) +
                   ", \"final\": [" + join_values_json(traj->states.back()) + "]}";
        }
        doc += "\n}\n";
    } else if (f == DocFormat::csv) {
        doc += "# rho " + kmap::format_sig9(r.rho.rho) + "\n# converged " + jbool(r.converged) + "\n";
        if (traj)
            doc += "# steps " + std::to_string(steps) + "\n# diverging " + jbool(traj->diverging) + "\n";
        doc += traj ? "node,psi-imp,v-imp,state\n" : "node,psi-imp,v-imp\n";
        for (int i = 0; i < net.node_count(); ++i) {
            doc += net.label(i) + "," + kmap::format_sig9(r.psi_imp[static_cast<std::size_t>(i)]) +
                   "," + kmap::format_sig9(r.v_imp[static_cast<std::size_t>(i)]);
            if (traj) doc += "," + kmap::format_sig9(traj->states.back()[static_cast<std::size_t>(i)]);
            doc += '\n';
        }
    } else {
        std::vector<std::vector<std::string>> meta = {
            {"rho", kmap::format_sig9(r.rho.rho)}, {"converged", r.converged ? "true" : "false"}};
        if (traj) {
            meta.push_back({"steps", std::to_string(steps)});
            meta.push_back({"diverging", traj->diverging ? "true" : "false"});
        }
        doc += render_table(meta);
        doc += '\n';
        std::vector<std::vector<std::string>> rows;
        rows.push_back(traj ? std::vector<std::string>{"node", "psi-imp", "v-imp", "state"}
                            : std::vector<std::string>{"node", "psi-imp", "v-imp"});
        for (int i = 0; i < net.node_count(); ++i) {
            std::vector<std::string> row = {net.label(i),
                                            kmap::format_sig9(r.psi_imp[static_cast<std::size_t>(i)]),
                                            kmap::format_sig9(r.v_imp[static_cast<std::size_t>(i)])};
            if (traj) row.push_back(kmap::format_sig9(traj->states.back()[static_cast<std::size_t>(i)]));
            rows.push_back(std::move(row));
        }
        doc += render_table(rows);
    }
    emit(o, doc);
    return 0;
}

// ---- compare ----

int run_compare(const CommonOpts& o) {
    const kmap::ConceptNet net = load_net(o);

    kmap::KMatrixOptions options;
    options.limits = limits_of(o);
    options.jobs = jobs_of(o);
    const kmap::KMatrix k = kmap::k_matrix(net, options);
    const kmap::MeasureVector kp = kmap::pressure(k);
    const kmap::MeasureVector ki = kmap::influence(k);

    const kmap::ImpulseResult r = kmap::impulse_closed_form(net);
    const kmap::MeasureVector ip = kmap::impulse_pressure(r, net.labels());
    const kmap::MeasureVector ii = kmap::impulse_influence(r, net.labels());

    const kmap::RankVector rkp = kmap::rank_nodes(kp);
    const kmap::RankVector rip = kmap::rank_nodes(ip);
    const kmap::RankVector rki = kmap::rank_nodes(ki);
    const kmap::RankVector rii = kmap::rank_nodes(ii);
    const kmap::RankCorrelation cp = kmap::rank_correlation(rkp, rip);
    const kmap::RankCorrelation ci = kmap::rank_correlation(rki, rii);

    std::string doc;
    const DocFormat f = pick_format(o, DocFormat::text);
    if (f == DocFormat::json) {
        auto measure_block = [&](const kmap::MeasureVector& m, const kmap::RankVector& rv) {
            return "{\"values\": [" + join_values_json(m.values) + "], \"ranks\": [" +
                   join_ranks_json(rv.ranks) + "]}";
        };
        doc += "{\n";
        doc += "  \"rho\": " + kmap::format_sig9(r.rho.rho) + ",\n";
        doc += "  \"converged\": " + std::string(jbool(r.converged)) + ",\n";
        doc += "  \"truncated\": " + std::string(jbool(k.truncated)) + ",\n";
        doc += "  \"labels\": [" + join_labels_json(net.labels()) + "],\n";
        doc += "  \"measures\": {\n";
        doc += "    \"k-pressure\": " + measure_block(kp, rkp) + ",\n";
        doc += "    \"impulse-pressure\": " + measure_block(ip, rip) + ",\n";
        doc += "    \"k-influence\": " + measure_block(ki, rki) + ",\n";
        doc += "    \"impulse-influence\": " + measure_block(ii, rii) + "\n";
        doc += "  },\n";
        doc += "  \"correlations\": {\n";
        doc += "    \"pressure\": {\"spearman\": " + kmap::format_sig9(cp.spearman) +
               ", \"kendall\": " + kmap::format_sig9(cp.kendall) + "},\n";
        doc += "    \"influence\": {\"spearman\": " + kmap::format_sig9(ci.spearman) +
               ", \"kendall\": " + kmap::format_sig9(ci.kendall) + "}\n";
        doc += "  }\n}\n";
    } else {
        std::vector<std::vector<std::string>> meta = {
            {"impulse rho", kmap::format_sig9(r.rho.rho)},
            {"impulse converged", r.converged ? "true" : "false"}};
        if (k.truncated) meta.push_back({"truncated", "true"});
        doc += render_table(meta);
        doc += '\n';

        std::vector<std::vector<std::string>> ranks = {{"node"}};
        for (const std::string& l : net.labels()) ranks[0].push_back(l);
        auto rank_row = [&](const std::string& name, const kmap::RankVector& rv) {
            std::vector<std::string> row = {name};
            for (int v : rv.ranks) row.push_back(std::to_string(v));
            ranks.push_back(std::move(row));
        };
        rank_row("k-pressure", rkp);
        rank_row("impulse-pressure", rip);
        rank_row("k-influence", rki);
        rank_row("impulse-influence", rii);
        doc += render_table(ranks);
        doc += '\n';

        doc += render_table({{"correlation", "spearman", "kendall"},
                             {"pressure", kmap::format_sig9(cp.spearman), kmap::format_sig9(cp.kendall)},
                             {"influence", kmap::format_sig9(ci.spearman), kmap::format_sig9(ci.kendall)}});
    }
    emit(o, doc);
    return 0;
}

// ---- paths ----

int run_paths(const CommonOpts& o, const std::string& from, const std::string& to) {
    const kmap::ConceptNet net = load_net(o);
    const int s = net.index_of(from);
    const int t = net.index_of(to);
    const kmap::SearchLimits limits = limits_of(o);

    struct Row {
        std::vector<std::string> nodes;
        int length;
        double emf;
    };
    std::vector<Row> listing;
    auto sink = [&](std::span<const int> nodes, std::span<const double>, double emf, int length) {
        Row row;
        row.nodes.reserve(nodes.size());
        for (int idx : nodes) row.nodes.push_back(net.label(idx));
        row.length = length;
        row.emf = emf;
        listing.push_back(std::move(row));
    };
    const kmap::SearchStats stats = kmap::enumerate_simple_paths(net, s, t, sink, limits);

    std::string doc;
    const DocFormat f = pick_format(o, DocFormat::text);
    if (f == DocFormat::json) {
        doc += "{\n";
        doc += "  \"from\": " + jq(from) + ",\n";
        doc += "  \"to\": " + jq(to) + ",\n";
        doc += "  \"truncated\": " + std::string(jbool(stats.truncated)) + ",\n";
        doc += "  \"paths\": [";
        for (std::size_t i = 0; i < listing.size(); ++i) {
            doc += i ? ",\n    " : "\n    ";
            doc += "{\"nodes\": [" + join_labels_json(listing[i].nodes) +
                   "], \"length\": " + std::to_string(listing[i].length) +
                   ", \"emf\": " + kmap::format_sig9(listing[i].emf) + "}";
        }
        doc += listing.empty() ? "]\n" : "\n  ]\n";
        doc += "}\n";
    } else if (f == DocFormat::csv) {
        if (stats.truncated) doc += "# truncated\n";
        doc += "path,length,emf\n";
        for (const Row& row : listing) {
            std::string seq;
            for (std::size_t i = 0; i < row.nodes.size(); ++i) {
                if (i) seq += "->";
                seq += row.nodes[i];
            }
            doc += seq + "," + std::to_string(row.length) + "," + kmap::format_sig9(row.emf) + "\n";
        }
    } else {
        if (stats.truncated) doc += "# truncated\n";
        std::vector<std::vector<std::string>> rows = {{"path", "length", "emf"}};
        for (const Row& row : listing) {
            std::string seq;
            for (std::size_t i = 0; i < row.nodes.size(); ++i) {
                if (i) seq += " -> ";
                seq += row.nodes[i];
            }
            rows.push_back({seq, std::to_string(row.length), kmap::format_sig9(row.emf)});
        }
        doc += render_table(rows);
    }
    emit(o, doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise influence analysis of directed weighted concept networks"};
    app.require_subcommand(1);

    CommonOpts matrix_opts, pair_opts, rank_opts, impulse_opts, compare_opts, paths_opts;
    std::string pair_from, pair_to, emit_circuit;
    std::string rank_method = "k", rank_measure = "pressure";
    std::string paths_from, paths_to;
    int impulse_steps = -1;

    CLI::App* cmd_matrix = app.add_subcommand("k-matrix", "compute the full coupling matrix");
    add_common(cmd_matrix, matrix_opts, true, true);

    CLI::App* cmd_pair = app.add_subcommand("k-pair", "coupling of one ordered node pair");
    add_common(cmd_pair, pair_opts, true, false);
    cmd_pair->add_option("--from", pair_from, "source node label")->required();
    cmd_pair->add_option("--to", pair_to, "target node label")->required();
    cmd_pair->add_option("--emit-circuit", emit_circuit,
                         "write the pair's equivalent circuit as DOT to this file");

    CLI::App* cmd_rank = app.add_subcommand("rank", "rank nodes by a coupling measure");
    add_common(cmd_rank, rank_opts, true, true);
    cmd_rank->add_option("--method", rank_method, "k or impulse")
        ->check(CLI::IsMember({"k", "impulse"}));
    cmd_rank->add_option("--measure", rank_measure, "which per-node measure")
        ->check(CLI::IsMember({"pressure", "influence", "amplitude-pressure", "amplitude-influence"}));

    CLI::App* cmd_impulse = app.add_subcommand("impulse", "pulse-propagation baseline analysis");
    add_common(cmd_impulse, impulse_opts, false, false);
    cmd_impulse->add_option("--steps", impulse_steps, "also run the step series this far")
        ->check(CLI::NonNegativeNumber);

    CLI::App* cmd_compare = app.add_subcommand("compare", "coupling method vs pulse baseline");
    add_common(cmd_compare, compare_opts, true, true);

    CLI::App* cmd_paths = app.add_subcommand("paths", "list simple paths for one ordered pair");
    add_common(cmd_paths, paths_opts, true, false);
    cmd_paths->add_option("--from", paths_from, "source node label")->required();
    cmd_paths->add_option("--to", paths_to, "target node label")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*cmd_matrix) return run_k_matrix(matrix_opts);
        if (*cmd_pair) return run_k_pair(pair_opts, pair_from, pair_to, emit_circuit);
        if (*cmd_rank) return run_rank(rank_opts, rank_method, rank_measure);
        if (*cmd_impulse) return run_impulse(impulse_opts, impulse_steps);
        if (*cmd_compare) return run_compare(compare_opts);
        if (*cmd_paths) return run_paths(paths_opts, paths_from, paths_to);
    } catch (const kmap::BudgetExhaustedError& e) {
        std::cerr << "kmap: " << e.what() << '\n';
        return 2;
    } catch (const kmap::SingularMatrixError& e) {
        std::cerr << "kmap: " << e.what() << '\n';
        return 3;
    } catch (const kmap::Error& e) {
        std::cerr << "kmap: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "kmap: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
