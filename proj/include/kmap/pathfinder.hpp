#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kmap/concept_net.hpp"
#include "kmap/errors.hpp"

namespace kmap {

// Limits applied to one source/target enumeration.
struct SearchLimits {
    // Maximum number of edges per path. Unset means n-1, which never cuts a
    // simple path short.
    std::optional<int> max_len;
    // Maximum number of node visits (stack pushes, source included) before the
    // search throws BudgetExhaustedError.
    std::uint64_t budget = UINT64_MAX;
    // Optional cooperative cancellation flag shared across workers.
    const std::atomic<bool>* stop = nullptr;
};

struct SearchStats {
    std::uint64_t paths = 0;    // simple paths delivered
    std::uint64_t visited = 0;  // node visits consumed
    bool truncated = false;     // the length cap cut off at least one extension
    bool stopped = false;       // the stop flag ended the search early
};

// A fully materialized simple path.
struct PathRecord {
    std::vector<int> nodes;         // length + 1 node indices, source first
    std::vector<double> edge_emfs;  // weight of each edge along the path
    double emf = 0.0;               // sum of edge weights
    int length = 0;                 // number of edges
};

namespace detail {

// Depth-first enumeration of simple paths source -> target, neighbors taken in
// ascending node-index order so the yield order is deterministic. The visitor
// sees each finished path as spans into the walker's stacks plus the running
// EMF; it must copy if it wants to keep anything.
//
// The EMF handed over is the prefix sum maintained by push/pop, so a caller
// folding path EMFs itself and a caller trusting this value get bit-identical
// numbers.
template <typename Visitor>
class PathWalker {
public:
    PathWalker(const ConceptNet& net, int source, int target, const SearchLimits& limits,
               SearchStats& stats, Visitor& visit)
        : net_(net), target_(target), limits_(limits), stats_(stats), visit_(visit) {
        const int n = net.node_count();
        max_len_ = limits.max_len.value_or(n > 0 ? n - 1 : 1);
        on_path_.assign(static_cast<std::size_t>(n), 0);
        nodes_.reserve(static_cast<std::size_t>(max_len_) + 1);
        weights_.reserve(static_cast<std::size_t>(max_len_));
        prefix_.reserve(static_cast<std::size_t>(max_len_) + 1);
        prefix_.push_back(0.0);
        push(source, 0.0);
    }

    void run() { walk(); }

private:
    bool should_stop() {
        if (limits_.stop && limits_.stop->load(std::memory_order_relaxed)) {
            stats_.stopped = true;
            return true;
        }
        return false;
    }

    void push(int node, double weight) {
        ++stats_.visited;
        if (stats_.visited > limits_.budget)
            throw BudgetExhaustedError(net_.label(nodes_.empty() ? node : nodes_.front()),
                                       net_.label(target_), stats_.visited);
        if (!nodes_.empty()) {
            weights_.push_back(weight);
            prefix_.push_back(prefix_.back() + weight);
        }
        nodes_.push_back(node);
        on_path_[static_cast<std::size_t>(node)] = 1;
    }

    void pop() {
        on_path_[static_cast<std::size_t>(nodes_.back())] = 0;
        nodes_.pop_back();
        if (!nodes_.empty()) {
            weights_.pop_back();
            prefix_.pop_back();
        }
    }

    // Returns false when the stop flag asked for an early exit.
    bool walk() {
        if (should_stop()) return false;
        const int here = nodes_.back();
        const int depth = static_cast<int>(nodes_.size()) - 1;  // edges so far
        if (here == target_) {
            ++stats_.paths;
            visit_(std::span<const int>(nodes_), std::span<const double>(weights_),
                   prefix_.back(), depth);
            return true;
        }
        const auto& adj = net_.out_edges(here);
        if (depth == max_len_) {
            // Cannot extend: if any neighbor is still unvisited, a longer
            // simple path existed past the cap.
            for (const auto& e : adj)
                if (!on_path_[static_cast<std::size_t>(e.to)]) {
                    stats_.truncated = true;
                    break;
                }
            return true;
        }
        for (const auto& e : adj) {
            if (on_path_[static_cast<std::size_t>(e.to)]) continue;
            push(e.to, e.weight);
            const bool keep_going = walk();
            pop();
            if (!keep_going) return false;
        }
        return true;
    }

    const ConceptNet& net_;
    int target_;
    const SearchLimits& limits_;
    SearchStats& stats_;
    Visitor& visit_;
    int max_len_ = 0;
    std::vector<char> on_path_;
    std::vector<int> nodes_;
    std::vector<double> weights_;
    std::vector<double> prefix_;
};

template <typename Visitor>
SearchStats for_each_simple_path(const ConceptNet& net, int source, int target,
                                 const SearchLimits& limits, Visitor&& visit) {
    if (source < 0 || source >= net.node_count() || target < 0 || target >= net.node_count())
        throw Error("node index out of range");
    if (source == target) throw Error("source and target must differ");
    if (limits.max_len && *limits.max_len < 1) throw Error("max path length must be at least 1");
    SearchStats stats;
    PathWalker<Visitor> walker(net, source, target, limits, stats, visit);
    walker.run();
    return stats;
}

}  // namespace detail

// Streams every simple path source -> target into `sink`, which receives
// (nodes, edge weights, emf, length). Paths arrive in depth-first order with
// neighbors in ascending node-index order.
template <typename Sink>
SearchStats enumerate_simple_paths(const ConceptNet& net, int source, int target, Sink&& sink,
                                   const SearchLimits& limits = {}) {
    return detail::for_each_simple_path(net, source, target, limits, sink);
}

// Materializes the paths. Convenience for small nets and for building the
// equivalent-circuit view; prefer accumulate_pair for plain numbers.
inline std::vector<PathRecord> collect_simple_paths(const ConceptNet& net, int source, int target,
                                                    const SearchLimits& limits = {},
                                                    SearchStats* stats_out = nullptr) {
    std::vector<PathRecord> paths;
    auto keep = [&](std::span<const int> nodes, std::span<const double> weights, double emf,
                    int length) {
        PathRecord rec;
        rec.nodes.assign(nodes.begin(), nodes.end());
        rec.edge_emfs.assign(weights.begin(), weights.end());
        rec.emf = emf;
        rec.length = length;
        paths.push_back(std::move(rec));
    };
    SearchStats stats = detail::for_each_simple_path(net, source, target, limits, keep);
    if (stats_out) *stats_out = stats;
    return paths;
}

// Running sums needed by the coupling formula, folded while enumerating so no
// path list is ever held in memory.
struct PairAccumulator {
    double sum_emf_over_len = 0.0;  // sum of emf_m / N_m
    double sum_inv_len = 0.0;       // sum of 1 / N_m
    std::uint64_t path_count = 0;
    bool truncated = false;
};

inline PairAccumulator accumulate_pair(const ConceptNet& net, int source, int target,
                                       const SearchLimits& limits = {},
                                       SearchStats* stats_out = nullptr) {
    PairAccumulator acc;
    auto fold = [&](std::span<const int>, std::span<const double>, double emf, int length) {
        acc.sum_emf_over_len += emf / length;
        acc.sum_inv_len += 1.0 / length;
        ++acc.path_count;
    };
    SearchStats stats = detail::for_each_simple_path(net, source, target, limits, fold);
    acc.truncated = stats.truncated;
    if (stats_out) *stats_out = stats;
    return acc;
}

struct PathCount {
    std::uint64_t count = 0;
    bool truncated = false;
};

inline PathCount count_paths(const ConceptNet& net, int source, int target,
                             const SearchLimits& limits = {}) {
    auto ignore = [](std::span<const int>, std::span<const double>, double, int) {};
    SearchStats stats = detail::for_each_simple_path(net, source, target, limits, ignore);
    return {stats.paths, stats.truncated};
}

}  // namespace kmap
