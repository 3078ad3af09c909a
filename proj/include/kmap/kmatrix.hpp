#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "kmap/concept_net.hpp"
#include "kmap/errors.hpp"
#include "kmap/numerics.hpp"
#include "kmap/pathfinder.hpp"

namespace kmap {

// Coupling value from the folded path sums: the EMF-weighted harmonic average
// over all simple paths. No paths means no influence, value 0.
inline double k_pair(const PairAccumulator& acc) {
    if (acc.path_count == 0) return 0.0;
    return acc.sum_emf_over_len / acc.sum_inv_len;
}

inline double k_pair(const ConceptNet& net, int source, int target,
                     const SearchLimits& limits = {}, PairAccumulator* acc_out = nullptr) {
    PairAccumulator acc = accumulate_pair(net, source, target, limits);
    if (acc_out) *acc_out = acc;
    return k_pair(acc);
}

// Full pairwise coupling matrix. values(i,j) is the coupling of node i on
// node j; the diagonal is zero by convention.
struct KMatrix {
    std::vector<std::string> labels;
    DenseMatrix values;
    bool truncated = false;  // some pair hit the length cap
};

struct KMatrixOptions {
    SearchLimits limits;  // applied to every pair independently
    int jobs = 1;         // worker threads
};

// Computes every off-diagonal pair. Pairs are independent, each gets its own
// budget and its own deterministic enumeration, so the result is identical for
// any jobs count; when several pairs fail, the error reported is the one for
// the first failing pair in row-major order, again independent of scheduling.
inline KMatrix k_matrix(const ConceptNet& net, const KMatrixOptions& options = {}) {
    const int n = net.node_count();
    KMatrix result;
    result.labels = net.labels();
    result.values = DenseMatrix(n, n);
    const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<char> truncated(total, 0);
    std::vector<char> stopped(total, 0);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<bool> abort{false};

    SearchLimits pair_limits = options.limits;
    pair_limits.stop = &abort;

    auto run_pair = [&](std::size_t p) {
        const int i = static_cast<int>(p) / n;
        const int j = static_cast<int>(p) % n;
        if (i == j) return;
        try {
            SearchStats stats;
            PairAccumulator acc = accumulate_pair(net, i, j, pair_limits, &stats);
            result.values(i, j) = k_pair(acc);
            truncated[p] = acc.truncated ? 1 : 0;
            stopped[p] = stats.stopped ? 1 : 0;
        } catch (...) {
            errors[p] = std::current_exception();
            abort.store(true, std::memory_order_relaxed);
        }
    };

    const int jobs = options.jobs < 1 ? 1 : options.jobs;
    if (jobs == 1 || total <= 1) {
        for (std::size_t p = 0; p < total; ++p) {
            if (options.limits.stop && options.limits.stop->load(std::memory_order_relaxed)) {
                abort.store(true, std::memory_order_relaxed);
                break;
            }
            run_pair(p);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                if (options.limits.stop && options.limits.stop->load(std::memory_order_relaxed))
                    abort.store(true, std::memory_order_relaxed);
                const std::size_t p = next.fetch_add(1, std::memory_order_relaxed);
                if (p >= total) return;
                run_pair(p);
            }
        };
        std::vector<std::thread> pool;
        const int count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), total));
        pool.reserve(static_cast<std::size_t>(count));
        for (int t = 0; t < count; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    if (options.limits.stop && options.limits.stop->load(std::memory_order_relaxed))
        throw Error("coupling matrix computation cancelled");

    std::size_t first_err = total;
    for (std::size_t p = 0; p < total; ++p)
        if (errors[p]) {
            first_err = p;
            break;
        }
    if (first_err < total) {
        // Report the same failure a sequential run would have hit: any pair
        // ahead of this one in row-major order that the abort broadcast cut
        // short is finished honestly first, and its own failure wins.
        for (std::size_t q = 0; q < first_err; ++q)
            if (stopped[q])
                accumulate_pair(net, static_cast<int>(q) / n, static_cast<int>(q) % n,
                                options.limits);
        std::rethrow_exception(errors[first_err]);
    }
    for (std::size_t p = 0; p < total; ++p)
        if (truncated[p]) {
            result.truncated = true;
            break;
        }
    return result;
}

}  // namespace kmap
