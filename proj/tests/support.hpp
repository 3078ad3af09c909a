#pragma once

// Shared helpers for the test suite: a deterministic RNG whose stream is
// identical on every platform, plus random-network generators used by the
// property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kmap/kmap.hpp"

namespace testutil {

// mt19937_64 produces the same bit stream everywhere; mapping the raw bits to
// doubles by hand avoids the implementation-defined behaviour of
// std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1), 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Uniform integer in [lo, hi], both ends included.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 eng_;
};

inline std::vector<std::string> numbered_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i + 1));
    return labels;
}

// Random digraph: every ordered off-diagonal pair carries an edge with
// probability p, weights uniform in [-2, 2].
inline kmap::ConceptNet random_net(Rng& rng, int n, double p = 0.3) {
    const std::vector<std::string> labels = numbered_labels(n);
    std::vector<kmap::EdgeSpec> edges;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rng.bernoulli(p))
                edges.push_back({labels[static_cast<std::size_t>(i)],
                                 labels[static_cast<std::size_t>(j)], rng.uniform(-2.0, 2.0)});
        }
    return kmap::ConceptNet(labels, edges);
}

// Random DAG: edges only run from lower to higher index, so every walk is a
// simple path and path counts have an easy dynamic-programming oracle.
inline kmap::ConceptNet random_dag(Rng& rng, int n, double p = 0.4) {
    const std::vector<std::string> labels = numbered_labels(n);
    std::vector<kmap::EdgeSpec> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p))
                edges.push_back({labels[static_cast<std::size_t>(i)],
                                 labels[static_cast<std::size_t>(j)], rng.uniform(-2.0, 2.0)});
    return kmap::ConceptNet(labels, edges);
}

// The four-node demonstration net with unit weights.
inline kmap::ConceptNet demo4() {
    return kmap::ConceptNet({"alpha", "1", "2", "beta"},
                            {{"alpha", "1", 1.0},
                             {"alpha", "2", 1.0},
                             {"1", "2", 1.0},
                             {"1", "beta", 1.0},
                             {"2", "alpha", 1.0},
                             {"2", "1", 1.0},
                             {"2", "beta", 1.0},
                             {"beta", "1", 1.0}});
}

}  // namespace testutil
