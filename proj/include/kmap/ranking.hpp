#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "kmap/errors.hpp"
#include "kmap/impulse.hpp"
#include "kmap/kmatrix.hpp"
#include "kmap/numerics.hpp"

namespace kmap {

enum class Measure {
    pressure,             // signed column sums of the coupling matrix
    influence,            // signed row sums of the coupling matrix
    amplitude_pressure,   // absolute-value column sums
    amplitude_influence,  // absolute-value row sums
    impulse_pressure,     // Omega column sums, diagonal off
    impulse_influence,    // Omega row sums, diagonal off
};

inline const char* measure_name(Measure m) {
    switch (m) {
        case Measure::pressure: return "pressure";
        case Measure::influence: return "influence";
        case Measure::amplitude_pressure: return "amplitude-pressure";
        case Measure::amplitude_influence: return "amplitude-influence";
        case Measure::impulse_pressure: return "impulse-pressure";
        case Measure::impulse_influence: return "impulse-influence";
    }
    return "?";
}

// One per-node score vector, tagged with where it came from.
struct MeasureVector {
    Measure kind = Measure::pressure;
    std::vector<std::string> labels;
    std::vector<double> values;
};

namespace detail {

template <typename Map>
inline std::vector<double> column_sums_off_diag(const DenseMatrix& m, Map&& f) {
    if (!m.square()) throw Error("measure needs a square matrix");
    std::vector<double> s(static_cast<std::size_t>(m.cols()), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) s[static_cast<std::size_t>(j)] += f(m(i, j));
    return s;
}

template <typename Map>
inline std::vector<double> row_sums_off_diag(const DenseMatrix& m, Map&& f) {
    if (!m.square()) throw Error("measure needs a square matrix");
    std::vector<double> s(static_cast<std::size_t>(m.rows()), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) s[static_cast<std::size_t>(i)] += f(m(i, j));
    return s;
}

inline double keep_sign(double v) { return v; }
inline double drop_sign(double v) { return std::abs(v); }

}  // namespace detail

// How hard the rest of the net pushes on each node: column sums of K.
inline MeasureVector pressure(const KMatrix& k) {
    return {Measure::pressure, k.labels, detail::column_sums_off_diag(k.values, detail::keep_sign)};
}

// How hard each node pushes on the rest of the net: row sums of K.
inline MeasureVector influence(const KMatrix& k) {
    return {Measure::influence, k.labels, detail::row_sums_off_diag(k.values, detail::keep_sign)};
}

// Same sums with the signs dropped: overall coupling strength regardless of
// whether the push is promoting or suppressing.
inline MeasureVector amplitude_pressure(const KMatrix& k) {
    return {Measure::amplitude_pressure, k.labels,
            detail::column_sums_off_diag(k.values, detail::drop_sign)};
}

inline MeasureVector amplitude_influence(const KMatrix& k) {
    return {Measure::amplitude_influence, k.labels,
            detail::row_sums_off_diag(k.values, detail::drop_sign)};
}

inline MeasureVector impulse_pressure(const ImpulseResult& r, std::vector<std::string> labels) {
    return {Measure::impulse_pressure, std::move(labels), r.psi_imp};
}

inline MeasureVector impulse_influence(const ImpulseResult& r, std::vector<std::string> labels) {
    return {Measure::impulse_influence, std::move(labels), r.v_imp};
}

// ranks[i] is the 1-based rank of node i: rank 1 for the largest value, ties
// resolved toward the lower node index.
struct RankVector {
    std::vector<int> ranks;
};

inline RankVector rank_nodes(const std::vector<double>& values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
    });
    RankVector out;
    out.ranks.assign(values.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r)
        out.ranks[static_cast<std::size_t>(order[r])] = static_cast<int>(r) + 1;
    return out;
}

inline RankVector rank_nodes(const MeasureVector& m) { return rank_nodes(m.values); }

// One off-diagonal, nonzero coupling entry; element_ranking returns them
// strongest-first.
struct RankedElement {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

inline std::vector<RankedElement> element_ranking(const KMatrix& k) {
    std::vector<RankedElement> items;
    for (int i = 0; i < k.values.rows(); ++i)
        for (int j = 0; j < k.values.cols(); ++j) {
            if (i == j || k.values(i, j) == 0.0) continue;
            items.push_back({i, j, k.values(i, j)});
        }
    std::stable_sort(items.begin(), items.end(), [](const RankedElement& a, const RankedElement& b) {
        return a.value > b.value;  // stable sort keeps (row, col) order among ties
    });
    return items;
}

struct RankCorrelation {
    double spearman = 0.0;
    double kendall = 0.0;
};

// Agreement between two rankings of the same nodes. Both vectors here are
// permutations (ties were already resolved), so the plain formulas apply:
// Spearman from squared rank differences, Kendall from pair orderings.
inline RankCorrelation rank_correlation(const RankVector& a, const RankVector& b) {
    if (a.ranks.size() != b.ranks.size()) throw Error("rank vectors differ in length");
    const std::size_t n = a.ranks.size();
    if (n == 0) throw Error("rank correlation needs at least one node");
    if (n == 1) return {1.0, 1.0};

    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.ranks[i] - b.ranks[i];
        d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    RankCorrelation c;
    c.spearman = 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));

    long long balance = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const int da = a.ranks[i] - a.ranks[j];
            const int db = b.ranks[i] - b.ranks[j];
            const long long prod = static_cast<long long>(da) * db;
            if (prod > 0)
                ++balance;
            else if (prod < 0)
                --balance;
        }
    c.kendall = 2.0 * static_cast<double>(balance) / (nn * (nn - 1.0));
    return c;
}

}  // namespace kmap
