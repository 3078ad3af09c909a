#pragma once

#include <cstddef>
#include <vector>

#include "kmap/concept_net.hpp"
#include "kmap/errors.hpp"
#include "kmap/numerics.hpp"

namespace kmap {

// Step-by-step pulse propagation. An initial pulse vector p0 travels along
// edge direction — W(i,j) weighs the edge i -> j, so one step moves value from
// component i to component j — and node values accumulate every pulse that
// arrives:
//
//   V(n) = v_init + sum_{k=0..n} pulse_k,   pulse_0 = p0,
//   pulse_{k+1}(j) = sum_i W(i,j) * pulse_k(i).
struct ImpulseTrajectory {
    std::vector<std::vector<double>> states;  // V(0) .. V(steps)
    std::vector<double> p0;
    std::vector<double> v_init;
    bool diverging = false;  // pulse magnitude refused to decay
};

inline ImpulseTrajectory impulse_series(const DenseMatrix& w, std::vector<double> p0,
                                        std::vector<double> v_init, int steps) {
    if (!w.square()) throw Error("impulse series needs a square matrix");
    const int n = w.rows();
    if (static_cast<int>(p0.size()) != n || static_cast<int>(v_init.size()) != n)
        throw Error("impulse vectors must have one entry per node");
    if (steps < 0) throw Error("impulse step count must be non-negative");

    ImpulseTrajectory traj;
    traj.p0 = std::move(p0);
    traj.v_init = std::move(v_init);
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);

    std::vector<double> term = traj.p0;
    std::vector<double> v = traj.v_init;
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] += term[static_cast<std::size_t>(i)];
    traj.states.push_back(v);

    // Divergence heuristic: ten consecutive steps where the pulse norm fails
    // to shrink (and is not zero) mark the series as diverging. A two-cycle
    // with loop gain above 1 alternates between equal and doubled norms, so a
    // strict-growth test would never fire.
    double prev_norm = inf_norm(term);
    int growth_run = 0;
    for (int s = 1; s <= steps; ++s) {
        term = apply_transposed(w, term);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] += term[static_cast<std::size_t>(i)];
        traj.states.push_back(v);
        const double norm = inf_norm(term);
        if (norm > 0.0 && norm >= prev_norm) {
            if (++growth_run >= 10) traj.diverging = true;
        } else {
            growth_run = 0;
        }
        prev_norm = norm;
    }
    return traj;
}

inline ImpulseTrajectory impulse_series(const ConceptNet& net, std::vector<double> p0,
                                        std::vector<double> v_init, int steps) {
    return impulse_series(net.to_dense(), std::move(p0), std::move(v_init), steps);
}

// Closed form of the propagation: when the pulses decay, the accumulated
// series sums to Omega = (I - W)^{-1}. Column sums of Omega (own entry
// excluded) say how strongly the rest of the net settles on a node; row sums
// (own entry excluded) say how strongly a node settles on the rest.
struct ImpulseResult {
    DenseMatrix omega;            // (I - W)^{-1}
    SpectralEstimate rho;         // spectral radius estimate of W
    bool converged = false;       // the step-by-step series would converge
    std::vector<double> psi_imp;  // incoming totals per node
    std::vector<double> v_imp;    // outgoing totals per node
};

// Omega is still returned when the series itself would diverge — it is then a
// formal object, flagged by converged=false — but a genuinely singular I - W
// raises SingularMatrixError.
inline ImpulseResult impulse_closed_form(const DenseMatrix& w) {
    if (!w.square()) throw Error("impulse closed form needs a square matrix");
    const int n = w.rows();
    ImpulseResult r;
    r.rho = spectral_radius(w);
    r.converged = r.rho.converged && r.rho.rho < 1.0;
    r.omega = invert(DenseMatrix::identity(n) - w);
    r.psi_imp.assign(static_cast<std::size_t>(n), 0.0);
    r.v_imp.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            r.psi_imp[static_cast<std::size_t>(j)] += r.omega(i, j);
            r.v_imp[static_cast<std::size_t>(i)] += r.omega(i, j);
        }
    return r;
}

inline ImpulseResult impulse_closed_form(const ConceptNet& net) {
    return impulse_closed_form(net.to_dense());
}

// Limit of the propagation for one initial pulse, via a single linear solve
// rather than a full inversion. Only meaningful when the series converges;
// check with spectral_radius or impulse_closed_form first.
inline std::vector<double> impulse_steady_state(const DenseMatrix& w,
                                                const std::vector<double>& p0,
                                                const std::vector<double>& v_init) {
    if (!w.square()) throw Error("impulse steady state needs a square matrix");
    const int n = w.rows();
    if (static_cast<int>(p0.size()) != n || static_cast<int>(v_init.size()) != n)
        throw Error("impulse vectors must have one entry per node");
    std::vector<double> x = solve_linear((DenseMatrix::identity(n) - w).transpose(), p0);
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += v_init[static_cast<std::size_t>(i)];
    return x;
}

inline std::vector<double> impulse_steady_state(const ConceptNet& net,
                                                const std::vector<double>& p0,
                                                const std::vector<double>& v_init) {
    return impulse_steady_state(net.to_dense(), p0, v_init);
}

// Incoming total for one node straight from Omega, by the settle-a-masked-
// pulse route: unit pulses everywhere except beta itself. Deliberately a
// different code path from impulse_closed_form's column sums; the two must
// agree.
inline double impulse_pressure_single(const DenseMatrix& omega, int beta) {
    if (!omega.square()) throw Error("impulse pressure needs a square matrix");
    if (beta < 0 || beta >= omega.rows()) throw Error("node index out of range");
    std::vector<double> mask(static_cast<std::size_t>(omega.rows()), 1.0);
    mask[static_cast<std::size_t>(beta)] = 0.0;
    return apply_transposed(omega, mask)[static_cast<std::size_t>(beta)];
}

}  // namespace kmap
