#pragma once

#include <string>
#include <vector>

#include "kmap/concept_net.hpp"
#include "kmap/errors.hpp"
#include "kmap/numerics.hpp"
#include "kmap/pathfinder.hpp"

namespace kmap {

// One unit resistor with an EMF source, standing in for one edge of an
// original path. from/to are node indices in the source net, kept for
// labelling only — the electrical wiring is positional within the chain.
struct ChainBranch {
    double emf = 0.0;
    int edge_from = 0;
    int edge_to = 0;
};

// One simple path rendered as a series chain of branches.
struct CircuitChain {
    std::vector<ChainBranch> branches;

    int length() const { return static_cast<int>(branches.size()); }

    double total_emf() const {
        double s = 0.0;
        for (const ChainBranch& b : branches) s += b.emf;
        return s;
    }
};

// The equivalent circuit for one node pair: every chain runs from the alpha
// terminal to the beta terminal and chains share no interior nodes, so the
// whole thing is a parallel bank of series chains.
//
// Circuit node ids: 0 = alpha, 1 = beta, interior nodes packed afterwards in
// chain order (chain m of length N contributes N-1 of them).
struct CircuitGraph {
    std::string alpha_label;
    std::string beta_label;
    std::vector<CircuitChain> chains;
    bool truncated = false;  // set when a length cap cut the path set short

    int internal_node_count() const {
        int n = 0;
        for (const CircuitChain& c : chains) n += c.length() - 1;
        return n;
    }

    int node_count() const { return 2 + internal_node_count(); }
};

inline CircuitGraph build_circuit(const ConceptNet& net, int source, int target,
                                  const SearchLimits& limits = {}) {
    CircuitGraph circuit;
    circuit.alpha_label = net.label(source);
    circuit.beta_label = net.label(target);
    auto add_chain = [&](std::span<const int> nodes, std::span<const double> weights, double,
                         int length) {
        CircuitChain chain;
        chain.branches.reserve(static_cast<std::size_t>(length));
        for (int k = 0; k < length; ++k)
            chain.branches.push_back({weights[static_cast<std::size_t>(k)],
                                      nodes[static_cast<std::size_t>(k)],
                                      nodes[static_cast<std::size_t>(k) + 1]});
        circuit.chains.push_back(std::move(chain));
    };
    SearchStats stats = detail::for_each_simple_path(net, source, target, limits, add_chain);
    circuit.truncated = stats.truncated;
    return circuit;
}

struct CircuitSolution {
    std::vector<double> potentials;      // by circuit node id; potentials[0] == 0
    std::vector<double> chain_currents;  // positive = flowing alpha -> beta
    double k_value = 0.0;                // potential of the beta terminal
};

// Solves the circuit by nodal analysis: unknown potentials at every node but
// the grounded alpha terminal, one current-balance equation per unknown, each
// branch a unit resistance with an EMF pushing along the original path
// direction. The beta potential is the coupling value.
inline CircuitSolution solve_circuit_nodal(const CircuitGraph& circuit) {
    if (circuit.chains.empty()) throw Error("circuit has no chains to solve");
    const int unknowns = 1 + circuit.internal_node_count();  // beta + interior
    DenseMatrix a(unknowns, unknowns);
    std::vector<double> rhs(static_cast<std::size_t>(unknowns), 0.0);

    // Branch from circuit node u to circuit node v with EMF e carries current
    // I = phi_u - phi_v + e. KCL row for node x sums inflow minus outflow.
    auto stamp = [&](int u, int v, double e) {
        const int rv = v - 1;  // v is never alpha
        a(rv, rv) -= 1.0;
        if (u != 0) a(rv, u - 1) += 1.0;
        rhs[static_cast<std::size_t>(rv)] -= e;
        if (u != 0) {
            const int ru = u - 1;
            a(ru, ru) -= 1.0;
            a(ru, rv) += 1.0;
            rhs[static_cast<std::size_t>(ru)] += e;
        }
    };

    int next_internal = 2;
    for (const CircuitChain& chain : circuit.chains) {
        int prev = 0;  // alpha
        for (int k = 0; k < chain.length(); ++k) {
            const bool last = k == chain.length() - 1;
            const int here = last ? 1 : next_internal++;
            stamp(prev, here, chain.branches[static_cast<std::size_t>(k)].emf);
            prev = here;
        }
    }

    std::vector<double> phi = solve_linear(a, rhs);
    CircuitSolution sol;
    sol.potentials.assign(static_cast<std::size_t>(circuit.node_count()), 0.0);
    for (int id = 1; id < circuit.node_count(); ++id)
        sol.potentials[static_cast<std::size_t>(id)] = phi[static_cast<std::size_t>(id - 1)];
    sol.k_value = sol.potentials[1];

    // Series chain: current through the first branch is the chain current.
    next_internal = 2;
    for (const CircuitChain& chain : circuit.chains) {
        const int first_end = chain.length() == 1 ? 1 : next_internal;
        next_internal += chain.length() - 1;
        sol.chain_currents.push_back(chain.branches.front().emf -
                                     sol.potentials[static_cast<std::size_t>(first_end)]);
    }
    return sol;
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

// Graphviz rendering of the equivalent circuit: undirected edges (resistors
// have no arrows) labelled with their EMF, terminals drawn double. Interior
// node p<m>_<k> is the k-th junction of the m-th chain, both 1-based.
inline std::string export_circuit_dot(const CircuitGraph& circuit) {
    std::string out = "graph circuit {\n";
    out += "  node [shape=circle];\n";
    out += "  " + detail::dot_quote(circuit.alpha_label) + " [shape=doublecircle];\n";
    out += "  " + detail::dot_quote(circuit.beta_label) + " [shape=doublecircle];\n";
    for (std::size_t m = 0; m < circuit.chains.size(); ++m) {
        const CircuitChain& chain = circuit.chains[m];
        std::string prev = detail::dot_quote(circuit.alpha_label);
        for (int k = 0; k < chain.length(); ++k) {
            std::string here = k == chain.length() - 1
                                   ? detail::dot_quote(circuit.beta_label)
                                   : detail::dot_quote("p" + std::to_string(m + 1) + "_" +
                                                       std::to_string(k + 1));
            out += "  " + prev + " -- " + here + " [label=\"" +
                   format_sig9(chain.branches[static_cast<std::size_t>(k)].emf) + "\"];\n";
            prev = std::move(here);
        }
    }
    out += "}\n";
    return out;
}

}  // namespace kmap
