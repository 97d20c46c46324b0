#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnfeas/exactla.hpp"
#include "crnfeas/matrix.hpp"
#include "crnfeas/rational.hpp"

namespace crnfeas {

struct Species {
    std::string name;
    std::size_t index = 0;  // contiguous, first-appearance order
};

/// Formal nonnegative combination of species; the reactant or product side of
/// a reaction. The all-zero complex is permitted (flow reactions).
struct Complex {
    RatVector stoich;   // length n, nonnegative
    std::string label;  // canonical rendering, e.g. "A + B", "2 A", "0"

    bool is_zero() const { return is_zero_vector(stoich); }
};

struct Reaction {
    std::size_t reactant = 0;  // complex index
    std::size_t product = 0;   // complex index
    bool reversible = false;
    Rational kf;                  // > 0
    std::optional<Rational> kb;   // present iff reversible
    std::string label;
    bool is_flow = false;  // CFSTR inflow/outflow pseudo-reaction
};

/// Parsed and validated reaction network. Species indices are contiguous and
/// complexes are deduplicated by stoichiometry vector.
struct ReactionNetwork {
    std::vector<Species> species;
    std::vector<Complex> complexes;
    std::vector<Reaction> reactions;

    // Set by expand_directed. Directed reactions are ordered with the r'
    // forward directions of reversible reactions first, their reverses at
    // indices r'..2r'-1 (pair i <-> i+r'), and irreversible reactions after.
    bool directed = false;
    std::size_t reversible_pairs = 0;
    std::vector<std::size_t> directed_origin;  // directed index -> declared index

    // CFSTR bookkeeping, set by augment_cfstr.
    std::optional<std::size_t> flow_reaction;
    RatVector feed;

    std::size_t species_count() const { return species.size(); }
    std::size_t reaction_count() const { return reactions.size(); }

    std::size_t internal_reaction_count() const {
        std::size_t n = 0;
        for (const auto& r : reactions)
            if (!r.is_flow) ++n;
        return n;
    }

    bool fully_reversible() const {
        for (const auto& r : reactions)
            if (!r.reversible) return false;
        return !reactions.empty();
    }
};

inline std::string complex_label(const RatVector& stoich, const std::vector<Species>& species) {
    std::string out;
    for (std::size_t i = 0; i < stoich.size(); ++i) {
        if (stoich[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (stoich[i] != 1) out += to_string(stoich[i]) + " ";
        out += species[i].name;
    }
    return out.empty() ? "0" : out;
}

/// Finds the complex with the given stoichiometry, adding it if absent.
inline std::size_t find_or_add_complex(ReactionNetwork& net, const RatVector& stoich) {
    for (std::size_t i = 0; i < net.complexes.size(); ++i) {
        if (net.complexes[i].stoich == stoich) return i;
    }
    for (const auto& q : stoich) {
        if (q < 0) throw Error("complex with negative stoichiometric coefficient");
    }
    net.complexes.push_back(Complex{stoich, complex_label(stoich, net.species)});
    return net.complexes.size() - 1;
}

/// Replaces each reversible reaction by two directed ones. Forward directions
/// occupy indices 0..r'-1 and their reverses r'..2r'-1, so the pair of
/// directed reaction i is i+r'; irreversible reactions follow.
inline ReactionNetwork expand_directed(const ReactionNetwork& net) {
    ReactionNetwork out;
    out.species = net.species;
    out.complexes = net.complexes;
    out.feed = net.feed;

    std::vector<Reaction> forwards, backwards, oneway;
    std::vector<std::size_t> fwd_origin, oneway_origin;
    std::optional<std::size_t> flow_declared;
    for (std::size_t i = 0; i < net.reactions.size(); ++i) {
        const Reaction& r = net.reactions[i];
        if (r.reversible) {
            Reaction f = r;
            f.reversible = false;
            f.kb.reset();
            forwards.push_back(f);
            fwd_origin.push_back(i);

            Reaction b;
            b.reactant = r.product;
            b.product = r.reactant;
            b.reversible = false;
            b.kf = *r.kb;
            b.label = r.label + "_rev";
            backwards.push_back(b);
        } else {
            oneway.push_back(r);
            oneway_origin.push_back(i);
            if (r.is_flow) flow_declared = oneway.size() - 1;
        }
    }

    out.reversible_pairs = forwards.size();
    out.reactions = forwards;
    out.reactions.insert(out.reactions.end(), backwards.begin(), backwards.end());
    out.reactions.insert(out.reactions.end(), oneway.begin(), oneway.end());

    out.directed_origin = fwd_origin;
    out.directed_origin.insert(out.directed_origin.end(), fwd_origin.begin(), fwd_origin.end());
    out.directed_origin.insert(out.directed_origin.end(), oneway_origin.begin(), oneway_origin.end());

    if (flow_declared) out.flow_reaction = 2 * forwards.size() + *flow_declared;
    out.directed = true;
    return out;
}

/// Adds the CFSTR inflow/outflow pseudo-reaction: reactant complex y* = feed,
/// product marked as the state-tracking outflow (represented by the zero
/// complex; the dynamics layer adds the c - x response). Rate kappa* = 1.
inline ReactionNetwork augment_cfstr(const ReactionNetwork& net, const RatVector& feed) {
    if (feed.size() != net.species_count())
        throw DimensionError("augment_cfstr: feed length does not match species count");
    for (const auto& c : feed) {
        if (c <= 0) throw Error("augment_cfstr: feed must be strictly positive");
    }
    if (net.flow_reaction) throw Error("augment_cfstr: network already has a flow reaction");

    ReactionNetwork out = net;
    const std::size_t inflow = find_or_add_complex(out, feed);
    const std::size_t outflow = find_or_add_complex(out, RatVector(net.species_count(), Rational(0)));

    Reaction flow;
    flow.reactant = inflow;
    flow.product = outflow;
    flow.reversible = false;
    flow.kf = 1;
    flow.label = "_flow";
    flow.is_flow = true;
    out.reactions.push_back(flow);
    out.flow_reaction = out.reactions.size() - 1;
    out.feed = feed;
    if (out.directed) out.directed_origin.push_back(out.reactions.size() - 1);
    return out;
}

/// Exact matrices of the directed-expanded network. The flow pseudo-reaction,
/// when present, is bookkeeping only and never enters A, B, S or E; the
/// dynamics layer accounts for it separately.
struct NetworkMatrices {
    RatMatrix A;  // n x r_directed, columns [y' - y]
    RatMatrix B;  // r_directed x n, rows = reactant complexes
    RatMatrix S;  // n x p, columns = complex stoichiometries
    RatMatrix E;  // p x r_directed incidence, -1 at reactant, +1 at product
    std::size_t r_directed = 0;
    std::size_t reversible_pairs = 0;

    std::size_t species_count() const { return A.rows(); }
    std::size_t complex_count() const { return S.cols(); }

    // Per S column, the index of the complex in the network's complex list.
    std::vector<std::size_t> complex_of_column;
    // Per directed reaction, (reactant, product) as S column indices.
    std::vector<std::pair<std::size_t, std::size_t>> reaction_endpoints;
};

inline NetworkMatrices build_matrices(const ReactionNetwork& net) {
    if (!net.directed) {
        for (const auto& r : net.reactions) {
            if (r.reversible) throw Error("build_matrices requires a directed-expanded network");
        }
    }

    const std::size_t n = net.species_count();
    NetworkMatrices m;
    m.reversible_pairs = net.reversible_pairs;

    // Complexes referenced by internal reactions, in network order.
    std::vector<bool> used(net.complexes.size(), false);
    for (const auto& r : net.reactions) {
        if (r.is_flow) continue;
        used[r.reactant] = true;
        used[r.product] = true;
    }
    std::vector<std::size_t> col_of_complex(net.complexes.size(), SIZE_MAX);
    for (std::size_t i = 0; i < net.complexes.size(); ++i) {
        if (used[i]) {
            col_of_complex[i] = m.complex_of_column.size();
            m.complex_of_column.push_back(i);
        }
    }
    const std::size_t p = m.complex_of_column.size();

    std::size_t r_dir = 0;
    for (const auto& r : net.reactions)
        if (!r.is_flow) ++r_dir;
    m.r_directed = r_dir;

    m.A = RatMatrix(n, r_dir);
    m.B = RatMatrix(r_dir, n);
    m.S = RatMatrix(n, p);
    m.E = RatMatrix(p, r_dir);

    for (std::size_t c = 0; c < p; ++c) {
        const RatVector& y = net.complexes[m.complex_of_column[c]].stoich;
        for (std::size_t i = 0; i < n; ++i) m.S(i, c) = y[i];
    }

    std::size_t j = 0;
    for (const auto& r : net.reactions) {
        if (r.is_flow) continue;
        const RatVector& y = net.complexes[r.reactant].stoich;
        const RatVector& yp = net.complexes[r.product].stoich;
        bool nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            m.A(i, j) = yp[i] - y[i];
            m.B(j, i) = y[i];
            if (m.A(i, j) != 0) nonzero = true;
        }
        if (!nonzero) throw Error("reaction '" + r.label + "' has identical reactant and product");
        const std::size_t rc = col_of_complex[r.reactant];
        const std::size_t pc = col_of_complex[r.product];
        m.E(rc, j) -= 1;
        m.E(pc, j) += 1;
        m.reaction_endpoints.emplace_back(rc, pc);
        ++j;
    }

    if (!(m.S * m.E == m.A))
        throw InternalInconsistencyError("A = S*E decomposition failed verification");
    return m;
}

/// Net stoichiometric matrix with one column per declared internal reaction
/// in declared order; for a reversible reaction the column is its forward
/// direction. Flux patterns given per declared reaction act on this matrix.
struct DeclaredView {
    RatMatrix ahat;                            // n x r_declared
    std::vector<std::size_t> directed_column;  // declared index -> A column
    std::vector<bool> reversible;              // declared index -> reversibility
};

inline DeclaredView declared_view(const ReactionNetwork& declared, const ReactionNetwork& expanded,
                                  const NetworkMatrices& mats) {
    if (!expanded.directed) throw Error("declared_view requires a directed-expanded network");
    const std::size_t r_declared = declared.internal_reaction_count();

    std::vector<std::size_t> col_of_expanded(expanded.reactions.size(), SIZE_MAX);
    std::size_t col = 0;
    for (std::size_t i = 0; i < expanded.reactions.size(); ++i) {
        if (!expanded.reactions[i].is_flow) col_of_expanded[i] = col++;
    }

    DeclaredView view;
    view.directed_column.assign(r_declared, SIZE_MAX);
    const std::size_t pairs = expanded.reversible_pairs;
    for (std::size_t i = 0; i < expanded.reactions.size(); ++i) {
        if (expanded.reactions[i].is_flow) continue;
        if (i >= pairs && i < 2 * pairs) continue;  // reverse directions collapse into forward
        const std::size_t origin = expanded.directed_origin.at(i);
        if (origin >= r_declared)
            throw InternalInconsistencyError("directed origin outside declared range");
        view.directed_column[origin] = col_of_expanded[i];
    }

    view.ahat = RatMatrix(mats.A.rows(), r_declared);
    view.reversible.assign(r_declared, false);
    std::size_t d = 0;
    for (const auto& r : declared.reactions) {
        if (r.is_flow) continue;
        const std::size_t c = view.directed_column.at(d);
        if (c == SIZE_MAX) throw InternalInconsistencyError("declared reaction missing a column");
        for (std::size_t row = 0; row < mats.A.rows(); ++row) view.ahat(row, d) = mats.A(row, c);
        view.reversible[d] = r.reversible;
        ++d;
    }
    return view;
}

/// Canonical DSL rendering; parse(serialize(net)) reproduces the network.
/// Flow pseudo-reactions are bookkeeping and have no DSL form.
inline std::string serialize_network(const ReactionNetwork& net) {
    std::string out;
    for (const auto& r : net.reactions) {
        if (r.is_flow) continue;
        out += r.label + ": " + net.complexes[r.reactant].label;
        out += r.reversible ? " <-> " : " -> ";
        out += net.complexes[r.product].label + " ; kf=" + to_string(r.kf);
        if (r.kb) out += " kb=" + to_string(*r.kb);
        out += "\n";
    }
    return out;
}

}  // namespace crnfeas
