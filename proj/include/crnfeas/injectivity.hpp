#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "crnfeas/exactla.hpp"
#include "crnfeas/network.hpp"
#include "crnfeas/signspace.hpp"

namespace crnfeas {

/// Witness that sigma(ker A) meets sigma(B(Sigma(K*))): an x with
/// sign(x) = source_sign in sigma(K)* and sign(Bx) = kernel_sign in
/// sigma(ker A).
struct SigViolation {
    SignVector kernel_sign;
    SignVector source_sign;
    RatVector witness;
};

struct SigConditionVerdict {
    bool holds = true;
    std::optional<SigViolation> violation;
    SignSet kernel_signs;  // sigma(ker A)
    SignSet k_signs;       // sigma(K)
};

/// Decides sigma(ker A) cap sigma(B(Sigma(K*))) = empty by pairwise
/// feasibility probes: for each target s in sigma(ker A) (including the zero
/// sign, which covers Bx = 0) and each nonzero source tau in sigma(K), one
/// exact probe asks for x with sign(x) = tau and sign(Bx) = s. Since
/// diag(kappa) preserves signs for kappa > 0, the single check covers all
/// rate constants.
inline SigConditionVerdict sig_condition(const NetworkMatrices& mats,
                                         const std::vector<RatVector>& k_basis,
                                         std::size_t cap = kDefaultSignCap) {
    SigConditionVerdict verdict;
    verdict.kernel_signs = subspace_signs(kernel_basis(mats.A), mats.r_directed, cap);
    verdict.k_signs = subspace_signs(k_basis, mats.species_count(), cap);

    for (const auto& [target, kernel_witness] : verdict.kernel_signs.elements) {
        (void)kernel_witness;
        for (const auto& [source, source_witness] : verdict.k_signs.elements) {
            if (source.is_zero()) continue;
            (void)source_witness;
            if (auto x = image_sign_reachable(mats.B, source, target)) {
                verdict.holds = false;
                verdict.violation = SigViolation{target, source, *x};
                return verdict;
            }
        }
    }
    return verdict;
}

/// sig_condition with the default K = im(A).
inline SigConditionVerdict sig_condition(const NetworkMatrices& mats,
                                         std::size_t cap = kDefaultSignCap) {
    return sig_condition(mats, mats.A.column_vectors(), cap);
}

struct PhiBVerdict {
    bool injective = true;
    std::optional<SignVector> violating_sign;  // common sign of ker(B) and K*
};

/// phi_B(x) = x^B is injective with respect to K iff
/// sigma(ker B) cap sigma(K*) = empty. Decided by exact sign-set
/// intersection.
inline PhiBVerdict phi_b_injective(const RatMatrix& b, const std::vector<RatVector>& k_basis,
                                   std::size_t cap = kDefaultSignCap) {
    const SignSet kernel_signs = subspace_signs(kernel_basis(b), b.cols(), cap);
    const SignSet k_signs = subspace_signs(k_basis, b.cols(), cap);
    for (const auto& [s, w] : kernel_signs.elements) {
        (void)w;
        if (s.is_zero()) continue;
        if (k_signs.contains(s)) return PhiBVerdict{false, s};
    }
    return PhiBVerdict{true, std::nullopt};
}

/// span(reaction differences in A) subseteq span(reactant complexes in B).
inline bool span_condition(const NetworkMatrices& mats) {
    return span_contained(mats.A.column_vectors(), mats.B.row_vectors());
}

namespace detail {

/// Directed complex graph of the internal reactions: vertex per complex
/// referenced by a non-flow reaction, arc reactant -> product (both arcs for
/// a reversible reaction).
struct ComplexGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    std::vector<std::vector<std::size_t>> out_adj;

    explicit ComplexGraph(const ReactionNetwork& net) {
        std::vector<std::size_t> vertex_of(net.complexes.size(), SIZE_MAX);
        auto vertex = [&](std::size_t complex_idx) {
            if (vertex_of[complex_idx] == SIZE_MAX) vertex_of[complex_idx] = vertices++;
            return vertex_of[complex_idx];
        };
        for (const auto& r : net.reactions) {
            if (r.is_flow) continue;
            const std::size_t u = vertex(r.reactant);
            const std::size_t v = vertex(r.product);
            arcs.emplace_back(u, v);
            if (r.reversible) arcs.emplace_back(v, u);
        }
        out_adj.resize(vertices);
        for (const auto& [u, v] : arcs) out_adj[u].push_back(v);
    }

    std::vector<bool> reachable_from(std::size_t start) const {
        std::vector<bool> seen(vertices, false);
        std::queue<std::size_t> frontier;
        seen[start] = true;
        frontier.push(start);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v : out_adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    frontier.push(v);
                }
            }
        }
        return seen;
    }
};

}  // namespace detail

/// Every connected component of the complex graph is strongly connected;
/// equivalently, every arc lies on a directed cycle.
inline bool weakly_reversible(const ReactionNetwork& net) {
    const detail::ComplexGraph graph(net);
    std::vector<std::vector<bool>> reach;
    reach.reserve(graph.vertices);
    for (std::size_t v = 0; v < graph.vertices; ++v) reach.push_back(graph.reachable_from(v));
    for (const auto& [u, v] : graph.arcs) {
        if (!reach[v][u]) return false;
    }
    return true;
}

enum class ProjectionCase { reactant, product, both };

/// Which of y . [y - y'] and y' . [y - y'] is nonzero; at least one always is
/// for distinct complexes.
inline ProjectionCase complex_projection_nonzero(const Complex& y, const Complex& y_prime) {
    if (y.stoich == y_prime.stoich)
        throw Error("complex_projection_nonzero requires distinct complexes");
    RatVector diff(y.stoich.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = y.stoich[i] - y_prime.stoich[i];
    const bool reactant_nonzero = dot(y.stoich, diff) != 0;
    const bool product_nonzero = dot(y_prime.stoich, diff) != 0;
    if (reactant_nonzero && product_nonzero) return ProjectionCase::both;
    if (reactant_nonzero) return ProjectionCase::reactant;
    if (product_nonzero) return ProjectionCase::product;
    throw InternalInconsistencyError("both complex projections vanished for distinct complexes");
}

/// Number of linkage classes: connected components of the undirected complex
/// graph.
inline std::size_t linkage_classes(const NetworkMatrices& mats) {
    const std::size_t p = mats.complex_count();
    std::vector<std::size_t> parent(p);
    for (std::size_t i = 0; i < p; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& [u, v] : mats.reaction_endpoints) parent[find(u)] = find(v);
    std::size_t classes = 0;
    for (std::size_t i = 0; i < p; ++i)
        if (find(i) == i) ++classes;
    return classes;
}

/// delta = p - l - rank(A), with p complexes and l linkage classes.
inline std::size_t deficiency(const NetworkMatrices& mats) {
    const std::size_t p = mats.complex_count();
    const std::size_t l = linkage_classes(mats);
    const std::size_t rk = rank(mats.A);
    return p - l - rk;
}

struct InjectivityReport {
    SigConditionVerdict sig;
    PhiBVerdict phi_b;
    bool span_holds = false;
    bool weakly_rev = false;
    std::size_t deficiency_index = 0;
    std::size_t kernel_dim = 0;
};

inline InjectivityReport full_report(const ReactionNetwork& net, const NetworkMatrices& mats,
                                     std::size_t cap = kDefaultSignCap) {
    InjectivityReport report;
    const auto k_basis = mats.A.column_vectors();
    report.sig = sig_condition(mats, k_basis, cap);
    report.phi_b = phi_b_injective(mats.B, k_basis, cap);
    report.span_holds = span_condition(mats);
    report.weakly_rev = weakly_reversible(net);
    report.deficiency_index = deficiency(mats);
    report.kernel_dim = mats.r_directed - rank(mats.A);
    return report;
}

}  // namespace crnfeas
