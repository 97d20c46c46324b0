#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crnfeas/matrix.hpp"
#include "crnfeas/network.hpp"
#include "crnfeas/signspace.hpp"
#include "crnfeas/simplex.hpp"

namespace crnfeas {

/// Flux direction pattern, one entry per declared reaction (a reversible pair
/// counts once).
struct FluxPattern {
    SignVector nu;

    std::size_t size() const { return nu.size(); }

    /// Irreversible reactions only admit their declared direction (+) or 0.
    void validate_against(const ReactionNetwork& declared) const {
        if (nu.size() != declared.internal_reaction_count())
            throw DimensionError("flux pattern length does not match reaction count");
        std::size_t i = 0;
        for (const auto& r : declared.reactions) {
            if (r.is_flow) continue;
            if (!r.reversible && nu[i] < 0)
                throw Error("flux pattern runs irreversible reaction '" + r.label + "' backwards");
            ++i;
        }
    }
};

/// Branch (a): a nonzero nonnegative kernel vector of the doubled matrix with
/// a strict forward/backward imbalance. Witnesses thermodynamic infeasibility.
struct LoopCertificate {
    RatVector z;     // doubled form, nonnegative, length 2r
    RatVector zhat;  // net form zhat_i = z_i - z_{i+r}, length r
    std::size_t strict_index = 0;  // j with z_j != z_{j+r}
};

/// Branch (b): a species potential whose induced reaction affinities strictly
/// oppose every nonzero flux direction.
struct PotentialCertificate {
    RatVector gamma;
};

using FeasibilityVerdict = std::variant<LoopCertificate, PotentialCertificate>;

inline bool is_loop(const FeasibilityVerdict& v) {
    return std::holds_alternative<LoopCertificate>(v);
}

/// A = (Ahat, -Ahat); z_i = max(zhat_i, 0), z_{i+r} = -min(zhat_i, 0).
inline std::pair<RatMatrix, RatVector> double_transform(const RatMatrix& ahat, const RatVector& zhat) {
    if (zhat.size() != ahat.cols()) throw DimensionError("double_transform: zhat length != columns");
    const std::size_t r = ahat.cols();
    RatVector z(2 * r, Rational(0));
    for (std::size_t i = 0; i < r; ++i) {
        if (zhat[i] > 0)
            z[i] = zhat[i];
        else
            z[i + r] = -zhat[i];
    }
    return {ahat.hcat(-ahat), std::move(z)};
}

inline void check_pairing(const RatMatrix& a) {
    if (a.cols() % 2 != 0)
        throw PairingError("matrix has an odd number of columns; expected paired form");
    const std::size_t r = a.cols() / 2;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t row = 0; row < a.rows(); ++row) {
            if (a(row, i) != -a(row, i + r))
                throw PairingError("column " + std::to_string(i + r) +
                                   " is not the negation of column " + std::to_string(i));
        }
    }
}

/// Inverse of double_transform on the net flux: zhat_i = z_i - z_{i+r}.
inline std::pair<RatMatrix, RatVector> halve_transform(const RatMatrix& a, const RatVector& z) {
    check_pairing(a);
    if (z.size() != a.cols()) throw DimensionError("halve_transform: z length != columns");
    const std::size_t r = a.cols() / 2;
    RatMatrix ahat(a.rows(), r);
    for (std::size_t row = 0; row < a.rows(); ++row)
        for (std::size_t i = 0; i < r; ++i) ahat(row, i) = a(row, i);
    RatVector zhat(r);
    for (std::size_t i = 0; i < r; ++i) zhat[i] = z[i] - z[i + r];
    return {std::move(ahat), std::move(zhat)};
}

namespace detail {

/// Loop probe for the bidirectional form: zhat with sign(zhat_i) in
/// {nu_i, 0}, Ahat zhat = 0, and zhat strictly signed at one position.
inline std::optional<RatVector> bidirectional_loop(const RatMatrix& ahat, const SignVector& nu) {
    const std::size_t r = ahat.cols();
    std::vector<SignTag> base(r);
    for (std::size_t i = 0; i < r; ++i) base[i] = weak_tag(nu[i]);
    for (std::size_t probe = 0; probe < r; ++probe) {
        if (nu[probe] == 0) continue;
        std::vector<SignTag> tags = base;
        tags[probe] = strict_tag(nu[probe]);
        if (auto w = strict_feasible(LinearSystem::make(ahat, tags))) return w;
    }
    return std::nullopt;
}

/// Potential probe: gamma with sign((Ahat^T gamma)_i) = -nu_i wherever
/// nu_i != 0; the affinity is unconstrained at zero-flux reactions.
inline std::optional<RatVector> bidirectional_potential(const RatMatrix& ahat, const SignVector& nu) {
    const std::size_t n = ahat.rows();
    const std::size_t r = ahat.cols();
    RatMatrix eq(r, n + r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t s = 0; s < n; ++s) eq(i, s) = ahat(s, i);
        eq(i, n + i) = -1;
    }
    std::vector<SignTag> tags(n + r, SignTag::free_);
    for (std::size_t i = 0; i < r; ++i) {
        if (nu[i] != 0) tags[n + i] = strict_tag(-nu[i]);
    }
    auto w = strict_feasible(LinearSystem::make(eq, tags));
    if (!w) return std::nullopt;
    return RatVector(w->begin(), w->begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace detail

/// Gordan alternative in the bidirectional (net-flux) form. Returns exactly
/// one certificate; the dichotomy is re-verified and its violation raises an
/// internal error.
inline FeasibilityVerdict gordan_alternative(const RatMatrix& ahat, const FluxPattern& pattern) {
    if (pattern.size() != ahat.cols())
        throw DimensionError("gordan_alternative: flux pattern length != matrix columns");
    const SignVector& nu = pattern.nu;

    auto loop_w = detail::bidirectional_loop(ahat, nu);
    auto pot_w = detail::bidirectional_potential(ahat, nu);
    if (static_cast<bool>(loop_w) == static_cast<bool>(pot_w))
        throw InternalInconsistencyError("Gordan dichotomy violated: both branches " +
                                         std::string(loop_w ? "feasible" : "infeasible"));

    if (loop_w) {
        LoopCertificate cert;
        cert.zhat = *loop_w;
        cert.z = double_transform(ahat, cert.zhat).second;
        const std::size_t r = ahat.cols();
        for (std::size_t j = 0; j < r; ++j) {
            if (cert.z[j] != cert.z[j + r]) {
                cert.strict_index = j;
                break;
            }
        }
        return cert;
    }
    return PotentialCertificate{*pot_w};
}

/// Gordan alternative on the doubled (unidirectional, all-nonnegative) form.
/// The matrix must satisfy the pairing convention column(i+r) = -column(i).
inline FeasibilityVerdict gordan_unidirectional(const RatMatrix& a, const FluxPattern& pattern) {
    check_pairing(a);
    const std::size_t m = a.cols();
    const std::size_t r = m / 2;
    if (pattern.size() != r)
        throw DimensionError("gordan_unidirectional: flux pattern length != column pairs");
    const SignVector& nu = pattern.nu;
    const std::size_t n = a.rows();

    // Variables (z, d) with d_i = z_i - z_{i+r}; z >= 0, A z = 0, and d
    // sign-compatible with nu. The strict pair requirement is probed per j.
    RatMatrix eq(n + r, m + r);
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t j = 0; j < m; ++j) eq(row, j) = a(row, j);
    for (std::size_t i = 0; i < r; ++i) {
        eq(n + i, i) = -1;
        eq(n + i, i + r) = 1;
        eq(n + i, m + i) = 1;
    }
    std::vector<SignTag> base(m + r);
    for (std::size_t j = 0; j < m; ++j) base[j] = SignTag::nonneg;
    for (std::size_t i = 0; i < r; ++i) base[m + i] = weak_tag(nu[i]);

    std::optional<RatVector> loop_w;
    std::size_t strict_index = 0;
    for (std::size_t probe = 0; probe < r && !loop_w; ++probe) {
        if (nu[probe] == 0) continue;
        std::vector<SignTag> tags = base;
        tags[m + probe] = strict_tag(nu[probe]);
        loop_w = strict_feasible(LinearSystem::make(eq, tags));
        if (loop_w) strict_index = probe;
    }

    // Potential branch with the doubled antisymmetry made explicit.
    std::optional<RatVector> pot_w;
    {
        RatMatrix peq(m, n + m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t s = 0; s < n; ++s) peq(i, s) = a(s, i);
            peq(i, n + i) = -1;
        }
        std::vector<SignTag> tags(n + m, SignTag::free_);
        for (std::size_t i = 0; i < r; ++i) {
            if (nu[i] != 0) {
                tags[n + i] = strict_tag(-nu[i]);
                tags[n + i + r] = strict_tag(nu[i]);
            }
        }
        if (auto w = strict_feasible(LinearSystem::make(peq, tags)))
            pot_w = RatVector(w->begin(), w->begin() + static_cast<std::ptrdiff_t>(n));
    }

    if (static_cast<bool>(loop_w) == static_cast<bool>(pot_w))
        throw InternalInconsistencyError("Gordan dichotomy violated: both branches " +
                                         std::string(loop_w ? "feasible" : "infeasible"));

    if (loop_w) {
        LoopCertificate cert;
        cert.z = RatVector(loop_w->begin(), loop_w->begin() + static_cast<std::ptrdiff_t>(m));
        cert.zhat.resize(r);
        for (std::size_t i = 0; i < r; ++i) cert.zhat[i] = cert.z[i] - cert.z[i + r];
        cert.strict_index = strict_index;
        return cert;
    }
    return PotentialCertificate{*pot_w};
}

/// Delta G = gamma^T A, exact; one entry per column of A.
inline RatVector gibbs_differences(const RatVector& gamma, const RatMatrix& a) {
    if (gamma.size() != a.rows()) throw DimensionError("gibbs_differences: gamma length != rows");
    RatVector out(a.cols(), Rational(0));
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t s = 0; s < a.rows(); ++s) out[j] += gamma[s] * a(s, j);
    return out;
}

/// The flux pattern a potential gamma permits: each reaction runs against its
/// potential increase, nu_i = -sign((A^T gamma)_i).
inline FluxPattern feasible_directions(const RatVector& gamma, const RatMatrix& a) {
    const RatVector dg = gibbs_differences(gamma, a);
    SignVector nu(dg.size());
    for (std::size_t i = 0; i < dg.size(); ++i) nu.set(i, -sign(dg[i]));
    return FluxPattern{nu};
}

/// Thermodynamic data for rate generation and state-dependent Gibbs energies.
struct ThermoParams {
    double temperature = 298.15;       // kelvin
    double gas_constant = 8.31446261815324;  // J/(mol K)
    std::vector<double> standard_potentials;  // G0 per species
    std::optional<std::vector<double>> zero_point_shift;  // per reaction, added to delta G0
};

struct RateAssignment {
    std::vector<double> kf;
    std::vector<double> kb;
};

/// Standard-state reaction Gibbs differences dG0_i = sum_s (y'-y)_s G0_s,
/// plus the optional zero-point shift.
inline std::vector<double> standard_gibbs(const ThermoParams& params, const ReactionNetwork& net) {
    if (params.standard_potentials.size() != net.species_count())
        throw DimensionError("standard potentials length does not match species count");
    std::vector<double> dg0(net.reaction_count(), 0.0);
    for (std::size_t i = 0; i < net.reactions.size(); ++i) {
        const auto& y = net.complexes[net.reactions[i].reactant].stoich;
        const auto& yp = net.complexes[net.reactions[i].product].stoich;
        for (std::size_t s = 0; s < net.species_count(); ++s)
            dg0[i] += to_double(yp[s] - y[s]) * params.standard_potentials[s];
        if (params.zero_point_shift) dg0[i] += (*params.zero_point_shift)[i];
    }
    return dg0;
}

/// Detailed-balance backward rates: kb_i = kf_i exp(dG0_i / RT), so that
/// kf/kb = exp(-dG0/RT) is the equilibrium constant. Floating point by
/// design; rates feed only the numerical layer.
inline RateAssignment detailed_balance_rates(const ThermoParams& params, const ReactionNetwork& net,
                                             const std::vector<double>& kf) {
    if (params.temperature <= 0) throw Error("detailed_balance_rates: temperature must be positive");
    if (kf.size() != net.reaction_count())
        throw DimensionError("detailed_balance_rates: kf length != reaction count");
    for (const auto& r : net.reactions) {
        if (!r.reversible)
            throw Error("detailed_balance_rates requires a fully reversible network; '" + r.label +
                        "' is irreversible");
    }
    for (double k : kf) {
        if (k <= 0) throw Error("detailed_balance_rates: kf must be strictly positive");
    }
    const std::vector<double> dg0 = standard_gibbs(params, net);
    RateAssignment rates;
    rates.kf = kf;
    rates.kb.resize(kf.size());
    const double rt = params.gas_constant * params.temperature;
    for (std::size_t i = 0; i < kf.size(); ++i) rates.kb[i] = kf[i] * std::exp(dg0[i] / rt);
    return rates;
}

}  // namespace crnfeas
