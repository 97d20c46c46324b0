#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "crnfeas/dynamics.hpp"
#include "crnfeas/feasibility.hpp"
#include "crnfeas/injectivity.hpp"
#include "crnfeas/network.hpp"

namespace crnfeas {

inline constexpr const char* kToolName = "crnfeas";
inline constexpr const char* kToolVersion = "0.1.0";

// nlohmann::json orders object keys lexicographically, which together with
// deterministic analysis output gives byte-identical reports for identical
// input.
using Json = nlohmann::json;

/// FNV-1a 64-bit digest of the raw input bytes, as 16 hex digits.
inline std::string input_digest(std::string_view data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const RatVector& v) {
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(to_string(q));
    return arr;
}

inline Json to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Vec& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

inline Json network_json(const ReactionNetwork& net, const NetworkMatrices& mats) {
    Json j;
    Json species = Json::array();
    for (const auto& s : net.species) species.push_back(s.name);
    j["species"] = species;
    j["n"] = net.species_count();
    j["r_internal"] = net.internal_reaction_count();
    j["r_directed"] = mats.r_directed;
    j["p"] = mats.complex_count();
    j["linkage_classes"] = linkage_classes(mats);
    j["reversible_pairs"] = mats.reversible_pairs;
    j["cfstr"] = net.flow_reaction.has_value();
    if (net.flow_reaction) j["feed"] = to_json(net.feed);

    Json reactions = Json::array();
    for (const auto& r : net.reactions) {
        if (r.is_flow) continue;
        Json jr;
        jr["label"] = r.label;
        jr["reactant"] = complex_label(net.complexes[r.reactant].stoich, net.species);
        jr["product"] = complex_label(net.complexes[r.product].stoich, net.species);
        jr["kf"] = to_string(r.kf);
        if (r.kb) jr["kb"] = to_string(*r.kb);
        reactions.push_back(std::move(jr));
    }
    j["reactions"] = reactions;

    Json mat;
    mat["A"] = to_json(mats.A);
    mat["B"] = to_json(mats.B);
    mat["S"] = to_json(mats.S);
    mat["E"] = to_json(mats.E);
    j["matrices"] = mat;
    return j;
}

inline Json feasibility_json(const FluxPattern& pattern, const FeasibilityVerdict& verdict,
                             const RatMatrix& a) {
    Json j;
    j["pattern"] = pattern.nu.str();
    if (std::holds_alternative<LoopCertificate>(verdict)) {
        const auto& loop = std::get<LoopCertificate>(verdict);
        j["verdict"] = "loop";
        Json c;
        c["z"] = to_json(loop.z);
        c["zhat"] = to_json(loop.zhat);
        c["strict_index"] = loop.strict_index;
        j["loop"] = c;
    } else {
        const auto& pot = std::get<PotentialCertificate>(verdict);
        j["verdict"] = "feasible";
        Json c;
        c["gamma"] = to_json(pot.gamma);
        c["delta_g"] = to_json(gibbs_differences(pot.gamma, a));
        c["feasible_directions"] = feasible_directions(pot.gamma, a).nu.str();
        j["potential"] = c;
    }
    return j;
}

inline Json injectivity_json(const InjectivityReport& report) {
    Json j;
    Json sig;
    sig["holds"] = report.sig.holds;
    sig["kernel_sign_count"] = report.sig.kernel_signs.elements.size();
    sig["image_sign_count"] = report.sig.k_signs.elements.size();
    if (report.sig.violation) {
        Json v;
        v["kernel_sign"] = report.sig.violation->kernel_sign.str();
        v["source_sign"] = report.sig.violation->source_sign.str();
        v["witness"] = to_json(report.sig.violation->witness);
        sig["violation"] = v;
    }
    j["sig_condition"] = sig;

    Json phi;
    phi["injective"] = report.phi_b.injective;
    if (report.phi_b.violating_sign) phi["violating_sign"] = report.phi_b.violating_sign->str();
    j["phi_b"] = phi;

    j["span_condition"] = report.span_holds;
    j["weakly_reversible"] = report.weakly_rev;
    j["deficiency"] = report.deficiency_index;
    j["kernel_dim"] = report.kernel_dim;
    return j;
}

inline Json trajectory_json(const Trajectory& traj, double t_end) {
    Json j;
    j["t_end"] = t_end;
    j["steps_accepted"] = traj.accepted;
    j["steps_rejected"] = traj.rejected;
    j["final_t"] = traj.t.back();
    j["final_state"] = to_json(traj.x.back());
    j["final_derivative"] = to_json(traj.dx.back());
    double res = 0.0;
    for (Eigen::Index i = 0; i < traj.dx.back().size(); ++i)
        res = std::max(res, std::abs(traj.dx.back()[i]));
    j["final_residual"] = res;
    return j;
}

inline Json multistart_json(const EquilibriumSet& set, std::size_t trials, std::uint64_t seed) {
    Json j;
    j["trials"] = trials;
    j["seed"] = seed;
    j["anchor"] = to_json(set.anchor);
    j["converged"] = set.converged;
    j["failed"] = set.failed;
    Json clusters = Json::array();
    for (const auto& c : set.clusters) {
        Json cj;
        cj["state"] = to_json(c.x);
        cj["residual"] = c.residual;
        cj["count"] = c.count;
        clusters.push_back(std::move(cj));
    }
    j["clusters"] = clusters;
    j["cluster_count"] = set.clusters.size();
    return j;
}

/// Top-level report envelope shared by every subcommand.
inline Json report_envelope(const std::string& command, std::string_view input_bytes) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = input_digest(input_bytes);
    return j;
}

}  // namespace crnfeas
