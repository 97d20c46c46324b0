#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crnfeas/crnfeas.hpp"

namespace {

using namespace crnfeas;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream ss(s);
    while (std::getline(ss, token, ',')) {
        const auto begin = token.find_first_not_of(" \t");
        const auto end = token.find_last_not_of(" \t");
        out.push_back(begin == std::string::npos ? "" : token.substr(begin, end - begin + 1));
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
    std::vector<double> out;
    for (const auto& tok : split_commas(s)) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(std::string(what) + ": cannot parse '" + tok + "' as a number");
        }
    }
    return out;
}

std::vector<double> parse_positive_doubles(const std::string& s, const char* what) {
    auto out = parse_doubles(s, what);
    for (double v : out) {
        if (!(v > 0.0)) throw Error(std::string(what) + " must be strictly positive");
    }
    return out;
}

SignVector parse_signs(const std::string& s, std::size_t expect) {
    const auto tokens = split_commas(s);
    if (tokens.size() != expect)
        throw Error("flux pattern has " + std::to_string(tokens.size()) + " signs, expected " +
                    std::to_string(expect));
    SignVector nu(expect);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        if (t == "+" || t == "+1" || t == "1")
            nu.set(i, 1);
        else if (t == "-" || t == "-1")
            nu.set(i, -1);
        else if (t == "0")
            nu.set(i, 0);
        else
            throw Error("flux pattern entry '" + t + "' is not one of +, -, 0");
    }
    return nu;
}

struct Loaded {
    std::string bytes;
    ReactionNetwork declared;
    ReactionNetwork expanded;
    NetworkMatrices mats;
};

Loaded load(const std::string& path) {
    Loaded l;
    l.bytes = read_file(path);
    l.declared = parse_network(l.bytes);
    l.expanded = expand_directed(l.declared);
    l.mats = build_matrices(l.expanded);
    return l;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << text;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_vec(const Vec& v) {
    std::string out = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt_double(v[i]);
    }
    return out + ")";
}

std::string fmt_vec(const RatVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

std::string fmt_matrix(const char* name, const RatMatrix& m) {
    std::string out = std::string(name) + " (" + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + "):\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += " ";
        for (std::size_t c = 0; c < m.cols(); ++c) out += " " + to_string(m(r, c));
        out += "\n";
    }
    return out;
}

int run_parse(const std::string& path, bool json, const std::string& out_path) {
    const Loaded l = load(path);
    if (json) {
        Json j = report_envelope("parse", l.bytes);
        j["network"] = network_json(l.declared, l.mats);
        emit(j.dump(2) + "\n", out_path);
        return 0;
    }
    std::string out;
    out += "species (" + std::to_string(l.declared.species_count()) + "):";
    for (const auto& s : l.declared.species) out += " " + s.name;
    out += "\n";
    out += "complexes (" + std::to_string(l.mats.complex_count()) + "):";
    bool first_complex = true;
    for (std::size_t c : l.mats.complex_of_column) {
        out += first_complex ? " " : " | ";
        out += complex_label(l.expanded.complexes[c].stoich, l.expanded.species);
        first_complex = false;
    }
    out += "\n";
    out += "reactions: " + std::to_string(l.declared.internal_reaction_count()) + " declared, " +
           std::to_string(l.mats.r_directed) + " directed, " +
           std::to_string(l.mats.reversible_pairs) + " reversible pairs\n";
    for (const auto& r : l.declared.reactions) {
        if (r.is_flow) continue;
        out += "  " + r.label + ": " +
               complex_label(l.declared.complexes[r.reactant].stoich, l.declared.species) +
               (r.reversible ? " <-> " : " -> ") +
               complex_label(l.declared.complexes[r.product].stoich, l.declared.species) +
               " ; kf=" + to_string(r.kf);
        if (r.kb) out += " kb=" + to_string(*r.kb);
        out += "\n";
    }
    out += "linkage classes: " + std::to_string(linkage_classes(l.mats)) +
           ", deficiency: " + std::to_string(deficiency(l.mats)) + "\n";
    out += fmt_matrix("A", l.mats.A);
    out += fmt_matrix("B", l.mats.B);
    out += fmt_matrix("S", l.mats.S);
    out += fmt_matrix("E", l.mats.E);
    emit(out, out_path);
    return 0;
}

int run_feasibility(const std::string& path, const std::string& nu_str, bool json,
                    const std::string& out_path) {
    const Loaded l = load(path);
    const DeclaredView view = declared_view(l.declared, l.expanded, l.mats);
    FluxPattern pattern{parse_signs(nu_str, view.ahat.cols())};
    pattern.validate_against(l.declared);

    const FeasibilityVerdict verdict = gordan_alternative(view.ahat, pattern);
    if (json) {
        Json j = report_envelope("feasibility", l.bytes);
        j["network"] = network_json(l.declared, l.mats);
        j["feasibility"] = feasibility_json(pattern, verdict, view.ahat);
        emit(j.dump(2) + "\n", out_path);
    } else if (is_loop(verdict)) {
        const auto& loop = std::get<LoopCertificate>(verdict);
        std::string out = "LOOP\n";
        out += "  z      = " + fmt_vec(loop.z) + "\n";
        out += "  zhat   = " + fmt_vec(loop.zhat) + "\n";
        out += "  strict = " + std::to_string(loop.strict_index) + "\n";
        emit(out, out_path);
    } else {
        const auto& pot = std::get<PotentialCertificate>(verdict);
        std::string out = "FEASIBLE\n";
        out += "  gamma   = " + fmt_vec(pot.gamma) + "\n";
        out += "  delta_g = " + fmt_vec(gibbs_differences(pot.gamma, view.ahat)) + "\n";
        emit(out, out_path);
    }
    return is_loop(verdict) ? 3 : 0;
}

int run_injectivity(const std::string& path, std::size_t cap, bool json,
                    const std::string& out_path) {
    const Loaded l = load(path);
    const InjectivityReport report = full_report(l.expanded, l.mats, cap);
    if (json) {
        Json j = report_envelope("injectivity", l.bytes);
        j["network"] = network_json(l.declared, l.mats);
        j["injectivity"] = injectivity_json(report);
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::string out;
        out += std::string("sig_condition:     ") + (report.sig.holds ? "holds" : "fails") + "\n";
        if (report.sig.violation) {
            out += "  kernel sign " + report.sig.violation->kernel_sign.str() + ", source sign " +
                   report.sig.violation->source_sign.str() + "\n";
            out += "  witness x = " + fmt_vec(report.sig.violation->witness) + "\n";
        }
        out += std::string("phi_b injective:   ") + (report.phi_b.injective ? "yes" : "no") + "\n";
        if (report.phi_b.violating_sign)
            out += "  common sign " + report.phi_b.violating_sign->str() + "\n";
        out += std::string("span condition:    ") + (report.span_holds ? "holds" : "fails") + "\n";
        out += std::string("weakly reversible: ") + (report.weakly_rev ? "yes" : "no") + "\n";
        out += "deficiency:        " + std::to_string(report.deficiency_index) + "\n";
        out += "kernel dimension:  " + std::to_string(report.kernel_dim) + "\n";
        emit(out, out_path);
    }
    return report.sig.holds ? 0 : 4;
}

int run_simulate(const std::string& path, const std::string& x0_str, double t_end,
                 const std::string& kappa_str, const std::string& feed_str, double initial_step,
                 bool json, const std::string& out_path) {
    const Loaded l = load(path);
    const std::size_t n = l.mats.species_count();

    const auto x0 = parse_positive_doubles(x0_str, "--x0");
    if (x0.size() != n) throw Error("--x0 needs " + std::to_string(n) + " components");

    std::vector<double> kappa =
        kappa_str.empty() ? directed_rates(l.expanded) : parse_positive_doubles(kappa_str, "--kappa");
    if (kappa.size() != l.mats.r_directed)
        throw Error("--kappa needs " + std::to_string(l.mats.r_directed) + " rate constants");

    IntegrateOptions opts;
    if (!(initial_step > 0.0)) throw Error("--initial-step must be strictly positive");
    opts.initial_step = initial_step;
    if (!feed_str.empty()) {
        const auto feed = parse_positive_doubles(feed_str, "--feed");
        if (feed.size() != n) throw Error("--feed needs " + std::to_string(n) + " components");
        opts.feed = to_eigen(feed);
    }

    const Trajectory traj = integrate(to_eigen(x0), kappa, l.mats, t_end, opts);

    if (json) {
        Json j = report_envelope("simulate", l.bytes);
        j["network"] = network_json(l.declared, l.mats);
        j["simulate"] = trajectory_json(traj, t_end);
        emit(j.dump(2) + "\n", out_path);
    } else {
        std::string csv = "t";
        for (std::size_t i = 1; i <= n; ++i) csv += ",x_" + std::to_string(i);
        for (std::size_t i = 1; i <= n; ++i) csv += ",dx_" + std::to_string(i);
        csv += "\n";
        for (std::size_t k = 0; k < traj.t.size(); ++k) {
            csv += fmt_double(traj.t[k]);
            for (Eigen::Index i = 0; i < traj.x[k].size(); ++i)
                csv += "," + fmt_double(traj.x[k][i]);
            for (Eigen::Index i = 0; i < traj.dx[k].size(); ++i)
                csv += "," + fmt_double(traj.dx[k][i]);
            csv += "\n";
        }
        emit(csv, out_path);
    }

    const Vec& xf = traj.x.back();
    const Vec& dxf = traj.dx.back();
    std::cerr << "final t = " << fmt_double(traj.t.back()) << ", x = " << fmt_vec(xf)
              << ", max|dx| = " << fmt_double(dxf.size() ? dxf.cwiseAbs().maxCoeff() : 0.0)
              << ", steps = " << traj.accepted << " accepted / " << traj.rejected << " rejected\n";
    return 0;
}

int run_multistart(const std::string& path, const std::string& x0_str, std::size_t trials,
                   std::uint64_t seed, std::size_t kappa_draws, bool json,
                   const std::string& out_path) {
    const Loaded l = load(path);
    const std::size_t n = l.mats.species_count();
    const auto x0 = parse_positive_doubles(x0_str, "--x0");
    if (x0.size() != n) throw Error("--x0 needs " + std::to_string(n) + " components");
    const Vec x0v = to_eigen(x0);

    Json draws = Json::array();
    std::string human;
    std::size_t max_clusters = 0;

    const std::size_t total_draws = kappa_draws == 0 ? 1 : kappa_draws;
    for (std::size_t draw = 0; draw < total_draws; ++draw) {
        std::vector<double> kappa;
        if (kappa_draws == 0) {
            kappa = directed_rates(l.expanded);
        } else {
            std::seed_seq seq{static_cast<std::uint32_t>(seed),
                              static_cast<std::uint32_t>(seed >> 32), 0u, 0x6b64u,
                              static_cast<std::uint32_t>(draw)};
            std::mt19937_64 rng(seq);
            kappa.resize(l.mats.r_directed);
            for (auto& k : kappa) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                k = std::pow(10.0, -2.0 + 4.0 * u);
            }
        }
        const EquilibriumSet set = multistart_uniqueness(x0v, kappa, l.mats, trials, seed);
        max_clusters = std::max(max_clusters, set.clusters.size());

        Json dj = multistart_json(set, trials, seed);
        if (kappa_draws != 0) {
            Json kj = Json::array();
            for (double k : kappa) kj.push_back(k);
            dj["kappa"] = kj;
        }
        draws.push_back(std::move(dj));

        human += "draw " + std::to_string(draw) + ": clusters = " +
                 std::to_string(set.clusters.size()) + " (converged " +
                 std::to_string(set.converged) + ", failed " + std::to_string(set.failed) + ")\n";
        for (const auto& c : set.clusters)
            human += "  x = " + fmt_vec(c.x) + ", residual = " + fmt_double(c.residual) +
                     ", count = " + std::to_string(c.count) + "\n";
    }

    if (json) {
        Json j = report_envelope("multistart", l.bytes);
        j["network"] = network_json(l.declared, l.mats);
        Json m;
        m["draws"] = draws;
        m["max_clusters"] = max_clusters;
        j["multistart"] = m;
        emit(j.dump(2) + "\n", out_path);
    } else {
        human += "max clusters: " + std::to_string(max_clusters) + "\n";
        emit(human, out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact feasibility and injectivity analysis for reaction networks"};
    app.require_subcommand(1);

    bool json = false;
    std::size_t cap = crnfeas::kDefaultSignCap;
    std::uint64_t seed = 0;
    std::string out_path;
    app.add_flag("--json", json, "emit a JSON report");
    app.add_option("--cap", cap, "sign enumeration ambient-dimension cap");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--out", out_path, "write output to PATH instead of stdout");

    std::string path, nu_str, x0_str, kappa_str, feed_str;
    double t_end = 10.0;
    double initial_step = 1e-3;
    std::size_t trials = 50, kappa_draws = 0;

    CLI::App* cmd_parse = app.add_subcommand("parse", "print the parsed network and its matrices");
    cmd_parse->add_option("file", path, "network file")->required();
    cmd_parse->fallthrough();

    CLI::App* cmd_feas = app.add_subcommand("feasibility", "decide a flux pattern's feasibility");
    cmd_feas->add_option("file", path, "network file")->required();
    cmd_feas->add_option("--nu", nu_str, "comma-separated signs, one per declared reaction")
        ->required();
    cmd_feas->fallthrough();

    CLI::App* cmd_inj = app.add_subcommand("injectivity", "evaluate the injectivity criteria");
    cmd_inj->add_option("file", path, "network file")->required();
    cmd_inj->fallthrough();

    CLI::App* cmd_sim = app.add_subcommand("simulate", "integrate the mass-action ODE");
    cmd_sim->add_option("file", path, "network file")->required();
    cmd_sim->add_option("--x0", x0_str, "initial concentrations")->required();
    cmd_sim->add_option("--t-end", t_end, "integration end time");
    cmd_sim->add_option("--kappa", kappa_str, "directed rate constants (default: file rates)");
    cmd_sim->add_option("--feed", feed_str, "CFSTR feed concentrations");
    cmd_sim->add_option("--initial-step", initial_step, "first trial step size");
    cmd_sim->fallthrough();

    CLI::App* cmd_multi = app.add_subcommand("multistart", "probe equilibrium uniqueness");
    cmd_multi->add_option("file", path, "network file")->required();
    cmd_multi->add_option("--x0", x0_str, "class anchor concentrations")->required();
    cmd_multi->add_option("--trials", trials, "number of random starts");
    cmd_multi->add_option("--kappa-draws", kappa_draws,
                          "number of random rate vectors (default: file rates)");
    cmd_multi->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_parse) return run_parse(path, json, out_path);
        if (*cmd_feas) return run_feasibility(path, nu_str, json, out_path);
        if (*cmd_inj) return run_injectivity(path, cap, json, out_path);
        if (*cmd_sim)
            return run_simulate(path, x0_str, t_end, kappa_str, feed_str, initial_step, json,
                                out_path);
        if (*cmd_multi)
            return run_multistart(path, x0_str, trials, seed, kappa_draws, json, out_path);
    } catch (const crnfeas::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const crnfeas::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 5;
    } catch (const crnfeas::StepUnderflowError& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return 6;
    } catch (const crnfeas::InternalInconsistencyError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const crnfeas::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
