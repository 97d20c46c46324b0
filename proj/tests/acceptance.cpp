// Acceptance gate. Each criterion prints exactly one PASS or FAIL line with
// its runtime; the process exits nonzero when any criterion fails. Criteria
// with stated runtime budgets fail on overrun even when every check passes.
// Certificate checks here re-verify by direct substitution rather than by
// calling back into the code under test.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"

namespace {

using namespace crnfeas;
using Clock = std::chrono::steady_clock;
using Failure = std::optional<std::string>;

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec ones(std::size_t n) { return Vec::Ones(static_cast<Eigen::Index>(n)); }

std::string quoted(const std::string& path) { return "'" + path + "'"; }

// Criterion 1: the bimolecular exchange example. Complexes, stoichiometric
// and kinetic matrices exact; the mass-action derivative at the all-ones
// state within 1e-12.
Failure paper_example() {
    const auto p = oracles::pipeline("r1: A + B <-> C + D ; kf=1 kb=1/2\n");
    const RatVector y1{1, 1, 0, 0};
    const RatVector y2{0, 0, 1, 1};
    const RatVector diff{-1, -1, 1, 1};
    if (p.mats.species_count() != 4 || p.mats.r_directed != 2)
        return "expected 4 species and 2 directed reactions";
    if (p.mats.complex_count() != 2) return "expected exactly the complexes A+B and C+D";
    if (p.mats.S.column(0) != y1 || p.mats.S.column(1) != y2)
        return "complex matrix columns differ from y1=(1,1,0,0), y2=(0,0,1,1)";
    if (p.mats.A.column(0) != diff || p.mats.A.column(1) != negated(diff))
        return "stoichiometric columns differ from [y2-y1] and its negation";
    if (p.mats.B.row(0) != y1 || p.mats.B.row(1) != y2)
        return "kinetic rows differ from the reactant complexes";
    const auto kappa = directed_rates(p.expanded);
    if (kappa.size() != 2 || kappa[0] != 1.0 || kappa[1] != 0.5)
        return "directed rates differ from (1, 1/2)";
    const Vec fx = f_kappa(ones(4), kappa, p.mats);
    if (std::abs(fx[0] + 0.5) > 1e-12) return "dx_A/dt at the all-ones state is not -1/2";
    return std::nullopt;
}

// Exact substitution checks for the two certificate kinds.
Failure verify_loop(const RatMatrix& ahat, const SignVector& nu, const LoopCertificate& cert) {
    const std::size_t r = ahat.cols();
    if (cert.zhat.size() != r || cert.z.size() != 2 * r) return "loop certificate length mismatch";
    for (std::size_t i = 0; i < 2 * r; ++i)
        if (cert.z[i] < 0) return "doubled flux has a negative entry";
    for (std::size_t i = 0; i < r; ++i)
        if (cert.z[i] - cert.z[i + r] != cert.zhat[i]) return "zhat differs from z_i - z_{i+r}";
    if (!is_zero_vector(ahat * cert.zhat)) return "loop flux is not in the kernel";
    for (std::size_t i = 0; i < r; ++i) {
        const int s = sgn(cert.zhat[i]);
        if (s != 0 && s != nu[i]) return "loop flux leaves the pattern orthant";
    }
    if (cert.strict_index >= r) return "strict index out of range";
    if (nu[cert.strict_index] == 0 || sgn(cert.zhat[cert.strict_index]) != nu[cert.strict_index])
        return "strict coordinate does not run with the pattern";
    return std::nullopt;
}

Failure verify_potential(const RatMatrix& ahat, const SignVector& nu,
                         const PotentialCertificate& cert) {
    const std::size_t n = ahat.rows();
    const std::size_t r = ahat.cols();
    if (cert.gamma.size() != n) return "potential length mismatch";
    for (std::size_t i = 0; i < r; ++i) {
        if (nu[i] == 0) continue;
        Rational affinity(0);
        for (std::size_t s = 0; s < n; ++s) affinity += ahat(s, i) * cert.gamma[s];
        if (sgn(affinity) != -nu[i]) return "potential fails to oppose a running reaction";
    }
    return std::nullopt;
}

// Criterion 2: on random instances exactly one branch answers, and the
// returned certificate survives exact substitution.
Failure gordan_dichotomy() {
    std::mt19937 rng(70301);
    std::size_t loops = 0;
    std::size_t potentials = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 1, 6));
        const auto r = static_cast<std::size_t>(oracles::rand_int(rng, 1, 6));
        const RatMatrix ahat = oracles::random_matrix(rng, n, r, -3, 3);
        const SignVector nu = oracles::random_pattern(rng, r);
        FeasibilityVerdict verdict;
        try {
            verdict = gordan_alternative(ahat, FluxPattern{nu});
        } catch (const InternalInconsistencyError& e) {
            std::ostringstream ss;
            ss << "trial " << trial << ": " << e.what();
            return ss.str();
        }
        Failure bad;
        if (is_loop(verdict)) {
            bad = verify_loop(ahat, nu, std::get<LoopCertificate>(verdict));
            ++loops;
        } else {
            bad = verify_potential(ahat, nu, std::get<PotentialCertificate>(verdict));
            ++potentials;
        }
        if (bad) {
            std::ostringstream ss;
            ss << "trial " << trial << ": " << *bad;
            return ss.str();
        }
    }
    if (loops == 0 || potentials == 0) return "trial mix exercised only one branch";
    return std::nullopt;
}

// Criterion 3: double/halve round-trip exactly; bidirectional and doubled
// unidirectional verdicts agree.
Failure transform_equivalence() {
    std::mt19937 rng(70302);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const auto r = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const RatMatrix ahat = oracles::random_matrix(rng, n, r, -3, 3);
        const RatVector zhat = oracles::random_vector(rng, r, -4, 4);
        const auto [a, z] = double_transform(ahat, zhat);
        for (std::size_t i = 0; i < r; ++i) {
            if (z[i] < 0 || z[i + r] < 0) return "doubled flux has a negative entry";
            if (z[i] != 0 && z[i + r] != 0) return "doubled flux is not minimal";
            if (z[i] - z[i + r] != zhat[i]) return "doubled flux does not net to zhat";
        }
        const auto [ahat_back, zhat_back] = halve_transform(a, z);
        if (!(ahat_back == ahat) || zhat_back != zhat) return "round-trip changed the instance";
    }
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const auto r = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const RatMatrix ahat = oracles::random_matrix(rng, n, r, -3, 3);
        const SignVector nu = oracles::random_pattern(rng, r);
        const FluxPattern pattern{nu};
        std::vector<RatVector> neg;
        for (const auto& c : ahat.column_vectors()) neg.push_back(negated(c));
        const RatMatrix a = ahat.hcat(RatMatrix::from_columns(neg));
        const bool bi = is_loop(gordan_alternative(ahat, pattern));
        const bool uni = is_loop(gordan_unidirectional(a, pattern));
        if (bi != uni) {
            std::ostringstream ss;
            ss << "verdicts disagree on trial " << trial;
            return ss.str();
        }
    }
    return std::nullopt;
}

// Criterion 4: exact sign enumeration against the sampling oracle, witness
// soundness, and invariance under positive column scaling.
Failure sign_machinery() {
    std::mt19937 rng(70304);
    for (int trial = 0; trial < 60; ++trial) {
        const auto ambient = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const auto k = static_cast<std::size_t>(oracles::rand_int(rng, 0, 3));
        std::vector<RatVector> basis;
        for (std::size_t j = 0; j < k; ++j)
            basis.push_back(oracles::random_vector(rng, ambient, -3, 3));
        const SignSet exact = subspace_signs(basis, ambient);
        for (const auto& [s, w] : exact.elements) {
            if (sign_of(w) != s) return "witness does not realize its sign";
            if (!oracles::in_span(basis, w)) return "witness escapes the span";
        }
        for (const auto& s : oracles::sampled_signs(basis, ambient, 2))
            if (!exact.contains(s)) return "sampled sign missing from the exact set";
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 2, 4));
        const auto r = static_cast<std::size_t>(oracles::rand_int(rng, 2, 5));
        const RatMatrix a = oracles::random_matrix(rng, n, r, -3, 3);
        std::vector<RatVector> cols = a.column_vectors();
        for (auto& c : cols) {
            const Rational kappa(oracles::rand_int(rng, 1, 9), oracles::rand_int(rng, 1, 9));
            c = scaled(c, kappa);
        }
        const RatMatrix ak = RatMatrix::from_columns(cols);
        const SignSet plain = subspace_signs(kernel_basis(a), r);
        const SignSet rescaled = subspace_signs(kernel_basis(ak), r);
        if (plain.size() != rescaled.size())
            return "kernel sign set changed size under positive scaling";
        for (const auto& [s, w] : plain.elements) {
            (void)w;
            if (!rescaled.contains(s)) return "kernel sign lost under positive scaling";
        }
    }
    return std::nullopt;
}

// Criterion 5: a subspace and its orthogonal complement share only the zero
// sign vector.
Failure orthogonality_disjoint() {
    std::mt19937 rng(70305);
    for (int trial = 0; trial < 100; ++trial) {
        const auto ambient = static_cast<std::size_t>(oracles::rand_int(rng, 1, 5));
        const auto k = static_cast<std::size_t>(
            oracles::rand_int(rng, 0, static_cast<int>(ambient)));
        std::vector<RatVector> vectors;
        for (std::size_t j = 0; j < k; ++j)
            vectors.push_back(oracles::random_vector(rng, ambient, -3, 3));
        const auto complement = orthogonal_complement(vectors, ambient);
        const SignSet left = subspace_signs(vectors, ambient);
        const SignSet right = subspace_signs(complement, ambient);
        for (const auto& [s, w] : left.elements) {
            (void)w;
            if (s.is_zero()) continue;
            if (right.contains(s)) return "nonzero sign shared with the orthogonal complement";
        }
    }
    return std::nullopt;
}

// Criterion 6: weakly reversible generators always satisfy the span
// condition.
Failure wr_span() {
    std::mt19937 rng(70306);
    int done = 0;
    while (done < 200) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 2, 6));
        const auto cx = static_cast<std::size_t>(oracles::rand_int(rng, 3, 6));
        const bool rev = oracles::rand_int(rng, 0, 1) == 1;
        const ReactionNetwork declared = oracles::random_cyclic_network(rng, n, cx, rev);
        if (declared.reactions.empty()) continue;
        const ReactionNetwork expanded = expand_directed(declared);
        const NetworkMatrices mats = build_matrices(expanded);
        if (!weakly_reversible(expanded)) return "generator emitted a non weakly reversible network";
        if (!span_condition(mats)) return "span condition failed on a weakly reversible network";
        ++done;
    }
    return std::nullopt;
}

// Criterion 7: on networks where the sig condition holds, multistart finds at
// most one equilibrium cluster per class for random rates, and detailed
// balance pins exactly one cluster with vanishing reaction Gibbs differences.
struct Candidate {
    ReactionNetwork declared;
    ReactionNetwork expanded;
    NetworkMatrices mats;
    bool reversible = false;
};

Failure injectivity_dynamics() {
    std::mt19937 rng(70307);
    std::vector<Candidate> nets;
    std::size_t reversible_count = 0;
    for (int attempt = 0; attempt < 600 && nets.size() < 30; ++attempt) {
        const bool rev = attempt % 2 == 0;
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 2, 3));
        const auto cx = rev ? static_cast<std::size_t>(oracles::rand_int(rng, 2, 3))
                            : static_cast<std::size_t>(oracles::rand_int(rng, 3, 4));
        ReactionNetwork declared = oracles::random_cyclic_network(rng, n, cx, rev);
        if (declared.reactions.empty()) continue;
        ReactionNetwork expanded = expand_directed(declared);
        NetworkMatrices mats = build_matrices(expanded);
        if (mats.r_directed > 8) continue;
        if (!sig_condition(mats).holds) continue;
        nets.push_back({std::move(declared), std::move(expanded), std::move(mats), rev});
        if (rev) ++reversible_count;
    }
    if (nets.size() < 30) {
        std::ostringstream ss;
        ss << "collected only " << nets.size() << " sig-holding networks";
        return ss.str();
    }
    if (reversible_count < 5) return "too few reversible networks for the detailed balance half";

    for (std::size_t idx = 0; idx < nets.size(); ++idx) {
        const Candidate& net = nets[idx];
        const Vec anchor = ones(net.mats.species_count());
        std::mt19937_64 draw_rng(1234567u + 97u * static_cast<std::uint64_t>(idx));
        for (std::size_t d = 0; d < 20; ++d) {
            std::vector<double> kappa(net.mats.r_directed);
            for (auto& k : kappa) k = std::pow(10.0, -2.0 + 4.0 * u01(draw_rng));
            const EquilibriumSet set =
                multistart_uniqueness(anchor, kappa, net.mats, 50, 1000 * idx + d);
            if (set.clusters.size() > 1) {
                std::ostringstream ss;
                ss << "network " << idx << " draw " << d << ": " << set.clusters.size()
                   << " equilibrium clusters in one class";
                return ss.str();
            }
            if (set.converged == 0) {
                std::ostringstream ss;
                ss << "network " << idx << " draw " << d << ": no trial converged";
                return ss.str();
            }
        }
    }

    std::size_t db_runs = 0;
    for (std::size_t idx = 0; idx < nets.size(); ++idx) {
        if (!nets[idx].reversible) continue;
        const Candidate& net = nets[idx];
        std::mt19937_64 draw_rng(7654321u + 131u * static_cast<std::uint64_t>(idx));
        for (std::size_t d = 0; d < 2; ++d) {
            ThermoParams thermo;
            thermo.temperature = 1.0;
            thermo.gas_constant = 1.0;
            thermo.standard_potentials.resize(net.mats.species_count());
            for (auto& g : thermo.standard_potentials) g = -0.5 + u01(draw_rng);
            const std::vector<double> kf(net.declared.reaction_count(), 1.0);
            const RateAssignment rates = detailed_balance_rates(thermo, net.declared, kf);
            const std::vector<double> kappa = directed_rates(net.expanded, rates);
            MultistartOptions opts;
            opts.newton.f_tol = 1e-12;
            const EquilibriumSet set = multistart_uniqueness(
                ones(net.mats.species_count()), kappa, net.mats, 50, 500000 + 10 * idx + d, opts);
            if (set.clusters.size() != 1 || set.converged < 10) {
                std::ostringstream ss;
                ss << "network " << idx << ": detailed balance gave " << set.clusters.size()
                   << " clusters from " << set.converged << " converged trials";
                return ss.str();
            }
            const Vec dg = state_gibbs(set.clusters[0].x, thermo, net.mats);
            if (dg.lpNorm<Eigen::Infinity>() > 1e-8) {
                std::ostringstream ss;
                ss << "network " << idx << ": residual Gibbs difference "
                   << dg.lpNorm<Eigen::Infinity>() << " at the detailed balance equilibrium";
                return ss.str();
            }
            ++db_runs;
        }
    }
    if (db_runs < 10) return "fewer than 10 detailed balance runs";
    return std::nullopt;
}

// Criterion 8: analytic Jacobian against central differences.
Failure jacobian_fd() {
    std::mt19937 rng(70308);
    std::uniform_real_distribution<double> ux(0.3, 2.2);
    std::uniform_real_distribution<double> uk(0.2, 5.0);
    int checked = 0;
    while (checked < 100) {
        const auto n = static_cast<std::size_t>(oracles::rand_int(rng, 2, 4));
        const auto cx = static_cast<std::size_t>(oracles::rand_int(rng, 3, 5));
        const bool rev = oracles::rand_int(rng, 0, 1) == 1;
        const ReactionNetwork declared = oracles::random_cyclic_network(rng, n, cx, rev);
        if (declared.reactions.empty()) continue;
        const NetworkMatrices mats = build_matrices(expand_directed(declared));
        Vec x(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = ux(rng);
        std::vector<double> kappa(mats.r_directed);
        for (auto& k : kappa) k = uk(rng);
        const Mat analytic = jacobian(x, kappa, mats);
        Mat fd = Mat::Zero(x.size(), x.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
            Vec xp = x;
            Vec xm = x;
            xp[j] += h;
            xm[j] -= h;
            fd.col(j) = (f_kappa(xp, kappa, mats) - f_kappa(xm, kappa, mats)) / (2.0 * h);
        }
        const double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
        if ((analytic - fd).cwiseAbs().maxCoeff() > 1e-5 * scale) {
            std::ostringstream ss;
            ss << "state " << checked << ": Jacobian mismatch "
               << (analytic - fd).cwiseAbs().maxCoeff();
            return ss.str();
        }
        ++checked;
    }
    return std::nullopt;
}

// Criterion 9: left-kernel invariants along every trajectory sample.
Failure conservation() {
    std::mt19937 rng(70309);
    struct Job {
        std::string name;
        oracles::Pipeline p;
        std::vector<double> kappa;
    };
    std::vector<Job> jobs;
    const auto add_file = [&jobs](const std::string& name) {
        Job job;
        job.name = name;
        job.p = oracles::pipeline(oracles::slurp(oracles::network_path(name)));
        job.kappa = directed_rates(job.p.expanded);
        jobs.push_back(std::move(job));
    };
    add_file("abcd.crn");
    add_file("triangle.crn");
    add_file("chain.crn");
    for (int extra = 0; extra < 2; ++extra) {
        Job job;
        job.name = "random-" + std::to_string(extra);
        job.p.declared = oracles::random_cyclic_network(rng, 3, 4, extra == 0);
        job.p.expanded = expand_directed(job.p.declared);
        job.p.mats = build_matrices(job.p.expanded);
        job.kappa = directed_rates(job.p.expanded);
        jobs.push_back(std::move(job));
    }

    std::uniform_real_distribution<double> ux(0.5, 2.0);
    for (const Job& job : jobs) {
        Vec x0(static_cast<Eigen::Index>(job.p.mats.species_count()));
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = ux(rng);
        const Trajectory traj = integrate(x0, job.kappa, job.p.mats, 100.0);
        for (const RatVector& wq : left_kernel_basis(job.p.mats.A)) {
            const Vec w = to_eigen(wq);
            const double c0 = w.dot(x0);
            for (const Vec& x : traj.x) {
                if (std::abs(w.dot(x) - c0) > 1e-7 * (1.0 + std::abs(c0))) {
                    std::ostringstream ss;
                    ss << job.name << ": invariant drift " << std::abs(w.dot(x) - c0);
                    return ss.str();
                }
            }
        }
    }
    return std::nullopt;
}

// Criterion 10: CFSTR steady state residual, and pure washout against the
// closed form at three horizons.
Failure cfstr() {
    const auto p = oracles::pipeline(oracles::slurp(oracles::network_path("abcd.crn")));
    const auto kappa = directed_rates(p.expanded);
    const Vec feed = ones(4);
    IntegrateOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-12;
    opts.feed = feed;
    const Trajectory traj = integrate(ones(4), kappa, p.mats, 80.0, opts);
    const Vec xs = traj.x.back();
    const double resid = (f_kappa(xs, kappa, p.mats) + feed - xs).lpNorm<Eigen::Infinity>();
    if (resid > 1e-8) {
        std::ostringstream ss;
        ss << "CFSTR steady-state residual " << resid;
        return ss.str();
    }

    ReactionNetwork bare;
    bare.species = {Species{"A", 0}, Species{"B", 1}};
    bare.directed = true;
    const NetworkMatrices mats = build_matrices(bare);
    const Vec x0 = (Vec(2) << 3.0, 0.2).finished();
    const Vec c = ones(2);
    for (const double horizon : {0.5, 1.0, 2.0}) {
        IntegrateOptions wopts;
        wopts.feed = c;
        const Trajectory wt = integrate(x0, std::vector<double>{}, mats, horizon, wopts);
        const Vec expect = c + (x0 - c) * std::exp(-horizon);
        if ((wt.x.back() - expect).lpNorm<Eigen::Infinity>() > 1e-6) {
            std::ostringstream ss;
            ss << "washout at t=" << horizon << " off by "
               << (wt.x.back() - expect).lpNorm<Eigen::Infinity>();
            return ss.str();
        }
    }
    return std::nullopt;
}

// Criterion 11: byte-identical JSON reports across repeated runs.
struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = quoted(CRNFEAS_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) res.code = WEXITSTATUS(status);
    return res;
}

Failure determinism() {
    const std::string abcd = quoted(oracles::network_path("abcd.crn"));
    const std::string triangle = quoted(oracles::network_path("triangle.crn"));
    const std::vector<std::string> commands = {
        "--json parse " + abcd,
        "--json feasibility --nu + " + abcd,
        "--json feasibility --nu +,+,+ " + triangle,
        "--json injectivity " + abcd,
        "--json simulate --x0 2,2,0.5,0.5 --t-end 20 " + abcd,
        "--json multistart --x0 2,2,0.5,0.5 --trials 12 --seed 42 --kappa-draws 2 " + abcd,
    };
    for (const std::string& cmd : commands) {
        const RunResult a = run_cli(cmd);
        const RunResult b = run_cli(cmd);
        if (a.code < 0 || a.code != b.code) return "exit codes differ for: " + cmd;
        if (a.out.empty()) return "no output for: " + cmd;
        if (a.out != b.out) return "reports differ across runs for: " + cmd;
    }
    return std::nullopt;
}

struct Criterion {
    const char* name;
    Failure (*run)();
    double budget_seconds;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"parser and mass-action exactness", paper_example, 1.0},
        {"Gordan dichotomy certificates", gordan_dichotomy, 60.0},
        {"transform equivalence", transform_equivalence, 0.0},
        {"sign enumeration vs sampling", sign_machinery, 0.0},
        {"orthogonal sign disjointness", orthogonality_disjoint, 0.0},
        {"weak reversibility implies span", wr_span, 0.0},
        {"sig condition implies uniqueness", injectivity_dynamics, 300.0},
        {"Jacobian vs finite differences", jacobian_fd, 0.0},
        {"trajectory conservation", conservation, 0.0},
        {"CFSTR steady state and washout", cfstr, 0.0},
        {"deterministic reports", determinism, 0.0},
    };

    int failures = 0;
    std::size_t index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        const auto start = Clock::now();
        Failure failure;
        try {
            failure = c.run();
        } catch (const std::exception& e) {
            failure = std::string("unexpected exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (!failure && c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            std::ostringstream ss;
            ss << "runtime " << secs << " s exceeds the " << c.budget_seconds << " s budget";
            failure = ss.str();
        }
        std::printf("%s %2zu  %-34s %8.2f s%s%s\n", failure ? "FAIL" : "PASS", index, c.name,
                    secs, failure ? "  " : "", failure ? failure->c_str() : "");
        std::fflush(stdout);
        if (failure) ++failures;
    }
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
