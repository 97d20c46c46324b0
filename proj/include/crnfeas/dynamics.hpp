#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "crnfeas/exactla.hpp"
#include "crnfeas/feasibility.hpp"
#include "crnfeas/network.hpp"

namespace crnfeas {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec to_eigen(const RatVector& v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(v[i]);
    return out;
}

inline Mat to_eigen(const RatMatrix& m) {
    Mat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_double(m(r, c));
    return out;
}

inline Vec to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// Rate constants of a directed-expanded network, in column order of A.
inline std::vector<double> directed_rates(const ReactionNetwork& net) {
    std::vector<double> kappa;
    for (const auto& r : net.reactions) {
        if (!r.is_flow) kappa.push_back(to_double(r.kf));
    }
    return kappa;
}

/// Rate constants of a directed-expanded network from a per-declared-reaction
/// assignment (forward block reads kf, reverse block reads kb).
inline std::vector<double> directed_rates(const ReactionNetwork& net, const RateAssignment& rates) {
    if (!net.directed) throw Error("directed_rates requires a directed-expanded network");
    std::vector<double> kappa;
    for (std::size_t i = 0; i < net.reactions.size(); ++i) {
        if (net.reactions[i].is_flow) continue;
        const std::size_t origin = net.directed_origin.at(i);
        const bool is_reverse = i >= net.reversible_pairs && i < 2 * net.reversible_pairs;
        kappa.push_back(is_reverse ? rates.kb.at(origin) : rates.kf.at(origin));
    }
    return kappa;
}

namespace detail {

inline void require_positive(const Vec& x, const char* what) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw Error(std::string(what) + " must be strictly positive");
    }
}

inline void require_rates(const std::vector<double>& kappa, std::size_t r) {
    if (kappa.size() != r) throw DimensionError("rate constant vector length mismatch");
    for (double k : kappa) {
        if (!(k > 0.0)) throw Error("rate constants must be strictly positive");
    }
}

/// Double-precision snapshot of the exact matrices, built once per call tree
/// so the integrator's inner loop never touches rational arithmetic.
struct DoubleNet {
    Mat a;
    Mat b;
    Vec kappa;

    DoubleNet(const NetworkMatrices& mats, const std::vector<double>& rates)
        : a(to_eigen(mats.A)), b(to_eigen(mats.B)), kappa(to_eigen(rates)) {
        require_rates(rates, mats.r_directed);
    }

    Eigen::Index species() const { return a.rows(); }
    Eigen::Index reactions() const { return a.cols(); }

    // x^B per reaction; requires x > 0 componentwise.
    Vec monomials(const Vec& x) const {
        Vec phi = Vec::Ones(reactions());
        for (Eigen::Index i = 0; i < reactions(); ++i) {
            for (Eigen::Index s = 0; s < species(); ++s) {
                const double e = b(i, s);
                if (e != 0.0) phi[i] *= std::pow(x[s], e);
            }
        }
        return phi;
    }

    Vec flux(const Vec& x) const { return kappa.cwiseProduct(monomials(x)); }

    Vec f(const Vec& x) const { return a * flux(x); }

    // A diag(nu) B diag(1/x); each rate differentiates to nu_i B_{i,s} / x_s.
    Mat jac(const Vec& x) const {
        const Vec nu = flux(x);
        Mat dnu(reactions(), species());
        for (Eigen::Index i = 0; i < reactions(); ++i)
            for (Eigen::Index s = 0; s < species(); ++s) dnu(i, s) = nu[i] * b(i, s) / x[s];
        return a * dnu;
    }
};

inline Mat orthonormalized(const Mat& m) {
    if (m.cols() == 0) return m;
    Eigen::HouseholderQR<Mat> qr(m);
    return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
}

/// Orthonormal bases for im(A) (u) and its orthogonal complement, the left
/// kernel of A (w), plus the raw exact im(A) basis columns used for class
/// sampling. u and w together span R^n.
struct ClassGeometry {
    Mat u;
    Mat w;
    std::vector<Vec> im_raw;

    explicit ClassGeometry(const NetworkMatrices& mats) {
        const Eigen::Index n = static_cast<Eigen::Index>(mats.species_count());
        const auto pivots = independent_columns(mats.A);
        Mat raw(n, static_cast<Eigen::Index>(pivots.size()));
        for (std::size_t j = 0; j < pivots.size(); ++j) {
            Vec col = to_eigen(mats.A.column(pivots[j]));
            raw.col(static_cast<Eigen::Index>(j)) = col;
            im_raw.push_back(col);
        }
        u = orthonormalized(raw);

        const auto wk = left_kernel_basis(mats.A);
        Mat wraw(n, static_cast<Eigen::Index>(wk.size()));
        for (std::size_t j = 0; j < wk.size(); ++j)
            wraw.col(static_cast<Eigen::Index>(j)) = to_eigen(wk[j]);
        w = orthonormalized(wraw);
    }
};

}  // namespace detail

/// nu_i = kappa_i * prod_s x_s^{B_{i,s}}.
inline Vec rate_vector(const Vec& x, const std::vector<double>& kappa, const NetworkMatrices& mats) {
    detail::require_positive(x, "state");
    if (static_cast<std::size_t>(x.size()) != mats.species_count())
        throw DimensionError("state length mismatch");
    return detail::DoubleNet(mats, kappa).flux(x);
}

/// f_kappa(x) = A diag(kappa) x^B.
inline Vec f_kappa(const Vec& x, const std::vector<double>& kappa, const NetworkMatrices& mats) {
    detail::require_positive(x, "state");
    if (static_cast<std::size_t>(x.size()) != mats.species_count())
        throw DimensionError("state length mismatch");
    return detail::DoubleNet(mats, kappa).f(x);
}

/// Jacobian of f_kappa: A diag(kappa) diag(x^B) B diag(x^{-1}).
inline Mat jacobian(const Vec& x, const std::vector<double>& kappa, const NetworkMatrices& mats) {
    detail::require_positive(x, "state");
    if (static_cast<std::size_t>(x.size()) != mats.species_count())
        throw DimensionError("state length mismatch");
    return detail::DoubleNet(mats, kappa).jac(x);
}

/// Per-reaction reaction Gibbs energy at state x:
/// dG_i = sum_s A_{s,i} G0_s + R T sum_s A_{s,i} ln x_s.
/// Uses only the per-species standard potentials; a zero_point_shift in the
/// params applies to standard_gibbs assignments, not to this column formula.
inline Vec state_gibbs(const Vec& x, const ThermoParams& params, const NetworkMatrices& mats) {
    detail::require_positive(x, "state");
    const std::size_t n = mats.species_count();
    if (static_cast<std::size_t>(x.size()) != n) throw DimensionError("state length mismatch");
    if (params.standard_potentials.size() != n)
        throw DimensionError("standard potentials length mismatch");
    const double rt = params.gas_constant * params.temperature;
    const Mat a = to_eigen(mats.A);
    Vec dg(a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        double v = 0.0;
        for (Eigen::Index s = 0; s < a.rows(); ++s) {
            const double coeff = a(s, i);
            if (coeff == 0.0) continue;
            v += coeff * (params.standard_potentials[static_cast<std::size_t>(s)] +
                          rt * std::log(x[s]));
        }
        dg[i] = v;
    }
    return dg;
}

struct OrthogonalityReport {
    // max over kernel basis vectors v of |v . (kappa o x^B)| / (|v| |kappa o x^B|)
    double flux_violation = 0.0;
    // max over ker(A diag kappa) basis vectors u of |u . x^B| / (|u| |x^B|)
    double kappa_kernel_violation = 0.0;
    bool flux_orthogonal = true;
    bool kappa_kernel_orthogonal = true;
    bool sides_agree = true;
    // When every reaction is paired: net flux nu_i - nu_{i+r'} against
    // ker(A restricted to forward columns).
    std::optional<double> net_flux_violation;
};

/// Evaluates both sides of the kernel-orthogonality equivalence
/// ker(A) perp diag(kappa) x^B  <->  ker(A diag(kappa)) perp x^B
/// as normalized violations, and additionally the net-flux projection for
/// fully paired networks. Reports whether the two sides agree at tol; the
/// agreement is not asserted because the two normalized quantities can
/// straddle a threshold.
inline OrthogonalityReport orthogonality_check(const Vec& x, const std::vector<double>& kappa,
                                               const NetworkMatrices& mats, double tol = 1e-9) {
    detail::require_positive(x, "state");
    detail::require_rates(kappa, mats.r_directed);
    OrthogonalityReport report;
    const detail::DoubleNet net(mats, kappa);
    const Vec phi = net.monomials(x);
    const Vec nu = net.kappa.cwiseProduct(phi);
    const auto kernel = kernel_basis(mats.A);

    auto normalized = [](const Vec& v, const Vec& target) {
        const double denom = v.norm() * target.norm();
        return denom == 0.0 ? 0.0 : std::abs(v.dot(target)) / denom;
    };

    for (const auto& kv : kernel) {
        const Vec v = to_eigen(kv);
        report.flux_violation = std::max(report.flux_violation, normalized(v, nu));
        // ker(A diag kappa) = diag(1/kappa) ker(A)
        const Vec u = v.cwiseQuotient(net.kappa);
        report.kappa_kernel_violation = std::max(report.kappa_kernel_violation, normalized(u, phi));
    }
    report.flux_orthogonal = report.flux_violation <= tol;
    report.kappa_kernel_orthogonal = report.kappa_kernel_violation <= tol;
    report.sides_agree = report.flux_orthogonal == report.kappa_kernel_orthogonal;

    const std::size_t pairs = mats.reversible_pairs;
    if (mats.r_directed == 2 * pairs && pairs > 0) {
        RatMatrix ahat(mats.A.rows(), pairs);
        for (std::size_t r = 0; r < mats.A.rows(); ++r)
            for (std::size_t c = 0; c < pairs; ++c) ahat(r, c) = mats.A(r, c);
        Vec net_flux(static_cast<Eigen::Index>(pairs));
        for (std::size_t i = 0; i < pairs; ++i)
            net_flux[static_cast<Eigen::Index>(i)] =
                nu[static_cast<Eigen::Index>(i)] - nu[static_cast<Eigen::Index>(i + pairs)];
        double worst = 0.0;
        for (const auto& kv : kernel_basis(ahat))
            worst = std::max(worst, normalized(to_eigen(kv), net_flux));
        report.net_flux_violation = worst;
    }
    return report;
}

struct IntegrateOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    std::size_t max_steps = 5'000'000;
    std::optional<Vec> feed;  // CFSTR inflow; rhs gains (c - x)
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Vec> x;
    std::vector<Vec> dx;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double kDpC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kDpA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double kDpB5[7] = {35.0 / 384,     0.0,      500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84, 0.0};
inline constexpr double kDpB4[7] = {5179.0 / 57600,    0.0,          7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

inline bool positive_and_finite(const Vec& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !std::isfinite(x[i])) return false;
    }
    return true;
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of dx/dt = f_kappa(x), or
/// f_kappa(x) + (c - x) when a feed is set. Positivity is preserved by
/// rejecting any step whose stages or endpoint leave the open orthant; the
/// step is then halved. Throws StepUnderflowError when the step size falls
/// below resolution.
inline Trajectory integrate(const Vec& x0, const std::vector<double>& kappa,
                            const NetworkMatrices& mats, double t_end,
                            const IntegrateOptions& opts = {}) {
    detail::require_positive(x0, "initial state");
    if (static_cast<std::size_t>(x0.size()) != mats.species_count())
        throw DimensionError("state length mismatch");
    if (!(t_end >= 0.0)) throw Error("t_end must be nonnegative");
    if (opts.feed) {
        if (opts.feed->size() != x0.size()) throw DimensionError("feed length mismatch");
        detail::require_positive(*opts.feed, "feed");
    }

    const detail::DoubleNet net(mats, kappa);
    auto rhs = [&](const Vec& x) {
        Vec v = net.f(x);
        if (opts.feed) v += *opts.feed - x;
        return v;
    };

    Trajectory traj;
    double t = 0.0;
    Vec x = x0;
    Vec k[7];
    k[0] = rhs(x);
    traj.t.push_back(t);
    traj.x.push_back(x);
    traj.dx.push_back(k[0]);
    if (t_end == 0.0) return traj;

    double h = std::min(opts.initial_step, t_end);
    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        if (t >= t_end) return traj;
        h = std::min(h, t_end - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepUnderflowError("step size underflow at t = " + std::to_string(t));

        bool stage_ok = true;
        for (int i = 1; i < 7; ++i) {
            Vec y = x;
            for (int j = 0; j < i; ++j) {
                if (detail::kDpA[i][j] != 0.0) y += (h * detail::kDpA[i][j]) * k[j];
            }
            if (!detail::positive_and_finite(y)) {
                stage_ok = false;
                break;
            }
            k[i] = rhs(y);
        }
        if (!stage_ok) {
            ++traj.rejected;
            h *= 0.5;
            continue;
        }

        Vec x5 = x;
        Vec x4 = x;
        for (int i = 0; i < 7; ++i) {
            if (detail::kDpB5[i] != 0.0) x5 += (h * detail::kDpB5[i]) * k[i];
            if (detail::kDpB4[i] != 0.0) x4 += (h * detail::kDpB4[i]) * k[i];
        }
        if (!detail::positive_and_finite(x5)) {
            ++traj.rejected;
            h *= 0.5;
            continue;
        }

        double err = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(x[i]), std::abs(x5[i]));
            err = std::max(err, std::abs(x5[i] - x4[i]) / scale);
        }
        if (!std::isfinite(err)) {
            ++traj.rejected;
            h *= 0.5;
            continue;
        }

        if (err <= 1.0) {
            t += h;
            x = x5;
            k[0] = k[6];  // FSAL: stage row 7 equals the 5th-order weights
            ++traj.accepted;
            traj.t.push_back(t);
            traj.x.push_back(x);
            traj.dx.push_back(k[0]);
            const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            ++traj.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
        }
    }
    throw Error("integrate: step budget exhausted before t_end");
}

struct NewtonOptions {
    double f_tol = 1e-10;
    std::size_t max_iterations = 200;
    std::optional<Vec> anchor;  // class anchor; defaults to the start state
};

struct EquilibriumResult {
    std::optional<Vec> x;
    double residual = std::numeric_limits<double>::infinity();  // ||f||_inf at final iterate
    std::size_t iterations = 0;
    std::string diagnostic;  // nonempty when not converged
};

/// Damped Newton on the reduced square system
///   G(x) = [ u^T f(x) ; w^T (x - x0) ]
/// with u an orthonormal basis of im(A) and w of its complement, so the
/// conservation relations pin the stoichiometric class of the anchor.
inline EquilibriumResult find_equilibrium(const Vec& start, const std::vector<double>& kappa,
                                          const NetworkMatrices& mats,
                                          const NewtonOptions& opts = {}) {
    detail::require_positive(start, "start state");
    if (static_cast<std::size_t>(start.size()) != mats.species_count())
        throw DimensionError("state length mismatch");
    const Vec anchor = opts.anchor ? *opts.anchor : start;
    if (anchor.size() != start.size()) throw DimensionError("anchor length mismatch");

    const detail::DoubleNet net(mats, kappa);
    const detail::ClassGeometry geom(mats);
    const Eigen::Index n = start.size();
    const Eigen::Index d = geom.u.cols();

    auto reduced = [&](const Vec& x) {
        Vec g(n);
        g.head(d) = geom.u.transpose() * net.f(x);
        g.tail(n - d) = geom.w.transpose() * (x - anchor);
        return g;
    };

    EquilibriumResult result;
    Vec x = start;
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        result.iterations = it;
        const Vec fx = net.f(x);
        result.residual = fx.size() == 0 ? 0.0 : fx.cwiseAbs().maxCoeff();
        const Vec g = reduced(x);
        const double class_err = n > d ? g.tail(n - d).cwiseAbs().maxCoeff() : 0.0;
        if (result.residual <= opts.f_tol && class_err <= 1e-9 * (1.0 + anchor.norm())) {
            result.x = x;
            return result;
        }

        Mat jg(n, n);
        jg.topRows(d) = geom.u.transpose() * net.jac(x);
        jg.bottomRows(n - d) = geom.w.transpose();
        const Vec dx = jg.colPivHouseholderQr().solve(-g);
        if (!dx.allFinite()) {
            result.diagnostic = "singular reduced Jacobian";
            return result;
        }

        const double g0 = g.norm();
        double lambda = 1.0;
        bool stepped = false;
        for (int bt = 0; bt < 40; ++bt) {
            const Vec candidate = x + lambda * dx;
            if (detail::positive_and_finite(candidate)) {
                const Vec gc = reduced(candidate);
                if (gc.allFinite() && gc.norm() <= (1.0 - 1e-4 * lambda) * g0) {
                    x = candidate;
                    stepped = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!stepped) {
            result.diagnostic = "line search failed at iteration " + std::to_string(it);
            return result;
        }
    }
    result.diagnostic = "no convergence after " + std::to_string(opts.max_iterations) + " iterations";
    return result;
}

struct EquilibriumCluster {
    Vec x;
    double residual = 0.0;
    std::size_t count = 0;  // trials whose equilibrium landed in this cluster
};

struct EquilibriumSet {
    Vec anchor;
    std::vector<EquilibriumCluster> clusters;
    std::size_t converged = 0;
    std::size_t failed = 0;
};

struct MultistartOptions {
    double cluster_radius = 1e-6;  // after rescaling by the anchor norm
    NewtonOptions newton;
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random class member: x0 plus a log-uniform combination of im(A) basis
/// vectors, halved until positive. Coefficient magnitudes span [1e-2, 1e2].
inline Vec sample_class_member(const Vec& x0, const ClassGeometry& geom, std::mt19937_64& rng) {
    if (geom.im_raw.empty()) return x0;
    std::vector<double> coeff(geom.im_raw.size());
    for (auto& c : coeff) {
        const double magnitude = std::pow(10.0, -2.0 + 4.0 * uniform01(rng));
        c = (rng() & 1u) ? magnitude : -magnitude;
    }
    for (int shrink = 0; shrink < 200; ++shrink) {
        Vec candidate = x0;
        for (std::size_t j = 0; j < coeff.size(); ++j) candidate += coeff[j] * geom.im_raw[j];
        if (positive_and_finite(candidate)) return candidate;
        for (auto& c : coeff) c *= 0.5;
    }
    return x0;
}

}  // namespace detail

/// Runs find_equilibrium from `trials` random members of the stoichiometric
/// class of x0 and clusters the converged results. Each trial derives its own
/// generator from (seed, trial index), so the outcome depends only on those
/// two values.
inline EquilibriumSet multistart_uniqueness(const Vec& x0, const std::vector<double>& kappa,
                                            const NetworkMatrices& mats, std::size_t trials,
                                            std::uint64_t seed,
                                            const MultistartOptions& opts = {}) {
    detail::require_positive(x0, "anchor state");
    if (trials < 1) throw Error("multistart requires at least one trial");
    const detail::ClassGeometry geom(mats);

    EquilibriumSet set;
    set.anchor = x0;
    const double scale = std::max(x0.norm(), 1e-300);
    NewtonOptions newton = opts.newton;
    newton.anchor = x0;

    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial),
                          static_cast<std::uint32_t>(trial >> 32)};
        std::mt19937_64 rng(seq);
        const Vec start = detail::sample_class_member(x0, geom, rng);
        const EquilibriumResult res = find_equilibrium(start, kappa, mats, newton);
        if (!res.x) {
            ++set.failed;
            continue;
        }
        ++set.converged;
        bool placed = false;
        for (auto& cluster : set.clusters) {
            if ((*res.x - cluster.x).norm() / scale <= opts.cluster_radius) {
                ++cluster.count;
                cluster.residual = std::min(cluster.residual, res.residual);
                placed = true;
                break;
            }
        }
        if (!placed) set.clusters.push_back({*res.x, res.residual, 1});
    }
    return set;
}

/// CFSTR right-hand side: internal f_kappa(x) plus the unit-rate flow term
/// (c - x).
inline Vec cfstr_rhs(const Vec& x, const std::vector<double>& kappa, const NetworkMatrices& mats,
                     const Vec& feed) {
    detail::require_positive(x, "state");
    detail::require_positive(feed, "feed");
    if (feed.size() != x.size()) throw DimensionError("feed length mismatch");
    return f_kappa(x, kappa, mats) + (feed - x);
}

}  // namespace crnfeas
