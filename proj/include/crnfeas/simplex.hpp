#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "crnfeas/exactla.hpp"
#include "crnfeas/matrix.hpp"

namespace crnfeas {

/// Per-coordinate sign constraint of a homogeneous system.
enum class SignTag {
    free_,
    zero,
    nonneg,
    nonpos,
    strictly_pos,
    strictly_neg,
};

inline SignTag strict_tag(int s) {
    return s > 0 ? SignTag::strictly_pos : (s < 0 ? SignTag::strictly_neg : SignTag::zero);
}

inline SignTag weak_tag(int s) {
    return s > 0 ? SignTag::nonneg : (s < 0 ? SignTag::nonpos : SignTag::zero);
}

/// Homogeneous system M x = 0 with sign constraints per coordinate.
/// Strict constraints are interpreted over the solution cone: strictly_pos
/// means x_i > 0, realized by the scale-invariant normalization x_i >= 1.
struct LinearSystem {
    RatMatrix equalities;              // M, cols = dimension (may have 0 rows)
    std::vector<SignTag> constraints;  // length = dimension

    std::size_t dimension() const { return constraints.size(); }

    static LinearSystem make(RatMatrix m, std::vector<SignTag> tags) {
        if (m.cols() != 0 && m.cols() != tags.size())
            throw DimensionError("LinearSystem: equality columns do not match constraint count");
        if (m.cols() == 0 && m.rows() != 0)
            throw DimensionError("LinearSystem: nonempty equalities with zero columns");
        return LinearSystem{std::move(m), std::move(tags)};
    }
};

/// Exact check that x satisfies the system (strictness as true strict
/// inequalities, not the >= 1 normalization).
inline bool satisfies(const LinearSystem& sys, const RatVector& x) {
    if (x.size() != sys.dimension()) return false;
    if (sys.equalities.rows() > 0) {
        const RatVector residual = sys.equalities * x;
        if (!is_zero_vector(residual)) return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        switch (sys.constraints[i]) {
            case SignTag::free_: break;
            case SignTag::zero:
                if (x[i] != 0) return false;
                break;
            case SignTag::nonneg:
                if (x[i] < 0) return false;
                break;
            case SignTag::nonpos:
                if (x[i] > 0) return false;
                break;
            case SignTag::strictly_pos:
                if (x[i] <= 0) return false;
                break;
            case SignTag::strictly_neg:
                if (x[i] >= 0) return false;
                break;
        }
    }
    return true;
}

namespace detail {

/// Phase-1 simplex over exact rationals with Bland's rule.
/// Decides whether {u >= 0 : C u = b} is nonempty and returns a point.
inline std::optional<RatVector> phase1(const RatMatrix& c_mat, RatVector b) {
    const std::size_t m = c_mat.rows();
    const std::size_t n = c_mat.cols();

    // Tableau rows: [C | I_artificial | rhs], with rhs >= 0.
    std::vector<RatVector> tab(m, RatVector(n + m + 1, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = flip ? -c_mat(i, j) : c_mat(i, j);
        tab[i][n + i] = 1;
        tab[i][n + m] = flip ? -b[i] : b[i];
    }

    // Reduced costs for minimizing the artificial sum, with artificials basic.
    RatVector cost(n + m + 1, Rational(0));
    for (std::size_t j = 0; j <= n + m; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m; ++i) s += tab[i][j];
        cost[j] = -s;
    }
    for (std::size_t i = 0; i < m; ++i) cost[n + i] = 0;

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering = lowest-index column with negative reduced cost.
        // Artificial columns never re-enter.
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == n) break;  // optimal

        // Leaving row by minimum ratio; ties broken by lowest basis index.
        std::size_t leave = m;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            const Rational ratio = tab[i][n + m] / tab[i][enter];
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) break;  // column unbounded; cannot improve a bounded objective

        // Pivot on (leave, enter).
        const Rational inv = Rational(1) / tab[leave][enter];
        for (auto& v : tab[leave]) v *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter] == 0) continue;
            const Rational f = tab[i][enter];
            for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j <= n + m; ++j) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    // Feasible iff the artificial sum reached zero.
    if (cost[n + m] != 0) return std::nullopt;

    RatVector u(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) u[basis[i]] = tab[i][n + m];
    }
    return u;
}

}  // namespace detail

/// Decides feasibility of a homogeneous strict-inequality system and returns
/// an exact witness when one exists. Strict constraints are normalized to
/// |x_i| >= 1, which is lossless on the solution cone.
inline std::optional<RatVector> strict_feasible(const LinearSystem& sys) {
    const std::size_t k = sys.dimension();

    // Substitution to nonnegative variables:
    //   zero         -> (no variable)
    //   nonneg       -> x_i =  u
    //   nonpos       -> x_i = -u
    //   strictly_pos -> x_i =  1 + u
    //   strictly_neg -> x_i = -1 - u
    //   free         -> x_i =  u+ - u-
    struct Coord {
        SignTag tag;
        std::size_t var = 0;   // first substituted variable
        std::size_t var2 = 0;  // second variable (free case)
    };
    std::vector<Coord> coords(k);
    std::size_t n_vars = 0;
    for (std::size_t i = 0; i < k; ++i) {
        coords[i].tag = sys.constraints[i];
        switch (coords[i].tag) {
            case SignTag::zero: break;
            case SignTag::free_:
                coords[i].var = n_vars++;
                coords[i].var2 = n_vars++;
                break;
            default: coords[i].var = n_vars++; break;
        }
    }

    const std::size_t m = sys.equalities.rows();
    RatMatrix c_mat(m, n_vars);
    RatVector b(m, Rational(0));
    for (std::size_t row = 0; row < m; ++row) {
        for (std::size_t i = 0; i < k; ++i) {
            const Rational& a = sys.equalities(row, i);
            if (a == 0) continue;
            switch (coords[i].tag) {
                case SignTag::zero: break;
                case SignTag::nonneg: c_mat(row, coords[i].var) += a; break;
                case SignTag::nonpos: c_mat(row, coords[i].var) -= a; break;
                case SignTag::strictly_pos:
                    c_mat(row, coords[i].var) += a;
                    b[row] -= a;
                    break;
                case SignTag::strictly_neg:
                    c_mat(row, coords[i].var) -= a;
                    b[row] += a;
                    break;
                case SignTag::free_:
                    c_mat(row, coords[i].var) += a;
                    c_mat(row, coords[i].var2) -= a;
                    break;
            }
        }
    }

    const auto u = detail::phase1(c_mat, std::move(b));
    if (!u) return std::nullopt;

    RatVector x(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        switch (coords[i].tag) {
            case SignTag::zero: x[i] = 0; break;
            case SignTag::nonneg: x[i] = (*u)[coords[i].var]; break;
            case SignTag::nonpos: x[i] = -(*u)[coords[i].var]; break;
            case SignTag::strictly_pos: x[i] = Rational(1) + (*u)[coords[i].var]; break;
            case SignTag::strictly_neg: x[i] = Rational(-1) - (*u)[coords[i].var]; break;
            case SignTag::free_: x[i] = (*u)[coords[i].var] - (*u)[coords[i].var2]; break;
        }
    }

    if (!satisfies(sys, x))
        throw InternalInconsistencyError("phase-1 simplex produced a non-satisfying point");
    return x;
}

}  // namespace crnfeas
