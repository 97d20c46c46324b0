#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "crnfeas/matrix.hpp"

namespace crnfeas {

/// Result of an exact reduced-row-echelon reduction.
struct Echelon {
    RatMatrix reduced;
    std::vector<std::size_t> pivot_columns;  // one per pivot row, ascending
    std::size_t rank = 0;
};

/// Exact Gauss-Jordan reduction. Division over rationals is exact, so the
/// reduced form is canonical with unit pivots.
inline Echelon rref(RatMatrix m) {
    Echelon result;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows && m(sel, col) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != pivot_row) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot_row, j), m(sel, j));
        }
        const Rational inv_pivot = Rational(1) / m(pivot_row, col);
        for (std::size_t j = col; j < cols; ++j) m(pivot_row, j) *= inv_pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || m(i, col) == 0) continue;
            const Rational factor = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= factor * m(pivot_row, j);
        }
        result.pivot_columns.push_back(col);
        ++pivot_row;
    }
    result.rank = pivot_row;
    result.reduced = std::move(m);
    return result;
}

inline std::size_t rank(const RatMatrix& m) {
    return rref(m).rank;
}

/// Basis of {x : M x = 0} in reduced echelon parametrization: one vector per
/// free column, unit entry at the free coordinate. Empty iff the kernel is
/// trivial.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
    const Echelon ech = rref(m);
    const std::size_t cols = m.cols();

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : ech.pivot_columns) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t p = 0; p < ech.pivot_columns.size(); ++p) {
            v[ech.pivot_columns[p]] = -ech.reduced(p, free_col);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis of the left kernel {w : w^T M = 0}.
inline std::vector<RatVector> left_kernel_basis(const RatMatrix& m) {
    return kernel_basis(m.transposed());
}

/// True iff every v in V lies in span(W). Decided exactly by comparing the
/// rank of W against the rank of W augmented with V. Empty V is contained in
/// any span.
inline bool span_contained(const std::vector<RatVector>& v_set, const std::vector<RatVector>& w_set) {
    if (v_set.empty()) return true;
    const std::size_t len = v_set.front().size();
    for (const auto& v : v_set)
        if (v.size() != len) throw DimensionError("span_contained: vector length mismatch in V");
    for (const auto& w : w_set)
        if (w.size() != len) throw DimensionError("span_contained: vector length mismatch between V and W");

    const RatMatrix base = RatMatrix::from_rows(w_set);
    std::vector<RatVector> combined = w_set;
    combined.insert(combined.end(), v_set.begin(), v_set.end());
    const RatMatrix augmented = RatMatrix::from_rows(combined);
    return rank(base) == rank(augmented);
}

/// Indices of a maximal linearly independent subset of the matrix columns.
inline std::vector<std::size_t> independent_columns(const RatMatrix& m) {
    return rref(m).pivot_columns;
}

/// Basis of the orthogonal complement of span(vectors) inside R^ambient.
inline std::vector<RatVector> orthogonal_complement(const std::vector<RatVector>& vectors,
                                                    std::size_t ambient) {
    if (vectors.empty()) {
        std::vector<RatVector> full;
        for (std::size_t i = 0; i < ambient; ++i) {
            RatVector e(ambient, Rational(0));
            e[i] = 1;
            full.push_back(std::move(e));
        }
        return full;
    }
    return kernel_basis(RatMatrix::from_rows(vectors));
}

}  // namespace crnfeas
