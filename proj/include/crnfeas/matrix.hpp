#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "crnfeas/errors.hpp"
#include "crnfeas/rational.hpp"

namespace crnfeas {

/// Dense exact-rational matrix, row-major.
class RatMatrix {
public:
    RatMatrix() = default;

    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionError("ragged initializer for RatMatrix");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds a matrix whose rows are the given vectors (all of equal length).
    static RatMatrix from_rows(const std::vector<RatVector>& rows) {
        RatMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw DimensionError("row length mismatch in from_rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    /// Builds a matrix whose columns are the given vectors.
    static RatMatrix from_columns(const std::vector<RatVector>& cols) {
        RatMatrix m(cols.empty() ? 0 : cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw DimensionError("column length mismatch in from_columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatVector row(std::size_t i) const {
        RatVector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    RatVector column(std::size_t j) const {
        RatVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<RatVector> row_vectors() const {
        std::vector<RatVector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    std::vector<RatVector> column_vectors() const {
        std::vector<RatVector> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
        return out;
    }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& other) const {
        if (cols_ != other.rows_) throw DimensionError("matrix product dimension mismatch");
        RatMatrix p(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
            }
        return p;
    }

    RatVector operator*(const RatVector& v) const {
        if (cols_ != v.size()) throw DimensionError("matrix-vector product dimension mismatch");
        RatVector out(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    RatMatrix operator-() const {
        RatMatrix m(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
        return m;
    }

    bool operator==(const RatMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    bool is_zero() const {
        for (const auto& q : data_)
            if (q != 0) return false;
        return true;
    }

    /// Horizontal concatenation [this | other].
    RatMatrix hcat(const RatMatrix& other) const {
        if (rows_ != other.rows_) throw DimensionError("hcat row mismatch");
        RatMatrix m(rows_, cols_ + other.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
        }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vector(const RatVector& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

inline RatVector negated(const RatVector& v) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

inline RatVector scaled(const RatVector& v, const Rational& c) {
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

}  // namespace crnfeas
