#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "syzygy/fp.hpp"

namespace artin {

using Vec = std::vector<std::uint32_t>;

class Matrix;

/// Rank and pivot columns produced by an in-place reduction.
struct RowEchelon {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Dense matrix over F_p. Entries are canonical representatives in [0, p).
/// Pivoting is first-nonzero, so every reduction is deterministic.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0), p_(2) {}

    Matrix(std::size_t rows, std::size_t cols, std::uint32_t p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
        if (!is_prime(p)) throw validation_error(validation_code::not_prime, std::to_string(p) + " is not prime");
    }

    static Matrix identity(std::size_t n, std::uint32_t p) {
        Matrix m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols, std::uint32_t p) {
        Matrix m(rows.size(), cols, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw dimension_mismatch("row length does not match column count");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j] % p;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }

    std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_add(a_[i], o.a_[i], p_);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_, p_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_sub(a_[i], o.a_[i], p_);
        return r;
    }

    Matrix scaled(std::uint32_t c) const {
        Matrix r(rows_, cols_, p_);
        c %= p_;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_mul(a_[i], c, p_);
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        require_same_modulus(o);
        if (cols_ != o.rows_) throw dimension_mismatch("matrix product " + shape() + " * " + o.shape());
        Matrix r(rows_, o.cols_, p_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                std::uint64_t aik = (*this)(i, k);
                if (!aik) continue;
                const std::uint32_t* orow = &o.a_[k * o.cols_];
                std::uint32_t* rrow = &r.a_[i * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j)
                    rrow[j] = static_cast<std::uint32_t>((rrow[j] + aik * orow[j]) % p_);
            }
        }
        return r;
    }

    Vec mul_vec(const Vec& v) const {
        if (v.size() != cols_) throw dimension_mismatch("matrix-vector product");
        Vec r(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            const std::uint32_t* row = &a_[i * cols_];
            for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(row[j]) * v[j] % p_;
            r[i] = static_cast<std::uint32_t>(acc % p_);
        }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix power(std::uint64_t e) const {
        if (rows_ != cols_) throw dimension_mismatch("power of non-square matrix");
        Matrix acc = identity(rows_, p_);
        Matrix base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

    Vec column(std::size_t j) const {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_row(std::size_t i, const Vec& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j] % p_;
    }

    void set_column(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i] % p_;
    }

    Matrix columns(const std::vector<std::size_t>& idx) const {
        Matrix r(rows_, idx.size(), p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        a.require_same_modulus(b);
        if (a.rows_ != b.rows_) throw dimension_mismatch("hstack row counts differ");
        Matrix r(a.rows_, a.cols_ + b.cols_, a.p_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        a.require_same_modulus(b);
        if (a.cols_ != b.cols_) throw dimension_mismatch("vstack column counts differ");
        Matrix r(a.rows_ + b.rows_, a.cols_, a.p_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }

    static Matrix block_diagonal(const Matrix& a, const Matrix& b) {
        a.require_same_modulus(b);
        Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_, a.p_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
        return r;
    }

    /// In-place Gauss-Jordan reduction to reduced row-echelon form.
    RowEchelon reduce_in_place() {
        RowEchelon res;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t pivot = r;
            while (pivot < rows_ && (*this)(pivot, c) == 0) ++pivot;
            if (pivot == rows_) continue;
            swap_rows(pivot, r);
            std::uint32_t inv = mod_inverse((*this)(r, c), p_);
            scale_row(r, inv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                std::uint32_t f = (*this)(i, c);
                if (f) axpy_row(i, r, mod_neg(f, p_));
            }
            res.pivots.push_back(c);
            ++r;
        }
        res.rank = r;
        return res;
    }

    std::size_t rank() const {
        Matrix c = *this;
        return c.reduce_in_place().rank;
    }

    /// Basis of the right null space, returned as columns. The basis is the
    /// standard one read off the reduced echelon form: one column per free
    /// variable, with free entries set to the unit vector pattern.
    Matrix kernel_basis() const {
        Matrix red = *this;
        RowEchelon e = red.reduce_in_place();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : e.pivots) is_pivot[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        Matrix k(cols_, free_cols.size(), p_);
        for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
            std::size_t f = free_cols[fi];
            k(f, fi) = 1;
            for (std::size_t r = 0; r < e.rank; ++r) k(e.pivots[r], fi) = mod_neg(red(r, f), p_);
        }
        return k;
    }

    std::size_t nullity() const { return cols_ - rank(); }

    /// Particular solution of (*this) x = b with free variables set to zero.
    std::optional<Vec> solve(const Vec& b) const {
        if (b.size() != rows_) throw dimension_mismatch("solve right-hand side");
        Matrix rhs(rows_, 1, p_);
        rhs.set_column(0, b);
        auto sol = solve_matrix(rhs);
        if (!sol) return std::nullopt;
        return sol->column(0);
    }

    /// Particular solutions for every column of B: returns X with (*this) X = B,
    /// free variables set to zero, or nullopt if any column is inconsistent.
    std::optional<Matrix> solve_matrix(const Matrix& b) const {
        require_same_modulus(b);
        if (b.rows_ != rows_) throw dimension_mismatch("solve right-hand side rows");
        Matrix aug = hstack(*this, b);
        RowEchelon e = aug.reduce_in_place();
        // A pivot inside the appended block certifies inconsistency.
        for (auto c : e.pivots)
            if (c >= cols_) return std::nullopt;
        Matrix x(cols_, b.cols_, p_);
        for (std::size_t r = 0; r < e.rank; ++r)
            for (std::size_t j = 0; j < b.cols_; ++j) x(e.pivots[r], j) = aug(r, cols_ + j);
        return x;
    }

    bool is_invertible() const {
        if (rows_ != cols_) throw dimension_mismatch("invertibility of non-square matrix");
        return rank() == rows_;
    }

    Matrix inverse() const {
        if (rows_ != cols_) throw dimension_mismatch("inverse of non-square matrix");
        Matrix aug = hstack(*this, identity(rows_, p_));
        RowEchelon e = aug.reduce_in_place();
        if (e.rank != rows_) throw error("matrix is singular");
        Matrix inv(rows_, rows_, p_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j) inv(i, j) = aug(i, cols_ + j);
        return inv;
    }

    /// Row-space basis as the nonzero rows of the reduced echelon form.
    Matrix row_space_basis() const {
        Matrix red = *this;
        RowEchelon e = red.reduce_in_place();
        Matrix r(e.rank, cols_, p_);
        for (std::size_t i = 0; i < e.rank; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = red(i, j);
        return r;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_modulus(const Matrix& o) const {
        if (p_ != o.p_) throw modulus_mismatch(p_, o.p_);
    }
    void require_same_shape(const Matrix& o) const {
        require_same_modulus(o);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch(shape() + " vs " + o.shape());
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void scale_row(std::size_t i, std::uint32_t f) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = mod_mul((*this)(i, c), f, p_);
    }
    // row_i += f * row_j
    void axpy_row(std::size_t i, std::size_t j, std::uint32_t f) {
        std::uint32_t* ri = &a_[i * cols_];
        const std::uint32_t* rj = &a_[j * cols_];
        for (std::size_t c = 0; c < cols_; ++c)
            ri[c] = static_cast<std::uint32_t>((ri[c] + static_cast<std::uint64_t>(f) * rj[c]) % p_);
    }

    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> a_;
};

/// rref + rank + pivot columns of m, leaving m untouched.
struct RowReduceResult {
    Matrix rref;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

inline RowReduceResult row_reduce(const Matrix& m) {
    RowReduceResult r{m, 0, {}};
    RowEchelon e = r.rref.reduce_in_place();
    r.rank = e.rank;
    r.pivots = std::move(e.pivots);
    return r;
}

inline Matrix kernel_basis(const Matrix& m) { return m.kernel_basis(); }

inline std::optional<Vec> solve(const Matrix& m, const Vec& b) { return m.solve(b); }

inline bool is_invertible(const Matrix& m) { return m.is_invertible(); }

} // namespace artin
