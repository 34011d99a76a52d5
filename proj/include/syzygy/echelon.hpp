#pragma once

#include <cstdint>
#include <vector>

#include "syzygy/matrix.hpp"

namespace artin {

/// Incrementally maintained subspace basis in reduced row-echelon form.
/// Rows are kept fully reduced, pivots sorted ascending, so the basis (and
/// everything derived from it) is independent of insertion order.
class EchelonBasis {
public:
    EchelonBasis(std::size_t width, std::uint32_t p) : width_(width), p_(p) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }

    /// Residual of v after reduction against the current basis.
    Vec reduce(Vec v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::uint32_t c = v[pivots_[r]];
            if (c == 0) continue;
            std::uint32_t f = mod_neg(c, p_);
            const Vec& row = rows_[r];
            for (std::size_t j = 0; j < width_; ++j)
                v[j] = static_cast<std::uint32_t>((v[j] + static_cast<std::uint64_t>(f) * row[j]) % p_);
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (auto x : r)
            if (x) return false;
        return true;
    }

    /// Inserts v; returns true when the rank grew.
    bool insert(Vec v) {
        v = reduce(std::move(v));
        std::size_t piv = width_;
        for (std::size_t j = 0; j < width_; ++j)
            if (v[j]) {
                piv = j;
                break;
            }
        if (piv == width_) return false;
        std::uint32_t inv = mod_inverse(v[piv], p_);
        for (auto& x : v) x = mod_mul(x, inv, p_);
        // keep earlier rows reduced against the new pivot
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::uint32_t c = rows_[r][piv];
            if (c == 0) continue;
            std::uint32_t f = mod_neg(c, p_);
            for (std::size_t j = 0; j < width_; ++j)
                rows_[r][j] =
                    static_cast<std::uint32_t>((rows_[r][j] + static_cast<std::uint64_t>(f) * v[j]) % p_);
        }
        std::size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < piv) ++at;
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), piv);
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
        return true;
    }

    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const std::vector<Vec>& rows() const { return rows_; }

    Matrix basis_matrix() const { return Matrix::from_rows(rows_, width_, p_); }

    std::vector<std::size_t> non_pivots() const {
        std::vector<bool> is_pivot(width_, false);
        for (auto c : pivots_) is_pivot[c] = true;
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < width_; ++j)
            if (!is_pivot[j]) out.push_back(j);
        return out;
    }

private:
    std::size_t width_;
    std::uint32_t p_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace artin
