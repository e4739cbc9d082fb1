#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "cadrigid/rational.hpp"

namespace cadrigid {

/// Dense matrix of exact rationals. Row-major; sized once at construction.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

namespace detail {

// Clear denominators row by row; returns the integer matrix and the product
// of the row scaling factors (det(A) = det(B) / scale).
inline std::pair<std::vector<std::vector<Int>>, Rat> clear_denominators(const RatMatrix& a) {
    const std::size_t n = a.rows(), m = a.cols();
    std::vector<std::vector<Int>> b(n, std::vector<Int>(m));
    Rat scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Int lcm(1);
        for (std::size_t j = 0; j < m; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.at(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m; ++j) {
            Rat scaled = a.at(i, j) * Rat(lcm);
            assert(scaled.get_den() == 1);
            b[i][j] = scaled.get_num();
        }
        scale *= Rat(lcm);
    }
    return {std::move(b), scale};
}

}  // namespace detail

/// Exact determinant by fraction-free Bareiss elimination. Denominators are
/// cleared first so all intermediate divisions stay in the integers.
inline Rat bareiss_determinant(const RatMatrix& a) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    if (n == 0) return Rat(1);
    auto [m, scale] = detail::clear_denominators(a);

    int sign = 1;
    Int prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Rat(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Rat det = Rat(m[n - 1][n - 1]) * sign / scale;
    det.canonicalize();
    return det;
}

/// Row echelon rank, exact arithmetic.
inline std::size_t rank(RatMatrix a) {
    const std::size_t n = a.rows(), m = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && a.at(piv, c) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = c; j < m; ++j) std::swap(a.at(r, j), a.at(piv, j));
        for (std::size_t i = r + 1; i < n; ++i) {
            if (a.at(i, c) == 0) continue;
            Rat f = a.at(i, c) / a.at(r, c);
            for (std::size_t j = c; j < m; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        ++r;
    }
    return r;
}

/// Basis of the left null space { w : w A = 0 }, one vector per row of the
/// result. Exact; basis vectors come out of reduced elimination on A^T.
inline std::vector<RatVec> left_nullspace(const RatMatrix& a) {
    // Solve A^T w = 0.
    const std::size_t n = a.cols(), m = a.rows();  // A^T is n x m
    RatMatrix t(n, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) t.at(j, i) = a.at(i, j);

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t piv = r;
        while (piv < n && t.at(piv, c) == 0) ++piv;
        if (piv == n) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m; ++j) std::swap(t.at(r, j), t.at(piv, j));
        Rat p = t.at(r, c);
        for (std::size_t j = 0; j < m; ++j) t.at(r, j) /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || t.at(i, c) == 0) continue;
            Rat f = t.at(i, c);
            for (std::size_t j = 0; j < m; ++j) t.at(i, j) -= f * t.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(m, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < m; ++free) {
        if (is_pivot[free]) continue;
        RatVec w(m, Rat(0));
        w[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) w[pivot_col[i]] = -t.at(i, free);
        basis.push_back(std::move(w));
    }
    return basis;
}

/// Floating-point determinant (partial-pivot LU) for the tolerance mode.
/// Returns det and the product of row norms for relative scaling.
inline std::pair<double, double> double_determinant(const RatMatrix& a) {
    assert(a.rows() == a.cols());
    const std::size_t n = a.rows();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    double norm_prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = to_double(a.at(i, j));
            s += m[i][j] * m[i][j];
        }
        norm_prod *= std::max(1e-300, std::sqrt(s));
    }
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (m[piv][k] == 0.0) return {0.0, norm_prod};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return {det, norm_prod};
}

}  // namespace cadrigid
