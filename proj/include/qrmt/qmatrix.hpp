#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qrmt/complex_matrix.hpp"
#include "qrmt/quaternion.hpp"

namespace qrmt {

/// Dense p x n quaternion matrix, row-major. Values are immutable by
/// convention once built: every operation returns a fresh matrix.
struct QMatrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<Quaternion> entries;

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    Quaternion& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const {
        return entries[r * cols + c];
    }

    /// p x p quaternion identity: e on the diagonal.
    static QMatrix identity(std::size_t p) {
        QMatrix m(p, p);
        for (std::size_t i = 0; i < p; ++i) m(i, i) = Quaternion::e();
        return m;
    }

    static QMatrix zeros(std::size_t r, std::size_t c) { return QMatrix(r, c); }

    static QMatrix filled(std::size_t r, std::size_t c, const Quaternion& q) {
        QMatrix m(r, c);
        for (auto& x : m.entries) x = q;
        return m;
    }

    /// Conjugate transpose over quaternion entries.
    QMatrix adjoint() const {
        QMatrix m(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(c, r) = (*this)(r, c).conj();
        return m;
    }

    /// 2p x 2n complex matrix: each entry replaced by its 2x2 block.
    ComplexMatrix embed() const {
        ComplexMatrix m(2 * rows, 2 * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                const auto blk = (*this)(r, c).embed2();
                m(2 * r, 2 * c) = blk[0];
                m(2 * r, 2 * c + 1) = blk[1];
                m(2 * r + 1, 2 * c) = blk[2];
                m(2 * r + 1, 2 * c + 1) = blk[3];
            }
        }
        return m;
    }

    double max_entry_norm() const {
        double m = 0.0;
        for (const auto& q : entries) m = std::max(m, q.norm());
        return m;
    }

    bool is_hermitian(double atol = 1e-12, double rtol = 1e-10) const {
        if (rows != cols) return false;
        const double tol = atol + rtol * max_entry_norm();
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                if (((*this)(r, c) - (*this)(c, r).conj()).norm() > tol) return false;
        return true;
    }

    QMatrix& operator+=(const QMatrix& o) {
        if (rows != o.rows || cols != o.cols)
            throw std::invalid_argument("quaternion matrix addition: shape mismatch");
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] += o.entries[i];
        return *this;
    }

    QMatrix& operator-=(const QMatrix& o) {
        if (rows != o.rows || cols != o.cols)
            throw std::invalid_argument("quaternion matrix subtraction: shape mismatch");
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] -= o.entries[i];
        return *this;
    }

    QMatrix& operator*=(double s) {
        for (auto& q : entries) q *= s;
        return *this;
    }

    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
    friend QMatrix operator*(double s, QMatrix a) { return a *= s; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("quaternion matmul: dimension mismatch");
        QMatrix c(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t k = 0; k < a.cols; ++k) {
                const Quaternion& x = a(i, k);
                const Quaternion* brow = &b.entries[k * b.cols];
                Quaternion* crow = &c.entries[i * c.cols];
                for (std::size_t j = 0; j < b.cols; ++j) crow[j] += x * brow[j];
            }
        }
        return c;
    }
};

/// Entrywise (Hadamard) quaternion product.
inline QMatrix star(const QMatrix& a, const QMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("star product: shape mismatch");
    QMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.entries.size(); ++i) c.entries[i] = a.entries[i] * b.entries[i];
    return c;
}

/// Square matrix with only the quaternion diagonal of `a` retained.
inline QMatrix block_diag(const QMatrix& a) {
    QMatrix m(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows && i < a.cols; ++i) m(i, i) = a(i, i);
    return m;
}

inline double max_abs_diff(const QMatrix& a, const QMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, (a.entries[i] - b.entries[i]).norm());
    return m;
}

}  // namespace qrmt
