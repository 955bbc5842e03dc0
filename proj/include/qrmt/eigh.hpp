#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrmt/complex_matrix.hpp"

namespace qrmt {

struct EighResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors; empty unless requested
};

namespace detail {

/// Householder reduction of a complex Hermitian matrix to real symmetric
/// tridiagonal form. On return d holds the diagonal, e the subdiagonal
/// (e[i] couples d[i] and d[i+1]), and, when u is non-null, *u holds the
/// unitary U with A = U T U*.
inline void hermitian_tridiagonalize(ComplexMatrix a, std::vector<double>& d,
                                     std::vector<double>& e, ComplexMatrix* u) {
    const std::size_t n = a.rows;
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    if (u) *u = ComplexMatrix::identity(n);
    if (n == 0) return;

    std::vector<std::complex<double>> v(n), w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Annihilate column k below the first subdiagonal.
        double colnorm_sq = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm_sq += std::norm(a(i, k));
        const double colnorm = std::sqrt(colnorm_sq);
        if (colnorm == 0.0) continue;

        const std::complex<double> x0 = a(k + 1, k);
        const std::complex<double> alpha =
            (x0 == std::complex<double>(0.0)) ? std::complex<double>(-colnorm)
                                              : -(x0 / std::abs(x0)) * colnorm;

        double vnorm_sq = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm_sq += std::norm(v[i]);
        }
        const double vnorm = std::sqrt(vnorm_sq);
        if (vnorm <= colnorm * std::numeric_limits<double>::epsilon()) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

        // Reflected column/row border.
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            a(i, k) = 0.0;
            a(k, i) = 0.0;
        }

        // Trailing block: B <- (I-2vv*) B (I-2vv*) = B - 2 v w* - 2 w v*,
        // with uvec = Bv and w = uvec - (v* uvec) v.
        std::complex<double> gamma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            std::complex<double> s = 0.0;
            const std::complex<double>* arow = a.row(i);
            for (std::size_t jj = k + 1; jj < n; ++jj) s += arow[jj] * v[jj];
            w[i] = s;
            gamma += std::conj(v[i]) * s;
        }
        for (std::size_t i = k + 1; i < n; ++i) w[i] -= gamma * v[i];
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::complex<double> vi2 = 2.0 * v[i];
            const std::complex<double> wi2 = 2.0 * w[i];
            std::complex<double>* arow = a.row(i);
            for (std::size_t jj = k + 1; jj < n; ++jj)
                arow[jj] -= vi2 * std::conj(w[jj]) + wi2 * std::conj(v[jj]);
        }

        if (u) {
            // U <- U (I - 2 v v*)
            for (std::size_t r = 0; r < n; ++r) {
                std::complex<double> s = 0.0;
                std::complex<double>* urow = u->row(r);
                for (std::size_t jj = k + 1; jj < n; ++jj) s += urow[jj] * v[jj];
                s *= 2.0;
                for (std::size_t jj = k + 1; jj < n; ++jj) urow[jj] -= s * std::conj(v[jj]);
            }
        }
    }

    // Phase twist so the subdiagonal becomes real nonnegative.
    std::vector<std::complex<double>> phase(n, 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::complex<double> t = a(i + 1, i) * phase[i];
        const double m = std::abs(t);
        e[i] = m;
        phase[i + 1] = (m > 0.0) ? t / m : phase[i];
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
    if (u) {
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) (*u)(r, c) *= phase[c];
    }
}

/// Implicit-shift QL with Wilkinson shifts on a real symmetric tridiagonal
/// matrix. Rotations are accumulated into the columns of *z when non-null.
/// Returns the index of a non-converging eigenvalue, or -1 on success.
inline long ql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* z,
                        int max_sweeps = 30) {
    const std::size_t n = d.size();
    if (n == 0) return -1;
    std::vector<double> ee(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) ee[i] = e[i];

    // Global scale for deflation. Subdiagonals at round-off level relative
    // to the whole matrix must split the problem even inside clusters of
    // near-zero eigenvalues, where the neighbor-relative test never fires.
    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(d[i]);
        if (i > 0) row += std::abs(ee[i - 1]);
        if (i + 1 < n) row += std::abs(ee[i]);
        anorm = std::max(anorm, row);
    }
    const double abs_tol = std::numeric_limits<double>::epsilon() * anorm;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(ee[m]) <= std::numeric_limits<double>::epsilon() * dd ||
                    std::abs(ee[m]) <= abs_tol)
                    break;
            }
            if (m != l) {
                if (iter++ == max_sweeps) return static_cast<long>(l);
                double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + ee[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                std::size_t i = m;
                while (i > l) {
                    --i;
                    double f = s * ee[i];
                    const double b = c * ee[i];
                    r = std::hypot(f, g);
                    ee[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        ee[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (std::size_t row = 0; row < z->rows; ++row) {
                            const std::complex<double> zf = (*z)(row, i + 1);
                            (*z)(row, i + 1) = s * (*z)(row, i) + c * zf;
                            (*z)(row, i) = c * (*z)(row, i) - s * zf;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                ee[l] = g;
                ee[m] = 0.0;
            }
        } while (m != l);
    }
    return -1;
}

}  // namespace detail

/// Eigendecomposition of a complex Hermitian matrix: Householder reduction
/// to real tridiagonal form followed by implicit-shift QL. Eigenvalues come
/// back ascending; eigenvectors (columns, orthonormal) only when asked for.
///
/// Throws std::invalid_argument for non-square or non-Hermitian input and
/// std::runtime_error if QL fails to converge within the sweep cap.
inline EighResult eigh(const ComplexMatrix& c, bool want_vectors = false) {
    if (c.rows != c.cols) throw std::invalid_argument("eigh: matrix must be square");
    const double herm_tol = 1e-10 * std::max(1.0, c.max_abs());
    if (!c.is_hermitian(herm_tol)) throw std::invalid_argument("eigh: matrix is not Hermitian");

    EighResult out;
    const std::size_t n = c.rows;
    if (n == 0) return out;

    std::vector<double> d, e;
    ComplexMatrix u;
    detail::hermitian_tridiagonalize(c, d, e, want_vectors ? &u : nullptr);
    const long bad = detail::ql_implicit(d, e, want_vectors ? &u : nullptr);
    if (bad >= 0)
        throw std::runtime_error("eigh: QL failed to converge at eigenvalue index " +
                                 std::to_string(bad));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = d[order[i]];
    if (want_vectors) {
        out.vectors = ComplexMatrix(n, n);
        for (std::size_t cidx = 0; cidx < n; ++cidx)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, cidx) = u(r, order[cidx]);
    }
    return out;
}

}  // namespace qrmt
