#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qrmt/qmatrix.hpp"

namespace qrmt {

/// Ordered factors H_1, ..., H_k with chained dimensions n_j x n_{j+1}.
using DiamondChain = std::vector<QMatrix>;

namespace detail {

inline void check_chain(const std::vector<const QMatrix*>& h) {
    if (h.empty()) throw std::invalid_argument("diamond: chain must have k >= 1 factors");
    for (std::size_t j = 0; j + 1 < h.size(); ++j)
        if (h[j]->cols != h[j + 1]->rows)
            throw std::invalid_argument("diamond: adjacent factor dimensions disagree");
}

/// Rectangular diagonal of q applied from the left: row j of the result is
/// q(j,j) * m[j,:] when j indexes into q's diagonal, zero otherwise.
inline QMatrix diag_times(const QMatrix& q, const QMatrix& m) {
    QMatrix out(q.rows, m.cols);
    const std::size_t dlen = std::min(q.rows, std::min(q.cols, m.rows));
    for (std::size_t j = 0; j < dlen; ++j) {
        const Quaternion& djj = q(j, j);
        for (std::size_t l = 0; l < m.cols; ++l) out(j, l) = djj * m(j, l);
    }
    return out;
}

/// Entry (j,l) = h1(j,l) * h2(l,j) * h3(j,l); zero wherever an index falls
/// outside a factor. Shape n_1 x n_4 so it chains in place of H_1..H_3.
inline QMatrix triple_overlap(const QMatrix& h1, const QMatrix& h2, const QMatrix& h3) {
    QMatrix out(h1.rows, h3.cols);
    const std::size_t jmax = std::min(h1.rows, h3.rows);
    const std::size_t lmax = std::min(h1.cols, h3.cols);
    for (std::size_t j = 0; j < jmax; ++j)
        for (std::size_t l = 0; l < lmax; ++l) out(j, l) = h1(j, l) * h2(l, j) * h3(j, l);
    return out;
}

inline QMatrix diamond_rec(const std::vector<const QMatrix*>& h) {
    const std::size_t k = h.size();
    if (k == 1) return *h[0];

    std::vector<const QMatrix*> tail(h.begin() + 1, h.end());
    const QMatrix d2 = diamond_rec(tail);
    QMatrix result = (*h[0]) * d2;

    const QMatrix q = (*h[0]) * (*h[1]);
    if (k == 2) {
        // Two factors: plain product with the diagonal removed.
        const std::size_t dlen = std::min(result.rows, result.cols);
        for (std::size_t j = 0; j < dlen; ++j) result(j, j) = Quaternion::zero();
        return result;
    }

    std::vector<const QMatrix*> tail2(h.begin() + 2, h.end());
    result -= diag_times(q, diamond_rec(tail2));

    const QMatrix m3 = triple_overlap(*h[0], *h[1], *h[2]);
    std::vector<const QMatrix*> corrected;
    corrected.push_back(&m3);
    for (std::size_t j = 3; j < k; ++j) corrected.push_back(h[j]);
    result += diamond_rec(corrected);
    return result;
}

}  // namespace detail

/// Chained product restricted to index chains with t_j != t_{j+2}
/// (boundary indices included: t_1 is the row, t_{k+1} the column).
/// Evaluated by the three-term recursion
///   H1 <> ... <> Hk = H1 (H2 <> ... <> Hk)
///                   - diag(H1 H2) (H3 <> ... <> Hk)
///                   + (h1_jl h2_lj h3_jl) <> H4 <> ... <> Hk
/// rather than the exponential direct sum.
inline QMatrix diamond(const DiamondChain& chain) {
    std::vector<const QMatrix*> h;
    h.reserve(chain.size());
    for (const auto& m : chain) h.push_back(&m);
    detail::check_chain(h);
    return detail::diamond_rec(h);
}

/// Direct constrained sum over all index chains; testing oracle for
/// diamond(). Guarded: refuses when the chain count exceeds 1e7.
inline QMatrix diamond_bruteforce(const DiamondChain& chain) {
    std::vector<const QMatrix*> h;
    for (const auto& m : chain) h.push_back(&m);
    detail::check_chain(h);
    const std::size_t k = h.size();

    double total = static_cast<double>(h[0]->rows) * h.back()->cols;
    for (std::size_t j = 1; j < k; ++j) total *= static_cast<double>(h[j]->rows);
    if (total > 1e7) throw std::invalid_argument("diamond_bruteforce: index-chain count over 1e7");

    QMatrix out(h[0]->rows, h.back()->cols);
    // t[0] = row index, t[k] = column index, t[1..k-1] summed over, all
    // subject to t[m] != t[m-2].
    std::vector<std::size_t> t(k + 1, 0);
    Quaternion acc;
    const auto dfs = [&](auto&& self, std::size_t m, const Quaternion& partial) -> void {
        if (m == k) {
            if (k < 2 || t[k] != t[k - 2]) acc += partial * (*h[k - 1])(t[k - 1], t[k]);
            return;
        }
        for (std::size_t idx = 0; idx < h[m]->rows; ++idx) {
            if (m >= 2 && idx == t[m - 2]) continue;
            t[m] = idx;
            self(self, m + 1, partial * (*h[m - 1])(t[m - 1], idx));
        }
    };
    for (std::size_t alpha = 0; alpha < out.rows; ++alpha) {
        for (std::size_t beta = 0; beta < out.cols; ++beta) {
            t[0] = alpha;
            t[k] = beta;
            acc = Quaternion::zero();
            dfs(dfs, 1, Quaternion::e());
            out(alpha, beta) = acc;
        }
    }
    return out;
}

/// R(l) = n^{-l} * (X <> X* <> ... <> X <> X*), 2l alternating factors;
/// R(0) is the quaternion identity. R(1) is the sample covariance matrix
/// with its quaternion diagonal removed.
inline QMatrix build_R(const QMatrix& x, std::size_t l, std::size_t n) {
    if (n == 0) throw std::invalid_argument("build_R: n must be positive");
    if (l == 0) return QMatrix::identity(x.rows);
    const QMatrix xadj = x.adjoint();
    std::vector<const QMatrix*> chain;
    chain.reserve(2 * l);
    for (std::size_t j = 0; j < l; ++j) {
        chain.push_back(&x);
        chain.push_back(&xadj);
    }
    detail::check_chain(chain);
    QMatrix r = detail::diamond_rec(chain);
    double scale = 1.0;
    for (std::size_t j = 0; j < l; ++j) scale /= static_cast<double>(n);
    r *= scale;
    return r;
}

}  // namespace qrmt
