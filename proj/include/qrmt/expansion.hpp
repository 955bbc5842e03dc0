#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qrmt {

/// Integer coefficients C_j(k,r) of the expansion of (R - y s2 I)^k into the
/// family R(0), ..., R(k):
///   (R - y s2 I)^k = sum_r (-1)^{r+1} s2^{k-r} R(r) sum_j C_j(k,r) y^{k-r-j}
/// with 0 <= r <= k and 0 <= j <= (k-r)/2. All |C_j(k,r)| <= 2^k.
struct CjTable {
    int k{0};
    // coeff[r][j] = C_j(k,r)
    std::vector<std::vector<long long>> coeff;

    long long at(int r, int j) const {
        if (r < 0 || r > k) throw std::out_of_range("CjTable: r out of range");
        if (j < 0 || j > (k - r) / 2) throw std::out_of_range("CjTable: j out of range");
        return coeff[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    }

    long long max_abs() const {
        long long m = 0;
        for (const auto& row : coeff)
            for (long long v : row) m = std::max(m, v < 0 ? -v : v);
        return m;
    }
};

/// Builds the table by formal expansion: starting from
///   (R - y s2 I) = R(1) - y s2 R(0)
/// each extra factor substitutes R(1) R(r) -> R(r+1) + y s2 R(r) + y s4 R(r-1)
/// (exact up to the vanishing remainder, which the formal ring drops).
/// Tracking the polynomial in y attached to each R(r) is enough: the power
/// of s2 attached to R(r) at step k is always s2^(k-r).
inline CjTable cj_coefficients(int k) {
    if (k < 1) throw std::invalid_argument("cj_coefficients: k must be >= 1");
    if (k > 60) throw std::invalid_argument("cj_coefficients: k too large for exact integers");

    // q[r][m] = integer coefficient of y^m in the polynomial attached to R(r).
    std::vector<std::vector<long long>> q(static_cast<std::size_t>(k) + 1,
                                          std::vector<long long>(static_cast<std::size_t>(k) + 1, 0));
    q[1][0] = 1;   // R(1)
    q[0][1] = -1;  // -y s2 R(0)

    for (int step = 1; step < k; ++step) {
        std::vector<std::vector<long long>> next(
            static_cast<std::size_t>(k) + 1,
            std::vector<long long>(static_cast<std::size_t>(k) + 1, 0));
        for (int r = 0; r <= step; ++r) {
            for (int m = 0; m <= step; ++m) {
                const long long cm = q[static_cast<std::size_t>(r)][static_cast<std::size_t>(m)];
                if (cm == 0) continue;
                if (r == 0) {
                    // R(1) R(0) = R(1); and the -y s2 R(0) cross term survives.
                    next[1][static_cast<std::size_t>(m)] += cm;
                    next[0][static_cast<std::size_t>(m) + 1] -= cm;
                } else {
                    // The +y s2 R(r) substitution term cancels against
                    // -y s2 R(r) from the identity factor.
                    next[static_cast<std::size_t>(r) + 1][static_cast<std::size_t>(m)] += cm;
                    next[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(m) + 1] += cm;
                }
            }
        }
        q = std::move(next);
    }

    CjTable table;
    table.k = k;
    table.coeff.resize(static_cast<std::size_t>(k) + 1);
    for (int r = 0; r <= k; ++r) {
        const int jmax = (k - r) / 2;
        auto& row = table.coeff[static_cast<std::size_t>(r)];
        row.assign(static_cast<std::size_t>(jmax) + 1, 0);
        const int sign = (r % 2 == 0) ? -1 : 1;  // (-1)^{r+1}
        for (int j = 0; j <= jmax; ++j) {
            const int ypow = k - r - j;
            row[static_cast<std::size_t>(j)] =
                sign * q[static_cast<std::size_t>(r)][static_cast<std::size_t>(ypow)];
        }
    }
    return table;
}

}  // namespace qrmt
