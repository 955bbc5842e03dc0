#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrmt/eigh.hpp"
#include "qrmt/qmatrix.hpp"

namespace qrmt {

/// Spectrum of a Hermitian quaternion matrix through its complex embedding.
/// The 2p embedding eigenvalues occur in coincident pairs; paired_values
/// keeps one representative per pair (their mean), ascending.
struct HermitianSpectrum {
    std::vector<double> values;         // 2p ascending embedding eigenvalues
    std::vector<double> paired_values;  // p collapsed eigenvalues
    double max_pair_gap{0.0};
};

/// Eigenvalues of a quaternion-Hermitian p x p matrix. Pair collapse groups
/// strictly consecutive sorted values (indices 2i, 2i+1); a pair gap above
/// 1e-8 * max(1, |spectrum|) signals broken input and throws.
inline HermitianSpectrum spectrum(const QMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("spectrum: matrix must be square");
    if (!a.is_hermitian(1e-10, 1e-10))
        throw std::invalid_argument("spectrum: matrix is not quaternion-Hermitian");

    HermitianSpectrum out;
    out.values = eigh(a.embed()).values;
    const std::size_t p = a.rows;
    out.paired_values.resize(p);
    double scale = 1.0;
    if (!out.values.empty())
        scale = std::max(1.0, std::max(std::abs(out.values.front()), std::abs(out.values.back())));
    for (std::size_t i = 0; i < p; ++i) {
        const double lo = out.values[2 * i];
        const double hi = out.values[2 * i + 1];
        out.paired_values[i] = 0.5 * (lo + hi);
        out.max_pair_gap = std::max(out.max_pair_gap, hi - lo);
    }
    const double pair_tol = 1e-8 * scale;
    if (out.max_pair_gap > pair_tol)
        throw std::runtime_error("spectrum: eigenvalue pairing violated (gap " +
                                 std::to_string(out.max_pair_gap) + " > tol " +
                                 std::to_string(pair_tol) + ")");
    return out;
}

/// Extreme eigenvalues of a PSD sample covariance matrix under the p > n
/// convention: s_min is the (p-n+1)-th ascending collapsed eigenvalue when
/// p > n (the first p-n are structurally zero), the smallest otherwise.
inline std::pair<double, double> extremes_from_spectrum(const HermitianSpectrum& sp,
                                                        std::size_t p, std::size_t n) {
    if (sp.paired_values.size() != p)
        throw std::invalid_argument("extremes_from_spectrum: size mismatch");
    const double s_max = sp.paired_values.back();
    double s_min = (p > n) ? sp.paired_values[p - n] : sp.paired_values.front();
    const double psd_tol = 1e-9;
    if (sp.paired_values.front() < -psd_tol)
        throw std::domain_error("extreme_eigs: matrix is not PSD (eigenvalue " +
                                std::to_string(sp.paired_values.front()) + ")");
    // Round-off negatives within tolerance are clamped in the report.
    s_min = std::max(s_min, 0.0);
    return {s_min, std::max(s_max, 0.0)};
}

inline std::pair<double, double> extreme_eigs(const QMatrix& s, std::size_t p, std::size_t n) {
    if (s.rows != p || s.cols != p)
        throw std::invalid_argument("extreme_eigs: matrix is not p x p");
    return extremes_from_spectrum(spectrum(s), p, n);
}

/// Operator 2-norm: largest singular value of the complex embedding,
/// computed from the Gram matrix on the smaller side.
inline double norm2(const QMatrix& a) {
    if (a.entries.empty()) return 0.0;
    if (a.max_entry_norm() == 0.0) return 0.0;
    const QMatrix gram = (a.cols <= a.rows) ? a.adjoint() * a : a * a.adjoint();
    const auto vals = eigh(gram.embed()).values;
    return std::sqrt(std::max(0.0, vals.back()));
}

}  // namespace qrmt
