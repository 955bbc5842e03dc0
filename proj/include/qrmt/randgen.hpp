#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qrmt/qmatrix.hpp"

namespace qrmt {

/// Entry models for the data matrix X. Variance here always means the
/// quaternion second moment E ||x||^2 of a mean-zero entry.
enum class EntryKind { gaussian, signed_unit, pareto_heavy, shifted_mean };

struct EntryDistribution {
    EntryKind kind{EntryKind::gaussian};
    double sigma2{1.0};        // E ||x||^2 of the mean-zero part
    double tail_index{3.0};    // pareto alpha; 2 < alpha < 4 kills the 4th moment
    Quaternion mean_shift{};   // additive constant for shifted_mean

    static EntryDistribution gaussian(double sigma2 = 1.0) {
        EntryDistribution d;
        d.kind = EntryKind::gaussian;
        d.sigma2 = sigma2;
        return d;
    }
    static EntryDistribution signed_unit(double sigma2 = 1.0) {
        EntryDistribution d;
        d.kind = EntryKind::signed_unit;
        d.sigma2 = sigma2;
        return d;
    }
    static EntryDistribution pareto_heavy(double alpha = 3.0) {
        if (!(alpha > 2.0) || !(alpha < 4.0))
            throw std::invalid_argument("pareto_heavy: need 2 < alpha < 4");
        EntryDistribution d;
        d.kind = EntryKind::pareto_heavy;
        d.sigma2 = 1.0;
        d.tail_index = alpha;
        return d;
    }
    static EntryDistribution shifted_mean(double sigma2, const Quaternion& hbar) {
        EntryDistribution d;
        d.kind = EntryKind::shifted_mean;
        d.sigma2 = sigma2;
        d.mean_shift = hbar;
        return d;
    }

    const char* name() const {
        switch (kind) {
            case EntryKind::gaussian: return "gaussian";
            case EntryKind::signed_unit: return "signed-unit";
            case EntryKind::pareto_heavy: return "pareto";
            case EntryKind::shifted_mean: return "shifted";
        }
        return "?";
    }
};

/// splitmix64-style finalizer combining a base seed with a stream index.
/// The constants are Stafford's mix13; documented in the README so runs are
/// bit-reproducible from (seed, stream) alone.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Quaternion entry sampler. All draws are defined in terms of raw
/// mt19937_64 output words, so streams are identical across platforms and
/// standard-library versions.
class QuaternionSampler {
  public:
    QuaternionSampler(const EntryDistribution& dist, std::uint64_t seed, std::uint64_t stream)
        : dist_(dist), eng_(mix_seed(seed, stream)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; pairs are cached.
    double gaussian_std() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(angle);
        have_cached_ = true;
        return r * std::cos(angle);
    }

    Quaternion next() {
        switch (dist_.kind) {
            case EntryKind::gaussian:
                return gaussian_quaternion();
            case EntryKind::signed_unit: {
                const std::uint64_t u = eng_();
                const double s = (u & 1) ? std::sqrt(dist_.sigma2) : -std::sqrt(dist_.sigma2);
                switch ((u >> 1) & 3) {
                    case 0: return {s, 0, 0, 0};
                    case 1: return {0, s, 0, 0};
                    case 2: return {0, 0, s, 0};
                    default: return {0, 0, 0, s};
                }
            }
            case EntryKind::pareto_heavy: {
                // Norm is Pareto(alpha) scaled so E norm^2 = 1; direction is
                // uniform on the unit quaternions.
                const double alpha = dist_.tail_index;
                const double xm = std::sqrt((alpha - 2.0) / alpha);
                const double u = 1.0 - uniform01();  // (0, 1]
                const double r = xm * std::pow(u, -1.0 / alpha);
                Quaternion dir{gaussian_std(), gaussian_std(), gaussian_std(), gaussian_std()};
                double dn = dir.norm();
                while (dn < 1e-12) {
                    dir = {gaussian_std(), gaussian_std(), gaussian_std(), gaussian_std()};
                    dn = dir.norm();
                }
                return dir * (r / dn);
            }
            case EntryKind::shifted_mean:
                return gaussian_quaternion() + dist_.mean_shift;
        }
        return Quaternion::zero();
    }

  private:
    Quaternion gaussian_quaternion() {
        // sigma2/4 per real coefficient makes E ||x||^2 = sigma2.
        const double comp_sd = 0.5 * std::sqrt(dist_.sigma2);
        return {comp_sd * gaussian_std(), comp_sd * gaussian_std(), comp_sd * gaussian_std(),
                comp_sd * gaussian_std()};
    }

    EntryDistribution dist_;
    std::mt19937_64 eng_;
    bool have_cached_{false};
    double cached_{0.0};
};

/// p x n matrix of i.i.d. entries; deterministic for fixed (seed, stream).
inline QMatrix sample_matrix(const EntryDistribution& dist, std::size_t p, std::size_t n,
                             std::uint64_t seed, std::uint64_t stream) {
    if (p < 1 || n < 1) throw std::invalid_argument("sample_matrix: p, n must be >= 1");
    QuaternionSampler sampler(dist, seed, stream);
    QMatrix x(p, n);
    for (auto& q : x.entries) q = sampler.next();
    return x;
}

/// Truncation level rule n -> delta_n. The default n^{-1/8} satisfies
/// delta_n -> 0 and delta_n sqrt(n) = n^{3/8} -> infinity.
struct TruncationSchedule {
    double (*delta_of_n)(std::size_t) = nullptr;

    double delta(std::size_t n) const {
        if (delta_of_n) return delta_of_n(n);
        return std::pow(static_cast<double>(n), -0.125);
    }
    double threshold(std::size_t n) const { return delta(n) * std::sqrt(static_cast<double>(n)); }
};

/// Zero out entries with norm above delta_n sqrt(n), then subtract the grand
/// empirical mean of the truncated matrix. The shared mean is the natural
/// estimator for i.i.d. entries and avoids analytic truncated moments.
inline QMatrix truncate_centralize(const QMatrix& x, std::size_t n,
                                   const TruncationSchedule& schedule = {}) {
    const double thr = schedule.threshold(n);
    QMatrix out(x.rows, x.cols);
    Quaternion mean = Quaternion::zero();
    for (std::size_t idx = 0; idx < x.entries.size(); ++idx) {
        const Quaternion& q = x.entries[idx];
        out.entries[idx] = (q.norm() <= thr) ? q : Quaternion::zero();
        mean += out.entries[idx];
    }
    if (!x.entries.empty()) mean *= 1.0 / static_cast<double>(x.entries.size());
    for (auto& q : out.entries) q -= mean;
    return out;
}

}  // namespace qrmt
