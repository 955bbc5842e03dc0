#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qrmt/diamond.hpp"
#include "qrmt/expansion.hpp"
#include "qrmt/mp_law.hpp"
#include "qrmt/qmatrix.hpp"
#include "qrmt/randgen.hpp"
#include "qrmt/spectra.hpp"

namespace qrmt {

struct TrialConfig {
    std::size_t p{2};
    std::size_t n{2};
    EntryDistribution dist{EntryDistribution::gaussian()};
    std::size_t trials{1};
    std::uint64_t seed{0};

    double y() const { return static_cast<double>(p) / static_cast<double>(n); }

    void validate() const {
        if (p < 2 || n < 2) throw std::invalid_argument("TrialConfig: p, n must be >= 2");
        if (trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
    }
};

struct TrialRecord {
    std::size_t trial{0};
    double s_min{0.0};
    double s_max{0.0};
    double ks{0.0};
    std::vector<double> moments;  // (1/p) tr S^k for k = 1..K
    std::size_t zero_count{0};
};

namespace detail {

/// Runs fn(trial) for trial = 0..count-1 on a small thread pool. Results are
/// written into per-trial slots by the callee, so scheduling order never
/// shows up in the output. The first worker exception is rethrown here, with
/// the failing trial index attached by the callee's error message.
template <typename Fn>
void parallel_trials(std::size_t count, Fn&& fn) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
    if (workers == 1) {
        for (std::size_t t = 0; t < count; ++t) {
            try {
                fn(t);
            } catch (const std::exception& err) {
                throw std::runtime_error("trial " + std::to_string(t) + ": " + err.what());
            }
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t t = w; t < count; t += workers) {
                try {
                    fn(t);
                } catch (const std::exception& err) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error)
                        first_error = std::make_exception_ptr(std::runtime_error(
                            "trial " + std::to_string(t) + ": " + err.what()));
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// (1/n) X X^*, exploiting Hermitian symmetry of the result.
inline QMatrix sample_covariance(const QMatrix& x) {
    const std::size_t p = x.rows, n = x.cols;
    QMatrix s(p, p);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Quaternion acc = Quaternion::zero();
            const Quaternion* xi = &x.entries[i * n];
            const Quaternion* xj = &x.entries[j * n];
            for (std::size_t v = 0; v < n; ++v) acc += xi[v] * xj[v].conj();
            acc *= inv_n;
            s(i, j) = acc;
            if (i != j) s(j, i) = acc.conj();
        }
    }
    return s;
}

/// Kolmogorov distance between the collapsed empirical spectrum and the law,
/// evaluated just below and at each eigenvalue.
inline double ks_distance(const HermitianSpectrum& sp, const MPLaw& law) {
    const std::size_t p = sp.paired_values.size();
    if (p == 0) return 0.0;
    double dist = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        const double fx = law.cdf(sp.paired_values[i]);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(p);
        const double lo = static_cast<double>(i) / static_cast<double>(p);
        dist = std::max(dist, std::max(std::abs(hi - fx), std::abs(lo - fx)));
    }
    return dist;
}

/// One sampled covariance trial: spectrum, extremes, KS distance, moment
/// power sums and the near-zero eigenvalue count.
inline TrialRecord run_single_trial(const TrialConfig& cfg, std::size_t trial,
                                    std::size_t k_moments) {
    const QMatrix x = sample_matrix(cfg.dist, cfg.p, cfg.n, cfg.seed, trial);
    const QMatrix s = sample_covariance(x);
    const HermitianSpectrum sp = spectrum(s);

    TrialRecord rec;
    rec.trial = trial;
    const auto [smin, smax] = extremes_from_spectrum(sp, cfg.p, cfg.n);
    rec.s_min = smin;
    rec.s_max = smax;
    rec.ks = ks_distance(sp, MPLaw(cfg.y(), cfg.dist.sigma2));

    rec.moments.assign(k_moments, 0.0);
    for (const double lam : sp.paired_values) {
        double pw = 1.0;
        for (std::size_t k = 0; k < k_moments; ++k) {
            pw *= lam;
            rec.moments[k] += pw;
        }
    }
    for (auto& m : rec.moments) m /= static_cast<double>(cfg.p);

    const double zero_thr = 1e-10 * rec.s_max;
    rec.zero_count = static_cast<std::size_t>(
        std::count_if(sp.paired_values.begin(), sp.paired_values.end(),
                      [&](double v) { return v < zero_thr; }));
    return rec;
}

inline std::vector<TrialRecord> run_extremes(const TrialConfig& cfg, std::size_t k_moments = 4) {
    cfg.validate();
    std::vector<TrialRecord> records(cfg.trials);
    detail::parallel_trials(cfg.trials,
                            [&](std::size_t t) { records[t] = run_single_trial(cfg, t, k_moments); });
    return records;
}

struct MomentRow {
    std::size_t k{0};
    double empirical{0.0};  // mean over trials of (1/p) tr S^k
    double expected{0.0};   // closed-form law moment at y_n
    double rel_err{0.0};
};

inline std::vector<MomentRow> moment_compare(const TrialConfig& cfg, std::size_t k_max) {
    if (k_max > 8) throw std::invalid_argument("moment_compare: K must be <= 8");
    const auto records = run_extremes(cfg, k_max);
    const MPLaw law(cfg.y(), cfg.dist.sigma2);
    std::vector<MomentRow> rows(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        double mean = 0.0;
        for (const auto& rec : records) mean += rec.moments[k - 1];
        mean /= static_cast<double>(records.size());
        const double expect = law.moment(k);
        rows[k - 1] = {k, mean, expect, std::abs(mean - expect) / std::abs(expect)};
    }
    return rows;
}

struct BoundRow {
    std::size_t trial{0};
    double observed{0.0};
    double bound{0.0};
    double margin{0.0};
};

/// Observed ||R(l)||_2 against (2l+1)(l+1) y^{(l-1)/2} sigma^{2l} per trial.
inline std::vector<BoundRow> diamond_bound_check(const TrialConfig& cfg, std::size_t l) {
    cfg.validate();
    if (l < 1 || l > 3) throw std::invalid_argument("diamond_bound_check: need 1 <= l <= 3");
    const double bound = static_cast<double>((2 * l + 1) * (l + 1)) *
                         std::pow(cfg.y(), (static_cast<double>(l) - 1.0) / 2.0) *
                         std::pow(cfg.dist.sigma2, static_cast<double>(l));
    std::vector<BoundRow> rows(cfg.trials);
    detail::parallel_trials(cfg.trials, [&](std::size_t t) {
        const QMatrix x = sample_matrix(cfg.dist, cfg.p, cfg.n, cfg.seed, t);
        const double observed = norm2(build_R(x, l, cfg.n));
        rows[t] = {t, observed, bound, bound - observed};
    });
    return rows;
}

/// || R(1) R(k) - R(k+1) - y s2 R(k) - y s4 R(k-1) ||_2 for one data matrix.
inline double recursion_residual_single(const QMatrix& x, std::size_t n, std::size_t k, double y,
                                        double s2) {
    const QMatrix rk = build_R(x, k, n);
    const QMatrix rkm1 = build_R(x, k - 1, n);
    const QMatrix rkp1 = build_R(x, k + 1, n);
    const QMatrix lhs = build_R(x, 1, n) * rk;
    const QMatrix resid = lhs - rkp1 - (y * s2) * rk - (y * s2 * s2) * rkm1;
    return norm2(resid);
}

inline std::vector<double> recursion_residual(const TrialConfig& cfg, std::size_t k) {
    cfg.validate();
    if (k < 1 || k > 2) throw std::invalid_argument("recursion_residual: need k in {1, 2}");
    std::vector<double> out(cfg.trials);
    detail::parallel_trials(cfg.trials, [&](std::size_t t) {
        const QMatrix x = sample_matrix(cfg.dist, cfg.p, cfg.n, cfg.seed, t);
        out[t] = recursion_residual_single(x, cfg.n, k, cfg.y(), cfg.dist.sigma2);
    });
    return out;
}

/// || (R(1) - y s2 I)^k - sum_r (-1)^{r+1} s2^{k-r} R(r) sum_j C_j(k,r)
/// y^{k-r-j} ||_2 for one data matrix, coefficients from cj_coefficients.
inline double expansion_residual_single(const QMatrix& x, std::size_t n, std::size_t k, double y,
                                        double s2) {
    const CjTable table = cj_coefficients(static_cast<int>(k));
    std::vector<QMatrix> rfam;
    rfam.reserve(k + 1);
    for (std::size_t r = 0; r <= k; ++r) rfam.push_back(build_R(x, r, n));

    const QMatrix lhs = rfam[1] - (y * s2) * QMatrix::identity(x.rows);
    QMatrix power = lhs;
    for (std::size_t j = 1; j < k; ++j) power = power * lhs;

    QMatrix rhs = QMatrix::zeros(x.rows, x.rows);
    for (std::size_t r = 0; r <= k; ++r) {
        double poly = 0.0;
        for (int j = 0; j <= (static_cast<int>(k) - static_cast<int>(r)) / 2; ++j)
            poly += static_cast<double>(table.at(static_cast<int>(r), j)) *
                    std::pow(y, static_cast<double>(k - r) - j);
        const double sign = (r % 2 == 0) ? -1.0 : 1.0;  // (-1)^{r+1}
        const double coef = sign * std::pow(s2, static_cast<double>(k - r)) * poly;
        rhs += coef * rfam[r];
    }
    return norm2(power - rhs);
}

inline std::vector<double> expansion_check(const TrialConfig& cfg, std::size_t k) {
    cfg.validate();
    if (k < 1 || k > 4) throw std::invalid_argument("expansion_check: need 1 <= k <= 4");
    std::vector<double> out(cfg.trials);
    detail::parallel_trials(cfg.trials, [&](std::size_t t) {
        const QMatrix x = sample_matrix(cfg.dist, cfg.p, cfg.n, cfg.seed, t);
        out[t] = expansion_residual_single(x, cfg.n, k, cfg.y(), cfg.dist.sigma2);
    });
    return out;
}

enum class NecessityKind { heavy_tail, nonzero_mean };

struct NecessityRow {
    std::size_t seed_index{0};
    std::size_t n{0};
    std::size_t p{0};
    double s_max{0.0};
    double row_stat{0.0};  // max_u (1/n) sum_v ||x_uv||^2
};

/// Divergence demos for the necessity directions: heavy-tailed entries make
/// s_max blow up along n (the row statistic is a literal lower bound for it),
/// a nonzero mean adds a rank-one spike of order p ||hbar||^2.
///
/// Each (seed, size) cell reports the median over trials_per_size
/// independent matrices. Medians dampen the record-value outliers that
/// dominate single heavy-tailed draws, the same device the residual trend
/// checks use.
inline std::vector<NecessityRow> necessity_demo(NecessityKind kind,
                                                const std::vector<std::size_t>& sizes,
                                                std::size_t num_seeds, std::uint64_t base_seed,
                                                double y = 0.25, double sigma2 = 1.0,
                                                std::size_t trials_per_size = 3) {
    if (sizes.empty()) throw std::invalid_argument("necessity_demo: sizes must be nonempty");
    if (trials_per_size < 1)
        throw std::invalid_argument("necessity_demo: trials_per_size must be >= 1");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i] >= sizes[i + 1])
            throw std::invalid_argument("necessity_demo: sizes must be ascending");
    const EntryDistribution dist = (kind == NecessityKind::heavy_tail)
                                       ? EntryDistribution::pareto_heavy(3.0)
                                       : EntryDistribution::shifted_mean(sigma2, Quaternion::e());

    std::vector<NecessityRow> rows(num_seeds * sizes.size());
    std::vector<double> smax_cells(rows.size() * trials_per_size);
    std::vector<double> rstat_cells(smax_cells.size());
    detail::parallel_trials(smax_cells.size(), [&](std::size_t idx) {
        const std::size_t cell = idx / trials_per_size;
        const std::size_t trial = idx % trials_per_size;
        const std::size_t seed_index = cell / sizes.size();
        const std::size_t n = sizes[cell % sizes.size()];
        const std::size_t p = std::max<std::size_t>(2, static_cast<std::size_t>(
                                                           y * static_cast<double>(n) + 0.5));
        const QMatrix x = sample_matrix(dist, p, n, base_seed,
                                        (seed_index * 1000003ULL + n) * 97ULL + trial);
        const QMatrix s = sample_covariance(x);
        double row_stat = 0.0;
        for (std::size_t u = 0; u < p; ++u) row_stat = std::max(row_stat, s(u, u).a);
        const HermitianSpectrum sp = spectrum(s);
        smax_cells[idx] = sp.paired_values.back();
        rstat_cells[idx] = row_stat;
    });
    for (std::size_t cell = 0; cell < rows.size(); ++cell) {
        const std::size_t seed_index = cell / sizes.size();
        const std::size_t n = sizes[cell % sizes.size()];
        const std::size_t p = std::max<std::size_t>(2, static_cast<std::size_t>(
                                                           y * static_cast<double>(n) + 0.5));
        std::vector<double> smax(smax_cells.begin() + cell * trials_per_size,
                                 smax_cells.begin() + (cell + 1) * trials_per_size);
        std::vector<double> rstat(rstat_cells.begin() + cell * trials_per_size,
                                  rstat_cells.begin() + (cell + 1) * trials_per_size);
        std::sort(smax.begin(), smax.end());
        std::sort(rstat.begin(), rstat.end());
        rows[cell] = {seed_index, n, p, smax[smax.size() / 2], rstat[rstat.size() / 2]};
    }
    return rows;
}

}  // namespace qrmt
