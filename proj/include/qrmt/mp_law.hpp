#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qrmt {

namespace detail {

/// Adaptive Simpson quadrature with error propagation by interval halving.
/// `ok` is cleared when the depth cap is hit before the tolerance.
template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth, bool& ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        ok = false;
        return left + right;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, bool& ok) {
    ok = true;
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60, ok);
}

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t t = 1; t <= k; ++t) r = r * static_cast<double>(n - k + t) / static_cast<double>(t);
    return r;
}

}  // namespace detail

/// Marchenko-Pastur limit law with dimension ratio y and variance sigma2.
/// Supported on [sigma2 (1-sqrt(y))^2, sigma2 (1+sqrt(y))^2]; for y > 1 an
/// atom of mass 1 - 1/y sits at zero.
struct MPLaw {
    double y{1.0};
    double sigma2{1.0};

    MPLaw(double y_, double sigma2_) : y(y_), sigma2(sigma2_) {
        if (!(y > 0.0)) throw std::invalid_argument("MPLaw: y must be positive");
        if (!(sigma2 > 0.0)) throw std::invalid_argument("MPLaw: sigma2 must be positive");
    }

    std::pair<double, double> support() const {
        const double sy = std::sqrt(y);
        return {sigma2 * (1.0 - sy) * (1.0 - sy), sigma2 * (1.0 + sy) * (1.0 + sy)};
    }

    double atom_mass() const { return y > 1.0 ? 1.0 - 1.0 / y : 0.0; }

    /// Continuous density part; the atom at zero is excluded.
    double density(double x) const {
        if (!(x > 0.0)) throw std::domain_error("MPLaw::density: x must be positive");
        const auto [a, b] = support();
        if (x < a || x > b) return 0.0;
        const double rad = std::max(0.0, (b - x) * (x - a));
        return std::sqrt(rad) / (2.0 * std::numbers::pi * x * y * sigma2);
    }

    /// CDF: atom mass (for y > 1, x >= 0) plus the density integral. The
    /// quadrature substitutes x = a + (b-a) sin^2(theta), which removes both
    /// the square-root edge behavior and the 1/x singularity at y = 1.
    double cdf(double x) const {
        if (x < 0.0) return 0.0;
        const auto [a, b] = support();
        if (x >= b) return 1.0;
        double mass = atom_mass();
        if (x > a) {
            const double span = b - a;
            const double ratio = std::clamp((x - a) / span, 0.0, 1.0);
            const double theta1 = std::asin(std::sqrt(ratio));
            const double inv_scale = 1.0 / (std::numbers::pi * y * sigma2);
            const auto g = [&](double theta) {
                const double s2 = std::sin(theta) * std::sin(theta);
                const double c2 = 1.0 - s2;
                const double xx = a + span * s2;
                const double frac = xx > 0.0 ? span * s2 / xx : 1.0;
                return span * c2 * frac * inv_scale;
            };
            bool ok = true;
            mass += detail::adaptive_simpson(g, 0.0, theta1, 1e-11, ok);
            if (!ok) throw std::runtime_error("MPLaw::cdf: quadrature failed to converge");
        }
        return std::min(mass, 1.0);
    }

    /// k-th moment of the full distribution (the atom contributes nothing
    /// for k >= 1): sigma2^k * sum_r y^r C(k,r) C(k-1,r) / (r+1).
    double moment(std::size_t k) const {
        if (k == 0) return 1.0;
        double sum = 0.0;
        double ypow = 1.0;
        for (std::size_t r = 0; r < k; ++r) {
            sum += ypow / static_cast<double>(r + 1) * detail::binomial(k, r) *
                   detail::binomial(k - 1, r);
            ypow *= y;
        }
        double scale = 1.0;
        for (std::size_t t = 0; t < k; ++t) scale *= sigma2;
        return scale * sum;
    }
};

}  // namespace qrmt
