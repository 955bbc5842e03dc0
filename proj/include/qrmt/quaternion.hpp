#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace qrmt {

using cplx = std::complex<double>;

/// Quaternion scalar a·e + b·i + c·j + d·k with real coefficients.
///
/// The canonical representation is the coefficient tuple (a,b,c,d); the 2x2
/// complex form [[a+bi, c+di], [-c+di, a-bi]] is materialized only by
/// embed2(). Multiplication follows the Hamilton rules (ij = k, ji = -k),
/// which makes embed2 a ring homomorphism into 2x2 complex matrices.
struct Quaternion {
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double d{0.0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double a_, double b_, double c_, double d_)
        : a(a_), b(b_), c(c_), d(d_) {}

    static constexpr Quaternion e() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }
    static constexpr Quaternion zero() { return {}; }

    constexpr Quaternion conj() const { return {a, -b, -c, -d}; }

    constexpr double norm_sq() const { return a * a + b * b + c * c + d * d; }

    double norm() const { return std::sqrt(norm_sq()); }

    /// Row-major 2x2 complex representation.
    std::array<cplx, 4> embed2() const {
        return {cplx(a, b), cplx(c, d), cplx(-c, d), cplx(a, -b)};
    }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        d += o.d;
        return *this;
    }

    constexpr Quaternion& operator-=(const Quaternion& o) {
        a -= o.a;
        b -= o.b;
        c -= o.c;
        d -= o.d;
        return *this;
    }

    constexpr Quaternion& operator*=(double s) {
        a *= s;
        b *= s;
        c *= s;
        d *= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
    friend constexpr Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }
    friend constexpr Quaternion operator-(const Quaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
    friend constexpr Quaternion operator*(Quaternion x, double s) { return x *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion x) { return x *= s; }

    // Hamilton product; non-commutative.
    friend constexpr Quaternion operator*(const Quaternion& x, const Quaternion& y) {
        return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
                x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
                x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
                x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
    }

    constexpr bool operator==(const Quaternion&) const = default;

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.a << ',' << q.b << ',' << q.c << ',' << q.d << ')';
    }
};

/// Absolute-plus-relative comparison; the default tolerances are the
/// project-wide convention for double arithmetic.
inline bool approx_equal(const Quaternion& x, const Quaternion& y,
                         double atol = 1e-12, double rtol = 1e-10) {
    const double diff = (x - y).norm();
    const double scale = std::max(x.norm(), y.norm());
    return diff <= atol + rtol * scale;
}

}  // namespace qrmt
