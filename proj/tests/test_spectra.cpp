#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "qrmt/spectra.hpp"
#include "support/test_support.hpp"

using namespace qrmt;

TEST_SUITE("spectrum") {
    TEST_CASE("1x1 real scalar") {
        QMatrix a(1, 1);
        a(0, 0) = Quaternion{2.5, 0, 0, 0};
        const auto sp = spectrum(a);
        REQUIRE(sp.paired_values.size() == 1);
        CHECK(sp.paired_values[0] == doctest::Approx(2.5).epsilon(1e-13));
        CHECK(sp.max_pair_gap <= 1e-12);
    }

    TEST_CASE("identity matrix: all ones") {
        const auto sp = spectrum(QMatrix::identity(5));
        for (const double v : sp.paired_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(sp.values.size() == 10);
    }

    TEST_CASE("random 30x30 Hermitian: embedding eigenvalues pair up") {
        auto rng = testsup::make_rng(211);
        const QMatrix a = testsup::random_hermitian_qmatrix(rng, 30, 1.0);
        const auto sp = spectrum(a);
        CHECK(sp.values.size() == 60);
        CHECK(std::is_sorted(sp.values.begin(), sp.values.end()));
        CHECK(sp.max_pair_gap <= 1e-9);
        // paired value is the mean of its pair
        for (std::size_t i = 0; i < 30; ++i)
            CHECK(sp.paired_values[i] ==
                  doctest::Approx(0.5 * (sp.values[2 * i] + sp.values[2 * i + 1])));
    }

    TEST_CASE("eigenvalue sum matches the quaternion trace") {
        auto rng = testsup::make_rng(223);
        const QMatrix a = testsup::random_hermitian_qmatrix(rng, 20, 1.0);
        double tr = 0.0;
        for (std::size_t i = 0; i < 20; ++i) tr += a(i, i).a;
        const auto sp = spectrum(a);
        const double sum = std::accumulate(sp.paired_values.begin(), sp.paired_values.end(), 0.0);
        CHECK(std::abs(sum - tr) <= 1e-9 * (1.0 + std::abs(tr)));
    }

    TEST_CASE("non-Hermitian input is rejected") {
        auto rng = testsup::make_rng(227);
        QMatrix a = testsup::random_qmatrix(rng, 4, 4, 1.0);
        a(0, 1) = a(1, 0);  // breaks conjugate symmetry almost surely
        CHECK_THROWS_AS(spectrum(a), std::invalid_argument);
        CHECK_THROWS_AS(spectrum(QMatrix(2, 3)), std::invalid_argument);
    }
}

TEST_SUITE("extreme_eigs") {
    TEST_CASE("identity covariance") {
        const auto [smin, smax] = extreme_eigs(QMatrix::identity(4), 4, 8);
        CHECK(smin == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(smax == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("p <= n takes the smallest eigenvalue") {
        QMatrix d(3, 3);
        d(0, 0) = Quaternion{0.25, 0, 0, 0};
        d(1, 1) = Quaternion{1.0, 0, 0, 0};
        d(2, 2) = Quaternion{2.0, 0, 0, 0};
        const auto [smin, smax] = extreme_eigs(d, 3, 5);
        CHECK(smin == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(smax == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("p=4, n=2 rank-2 PSD: two zeros, s_min is the third") {
        auto rng = testsup::make_rng(229);
        const QMatrix x = testsup::random_qmatrix(rng, 4, 2, 1.0);
        const QMatrix s = (0.5) * (x * x.adjoint());
        const auto sp = spectrum(s);
        const double smax = sp.paired_values.back();
        const std::size_t zeros = static_cast<std::size_t>(
            std::count_if(sp.paired_values.begin(), sp.paired_values.end(),
                          [&](double v) { return v < 1e-10 * smax; }));
        CHECK(zeros == 2);
        const auto [smin, smax2] = extremes_from_spectrum(sp, 4, 2);
        CHECK(smin == doctest::Approx(sp.paired_values[2]));
        CHECK(smax2 == doctest::Approx(smax));
    }

    TEST_CASE("invariant under quaternion permutation conjugation") {
        auto rng = testsup::make_rng(233);
        const std::size_t p = 8, n = 16;
        const QMatrix x = testsup::random_qmatrix(rng, p, n, 1.0);
        QMatrix s = (1.0 / static_cast<double>(n)) * (x * x.adjoint());

        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        QMatrix pm(p, p);
        for (std::size_t i = 0; i < p; ++i) pm(i, perm[i]) = Quaternion::e();

        const QMatrix conj = pm * s * pm.adjoint();
        const auto [a1, b1] = extreme_eigs(s, p, n);
        const auto [a2, b2] = extreme_eigs(conj, p, n);
        CHECK(std::abs(a1 - a2) <= 1e-9);
        CHECK(std::abs(b1 - b2) <= 1e-9);
    }

    TEST_CASE("negative definite input violates the PSD precondition") {
        QMatrix neg(2, 2);
        neg(0, 0) = Quaternion{-1.0, 0, 0, 0};
        neg(1, 1) = Quaternion{-2.0, 0, 0, 0};
        CHECK_THROWS_AS(extreme_eigs(neg, 2, 2), std::domain_error);
    }

    TEST_CASE("both Gram sides carry the same nonzero spectrum") {
        // (1/n) X X* and (1/n) X* X share nonzero eigenvalues; the n-side
        // adds n-p exact zeros. Exercises embedding, eigh and pair collapse
        // through two independent routes.
        auto rng = testsup::make_rng(239);
        const std::size_t p = 12, n = 20;
        const QMatrix x = testsup::random_qmatrix(rng, p, n, 1.0);
        const double inv_n = 1.0 / static_cast<double>(n);
        const auto side_p = spectrum(inv_n * (x * x.adjoint()));
        const auto side_n = spectrum(inv_n * (x.adjoint() * x));
        const double scale = 1.0 + std::abs(side_p.paired_values.back());
        for (std::size_t i = 0; i < n - p; ++i)
            CHECK(std::abs(side_n.paired_values[i]) <= 1e-9 * scale);
        for (std::size_t i = 0; i < p; ++i)
            CHECK(std::abs(side_n.paired_values[n - p + i] - side_p.paired_values[i]) <=
                  1e-9 * scale);
    }
}
