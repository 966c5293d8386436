#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rfm/median_toy.hpp"
#include "rfm/rng.hpp"
#include "test_support.hpp"

using namespace rfm;

TEST_CASE("median pdf examples") {
    // k = 0: the parent density itself
    const auto g0 = gaussian_parent(0);
    CHECK(median_pdf(g0, 0.7) == doctest::Approx(g0.pdf(0.7)).epsilon(1e-15));

    // uniform parent: the symmetric beta density, pointwise identical
    for (int k : {0, 1, 2, 5}) {
        const auto law = uniform_parent(k);
        for (double t : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
            CHECK(beta_median_pdf(k, t) == median_pdf(law, t));
        }
    }

    // k = 1 at the centre: 3!/(1!)^2 * (1/2)(1/2) = 1.5
    CHECK(median_pdf(uniform_parent(1), 0.5) == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("beta median pdf examples") {
    CHECK(beta_median_pdf(0, 0.3) == 1.0);
    CHECK(beta_median_pdf(1, 0.5) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(beta_median_pdf(3, -0.1) == 0.0);
    CHECK(beta_median_pdf(3, 1.1) == 0.0);
}

TEST_CASE("invalid laws are rejected") {
    MedianLaw bad;
    bad.k = 1;
    bad.pdf = [](double) { return -1.0; };
    bad.cdf = [](double) { return 0.5; };
    CHECK_THROWS_AS(median_pdf(bad, 0.5), InvalidLawError);

    MedianLaw bad_cdf;
    bad_cdf.k = 1;
    bad_cdf.pdf = [](double) { return 1.0; };
    bad_cdf.cdf = [](double) { return 1.5; };
    CHECK_THROWS_AS(median_pdf(bad_cdf, 0.5), InvalidLawError);
}

TEST_CASE("median pdf integrates to one") {
    for (int k : {0, 1, 2, 5}) {
        const auto uni = uniform_parent(k);
        const double mass_u =
            rfm_test::simpson([&uni](double t) { return median_pdf(uni, t); }, 0.0, 1.0, 20'000);
        CHECK(std::abs(mass_u - 1.0) < 1e-6);

        const auto gauss = gaussian_parent(k);
        const double mass_g = rfm_test::simpson(
            [&gauss](double t) { return median_pdf(gauss, t); }, -10.0, 10.0, 40'000);
        CHECK(std::abs(mass_g - 1.0) < 1e-6);
    }
}

TEST_CASE("large k stays finite through the log-gamma route") {
    const double v = beta_median_pdf(200, 0.5);
    CHECK(std::isfinite(v));
    CHECK(v > 1.0);  // the block-median law concentrates at 1/2
}

TEST_CASE("asymptotic variance examples") {
    // k = 0, m = n: fusing singletons is the plain median
    const auto v0 = asymptotic_variances(uniform_parent(0), 100, 100);
    CHECK(v0.var_full == doctest::Approx(1.0 / 400.0).epsilon(1e-12));
    CHECK(v0.var_fused == doctest::Approx(1.0 / 400.0).epsilon(1e-12));

    // uniform parent: g(1/2) = (1/2)^{2k} (2k+1)!/(k!)^2
    for (int k = 0; k <= 10; ++k) {
        const auto law = uniform_parent(k);
        double expected = std::pow(0.5, 2 * k);
        double fact = 1.0;
        for (int i = 2; i <= 2 * k + 1; ++i) fact *= i;
        double kfact = 1.0;
        for (int i = 2; i <= k; ++i) kfact *= i;
        expected *= fact / (kfact * kfact);
        CHECK(median_pdf(law, 0.5) == doctest::Approx(expected).epsilon(1e-12));
    }

    // k = 1, n = 3m: ratio var_full / var_fused = 2.25/3 = 0.75
    const auto v1 = asymptotic_variances(uniform_parent(1), 3000, 1000);
    CHECK(v1.var_full / v1.var_fused == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(v1.theta_parent == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(v1.theta_fused == doctest::Approx(0.5).epsilon(1e-10));

    CHECK_THROWS_AS(asymptotic_variances(uniform_parent(1), 3001, 1000), ContractError);
}

TEST_CASE("fusion loses efficiency for the uniform parent") {
    for (int k = 1; k <= 10; ++k) {
        const std::size_t l = 2 * static_cast<std::size_t>(k) + 1;
        const std::size_t m = 1000;
        const auto v = asymptotic_variances(uniform_parent(k), m * l, m);
        CHECK(v.var_fused >= v.var_full);
    }
}

TEST_CASE("degenerate laws are reported") {
    // density with a flat gap: every point of [0.5, 1.0] is a median, and
    // the density vanishes inside the gap
    MedianLaw gap;
    gap.k = 1;
    gap.pdf = [](double t) {
        return ((t >= 0.0 && t <= 0.5) || (t >= 1.0 && t <= 1.5)) ? 1.0 : 0.0;
    };
    gap.cdf = [](double t) {
        if (t < 0.0) return 0.0;
        if (t <= 0.5) return t;
        if (t <= 1.0) return 0.5;
        if (t <= 1.5) return t - 0.5;
        return 1.0;
    };
    CHECK_THROWS_AS(asymptotic_variances(gap, 300, 100, 0.7), DegenerateLawError);
}

TEST_CASE("block median cdf matches simulation at l = 3") {
    const auto law = uniform_parent(1);
    // closed form at a few probe points against the exact binomial tail
    for (double t : {0.2, 0.5, 0.8}) {
        const double F = t;
        const double expected = 3.0 * F * F * (1.0 - F) + F * F * F;
        CHECK(block_median_cdf(law, t) == doctest::Approx(expected).epsilon(1e-12));
    }
}
