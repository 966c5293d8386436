#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfm/datagen.hpp"
#include "rfm/rng.hpp"
#include "rfm/trimmed_cov.hpp"

using namespace rfm;

TEST_CASE("zero-noise hooks isolate the mean structure") {
    KrausConfig cfg;
    cfg.n = 5;
    cfg.t_count = 12;
    cfg.seed = 2;
    cfg.zero_noise = true;

    cfg.p = 0.0;
    const auto central = generate(cfg);
    for (std::size_t i = 0; i < central.size(); ++i) {
        for (double v : central.row(i)) CHECK(v == 0.0);
    }

    cfg.p = 1.0;
    const auto out = generate(cfg);
    const auto mu = outlier_mean(out.grid_ptr());
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < out.t_count(); ++j) {
            CHECK(out.row(i)[j] == doctest::Approx(mu.values[j]).epsilon(1e-15));
        }
    }
}

TEST_CASE("true covariance closed form") {
    KrausConfig cfg;
    cfg.t_count = 8;
    cfg.k_max = 1;
    const auto cov = true_cov(cfg);
    // A_1(0) = 0 and B_1(0) = sqrt(2)/3, so Cov(0,0) = 2/9
    CHECK(cov.at(0, 0) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));

    KrausConfig full;
    full.t_count = 20;
    const auto cov10 = true_cov(full);
    CHECK_NOTHROW(cov10.validate());
    for (std::size_t j = 0; j < 20; ++j) CHECK(cov10.at(j, j) >= 0.0);

    // PSD probes
    RandomStream rng(6, 0);
    for (int probe = 0; probe < 200; ++probe) {
        std::vector<double> v(20);
        double nrm = 0.0;
        for (auto& c : v) {
            c = rng.gaussian();
            nrm += c * c;
        }
        double quad = 0.0;
        for (std::size_t s = 0; s < 20; ++s)
            for (std::size_t u = 0; u < 20; ++u) quad += v[s] * cov10.at(s, u) * v[u];
        CHECK(quad >= -1e-10 * nrm);
    }
}

TEST_CASE("empirical mean of clean data stays near zero") {
    KrausConfig cfg;
    cfg.n = 20'000;
    cfg.p = 0.0;
    cfg.t_count = 20;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        cfg.seed = seed;
        const auto sample = generate(cfg);
        double worst = 0.0;
        for (std::size_t j = 0; j < cfg.t_count; ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < sample.size(); ++i) mean += sample.row(i)[j];
            worst = std::max(worst, std::abs(mean / static_cast<double>(sample.size())));
        }
        CHECK(worst < 0.05);
    }
}

TEST_CASE("pointwise variance matches the covariance diagonal") {
    KrausConfig cfg;
    cfg.n = 100'000;
    cfg.p = 0.0;
    cfg.t_count = 20;
    cfg.seed = 9;
    const auto sample = generate(cfg);
    const auto truth = true_cov(cfg);
    for (std::size_t j = 0; j < cfg.t_count; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            const double v = sample.row(i)[j];
            acc += v * v;
        }
        const double var = acc / static_cast<double>(sample.size());
        CHECK(var == doctest::Approx(truth.at(j, j)).epsilon(0.05));
    }
}

TEST_CASE("label fraction concentrates around p") {
    KrausConfig cfg;
    cfg.n = 50'000;
    cfg.p = 0.15;
    cfg.t_count = 4;
    cfg.seed = 3;
    const auto sample = generate(cfg);
    REQUIRE(sample.labels().has_value());
    double frac = 0.0;
    for (auto flag : *sample.labels()) frac += flag;
    frac /= static_cast<double>(cfg.n);
    const double se = std::sqrt(0.15 * 0.85 / static_cast<double>(cfg.n));
    CHECK(std::abs(frac - 0.15) <= 3.0 * se);
}

TEST_CASE("fixed-count mode hits the exact outlier count") {
    KrausConfig cfg;
    cfg.n = 1000;
    cfg.p = 0.153;
    cfg.t_count = 4;
    cfg.seed = 5;
    cfg.fixed_outlier_count = true;
    const auto sample = generate(cfg);
    std::size_t count = 0;
    for (auto flag : *sample.labels()) count += flag;
    CHECK(count == 154);  // ceil(153.0...)

    // Bernoulli and fixed-count draws differ only in the flag pattern
    cfg.fixed_outlier_count = false;
    const auto bern = generate(cfg);
    CHECK(bern.size() == sample.size());
}

TEST_CASE("empirical covariance error shrinks with n") {
    KrausConfig cfg;
    cfg.p = 0.0;
    cfg.t_count = 20;
    const auto truth = true_cov(cfg);
    double worst_ratio = 0.0;
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        cfg.seed = seed;
        cfg.n = 5000;
        const double err_small = cov_hs_distance(sample_cov(generate(cfg).view()), truth);
        cfg.n = 50'000;
        const double err_large = cov_hs_distance(sample_cov(generate(cfg).view()), truth);
        worst_ratio = std::max(worst_ratio, err_large / err_small);
    }
    CHECK(worst_ratio < 0.6);
}

TEST_CASE("generation is worker-count invariant and seed-deterministic") {
    KrausConfig cfg;
    cfg.n = 4000;
    cfg.p = 0.2;
    cfg.t_count = 20;
    cfg.seed = 21;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    const auto c = generate_serial(cfg);
    CHECK(a.data() == b.data());
    CHECK(a.data() == c.data());
    CHECK(*a.labels() == *c.labels());

    cfg.seed = 22;
    const auto d = generate(cfg);
    CHECK(a.data() != d.data());
}

TEST_CASE("config validation") {
    KrausConfig cfg;
    cfg.n = 10;
    cfg.t_count = 1;
    CHECK_THROWS_AS(generate(cfg), ContractError);
    cfg.t_count = 8;
    cfg.p = -0.1;
    CHECK_THROWS_AS(generate(cfg), ContractError);
    cfg.p = 0.1;
    cfg.k_max = 0;
    CHECK_THROWS_AS(generate(cfg), ContractError);
}
