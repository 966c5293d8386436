#include "rfm/datagen.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rfm/rng.hpp"

namespace rfm {

namespace {

constexpr std::uint64_t kShuffleStream = ~std::uint64_t{0};

void validate(const KrausConfig& cfg) {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0))
        throw ContractError("outlier proportion must be in [0, 1]");
    if (cfg.t_count < 2) throw ContractError("generator needs t_count >= 2");
    if (cfg.k_max < 1) throw ContractError("generator needs k_max >= 1");
}

struct Basis {
    std::vector<double> lambda, nu;     // amplitude sequences
    std::vector<double> sin_kt, cos_kt; // k_max x T, row-major
    std::vector<double> mu_out;         // outlier mean on the grid
};

Basis make_basis(const Grid& grid, std::size_t k_max) {
    const std::size_t t = grid.t_count();
    Basis b;
    b.lambda.resize(k_max);
    b.nu.resize(k_max);
    b.sin_kt.resize(k_max * t);
    b.cos_kt.resize(k_max * t);
    b.mu_out.resize(t);
    for (std::size_t k = 0; k < k_max; ++k) {
        const double kk = static_cast<double>(k + 1);
        b.lambda[k] = 1.0 / (kk * kk * kk);
        b.nu[k] = std::pow(1.0 / 3.0, kk);
        for (std::size_t j = 0; j < t; ++j) {
            const double phase = 2.0 * std::numbers::pi * kk * grid.point(j);
            b.sin_kt[k * t + j] = std::sin(phase);
            b.cos_kt[k * t + j] = std::cos(phase);
        }
    }
    for (std::size_t j = 0; j < t; ++j)
        b.mu_out[j] = 2.0 - 8.0 * std::sin(std::numbers::pi * grid.point(j));
    return b;
}

// Outlier flags per row. Bernoulli mode draws the flag from the row's own
// stream; fixed-count mode marks ceil(p n) rows at positions chosen by a
// seed-derived permutation, computed once up front.
std::vector<std::uint8_t> make_flags(const KrausConfig& cfg) {
    std::vector<std::uint8_t> flags(cfg.n, 0);
    if (!cfg.fixed_outlier_count) return flags;  // filled per row later
    const auto want = static_cast<std::size_t>(std::ceil(cfg.p * static_cast<double>(cfg.n)));
    std::vector<std::size_t> perm(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) perm[i] = i;
    RandomStream rng(cfg.seed, kShuffleStream);
    for (std::size_t i = cfg.n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(perm[i - 1], perm[j]);
    }
    for (std::size_t i = 0; i < want && i < cfg.n; ++i) flags[perm[i]] = 1;
    return flags;
}

void fill_row(const KrausConfig& cfg, const Basis& basis, std::size_t t, std::size_t i,
              std::vector<std::uint8_t>& flags, double* out) {
    RandomStream rng(cfg.seed, i);
    if (!cfg.fixed_outlier_count) flags[i] = rng.bernoulli(cfg.p) ? 1 : 0;
    const bool outlier = flags[i] != 0;

    // Coefficient draw order is fixed: a_1..a_kmax, then b_1..b_kmax.
    std::vector<double> a(cfg.k_max), b(cfg.k_max);
    for (std::size_t k = 0; k < cfg.k_max; ++k) a[k] = cfg.zero_noise ? 0.0 : rng.gaussian();
    for (std::size_t k = 0; k < cfg.k_max; ++k) b[k] = cfg.zero_noise ? 0.0 : rng.gaussian();

    for (std::size_t j = 0; j < t; ++j) {
        double acc = outlier ? basis.mu_out[j] : 0.0;
        for (std::size_t k = 0; k < cfg.k_max; ++k)
            acc += std::numbers::sqrt2 * basis.lambda[k] * a[k] * basis.sin_kt[k * t + j];
        for (std::size_t k = 0; k < cfg.k_max; ++k)
            acc += std::numbers::sqrt2 * basis.nu[k] * b[k] * basis.cos_kt[k * t + j];
        out[j] = acc;
    }
}

FunctionalSample generate_impl(const KrausConfig& cfg, bool parallel) {
    validate(cfg);
    auto grid = Grid::uniform(cfg.t_count);
    const std::size_t t = cfg.t_count;
    const Basis basis = make_basis(*grid, cfg.k_max);
    std::vector<std::uint8_t> flags = make_flags(cfg);
    std::vector<double> data(cfg.n * t);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(cfg.n); ++i) {
        fill_row(cfg, basis, t, static_cast<std::size_t>(i), flags,
                 data.data() + static_cast<std::size_t>(i) * t);
    }
    return FunctionalSample(std::move(grid), std::move(data), std::move(flags));
}

}  // namespace

FunctionalSample generate(const KrausConfig& cfg) { return generate_impl(cfg, true); }

FunctionalSample generate_serial(const KrausConfig& cfg) { return generate_impl(cfg, false); }

CovMatrix true_cov(const KrausConfig& cfg) {
    validate(cfg);
    auto grid = Grid::uniform(cfg.t_count);
    const Basis basis = make_basis(*grid, cfg.k_max);
    const std::size_t t = cfg.t_count;
    CovMatrix out(std::move(grid));
    for (std::size_t k = 0; k < cfg.k_max; ++k) {
        for (std::size_t s = 0; s < t; ++s) {
            const double ak_s = std::numbers::sqrt2 * basis.lambda[k] * basis.sin_kt[k * t + s];
            const double bk_s = std::numbers::sqrt2 * basis.nu[k] * basis.cos_kt[k * t + s];
            for (std::size_t u = 0; u < t; ++u) {
                const double ak_u =
                    std::numbers::sqrt2 * basis.lambda[k] * basis.sin_kt[k * t + u];
                const double bk_u = std::numbers::sqrt2 * basis.nu[k] * basis.cos_kt[k * t + u];
                out.at(s, u) += ak_s * ak_u + bk_s * bk_u;
            }
        }
    }
    return out;
}

GridFunction outlier_mean(std::shared_ptr<const Grid> grid) {
    if (!grid) throw ContractError("outlier mean needs a grid");
    std::vector<double> values(grid->t_count());
    for (std::size_t j = 0; j < values.size(); ++j)
        values[j] = 2.0 - 8.0 * std::sin(std::numbers::pi * grid->point(j));
    return GridFunction{std::move(grid), std::move(values)};
}

}  // namespace rfm
