#include "rfm/breakdown.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rfm/errors.hpp"
#include "rfm/rng.hpp"

namespace rfm {

namespace {

void validate(const BreakdownConfig& cfg) {
    if (cfg.m < 1) throw ContractError("breakdown config needs m >= 1");
    if (cfg.n == 0 || cfg.n % cfg.m != 0)
        throw ContractError("breakdown config needs n divisible by m");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ContractError("p must be in [0, 1]");
    if (cfg.replicates < 1) throw ContractError("breakdown config needs replicates >= 1");
}

// One replicate; returns the number of broken blocks.
std::size_t broken_blocks(const BreakdownConfig& cfg, std::size_t l, std::uint64_t rep) {
    RandomStream rng(cfg.seed, rep);
    std::size_t broken = 0;
    if (cfg.literal_walk) {
        for (std::size_t j = 0; j < cfg.m; ++j) {
            std::size_t count = 0;
            for (std::size_t i = 0; i < l; ++i) count += rng.bernoulli(cfg.p) ? 1 : 0;
            if (2 * count >= l) ++broken;
        }
        return broken;
    }
    if (cfg.p == 0.0) return 0;
    if (cfg.p == 1.0) return cfg.m;
    std::binomial_distribution<long> block_count(static_cast<long>(l), cfg.p);
    for (std::size_t j = 0; j < cfg.m; ++j) {
        const auto count = static_cast<std::size_t>(block_count(rng));
        if (2 * count >= l) ++broken;
    }
    return broken;
}

BreakdownReport simulate_impl(const BreakdownConfig& cfg, bool parallel) {
    validate(cfg);
    const std::size_t l = cfg.n / cfg.m;
    std::vector<std::uint8_t> broke(cfg.replicates);
    std::vector<double> u;
    if (cfg.record_u) u.resize(cfg.replicates);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t rep = 0; rep < static_cast<std::int64_t>(cfg.replicates); ++rep) {
        const std::size_t broken = broken_blocks(cfg, l, static_cast<std::uint64_t>(rep));
        broke[static_cast<std::size_t>(rep)] = (2 * broken >= cfg.m) ? 1 : 0;
        if (cfg.record_u) {
            u[static_cast<std::size_t>(rep)] =
                static_cast<double>(cfg.m - broken) / static_cast<double>(cfg.m);
        }
    }
    std::size_t total = 0;
    for (std::uint8_t b : broke) total += b;
    BreakdownReport report;
    report.break_fraction = static_cast<double>(total) / static_cast<double>(cfg.replicates);
    report.replicates = cfg.replicates;
    if (cfg.record_u) report.per_replicate_u = std::move(u);
    return report;
}

double binomial_upper_tail(std::size_t trials, double p, std::size_t from) {
    // P(Y >= from) for Y ~ Binom(trials, p), stable log-space terms.
    if (from == 0) return 1.0;
    if (from > trials) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double n = static_cast<double>(trials);
    const double log_p = std::log(p);
    const double log_1mp = std::log1p(-p);
    double acc = 0.0;
    for (std::size_t j = from; j <= trials; ++j) {
        const double jd = static_cast<double>(j);
        const double log_term = std::lgamma(n + 1.0) - std::lgamma(jd + 1.0) -
                                std::lgamma(n - jd + 1.0) + jd * log_p + (n - jd) * log_1mp;
        acc += std::exp(log_term);
    }
    return std::min(1.0, acc);
}

}  // namespace

BreakdownReport simulate_breakdown(const BreakdownConfig& cfg) {
    return simulate_impl(cfg, true);
}

BreakdownReport simulate_breakdown_serial(const BreakdownConfig& cfg) {
    return simulate_impl(cfg, false);
}

double block_break_prob(std::size_t l, double p) {
    if (l < 1) throw ContractError("block length must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("p must be in [0, 1]");
    return binomial_upper_tail(l, p, (l + 1) / 2);
}

double block_break_bound(std::size_t l, double p) {
    if (l < 1) throw ContractError("block length must be >= 1");
    if (!(p >= 0.0)) throw ContractError("p must be nonnegative");
    if (p >= 0.5) throw BoundInapplicableError("tail bound requires p < 1/2");
    const double gap = 0.5 - p;
    return std::exp(-2.0 * static_cast<double>(l) * gap * gap);
}

double fused_break_prob_exact(std::size_t m, std::size_t l, double p) {
    if (m < 1) throw ContractError("fused break probability needs m >= 1");
    const double q = block_break_prob(l, p);
    return binomial_upper_tail(m, q, (m + 1) / 2);
}

}  // namespace rfm
