#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rfm {

struct BreakdownConfig {
    std::size_t n = 0;           // total sample size, divisible by m
    std::size_t m = 1;           // subsample count; l = n/m
    double p = 0.0;              // per-observation outlier probability
    std::size_t replicates = 1;
    std::uint64_t seed = 1;
    bool literal_walk = false;   // draw all n indicators instead of per-block
                                 // binomial counts (distributionally identical)
    bool record_u = false;       // keep the per-replicate intact-block fractions
};

struct BreakdownReport {
    double break_fraction = 0.0;
    std::size_t replicates = 0;
    std::optional<std::vector<double>> per_replicate_u;
};

// Monte Carlo of fusion breakdown for a median-type estimator with
// breakdown point 1/2. A block of length l breaks when outliers reach half
// of it (2 count >= l; for odd l = 2k+1 this is the "more than k" rule);
// the fusion breaks when broken blocks reach half of m. Replicates draw
// from counter-derived streams, so output is worker-count invariant.
BreakdownReport simulate_breakdown(const BreakdownConfig& cfg);
BreakdownReport simulate_breakdown_serial(const BreakdownConfig& cfg);

// Exact tail P(outliers reach half the block), Y ~ Binom(l, p), summed in
// log space. For odd l this is P(Y > l/2).
double block_break_prob(std::size_t l, double p);

// Hoeffding bound exp(-2 l (1/2 - p)^2) on block_break_prob; needs p < 1/2.
double block_break_bound(std::size_t l, double p);

// Closed-form oracle for simulate_breakdown: blocks break independently
// with probability q = block_break_prob(l, p); fusion breaks when
// Binom(m, q) >= ceil(m/2).
double fused_break_prob_exact(std::size_t m, std::size_t l, double p);

}  // namespace rfm
