#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

#include "rfm/grid.hpp"
#include "rfm/hs_ops.hpp"

namespace rfm {

// Sinusoidal random-coefficient process with decaying amplitudes
// lambda_k = k^-3 (sine) and nu_k = 3^-k (cosine), contaminated by mean
// shift: central rows have mu = 0, outlier rows mu(t) = 2 - 8 sin(pi t).
// Outliers keep the same Gaussian fluctuation and differ only in mean.
struct KrausConfig {
    std::size_t n = 0;
    double p = 0.0;              // outlier proportion in [0,1)
    std::size_t t_count = 20;
    std::uint64_t seed = 1;
    std::size_t k_max = 10;      // number of harmonics
    bool fixed_outlier_count = false;  // exactly ceil(p n) outliers at random
                                       // positions instead of per-row Bernoulli
    bool zero_noise = false;     // test hook: force all Gaussian draws to 0
};

// Row generation is independent per row (counter-derived streams), so the
// output is identical for any worker count. Labels carry the true flags.
FunctionalSample generate(const KrausConfig& cfg);
FunctionalSample generate_serial(const KrausConfig& cfg);

// The process covariance kernel on the same grid:
//   Cov(s,t) = sum_k A_k(s)A_k(t) + B_k(s)B_k(t),
//   A_k(t) = sqrt(2) lambda_k sin(2 pi k t), B_k(t) = sqrt(2) nu_k cos(2 pi k t).
CovMatrix true_cov(const KrausConfig& cfg);

// The outlier mean curve 2 - 8 sin(pi t) on a grid.
GridFunction outlier_mean(std::shared_ptr<const Grid> grid);

}  // namespace rfm
