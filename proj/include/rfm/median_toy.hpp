#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace rfm {

// Parent law of the sample entries plus the block half-width k: blocks have
// odd length l = 2k+1.
struct MedianLaw {
    int k = 0;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
};

MedianLaw uniform_parent(int k);   // Uniform(0,1)
MedianLaw gaussian_parent(int k);  // standard normal

// Density of the median of l = 2k+1 iid draws:
//   ((2k+1)! / (k!)^2) F(t)^k (1-F(t))^k f(t),
// factorials in log-gamma form so large k cannot overflow.
double median_pdf(const MedianLaw& law, double t);

// Uniform specialization, the Beta(k+1,k+1) density; zero outside [0,1].
double beta_median_pdf(int k, double t);

// P(block median <= t) for continuous parents: a Binomial(l, F(t)) tail.
double block_median_cdf(const MedianLaw& law, double t);

struct AsymptoticVariances {
    double var_full = 0.0;   // 1 / (4 n f(theta)^2)
    double var_fused = 0.0;  // 1 / (4 m g(theta_fused)^2)
    double theta_parent = 0.0;
    double theta_fused = 0.0;  // centre of the block-median law; the bias
                               // theta_fused - theta_parent is reported, not hidden
};

// theta located by bisection on F to 1e-12 when not supplied.
AsymptoticVariances asymptotic_variances(const MedianLaw& law, std::size_t n, std::size_t m,
                                         std::optional<double> theta = std::nullopt);

}  // namespace rfm
