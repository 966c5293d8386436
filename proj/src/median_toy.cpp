#include "rfm/median_toy.hpp"

#include <cmath>
#include <numbers>

#include "rfm/errors.hpp"

namespace rfm {

namespace {

double log_comb(int k) {
    // log( (2k+1)! / (k!)^2 )
    return std::lgamma(2.0 * k + 2.0) - 2.0 * std::lgamma(k + 1.0);
}

// Root of F(t) = q by bracket expansion + bisection.
double invert_cdf(const std::function<double(double)>& cdf, double q) {
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < 128 && cdf(lo) > q; ++i) lo = lo * 2.0 - 1.0;
    for (int i = 0; i < 128 && cdf(hi) < q; ++i) hi = hi * 2.0 + 1.0;
    if (cdf(lo) > q || cdf(hi) < q) throw InvalidLawError("could not bracket the requested quantile");
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < q) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

MedianLaw uniform_parent(int k) {
    MedianLaw law;
    law.k = k;
    law.pdf = [](double t) { return (t >= 0.0 && t <= 1.0) ? 1.0 : 0.0; };
    law.cdf = [](double t) {
        if (t < 0.0) return 0.0;
        if (t > 1.0) return 1.0;
        return t;
    };
    return law;
}

MedianLaw gaussian_parent(int k) {
    MedianLaw law;
    law.k = k;
    law.pdf = [](double t) {
        return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    };
    law.cdf = [](double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); };
    return law;
}

double median_pdf(const MedianLaw& law, double t) {
    if (law.k < 0) throw ContractError("median law needs k >= 0");
    const double f = law.pdf(t);
    const double F = law.cdf(t);
    if (f < 0.0) throw InvalidLawError("density callback returned a negative value");
    if (F < -1e-12 || F > 1.0 + 1e-12) throw InvalidLawError("CDF callback left [0,1]");
    if (law.k == 0) return f;
    if (F <= 0.0 || F >= 1.0) return 0.0;
    return std::exp(log_comb(law.k) + law.k * (std::log(F) + std::log1p(-F))) * f;
}

double beta_median_pdf(int k, double t) {
    if (k < 0) throw ContractError("median law needs k >= 0");
    if (t < 0.0 || t > 1.0) return 0.0;
    return median_pdf(uniform_parent(k), t);
}

double block_median_cdf(const MedianLaw& law, double t) {
    // P(at least k+1 of l = 2k+1 draws land at or below t)
    const int l = 2 * law.k + 1;
    const double F = std::min(1.0, std::max(0.0, law.cdf(t)));
    if (F == 0.0) return 0.0;
    if (F == 1.0) return 1.0;
    double acc = 0.0;
    for (int j = law.k + 1; j <= l; ++j) {
        const double log_term = std::lgamma(l + 1.0) - std::lgamma(j + 1.0) -
                                std::lgamma(l - j + 1.0) + j * std::log(F) +
                                (l - j) * std::log1p(-F);
        acc += std::exp(log_term);
    }
    return std::min(1.0, acc);
}

AsymptoticVariances asymptotic_variances(const MedianLaw& law, std::size_t n, std::size_t m,
                                         std::optional<double> theta) {
    if (law.k < 0) throw ContractError("median law needs k >= 0");
    if (m == 0) throw ContractError("asymptotic variances need m >= 1");
    const std::size_t l = 2 * static_cast<std::size_t>(law.k) + 1;
    if (n != m * l)
        throw ContractError("asymptotic variances need n = m (2k+1)");

    AsymptoticVariances out;
    out.theta_parent = theta ? *theta : invert_cdf(law.cdf, 0.5);
    const double f_theta = law.pdf(out.theta_parent);
    if (!(f_theta > 0.0)) throw DegenerateLawError("parent density vanishes at its median");
    out.var_full = 1.0 / (4.0 * static_cast<double>(n) * f_theta * f_theta);

    out.theta_fused =
        law.k == 0 ? out.theta_parent
                   : invert_cdf([&law](double t) { return block_median_cdf(law, t); }, 0.5);
    const double g_theta = median_pdf(law, out.theta_fused);
    if (!(g_theta > 0.0))
        throw DegenerateLawError("block-median density vanishes at its median");
    out.var_fused = 1.0 / (4.0 * static_cast<double>(m) * g_theta * g_theta);
    return out;
}

}  // namespace rfm
