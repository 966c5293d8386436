#include "rfm/trimmed_cov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <new>
#include <string>

namespace rfm {

namespace detail {

std::vector<double> row_norms_sq(SampleView s) {
    const std::size_t n = s.size();
    const std::size_t t = s.t_count();
    std::vector<double> eta(n);
    for (std::size_t i = 0; i < n; ++i) eta[i] = dot_mean(s.row(i).data(), s.row(i).data(), t);
    return eta;
}

// Four independent accumulator chains; each lane keeps the same
// left-to-right order as dot_mean, so lane and tail results agree bitwise
// (the build disables FP contraction).
void dist_sq_row(SampleView s, const std::vector<double>& eta, std::size_t i, double* out) {
    const std::size_t n = s.size();
    const std::size_t t = s.t_count();
    const double* xi = s.row(i).data();
    const double ei = eta[i];
    const double inv_t = static_cast<double>(t);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const double* y0 = s.row(j).data();
        const double* y1 = s.row(j + 1).data();
        const double* y2 = s.row(j + 2).data();
        const double* y3 = s.row(j + 3).data();
        double q0 = 0.0, q1 = 0.0, q2 = 0.0, q3 = 0.0;
        for (std::size_t u = 0; u < t; ++u) {
            const double x = xi[u];
            q0 += x * y0[u];
            q1 += x * y1[u];
            q2 += x * y2[u];
            q3 += x * y3[u];
        }
        out[j] = rank_one_dist_sq(ei, eta[j], q0 / inv_t);
        out[j + 1] = rank_one_dist_sq(ei, eta[j + 1], q1 / inv_t);
        out[j + 2] = rank_one_dist_sq(ei, eta[j + 2], q2 / inv_t);
        out[j + 3] = rank_one_dist_sq(ei, eta[j + 3], q3 / inv_t);
    }
    for (; j < n; ++j) {
        const double* y = s.row(j).data();
        double q = 0.0;
        for (std::size_t u = 0; u < t; ++u) q += xi[u] * y[u];
        out[j] = rank_one_dist_sq(ei, eta[j], q / inv_t);
    }
    out[i] = 0.0;  // self distance is exactly zero by definition
}

namespace {

struct Candidate {
    double d2;
    std::uint32_t rank;  // 0 for self, idx+1 otherwise: self always sorts first at ties
    std::uint32_t idx;
    bool operator<(const Candidate& other) const {
        if (d2 != other.d2) return d2 < other.d2;
        return rank < other.rank;
    }
};

// Kernel shapes shared by sample_cov and trimmed_mean so that alpha -> 0
// reproduces sample_cov bit for bit.
void accumulate_kernel_rows(SampleView s, const std::vector<std::size_t>& rows,
                            double divisor, CovMatrix& out, bool parallel) {
    const std::size_t t = s.t_count();
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t ss = 0; ss < static_cast<std::int64_t>(t); ++ss) {
        const auto a = static_cast<std::size_t>(ss);
        for (std::size_t b = a; b < t; ++b) {
            double acc = 0.0;
            for (std::size_t jj : rows) {
                const double* row = s.row(jj).data();
                acc += row[a] * row[b];
            }
            out.at(a, b) = acc / divisor;
        }
    }
    for (std::size_t a = 0; a < t; ++a) {
        for (std::size_t b = 0; b < a; ++b) out.at(a, b) = out.at(b, a);
    }
}

std::vector<std::size_t> iota_rows(std::size_t n) {
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = i;
    return rows;
}

// Row blocking: each task owns kRowBlock consecutive i rows and streams the
// sample once for all of them, which divides memory traffic by the block
// size. Per-pair arithmetic order is identical to dist_sq_row.
constexpr std::size_t kRowBlock = 8;

void dist_sq_rows_blocked(SampleView s, const std::vector<double>& eta, std::size_t i0,
                          std::size_t count, double* out /* count x n */) {
    const std::size_t n = s.size();
    const std::size_t t = s.t_count();
    const double inv_t = static_cast<double>(t);
    const double* xi[kRowBlock];
    for (std::size_t b = 0; b < count; ++b) xi[b] = s.row(i0 + b).data();
    for (std::size_t j = 0; j < n; ++j) {
        const double* y = s.row(j).data();
        const double ej = eta[j];
        for (std::size_t b = 0; b < count; ++b) {
            const double* x = xi[b];
            double q = 0.0;
            for (std::size_t u = 0; u < t; ++u) q += x[u] * y[u];
            out[b * n + j] = rank_one_dist_sq(eta[i0 + b], ej, q / inv_t);
        }
    }
    for (std::size_t b = 0; b < count; ++b) out[b * n + i0 + b] = 0.0;
}

std::vector<double> nn_radii_impl(SampleView s, std::size_t r, bool parallel) {
    const std::size_t n = s.size();
    if (r < 1 || r > n) throw ContractError("neighbour count r must be in [1, n]");
    const auto eta = detail::row_norms_sq(s);
    std::vector<double> radii(n);
    const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
#pragma omp parallel if (parallel)
    {
        std::vector<double> buf(kRowBlock * n);
#pragma omp for schedule(static)
        for (std::int64_t ib = 0; ib < static_cast<std::int64_t>(blocks); ++ib) {
            const std::size_t i0 = static_cast<std::size_t>(ib) * kRowBlock;
            const std::size_t count = std::min(kRowBlock, n - i0);
            dist_sq_rows_blocked(s, eta, i0, count, buf.data());
            for (std::size_t b = 0; b < count; ++b) {
                double* row = buf.data() + b * n;
                std::nth_element(row, row + (r - 1), row + n);
                radii[i0 + b] = std::sqrt(row[r - 1]);
            }
        }
    }
    return radii;
}

// Distances from row i with the self-first tie rule; returns the r kept
// indices (ascending) and the kept radius.
std::pair<std::vector<std::size_t>, double> neighbour_set(SampleView s,
                                                          const std::vector<double>& eta,
                                                          std::size_t i, std::size_t r) {
    const std::size_t n = s.size();
    std::vector<double> row(n);
    detail::dist_sq_row(s, eta, i, row.data());
    std::vector<Candidate> cand(n);
    for (std::size_t j = 0; j < n; ++j) {
        cand[j] = Candidate{row[j], j == i ? 0u : static_cast<std::uint32_t>(j) + 1u,
                            static_cast<std::uint32_t>(j)};
    }
    std::nth_element(cand.begin(), cand.begin() + (r - 1), cand.end());
    std::vector<std::size_t> kept(r);
    double max_d2 = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
        kept[k] = cand[k].idx;
        max_d2 = std::max(max_d2, cand[k].d2);
    }
    std::sort(kept.begin(), kept.end());
    return {std::move(kept), std::sqrt(max_d2)};
}

TrimResult trimmed_mean_impl(SampleView s, const TrimConfig& cfg, bool parallel) {
    const std::size_t n = s.size();
    if (n < 2) throw ContractError("trimmed mean needs at least two observations");
    if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) throw ContractError("alpha must be in [0, 1)");
    const std::size_t r = trim_keep_count(n, cfg.alpha);

    const auto radii = nn_radii_impl(s, r, parallel);
    std::size_t gamma = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (radii[i] < radii[gamma]) gamma = i;
    }

    const auto eta = detail::row_norms_sq(s);
    auto [kept, radius] = neighbour_set(s, eta, gamma, r);

    TrimResult out{CovMatrix(s.grid_ptr()), gamma, std::move(kept), r, radius};
    accumulate_kernel_rows(s, out.kept_indices, static_cast<double>(r), out.estimate, parallel);
    return out;
}

std::vector<double> distance_matrix_impl(SampleView s, bool parallel) {
    const std::size_t n = s.size();
    if (n == 0) throw ContractError("distance matrix needs at least one observation");
    if (n > std::numeric_limits<std::size_t>::max() / n / sizeof(double))
        throw CapacityError("distance matrix of " + std::to_string(n) + "^2 entries overflows");
    const std::size_t bytes = n * n * sizeof(double);
    std::vector<double> d;
    try {
        d.resize(n * n);
    } catch (const std::bad_alloc&) {
        throw CapacityError("cannot allocate distance matrix of " + std::to_string(bytes) +
                            " bytes");
    }
    const auto eta = detail::row_norms_sq(s);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double* row = d.data() + static_cast<std::size_t>(i) * n;
        detail::dist_sq_row(s, eta, static_cast<std::size_t>(i), row);
        for (std::size_t j = 0; j < n; ++j) row[j] = std::sqrt(row[j]);
    }
    return d;
}

}  // namespace

}  // namespace detail

std::size_t trim_keep_count(std::size_t n, double alpha) {
    // floor((1-alpha) n) evaluated robustly: products that are mathematically
    // integral may land just below the integer in floating point.
    const double v = (1.0 - alpha) * static_cast<double>(n);
    double fl = std::floor(v);
    if (v - fl > 1.0 - 1e-9 * std::max(1.0, v)) fl += 1.0;
    const auto r = static_cast<std::size_t>(fl) + 1;
    return std::min(n, r);
}

CovMatrix sample_cov(SampleView s) {
    if (s.size() == 0) throw ContractError("sample covariance needs at least one observation");
    CovMatrix out(s.grid_ptr());
    detail::accumulate_kernel_rows(s, detail::iota_rows(s.size()),
                                   static_cast<double>(s.size()), out, true);
    return out;
}

CovMatrix sample_cov_serial(SampleView s) {
    if (s.size() == 0) throw ContractError("sample covariance needs at least one observation");
    CovMatrix out(s.grid_ptr());
    detail::accumulate_kernel_rows(s, detail::iota_rows(s.size()),
                                   static_cast<double>(s.size()), out, false);
    return out;
}

NeighbourInfo pairwise_r_radius(SampleView s, std::size_t r) {
    const std::size_t n = s.size();
    if (n == 0) throw ContractError("pairwise radii need at least one observation");
    if (r < 1 || r > n) throw ContractError("neighbour count r must be in [1, n]");
    const auto eta = detail::row_norms_sq(s);
    NeighbourInfo out;
    out.radii.resize(n);
    out.neighbours.resize(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        auto [kept, radius] = detail::neighbour_set(s, eta, static_cast<std::size_t>(i), r);
        out.radii[static_cast<std::size_t>(i)] = radius;
        out.neighbours[static_cast<std::size_t>(i)] = std::move(kept);
    }
    return out;
}

std::vector<double> nn_radii(SampleView s, std::size_t r) {
    return detail::nn_radii_impl(s, r, true);
}

std::vector<double> nn_radii_serial(SampleView s, std::size_t r) {
    return detail::nn_radii_impl(s, r, false);
}

TrimResult trimmed_mean(SampleView s, const TrimConfig& cfg) {
    return detail::trimmed_mean_impl(s, cfg, true);
}

TrimResult trimmed_mean_serial(SampleView s, const TrimConfig& cfg) {
    return detail::trimmed_mean_impl(s, cfg, false);
}

std::vector<double> distance_matrix(SampleView s) {
    return detail::distance_matrix_impl(s, true);
}

std::vector<double> distance_matrix_serial(SampleView s) {
    return detail::distance_matrix_impl(s, false);
}

}  // namespace rfm
