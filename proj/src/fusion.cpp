#include "rfm/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <omp.h>

namespace rfm {

SplitPlan make_split_plan(std::size_t n, std::size_t m) {
    if (m < 1) throw ContractError("split plan needs m >= 1");
    if (n % m != 0)
        throw ContractError("sample size " + std::to_string(n) + " is not divisible by m = " +
                            std::to_string(m) + "; truncate explicitly first");
    const std::size_t l = n / m;
    if (l < 2) throw ContractError("split plan needs block length l >= 2");
    return SplitPlan{n, m, l};
}

std::vector<SampleView> split(SampleView sample, const SplitPlan& plan) {
    if (plan.n != plan.m * plan.l || plan.m < 1 || plan.l < 2)
        throw ContractError("inconsistent split plan");
    if (sample.size() != plan.n)
        throw ContractError("split plan n does not match the sample size");
    std::vector<SampleView> blocks;
    blocks.reserve(plan.m);
    for (std::size_t j = 0; j < plan.m; ++j) blocks.push_back(sample.sub(j * plan.l, plan.l));
    return blocks;
}

namespace {

CovMatrix estimate_one(SampleView block, const EstimatorKind& est, bool parallel_inner) {
    if (est.tag == EstimatorKind::Tag::classical_cov) {
        return parallel_inner ? sample_cov(block) : sample_cov_serial(block);
    }
    TrimConfig cfg{est.alpha};
    return parallel_inner ? trimmed_mean(block, cfg).estimate
                          : trimmed_mean_serial(block, cfg).estimate;
}

std::vector<CovMatrix> estimate_blocks_impl(SampleView sample, const SplitPlan& plan,
                                            const EstimatorKind& est, FusionTimings* timings,
                                            bool parallel) {
    if (est.tag == EstimatorKind::Tag::robust_trimmed_cov &&
        !(est.alpha >= 0.0 && est.alpha < 1.0))
        throw ContractError("alpha must be in [0, 1)");
    const auto blocks = split(sample, plan);
    const std::size_t m = blocks.size();
    std::vector<CovMatrix> estimates(m, CovMatrix(sample.grid_ptr()));
    std::vector<double> block_seconds(m, 0.0);
    const double wall0 = omp_get_wtime();
#pragma omp parallel for schedule(dynamic) if (parallel && m > 1)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
        const double t0 = omp_get_wtime();
        estimates[static_cast<std::size_t>(j)] =
            estimate_one(blocks[static_cast<std::size_t>(j)], est, parallel);
        block_seconds[static_cast<std::size_t>(j)] = omp_get_wtime() - t0;
    }
    const double wall1 = omp_get_wtime();
    if (timings) {
        timings->time_blocks_wall = wall1 - wall0;
        timings->time_blocks_total = 0.0;
        timings->time_blocks_max = 0.0;
        for (double sec : block_seconds) {
            timings->time_blocks_total += sec;
            timings->time_blocks_max = std::max(timings->time_blocks_max, sec);
        }
    }
    return estimates;
}

}  // namespace

std::vector<CovMatrix> estimate_blocks(SampleView sample, const SplitPlan& plan,
                                       const EstimatorKind& est, FusionTimings* timings) {
    return estimate_blocks_impl(sample, plan, est, timings, true);
}

std::vector<CovMatrix> estimate_blocks_serial(SampleView sample, const SplitPlan& plan,
                                              const EstimatorKind& est, FusionTimings* timings) {
    return estimate_blocks_impl(sample, plan, est, timings, false);
}

CovMatrix fuse_average(const std::vector<CovMatrix>& estimates) {
    if (estimates.empty()) throw ContractError("fusion needs at least one estimate");
    CovMatrix out(estimates.front().grid_ptr());
    const std::size_t len = out.values().size();
    const double m = static_cast<double>(estimates.size());
    for (const auto& e : estimates) {
        require_same_grid(out.grid(), e.grid());
        for (std::size_t k = 0; k < len; ++k) out.values()[k] += e.values()[k];
    }
    for (std::size_t k = 0; k < len; ++k) out.values()[k] /= m;
    return out;
}

std::pair<CovMatrix, DepthResult> fuse_deepest(const std::vector<CovMatrix>& estimates) {
    if (estimates.empty()) throw ContractError("fusion needs at least one estimate");
    std::vector<DepthPoint> points;
    points.reserve(estimates.size());
    for (const auto& e : estimates) {
        require_same_grid(estimates.front().grid(), e.grid());
        points.push_back(embed_hs(e));
    }
    DepthResult depth = deepest(points);
    CovMatrix fused = estimates[depth.argmax_index];  // selection, never synthesis
    return {std::move(fused), std::move(depth)};
}

FusionOutcome run_fusion(SampleView sample, const SplitPlan& plan, const EstimatorKind& est,
                         FusionKind fuse) {
    FusionTimings timings;
    const double t0 = omp_get_wtime();
    (void)split(sample, plan);  // validate before any work
    timings.time_split = omp_get_wtime() - t0;

    std::vector<CovMatrix> per_subsample = estimate_blocks(sample, plan, est, &timings);

    const double t1 = omp_get_wtime();
    FusionOutcome out{std::move(per_subsample), CovMatrix(sample.grid_ptr()), std::nullopt,
                      timings};
    if (fuse == FusionKind::average) {
        out.fused = fuse_average(out.per_subsample);
    } else {
        auto [fused, depth] = fuse_deepest(out.per_subsample);
        out.fused = std::move(fused);
        out.depth_result = std::move(depth);
    }
    out.timings.time_fuse = omp_get_wtime() - t1;
    return out;
}

namespace {

// Lower-mid convention: element (len-1)/2 of the sorted block.
double median_inplace(std::vector<double>& buf) {
    const std::size_t mid = (buf.size() - 1) / 2;
    std::nth_element(buf.begin(), buf.begin() + mid, buf.end());
    return buf[mid];
}

}  // namespace

double median_of_medians(std::span<const double> values, const SplitPlan& plan) {
    if (plan.n != plan.m * plan.l || plan.m < 1 || plan.l < 2)
        throw ContractError("inconsistent split plan");
    if (values.size() != plan.n)
        throw ContractError("split plan n does not match the value count");
    std::vector<double> block_medians(plan.m);
    std::vector<double> scratch(plan.l);
    for (std::size_t j = 0; j < plan.m; ++j) {
        const double* begin = values.data() + j * plan.l;
        scratch.assign(begin, begin + plan.l);
        block_medians[j] = median_inplace(scratch);
    }
    return median_inplace(block_medians);
}

}  // namespace rfm
