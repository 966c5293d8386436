#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rfm/depth.hpp"
#include "rfm/grid.hpp"
#include "rfm/trimmed_cov.hpp"

namespace rfm {

// n = m * l exactly; non-divisible sizes are rejected, never truncated
// silently (the CLI truncates explicitly and logs it).
struct SplitPlan {
    std::size_t n = 0;
    std::size_t m = 1;
    std::size_t l = 2;
};

SplitPlan make_split_plan(std::size_t n, std::size_t m);

struct EstimatorKind {
    enum class Tag { classical_cov, robust_trimmed_cov };
    Tag tag = Tag::classical_cov;
    double alpha = 0.0;  // meaningful only for the robust estimator

    static EstimatorKind classical() { return {Tag::classical_cov, 0.0}; }
    static EstimatorKind robust(double alpha) { return {Tag::robust_trimmed_cov, alpha}; }
};

enum class FusionKind { deepest, average };

struct FusionTimings {
    double time_split = 0.0;
    double time_blocks_total = 0.0;  // sum of per-block wall times
    double time_blocks_max = 0.0;    // slowest block
    double time_blocks_wall = 0.0;   // wall time of the block phase
    double time_fuse = 0.0;
};

struct FusionOutcome {
    std::vector<CovMatrix> per_subsample;
    CovMatrix fused;
    std::optional<DepthResult> depth_result;  // present iff FusionKind::deepest
    FusionTimings timings;
};

// Contiguous, non-overlapping blocks in original order; block j covers rows
// [j*l, (j+1)*l).
std::vector<SampleView> split(SampleView sample, const SplitPlan& plan);

// One covariance estimate per block, blocks running data-parallel into
// indexed slots. Per-block wall times land in timings when given.
std::vector<CovMatrix> estimate_blocks(SampleView sample, const SplitPlan& plan,
                                       const EstimatorKind& est, FusionTimings* timings = nullptr);
std::vector<CovMatrix> estimate_blocks_serial(SampleView sample, const SplitPlan& plan,
                                              const EstimatorKind& est,
                                              FusionTimings* timings = nullptr);

// Entrywise mean of the block estimates, blocks consumed in index order.
CovMatrix fuse_average(const std::vector<CovMatrix>& estimates);

// Spatial-depth selection among the block estimates embedded with the HS
// weighting; the fused matrix is a verbatim copy of the argmax candidate.
std::pair<CovMatrix, DepthResult> fuse_deepest(const std::vector<CovMatrix>& estimates);

FusionOutcome run_fusion(SampleView sample, const SplitPlan& plan, const EstimatorKind& est,
                         FusionKind fuse);

// Median of per-block medians. Mid element for odd block length; lower-mid
// for even.
double median_of_medians(std::span<const double> values, const SplitPlan& plan);

}  // namespace rfm
