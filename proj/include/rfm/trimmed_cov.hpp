#pragma once

#include <cstddef>
#include <vector>

#include "rfm/grid.hpp"
#include "rfm/hs_ops.hpp"

namespace rfm {

// Trimming proportion alpha in [0,1).
struct TrimConfig {
    double alpha = 0.0;
};

// Output of the impartial trimmed mean: the estimate plus which
// neighbourhood won. kept_indices are ascending, always contain gamma, and
// radius is the largest kept distance d(W_gamma, W_j).
struct TrimResult {
    CovMatrix estimate;
    std::size_t gamma = 0;
    std::vector<std::size_t> kept_indices;
    std::size_t r = 0;
    double radius = 0.0;
};

struct NeighbourInfo {
    std::vector<double> radii;                          // d_i^{(r)} per index
    std::vector<std::vector<std::size_t>> neighbours;   // r nearest per index, ascending
};

// Keep count r = min(n, floor((1-alpha) n) + 1); the clamp covers alpha = 0.
std::size_t trim_keep_count(std::size_t n, double alpha);

// Entrywise average of the rank-one kernels, (1/n) sum_i X_i(s) X_i(t).
// No mean-centering anywhere; the model is centred.
CovMatrix sample_cov(SampleView s);
CovMatrix sample_cov_serial(SampleView s);

// For each i, the r-th smallest of {d_i1,...,d_in} (d_ii = 0 included) and
// the index set of the r nearest neighbours (self included; boundary ties
// broken by lowest index). O(n^2) time, O(n r) output.
NeighbourInfo pairwise_r_radius(SampleView s, std::size_t r);

// Radii only, streamed row by row: O(n) memory beyond the output.
std::vector<double> nn_radii(SampleView s, std::size_t r);
std::vector<double> nn_radii_serial(SampleView s, std::size_t r);

// The approximate impartial trimmed mean of the covariance operator:
// gamma = argmin_i d_i^{(r)} (ties to lowest index), estimate = average of
// the kernels of gamma's r nearest neighbours.
TrimResult trimmed_mean(SampleView s, const TrimConfig& cfg);
TrimResult trimmed_mean_serial(SampleView s, const TrimConfig& cfg);

// Full n x n matrix of d_ij = ||W_i - W_j||, zero diagonal, symmetric.
// Refuses allocations that cannot fit; use nn_radii to stream instead.
std::vector<double> distance_matrix(SampleView s);
std::vector<double> distance_matrix_serial(SampleView s);

namespace detail {
// One row of squared rank-one distances: out[j] = d^2(W_i, W_j). Norms
// eta[j] = ||X_j||^2 are precomputed by the caller. Shared by every
// distance consumer so all paths agree bitwise.
void dist_sq_row(SampleView s, const std::vector<double>& eta, std::size_t i, double* out);
std::vector<double> row_norms_sq(SampleView s);
}  // namespace detail

}  // namespace rfm
