#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rfm/hs_ops.hpp"

namespace rfm {

// A point in a finite-dimensional normed space. Covariance estimates embed
// via embed_hs below; scalars embed as length-1 coordinate vectors.
struct DepthPoint {
    std::vector<double> coords;
};

struct DepthResult {
    std::vector<double> depths;   // one per candidate, each in [0,1]
    std::size_t argmax_index = 0; // ties broken by lowest index
    double max_depth = 0.0;
};

// Empirical spatial depth of x with respect to the sample:
//   1 - || (1/m) sum_j (X_j - x)/||X_j - x|| ||
// Terms with ||X_j - x|| = 0 exactly contribute a zero vector but still
// count in the divisor m, so a point mass at x has depth 1.
double spatial_depth(const DepthPoint& x, std::span<const DepthPoint> sample);

// Depth of every candidate with respect to the whole candidate set (itself
// included) and the argmax. The m evaluations run data-parallel into
// indexed slots; the argmax scan is serial in index order.
DepthResult deepest(std::span<const DepthPoint> points);
DepthResult deepest_serial(std::span<const DepthPoint> points);

// Entries scaled by 1/T, so Euclidean distance on the embedding equals
// cov_hs_distance and the depth argmax is the HS spatial-depth argmax.
DepthPoint embed_hs(const CovMatrix& a);

}  // namespace rfm
