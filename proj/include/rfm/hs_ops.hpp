#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rfm/grid.hpp"

namespace rfm {

// Rank-one operator f -> <x,f> x, stored by its generating function only.
// norm_sq caches <x,x>, the operator's single nonzero eigenvalue.
struct RankOneOperator {
    GridFunction x;
    double norm_sq = 0.0;
};

RankOneOperator make_rank_one(GridFunction x);

// T x T symmetric matrix of a covariance kernel at grid points.
class CovMatrix {
public:
    explicit CovMatrix(std::shared_ptr<const Grid> grid);
    CovMatrix(std::shared_ptr<const Grid> grid, std::vector<double> values);

    std::size_t t_count() const { return t_; }
    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }

    double at(std::size_t s, std::size_t t) const { return m_[s * t_ + t]; }
    double& at(std::size_t s, std::size_t t) { return m_[s * t_ + t]; }
    const std::vector<double>& values() const { return m_; }
    std::vector<double>& values() { return m_; }

    void validate() const;  // symmetric within 1e-12, finite

private:
    std::shared_ptr<const Grid> grid_;
    std::size_t t_ = 0;
    std::vector<double> m_;
};

// w applied to f: <x,f> x.
GridFunction apply(const RankOneOperator& w, const GridFunction& f);

// Squared pairwise distance between two rank-one operators without ever
// materializing kernels: ||x_i||^4 + ||x_j||^4 - 2 <x_i,x_j>^2. Tiny
// negatives from cancellation are clamped to 0; anything below -1e-9 is a
// numerical inconsistency and throws.
double hs_distance_sq(const RankOneOperator& wi, const RankOneOperator& wj);

// Kernel of w as a matrix: m[s][t] = x(t_s) x(t_t).
CovMatrix materialize(const RankOneOperator& w);

// sqrt( (1/T^2) sum_{s,t} m[s][t]^2 ): the matrix norm consistent with the
// 1/T quadrature weight, so the two distance routes agree exactly.
double frobenius_hs_norm(const CovMatrix& a);

// Norm of the entrywise difference; the metric used both for depth fusion
// and for reporting estimation error against the true operator.
double cov_hs_distance(const CovMatrix& a, const CovMatrix& b);

namespace detail {
// Squared rank-one distance from precomputed norms and the cross inner
// product; clamps tiny negative cancellation at zero.
inline double rank_one_dist_sq(double eta_i, double eta_j, double cross) {
    const double d2 = eta_i * eta_i + eta_j * eta_j - 2.0 * cross * cross;
    return d2 < 0.0 ? 0.0 : d2;
}
}  // namespace detail

}  // namespace rfm
