#include "rfm/hs_ops.hpp"

#include <cmath>

namespace rfm {

RankOneOperator make_rank_one(GridFunction x) {
    const double eta = inner(x, x);
    return RankOneOperator{std::move(x), eta};
}

CovMatrix::CovMatrix(std::shared_ptr<const Grid> grid) : grid_(std::move(grid)) {
    if (!grid_) throw ContractError("covariance matrix needs a grid");
    t_ = grid_->t_count();
    m_.assign(t_ * t_, 0.0);
}

CovMatrix::CovMatrix(std::shared_ptr<const Grid> grid, std::vector<double> values)
    : grid_(std::move(grid)), m_(std::move(values)) {
    if (!grid_) throw ContractError("covariance matrix needs a grid");
    t_ = grid_->t_count();
    if (m_.size() != t_ * t_) throw ContractError("covariance matrix must be T x T");
}

void CovMatrix::validate() const {
    for (std::size_t s = 0; s < t_; ++s) {
        for (std::size_t t = 0; t < t_; ++t) {
            const double v = at(s, t);
            if (!std::isfinite(v)) throw NumericError("covariance matrix has non-finite entry");
            const double w = at(t, s);
            if (std::abs(v - w) > 1e-12 * (1.0 + std::abs(v)))
                throw NumericError("covariance matrix is not symmetric");
        }
    }
}

GridFunction apply(const RankOneOperator& w, const GridFunction& f) {
    if (!f.grid || !w.x.grid) throw ContractError("grid function needs a grid");
    require_same_grid(*w.x.grid, *f.grid);
    const double scale = inner(w.x, f);
    std::vector<double> out(w.x.values.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = scale * w.x.values[j];
    return GridFunction{w.x.grid, std::move(out)};
}

double hs_distance_sq(const RankOneOperator& wi, const RankOneOperator& wj) {
    require_same_grid(*wi.x.grid, *wj.x.grid);
    const double cross = inner(wi.x, wj.x);
    const double d2 =
        wi.norm_sq * wi.norm_sq + wj.norm_sq * wj.norm_sq - 2.0 * cross * cross;
    if (d2 < -1e-9)
        throw NumericError("rank-one distance came out negative beyond cancellation");
    return d2 < 0.0 ? 0.0 : d2;
}

CovMatrix materialize(const RankOneOperator& w) {
    const std::size_t t = w.x.values.size();
    CovMatrix out(w.x.grid);
    for (std::size_t s = 0; s < t; ++s) {
        for (std::size_t u = 0; u < t; ++u) out.at(s, u) = w.x.values[s] * w.x.values[u];
    }
    return out;
}

double frobenius_hs_norm(const CovMatrix& a) {
    const std::size_t t = a.t_count();
    double acc = 0.0;
    for (double v : a.values()) acc += v * v;
    return std::sqrt(acc / (static_cast<double>(t) * static_cast<double>(t)));
}

double cov_hs_distance(const CovMatrix& a, const CovMatrix& b) {
    require_same_grid(a.grid(), b.grid());
    const std::size_t t = a.t_count();
    double acc = 0.0;
    const auto& av = a.values();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) {
        const double d = av[i] - bv[i];
        acc += d * d;
    }
    return std::sqrt(acc / (static_cast<double>(t) * static_cast<double>(t)));
}

}  // namespace rfm
