#include "rfm/depth.hpp"

#include <cmath>
#include <cstdint>

#include "rfm/errors.hpp"

namespace rfm {

namespace {

void require_common_dimension(std::span<const DepthPoint> sample, std::size_t dim) {
    if (dim == 0) throw ContractError("depth point must be non-empty");
    for (const auto& p : sample) {
        if (p.coords.size() != dim)
            throw ContractError("depth points must share one dimension");
    }
}

// Shared by the serial and parallel drivers so both produce identical bits.
double depth_of(std::span<const DepthPoint> sample, const double* x, std::size_t dim,
                std::vector<double>& acc) {
    acc.assign(dim, 0.0);
    const std::size_t m = sample.size();
    for (std::size_t j = 0; j < m; ++j) {
        const auto& p = sample[j];
        double nrm_sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = p.coords[d] - x[d];
            nrm_sq += diff * diff;
        }
        if (nrm_sq == 0.0) continue;  // exact duplicates only; no epsilon
        const double inv = 1.0 / std::sqrt(nrm_sq);
        for (std::size_t d = 0; d < dim; ++d) acc[d] += (p.coords[d] - x[d]) * inv;
    }
    double mean_sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double v = acc[d] / static_cast<double>(m);
        mean_sq += v * v;
    }
    const double depth = 1.0 - std::sqrt(mean_sq);
    if (depth < 0.0) return 0.0;
    if (depth > 1.0) return 1.0;
    return depth;
}

DepthResult argmax_scan(std::vector<double> depths) {
    DepthResult out;
    out.argmax_index = 0;
    out.max_depth = depths[0];
    for (std::size_t j = 1; j < depths.size(); ++j) {
        if (depths[j] > out.max_depth) {
            out.max_depth = depths[j];
            out.argmax_index = j;
        }
    }
    out.depths = std::move(depths);
    return out;
}

}  // namespace

double spatial_depth(const DepthPoint& x, std::span<const DepthPoint> sample) {
    if (sample.empty()) throw ContractError("spatial depth needs a non-empty sample");
    require_common_dimension(sample, x.coords.size());
    std::vector<double> acc;
    return depth_of(sample, x.coords.data(), x.coords.size(), acc);
}

DepthResult deepest(std::span<const DepthPoint> points) {
    if (points.empty()) throw ContractError("deepest needs at least one point");
    const std::size_t m = points.size();
    const std::size_t dim = points[0].coords.size();
    require_common_dimension(points, dim);
    std::vector<double> depths(m);
#pragma omp parallel
    {
        std::vector<double> acc;
#pragma omp for schedule(static)
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(m); ++j) {
            depths[static_cast<std::size_t>(j)] =
                depth_of(points, points[static_cast<std::size_t>(j)].coords.data(), dim, acc);
        }
    }
    return argmax_scan(std::move(depths));
}

DepthResult deepest_serial(std::span<const DepthPoint> points) {
    if (points.empty()) throw ContractError("deepest needs at least one point");
    const std::size_t m = points.size();
    const std::size_t dim = points[0].coords.size();
    require_common_dimension(points, dim);
    std::vector<double> depths(m);
    std::vector<double> acc;
    for (std::size_t j = 0; j < m; ++j) {
        depths[j] = depth_of(points, points[j].coords.data(), dim, acc);
    }
    return argmax_scan(std::move(depths));
}

DepthPoint embed_hs(const CovMatrix& a) {
    const double inv_t = 1.0 / static_cast<double>(a.t_count());
    DepthPoint p;
    p.coords.reserve(a.values().size());
    for (double v : a.values()) p.coords.push_back(v * inv_t);
    return p;
}

}  // namespace rfm
