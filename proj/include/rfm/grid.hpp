#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rfm/errors.hpp"

namespace rfm {

// Equally spaced grid of T points on [0,1], both endpoints included
// (spacing 1/(T-1) for T >= 2). Immutable after construction.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    static std::shared_ptr<const Grid> uniform(std::size_t t_count);

    std::size_t t_count() const { return points_.size(); }
    const std::vector<double>& points() const { return points_; }
    double point(std::size_t j) const { return points_[j]; }
    double spacing() const { return spacing_; }

private:
    std::vector<double> points_;
    double spacing_ = 0.0;
};

bool same_grid(const Grid& a, const Grid& b);
void require_same_grid(const Grid& a, const Grid& b);

// One function sampled on a grid. values always has exactly t_count entries,
// all finite.
struct GridFunction {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
};

GridFunction make_grid_function(std::shared_ptr<const Grid> grid, std::vector<double> values);

// Mean-weighted discretization of the L2 inner product: (1/T) sum f_j g_j,
// summed left to right so runs are bit-reproducible. Parallelism happens
// across pairs, never inside one inner product.
double inner(const GridFunction& f, const GridFunction& g);
double norm(const GridFunction& f);

namespace detail {
// Same quadrature on raw rows; left-to-right accumulation order is part of
// the contract.
inline double dot_mean(const double* a, const double* b, std::size_t t) {
    double acc = 0.0;
    for (std::size_t j = 0; j < t; ++j) acc += a[j] * b[j];
    return acc / static_cast<double>(t);
}
}  // namespace detail

class FunctionalSample;

// Contiguous block of rows of a FunctionalSample. Cheap to copy; does not
// own data.
class SampleView {
public:
    SampleView() = default;
    SampleView(const FunctionalSample& base, std::size_t offset, std::size_t count);

    std::size_t size() const { return count_; }
    std::size_t t_count() const;
    const Grid& grid() const;
    std::shared_ptr<const Grid> grid_ptr() const;
    std::span<const double> row(std::size_t i) const;
    std::optional<bool> label(std::size_t i) const;
    SampleView sub(std::size_t offset, std::size_t count) const;

private:
    const FunctionalSample* base_ = nullptr;
    std::size_t offset_ = 0;
    std::size_t count_ = 0;
};

// n functions sharing one grid, stored row-major. labels, when present,
// carry the generator's ground-truth outlier flags (diagnostics only).
class FunctionalSample {
public:
    FunctionalSample(std::shared_ptr<const Grid> grid, std::size_t n);
    FunctionalSample(std::shared_ptr<const Grid> grid, std::vector<double> row_major,
                     std::optional<std::vector<std::uint8_t>> labels = std::nullopt);

    std::size_t size() const { return n_; }
    std::size_t t_count() const { return grid_->t_count(); }
    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * t_count(), t_count()};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * t_count(), t_count()};
    }
    GridFunction row_fn(std::size_t i) const;

    const std::vector<double>& data() const { return data_; }
    const std::optional<std::vector<std::uint8_t>>& labels() const { return labels_; }
    void set_labels(std::vector<std::uint8_t> labels);

    SampleView view() const { return SampleView(*this, 0, n_); }
    SampleView view(std::size_t offset, std::size_t count) const {
        return SampleView(*this, offset, count);
    }

private:
    std::shared_ptr<const Grid> grid_;
    std::size_t n_ = 0;
    std::vector<double> data_;
    std::optional<std::vector<std::uint8_t>> labels_;
};

}  // namespace rfm
