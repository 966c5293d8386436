#include "rfm/grid.hpp"

#include <cmath>

namespace rfm {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    const std::size_t t = points_.size();
    if (t == 0) throw ContractError("grid needs at least one point");
    for (double p : points_) {
        if (!std::isfinite(p)) throw ContractError("grid points must be finite");
    }
    if (t == 1) {
        spacing_ = 0.0;
        return;
    }
    spacing_ = points_[1] - points_[0];
    for (std::size_t j = 1; j < t; ++j) {
        const double step = points_[j] - points_[j - 1];
        if (!(step > 0.0)) throw ContractError("grid points must be strictly increasing");
        if (std::abs(step - spacing_) > 1e-12 * std::max(1.0, std::abs(spacing_)))
            throw ContractError("grid spacing must be constant");
    }
}

std::shared_ptr<const Grid> Grid::uniform(std::size_t t_count) {
    if (t_count == 0) throw ContractError("grid needs at least one point");
    std::vector<double> pts(t_count);
    if (t_count == 1) {
        pts[0] = 0.0;
    } else {
        const double h = 1.0 / static_cast<double>(t_count - 1);
        for (std::size_t j = 0; j < t_count; ++j) pts[j] = static_cast<double>(j) * h;
        pts[t_count - 1] = 1.0;
    }
    return std::make_shared<const Grid>(std::move(pts));
}

bool same_grid(const Grid& a, const Grid& b) {
    if (&a == &b) return true;
    if (a.t_count() != b.t_count()) return false;
    for (std::size_t j = 0; j < a.t_count(); ++j) {
        if (std::abs(a.point(j) - b.point(j)) > 1e-12) return false;
    }
    return true;
}

void require_same_grid(const Grid& a, const Grid& b) {
    if (!same_grid(a, b)) throw GridMismatchError("operands live on different grids");
}

GridFunction make_grid_function(std::shared_ptr<const Grid> grid, std::vector<double> values) {
    if (!grid) throw ContractError("grid function needs a grid");
    if (values.size() != grid->t_count())
        throw ContractError("grid function length must equal grid size");
    for (double v : values) {
        if (!std::isfinite(v)) throw ContractError("grid function values must be finite");
    }
    return GridFunction{std::move(grid), std::move(values)};
}

double inner(const GridFunction& f, const GridFunction& g) {
    if (!f.grid || !g.grid) throw ContractError("grid function needs a grid");
    require_same_grid(*f.grid, *g.grid);
    return detail::dot_mean(f.values.data(), g.values.data(), f.values.size());
}

double norm(const GridFunction& f) { return std::sqrt(inner(f, f)); }

SampleView::SampleView(const FunctionalSample& base, std::size_t offset, std::size_t count)
    : base_(&base), offset_(offset), count_(count) {
    if (offset + count > base.size()) throw ContractError("sample view out of range");
}

std::size_t SampleView::t_count() const { return base_->t_count(); }
const Grid& SampleView::grid() const { return base_->grid(); }
std::shared_ptr<const Grid> SampleView::grid_ptr() const { return base_->grid_ptr(); }

std::span<const double> SampleView::row(std::size_t i) const {
    return base_->row(offset_ + i);
}

std::optional<bool> SampleView::label(std::size_t i) const {
    if (!base_->labels()) return std::nullopt;
    return (*base_->labels())[offset_ + i] != 0;
}

SampleView SampleView::sub(std::size_t offset, std::size_t count) const {
    if (offset + count > count_) throw ContractError("sub-view out of range");
    return SampleView(*base_, offset_ + offset, count);
}

FunctionalSample::FunctionalSample(std::shared_ptr<const Grid> grid, std::size_t n)
    : grid_(std::move(grid)), n_(n) {
    if (!grid_) throw ContractError("sample needs a grid");
    data_.assign(n_ * grid_->t_count(), 0.0);
}

FunctionalSample::FunctionalSample(std::shared_ptr<const Grid> grid, std::vector<double> row_major,
                                   std::optional<std::vector<std::uint8_t>> labels)
    : grid_(std::move(grid)), data_(std::move(row_major)), labels_(std::move(labels)) {
    if (!grid_) throw ContractError("sample needs a grid");
    const std::size_t t = grid_->t_count();
    if (data_.size() % t != 0) throw ContractError("sample data size must be a multiple of T");
    n_ = data_.size() / t;
    for (double v : data_) {
        if (!std::isfinite(v)) throw ContractError("sample values must be finite");
    }
    if (labels_ && labels_->size() != n_)
        throw ContractError("labels must have one entry per row");
}

GridFunction FunctionalSample::row_fn(std::size_t i) const {
    auto r = row(i);
    return GridFunction{grid_, std::vector<double>(r.begin(), r.end())};
}

void FunctionalSample::set_labels(std::vector<std::uint8_t> labels) {
    if (labels.size() != n_) throw ContractError("labels must have one entry per row");
    labels_ = std::move(labels);
}

}  // namespace rfm
