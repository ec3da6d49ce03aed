#include "ide/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ide/error.hpp"

namespace ide {

Grid::Grid(double length, int subintervals, QuadratureRule rule)
    : length_(length), n_(subintervals), rule_(rule) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw Error(ErrorCode::InvalidArgument, "grid length must be positive, got " + std::to_string(length));
    }
    if (subintervals < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "grid needs at least one subinterval, got " + std::to_string(subintervals));
    }
    const auto count = static_cast<Eigen::Index>(subintervals) + 1;
    nodes_.resize(count);
    weights_.resize(count);
    const double h = length / subintervals;
    const double left = -0.5 * length;
    for (Eigen::Index i = 0; i < count; ++i) {
        nodes_[i] = left + static_cast<double>(i) * h;
        weights_[i] = h;
    }
    // pin the endpoints so they are exact regardless of rounding in i*h
    nodes_[0] = left;
    nodes_[count - 1] = 0.5 * length;
    weights_[0] = 0.5 * h;
    weights_[count - 1] = 0.5 * h;
}

GridPtr build_grid(double length, int subintervals, QuadratureRule rule) {
    return std::make_shared<const Grid>(length, subintervals, rule);
}

GridFunction::GridFunction(GridPtr grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw Error(ErrorCode::InvalidArgument, "grid function without grid");
    if (static_cast<std::size_t>(values_.size()) != grid_->size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "grid function has " + std::to_string(values_.size()) + " values, grid has " +
                        std::to_string(grid_->size()) + " nodes");
    }
}

GridFunction GridFunction::zeros(GridPtr grid) {
    const auto n = static_cast<Eigen::Index>(grid->size());
    return {std::move(grid), Eigen::VectorXd::Zero(n)};
}

GridFunction GridFunction::constant(GridPtr grid, double value) {
    const auto n = static_cast<Eigen::Index>(grid->size());
    return {std::move(grid), Eigen::VectorXd::Constant(n, value)};
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v(grid->nodes().size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f(grid->nodes()[i]);
    return {std::move(grid), std::move(v)};
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
    require_same_grid(*this, other);
    return {grid_, values_ + other.values_};
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
    require_same_grid(*this, other);
    return {grid_, values_ - other.values_};
}

GridFunction GridFunction::operator*(double s) const { return {grid_, values_ * s}; }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!a.compatible(b)) {
        throw Error(ErrorCode::IncompatibleGrids, "grid functions live on different grids");
    }
}

double integrate(const GridFunction& f) { return f.grid()->weights().dot(f.values()); }

double sup_norm(const GridFunction& f) { return f.values().cwiseAbs().maxCoeff(); }

double sup_distance(const GridFunction& f, const GridFunction& g) {
    require_same_grid(f, g);
    return (f.values() - g.values()).cwiseAbs().maxCoeff();
}

double hausdorff_semidistance(std::span<const GridFunction> a, std::span<const GridFunction> b) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorCode::InvalidArgument, "Hausdorff semidistance of an empty set");
    }
    double worst = 0.0;
    for (const auto& x : a) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& y : b) nearest = std::min(nearest, sup_distance(x, y));
        worst = std::max(worst, nearest);
    }
    return worst;
}

}  // namespace ide
