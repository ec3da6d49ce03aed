#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ide {

using Time = std::int64_t;

/// Index of time t inside a schedule of the given period (always in [0, period)).
inline std::size_t periodic_index(Time t, std::size_t period) {
    const auto p = static_cast<Time>(period);
    const Time r = t % p;
    return static_cast<std::size_t>(r < 0 ? r + p : r);
}

enum class QuadratureRule { Trapezoid };

/**
 * Quadrature grid on the habitat [-L/2, L/2].
 *
 * Nodes are strictly increasing with the endpoints included, and the weights
 * integrate constants exactly. Instances are immutable; share them through
 * GridPtr so that grid functions can cheaply reference their grid.
 */
class Grid {
public:
    Grid(double length, int subintervals, QuadratureRule rule);

    double length() const noexcept { return length_; }
    int subintervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    QuadratureRule rule() const noexcept { return rule_; }
    double step() const noexcept { return length_ / n_; }

    const Eigen::VectorXd& nodes() const noexcept { return nodes_; }
    const Eigen::VectorXd& weights() const noexcept { return weights_; }
    double node(std::size_t i) const { return nodes_[static_cast<Eigen::Index>(i)]; }
    double weight(std::size_t i) const { return weights_[static_cast<Eigen::Index>(i)]; }

    bool same_as(const Grid& other) const noexcept {
        return this == &other ||
               (length_ == other.length_ && n_ == other.n_ && rule_ == other.rule_);
    }

private:
    double length_;
    int n_;
    QuadratureRule rule_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(double length, int subintervals, QuadratureRule rule = QuadratureRule::Trapezoid);

/// Node values of a continuous function on a grid.
class GridFunction {
public:
    GridFunction(GridPtr grid, Eigen::VectorXd values);

    static GridFunction zeros(GridPtr grid);
    static GridFunction constant(GridPtr grid, double value);
    static GridFunction sample(GridPtr grid, const std::function<double(double)>& f);

    const GridPtr& grid() const noexcept { return grid_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }
    Eigen::VectorXd& values() noexcept { return values_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    bool compatible(const GridFunction& other) const noexcept {
        return grid_->same_as(*other.grid_);
    }

    GridFunction operator+(const GridFunction& other) const;
    GridFunction operator-(const GridFunction& other) const;
    GridFunction operator*(double s) const;

    friend bool operator==(const GridFunction& a, const GridFunction& b) {
        return a.compatible(b) && a.values_ == b.values_;
    }

private:
    GridPtr grid_;
    Eigen::VectorXd values_;
};

/// Throws IncompatibleGrids unless both functions live on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b);

double integrate(const GridFunction& f);

/// Quadrature approximation of the total population over the habitat.
inline double total_population(const GridFunction& u) { return integrate(u); }

double sup_norm(const GridFunction& f);
double sup_distance(const GridFunction& f, const GridFunction& g);

/// max over a in A of min over b in B of sup_distance(a, b).
double hausdorff_semidistance(std::span<const GridFunction> a, std::span<const GridFunction> b);

}  // namespace ide
