#include "ide/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace ide {

HammersteinOperator::HammersteinOperator(KernelSpec kernel, GrowthSpec growth, InhomogeneitySpec forcing,
                                         GridPtr grid, std::size_t cache_budget_bytes)
    : kernel_(std::move(kernel)), growth_(std::move(growth)), forcing_(std::move(forcing)), grid_(std::move(grid)) {
    if (!grid_) throw Error(ErrorCode::InvalidArgument, "operator without grid");
    if (forcing_.theta < 1 || forcing_.amplitudes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "forcing needs theta >= 1 and at least one season");
    }
    for (double a : kernel_.a.values()) {
        if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel parameter a_t must be positive");
    }
    period_ = std::lcm(std::lcm(kernel_.a.period(), growth_.alpha.period()),
                       static_cast<std::size_t>(forcing_.theta));

    const std::size_t classes = kernel_.a.period();
    const std::size_t n = grid_->size();
    const std::size_t bytes = classes * n * n * sizeof(double);
    if (bytes > cache_budget_bytes) {
        cache_warning_ = "kernel cache needs " + std::to_string(bytes >> 20) + " MiB, above the configured budget of " +
                         std::to_string(cache_budget_bytes >> 20) + " MiB";
    }

    const auto& x = grid_->nodes();
    const auto& w = grid_->weights();
    const auto size = static_cast<Eigen::Index>(n);
    matrices_.reserve(classes);
    row_bounds_.reserve(classes);
    for (std::size_t c = 0; c < classes; ++c) {
        const auto t = static_cast<Time>(c);
        Eigen::MatrixXd m(size, size);
        for (Eigen::Index j = 0; j < size; ++j) {
            for (Eigen::Index i = 0; i < size; ++i) m(i, j) = w[j] * kernel_eval(kernel_, t, x[i], x[j]);
        }
        row_bounds_.push_back(m.cwiseAbs().rowwise().sum().maxCoeff());
        matrices_.push_back(std::move(m));
    }

    profile_nodes_.resize(size);
    forcing_shape_.resize(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        profile_nodes_[i] = growth_.profile.eval(x[i]);
        forcing_shape_[i] = std::cos(std::numbers::pi * x[i] / grid_->length());
    }
}

Eigen::VectorXd HammersteinOperator::growth_at_nodes(Time t, const Eigen::VectorXd& u) const {
    const double alpha = growth_.alpha(t);
    Eigen::VectorXd g(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) g[j] = growth_value(growth_.family, alpha * profile_nodes_[j], u[j]);
    return g;
}

GridFunction HammersteinOperator::apply(Time t, const GridFunction& u) const {
    if (!u.grid()->same_as(*grid_)) {
        throw Error(ErrorCode::IncompatibleGrids, "state does not live on the operator grid");
    }
    Eigen::VectorXd v = forcing_.amplitude(t) * forcing_shape_;
    v.noalias() += kernel_matrix(t) * growth_at_nodes(t, u.values());
    return {grid_, std::move(v)};
}

GridFunction HammersteinOperator::forcing(Time t) const {
    return {grid_, forcing_.amplitude(t) * forcing_shape_};
}

double HammersteinOperator::forcing_sup() const {
    return forcing_.max_amplitude() * forcing_shape_.cwiseAbs().maxCoeff();
}

double HammersteinOperator::lipschitz(Time t) const {
    return hammerstein_lipschitz(kernel_, growth_, t, grid_->length());
}

double HammersteinOperator::lipschitz_numeric(Time t) const {
    return growth_lipschitz(growth_, t) * kernel_row_bound(t);
}

double HammersteinOperator::image_bound(Time t) const {
    return growth_sup_bound(growth_, t) * kernel_row_bound(t);
}

double HammersteinOperator::l1(Time t, const GridFunction& u) const {
    return kernel_row_bound(t) * growth_at_nodes(t, u.values()).cwiseAbs().maxCoeff();
}

std::size_t HammersteinOperator::cache_bytes() const noexcept {
    const std::size_t n = grid_->size();
    return matrices_.size() * n * n * sizeof(double);
}

PointwiseOperator::PointwiseOperator(PeriodicSchedule alpha, Profile profile, GridPtr grid)
    : alpha_(std::move(alpha)), profile_(std::move(profile)), grid_(std::move(grid)) {
    profile_nodes_ = grid_->nodes().unaryExpr([this](double x) { return profile_.eval(x); });
}

GridFunction PointwiseOperator::apply(Time t, const GridFunction& u) const {
    if (!u.grid()->same_as(*grid_)) {
        throw Error(ErrorCode::IncompatibleGrids, "state does not live on the operator grid");
    }
    const double alpha = alpha_(t);
    Eigen::VectorXd v(u.values().size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double z = u.values()[i];
        v[i] = alpha * profile_nodes_[i] * z / (1.0 + std::abs(z));
    }
    return {grid_, std::move(v)};
}

}  // namespace ide
