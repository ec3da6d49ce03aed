#pragma once

#include <concepts>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ide/error.hpp"
#include "ide/grid.hpp"
#include "ide/model.hpp"

namespace ide {

/// Default cap on cached kernel matrices before a warning is recorded (8 GiB).
inline constexpr std::size_t kDefaultKernelCacheBudget = std::size_t{8} << 30;

/**
 * Nyström discretisation of the periodic Hammerstein operator
 *
 *     H_t(u)(η_i) = Σ_j ω_j k_t(η_i, η_j) g_t(η_j, u(η_j)) + h_t(η_i).
 *
 * Weighted kernel matrices are built eagerly, one per distinct kernel time
 * class, and reused for every step. The operator is immutable afterwards, so
 * apply() is safe to call concurrently.
 */
class HammersteinOperator {
public:
    HammersteinOperator(KernelSpec kernel, GrowthSpec growth, InhomogeneitySpec forcing, GridPtr grid,
                        std::size_t cache_budget_bytes = kDefaultKernelCacheBudget);

    GridFunction apply(Time t, const GridFunction& u) const;

    /// Common period of the kernel, growth and forcing schedules.
    std::size_t period() const noexcept { return period_; }

    const GridPtr& grid() const noexcept { return grid_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    const GrowthSpec& growth() const noexcept { return growth_; }
    const InhomogeneitySpec& forcing_spec() const noexcept { return forcing_; }

    const Eigen::MatrixXd& kernel_matrix(Time t) const { return matrices_[periodic_index(t, matrices_.size())]; }
    GridFunction forcing(Time t) const;
    /// sup over t and nodes of |h_t|.
    double forcing_sup() const;

    /// max_i Σ_j ω_j |k_t(η_i, η_j)| of the cached matrix.
    double kernel_row_bound(Time t) const { return row_bounds_[periodic_index(t, row_bounds_.size())]; }
    /// Closed-form λ_t (throws for an out-of-range tent formula).
    double lipschitz(Time t) const;
    /// Lipschitz bound of the discrete operator: growth Lipschitz times the cached row bound.
    double lipschitz_numeric(Time t) const;
    /// Bound on sup_x |g_t(x, z)| over all z, paired with the discrete row bound.
    double image_bound(Time t) const;
    /// l₁(t, u) = row bound · max_i |g_t(η_i, u(η_i))|.
    double l1(Time t, const GridFunction& u) const;

    std::size_t cache_bytes() const noexcept;
    /// Non-empty when the kernel cache exceeds the configured budget.
    const std::string& cache_warning() const noexcept { return cache_warning_; }

private:
    Eigen::VectorXd growth_at_nodes(Time t, const Eigen::VectorXd& u) const;

    KernelSpec kernel_;
    GrowthSpec growth_;
    InhomogeneitySpec forcing_;
    GridPtr grid_;
    std::size_t period_;
    std::vector<Eigen::MatrixXd> matrices_;
    std::vector<double> row_bounds_;
    Eigen::VectorXd profile_nodes_;
    Eigen::VectorXd forcing_shape_;
    std::string cache_warning_;
};

/// Pointwise Beverton-Holt map u -> b_t(x)u(x)/(1+|u(x)|) (no dispersal, no forcing).
class PointwiseOperator {
public:
    PointwiseOperator(PeriodicSchedule alpha, Profile profile, GridPtr grid);

    GridFunction apply(Time t, const GridFunction& u) const;
    std::size_t period() const noexcept { return alpha_.period(); }
    const GridPtr& grid() const noexcept { return grid_; }
    /// sup_x b_t(x)
    double lipschitz(Time t) const { return alpha_(t) * profile_.sup; }

private:
    PeriodicSchedule alpha_;
    Profile profile_;
    GridPtr grid_;
    Eigen::VectorXd profile_nodes_;
};

inline GridFunction apply_pointwise(const PointwiseOperator& op, Time t, const GridFunction& u) {
    return op.apply(t, u);
}

template <class Op>
concept DifferenceEquation = requires(const Op& op, Time t, const GridFunction& u) {
    { op.apply(t, u) } -> std::convertible_to<GridFunction>;
    { op.period() } -> std::convertible_to<std::size_t>;
};

/// φ(t, τ, u) = H_{t-1} ∘ ... ∘ H_τ (u), evaluated one step at a time.
template <DifferenceEquation Op>
GridFunction general_solution(const Op& op, Time t, Time tau, GridFunction u) {
    if (t < tau) {
        throw Error(ErrorCode::InvalidTimeOrder,
                    "general solution needs tau <= t (tau=" + std::to_string(tau) + ", t=" + std::to_string(t) + ")");
    }
    for (Time s = tau; s < t; ++s) u = op.apply(s, u);
    return u;
}

struct TrajectorySegment {
    Time start = 0;
    std::vector<GridFunction> states;  // states[k] is the state at time start + k

    Time end() const { return start + static_cast<Time>(states.size()) - 1; }
};

template <DifferenceEquation Op>
TrajectorySegment trajectory(const Op& op, Time tau, Time steps, const GridFunction& u0) {
    if (steps < 0) throw Error(ErrorCode::InvalidArgument, "trajectory needs steps >= 0");
    TrajectorySegment seg{tau, {}};
    seg.states.reserve(static_cast<std::size_t>(steps) + 1);
    seg.states.push_back(u0);
    for (Time k = 0; k < steps; ++k) seg.states.push_back(op.apply(tau + k, seg.states.back()));
    return seg;
}

/// True when every consecutive pair satisfies u_{s+1} = H_s(u_s) bit-for-bit.
template <DifferenceEquation Op>
bool replay_matches(const Op& op, const TrajectorySegment& seg) {
    for (std::size_t k = 0; k + 1 < seg.states.size(); ++k) {
        if (!(op.apply(seg.start + static_cast<Time>(k), seg.states[k]) == seg.states[k + 1])) return false;
    }
    return true;
}

}  // namespace ide
