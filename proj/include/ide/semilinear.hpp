#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ide/grid.hpp"

namespace ide::semilinear {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// ‖v‖∞
inline double max_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
/// Operator norm induced by ‖·‖∞ (largest absolute row sum).
inline double operator_norm(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

struct Nonlinearity {
    std::string name;
    std::function<Vector(const Vector&)> eval;
    double kappa = 0.0;     // Lipschitz constant w.r.t. ‖·‖∞
    bool declared = true;   // false when kappa was sampled rather than known
};

Nonlinearity zero_nonlinearity(int dim);
Nonlinearity constant_nonlinearity(Vector value);
/// K(u)_i = scale·tanh(gain·u_i), κ = |scale·gain|.
Nonlinearity sigmoid_nonlinearity(double scale, double gain);

/// Largest difference quotient ‖K(u)-K(v)‖/‖u-v‖ over random pairs in [-radius, radius]^dim.
double sample_lipschitz(const Nonlinearity& k, int dim, int pairs = 10'000, std::uint64_t seed = 7,
                        double radius = 10.0);

/**
 * u_{t+1} = L_t u_t + K_t(u_t) with periodic L_t, K_t and the constants
 * γ >= 1, α_t of the bound ‖Φ(t,τ)‖ <= γ Π α_r.
 */
class SemilinearSystem {
public:
    SemilinearSystem(std::vector<Matrix> linear, std::vector<Nonlinearity> nonlinear, double gamma,
                     std::vector<double> alphas);

    /// α_r := ‖L_r‖ and γ := max sampled ‖Φ(t,τ)‖ / Π α_r (at least 1); flagged as estimated.
    static SemilinearSystem with_estimated_constants(std::vector<Matrix> linear, std::vector<Nonlinearity> nonlinear);

    int dim() const noexcept { return dim_; }
    std::size_t period() const noexcept { return period_; }
    const Matrix& linear(Time t) const { return linear_[periodic_index(t, linear_.size())]; }
    const Nonlinearity& nonlinear(Time t) const { return nonlinear_[periodic_index(t, nonlinear_.size())]; }
    double alpha(Time t) const { return alphas_[periodic_index(t, alphas_.size())]; }
    double kappa(Time t) const { return nonlinear(t).kappa; }
    double gamma() const noexcept { return gamma_; }
    bool constants_estimated() const noexcept { return estimated_; }

    Vector step(Time t, const Vector& u) const { return linear(t) * u + nonlinear(t).eval(u); }

    /// Π_{r=0}^{θ-1} (α_r + γκ_r); below 1 means the periodic system contracts.
    double contraction_product() const;

private:
    int dim_;
    std::size_t period_;
    std::vector<Matrix> linear_;
    std::vector<Nonlinearity> nonlinear_;
    double gamma_;
    std::vector<double> alphas_;
    bool estimated_ = false;
};

/// Φ(t,τ) = L_{t-1}···L_τ, identity for t = τ.
Matrix transition(const SemilinearSystem& sys, Time t, Time tau);

/// φ(t,τ,u) by direct stepping.
Vector iterate(const SemilinearSystem& sys, Time t, Time tau, Vector u);

/// Φ(t,τ)u + Σ_{s=τ}^{t-1} Φ(t,s+1) K_s(φ(s,τ,u)).
Vector voc_solution(const SemilinearSystem& sys, Time t, Time tau, const Vector& u);

/// γ·δ₀·Π_{r=τ}^{t-1}(α_r + γκ_r)
double gronwall_bound(const SemilinearSystem& sys, Time t, Time tau, double delta0);

/// Largest ‖Φ(t,τ)‖ / (γ Π α_r) over τ in one period and t - τ up to `span` steps.
double transition_bound_ratio(const SemilinearSystem& sys, int span);

struct PeriodicFibers {
    Time start = 0;              // fibers[k] approximates u*_{start+k}
    std::vector<Vector> fibers;  // one period
    int periods = 0;             // pullback depth m used, in periods
    double last_change = 0.0;    // max fiber change between depth m-1 and m

    const Vector& fiber(Time t) const { return fibers[periodic_index(t - start, fibers.size())]; }
};

/// Fibers φ(t+k, t-mθ, u₀), k < θ, for increasing m until successive depths agree within tol.
PeriodicFibers pullback_limit(const SemilinearSystem& sys, Time t, double tol, const Vector& u0,
                              int max_periods = 100'000);

}  // namespace ide::semilinear
