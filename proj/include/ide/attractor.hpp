#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ide/dynamics.hpp"
#include "ide/error.hpp"
#include "ide/grid.hpp"

namespace ide {

/// ℓ = sup_τ Π_{r=τ}^{τ+T-1} λ_r for a periodic λ sequence.
struct ContractionCertificate {
    int window = 1;
    std::vector<double> lambdas;  // one period
    double ell = 0.0;

    bool valid() const noexcept { return ell < 1.0; }
    double lambda(Time t) const { return lambdas[periodic_index(t, lambdas.size())]; }
    /// Π_{r=from}^{to-1} λ_r (1 for an empty range).
    double product(Time from, Time to) const;
};

ContractionCertificate certify_contraction(std::span<const double> lambdas, int window);

/// Which per-step constants feed certificates and a-priori bounds.
enum class BoundSource {
    ClosedForm,  // kernel bounds from the closed forms (tent falls back to quadrature)
    Numeric,     // row sums of the cached Nyström matrices, i.e. the discrete operator itself
};

/// λ_t over one period of the operator.
std::vector<double> lipschitz_constants(const HammersteinOperator& op, BoundSource source);

/// Bound on ‖H_t(u) - h_t‖ valid for every u: kernel bound times growth_sup_bound.
std::vector<double> image_bounds(const HammersteinOperator& op, BoundSource source);

enum class L2Mode {
    StateDependent,  // l₁ evaluated along φ(s-1, s-T, u₀)
    UpperBound,      // l₁ replaced by the state-free image bound
};

/// l₂ = ‖u₀‖ + sup_s l₁(s-1, φ(s-1, s-T, u₀)) + ‖h‖∞, sup taken over one period.
double compute_l2(const HammersteinOperator& op, const GridFunction& u0, int window,
                  L2Mode mode = L2Mode::StateDependent, BoundSource source = BoundSource::Numeric);

struct ErrorBudget {
    double ell = 0.0;
    double l2 = 0.0;
    double tol = 0.0;
    int window = 1;      // T
    long windows = 0;    // t
    long steps = 0;      // S = T·t

    /// ℓ^t/(1-ℓ)·l₂
    double error_estimate() const;
};

/// Smallest t >= 0 with ℓ^t/(1-ℓ)·d <= tol.
long windows_needed(double ell, double distance, double tol);

ErrorBudget required_iterations(double ell, double l2, double tol, int window);

/// Budget with a prescribed window count t (S = T·t).
ErrorBudget budget_for_windows(double ell, double l2, double tol, int window, long windows);

/**
 * Fibers u*_t of the periodic attractor harvested from one forward sweep
 * started at time -S. states[k] approximates u*_k; states beyond the first
 * period are kept so that closure u*_θ ≈ u*_0 can be inspected.
 */
struct AttractorFibers {
    std::size_t period = 1;
    std::vector<GridFunction> states;
    ErrorBudget budget;
    double pullback_estimate = 0.0;  // ℓ^t/(1-ℓ)·l₂
    double sweep_estimate = 0.0;     // ℓ^t·D₀ for states taken at depth S + k
    double certified_error = 0.0;    // max of the two

    const GridFunction& fiber(Time t) const { return states[periodic_index(t, period)]; }
};

struct PullbackOptions {
    long max_steps = 50'000'000;
    /// Number of consecutive states kept from time 0; 0 means period + 1.
    std::size_t harvest = 0;
    BoundSource source = BoundSource::Numeric;
};

/// D₀ bound on ‖u*_{k-S} - φ(k-S, -S, u₀)‖ for every harvested k, see AttractorFibers.
double sweep_distance_bound(const HammersteinOperator& op, const GridFunction& u0, BoundSource source);

AttractorFibers pullback_fibers(const HammersteinOperator& op, const ContractionCertificate& cert,
                                const ErrorBudget& budget, const GridFunction& u0,
                                const PullbackOptions& options = {});

/// Budget whose window count makes both the pullback and the sweep estimate <= tol.
ErrorBudget plan_budget(const HammersteinOperator& op, const ContractionCertificate& cert, const GridFunction& u0,
                        double tol, L2Mode mode, BoundSource source);

struct DecaySeries {
    Time start = 0;
    std::vector<double> distance;  // d_t for t = start .. start + horizon
    std::vector<double> bound;     // (Π λ_r)·diam₀ + 2·certified_error
};

DecaySeries attraction_rate(const HammersteinOperator& op, const ContractionCertificate& cert,
                            const AttractorFibers& fibers, std::span<const GridFunction> initial, Time tau,
                            int horizon);

// ---------------------------------------------------------------- generic solver

/// F with a contractive iterate F^T on an abstract metric space.
template <class State>
struct IterateContractionProblem {
    std::function<State(const State&)> map;
    std::function<double(const State&, const State&)> distance;
    int order = 1;      // T
    double ell = 0.0;   // contraction factor of F^T
};

template <class State>
struct FixedPointResult {
    State point;
    double error_bound = 0.0;
    long windows = 0;
};

/**
 * Returns F^{tT}(x0) with t minimal such that ℓ^t/(1-ℓ)·d(x0, F^T x0) <= tol.
 * on_window(w, x, bound) is called after each window with the iterate F^{wT}(x0)
 * and the a-priori bound on its distance to the fixed point.
 */
template <class State>
FixedPointResult<State> fixed_point_iterate(
    const IterateContractionProblem<State>& problem, State x0, double tol,
    const std::function<void(long, const State&, double)>& on_window = {}, long max_windows = 10'000'000) {
    if (!(problem.ell < 1.0) || problem.ell < 0.0) {
        throw Error(ErrorCode::NoContraction, "iterate map has contraction factor " + std::to_string(problem.ell));
    }
    if (problem.order < 1) throw Error(ErrorCode::InvalidArgument, "iterate order must be >= 1");
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

    auto iterate = [&](State x) {
        for (int k = 0; k < problem.order; ++k) x = problem.map(x);
        return x;
    };

    State first = iterate(x0);
    const double d0 = problem.distance(x0, first);
    if (!std::isfinite(d0)) throw Error(ErrorCode::DivergentInput, "non-finite distance after the first window");
    if (d0 == 0.0) return {std::move(x0), 0.0, 0};

    const double scale = d0 / (1.0 - problem.ell);
    const long t = windows_needed(problem.ell, d0, tol);
    if (t == 0) return {std::move(x0), scale, 0};
    if (t > max_windows) {
        throw Error(ErrorCode::BudgetExceeded, "fixed point needs " + std::to_string(t) + " windows");
    }
    State x = std::move(first);
    for (long w = 1;; ++w) {
        if (on_window) on_window(w, x, std::pow(problem.ell, static_cast<double>(w)) * scale);
        if (w >= t) break;
        x = iterate(std::move(x));
    }
    return {std::move(x), std::pow(problem.ell, static_cast<double>(t)) * scale, t};
}

}  // namespace ide
