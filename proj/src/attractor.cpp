#include "ide/attractor.hpp"

#include <algorithm>
#include <cmath>

namespace ide {

double ContractionCertificate::product(Time from, Time to) const {
    double p = 1.0;
    for (Time r = from; r < to; ++r) p *= lambda(r);
    return p;
}

ContractionCertificate certify_contraction(std::span<const double> lambdas, int window) {
    if (lambdas.empty()) throw Error(ErrorCode::InvalidArgument, "no Lipschitz constants to certify");
    if (window < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
    for (double l : lambdas) {
        if (!(l >= 0.0)) throw Error(ErrorCode::InvalidArgument, "Lipschitz constants must be nonnegative");
    }
    ContractionCertificate cert{window, {lambdas.begin(), lambdas.end()}, 0.0};
    // every window start is covered by one period of starts
    for (std::size_t tau = 0; tau < lambdas.size(); ++tau) {
        const auto start = static_cast<Time>(tau);
        cert.ell = std::max(cert.ell, cert.product(start, start + window));
    }
    return cert;
}

std::vector<double> lipschitz_constants(const HammersteinOperator& op, BoundSource source) {
    std::vector<double> out(op.period());
    for (std::size_t r = 0; r < out.size(); ++r) {
        const auto t = static_cast<Time>(r);
        out[r] = source == BoundSource::Numeric
                     ? op.lipschitz_numeric(t)
                     : growth_lipschitz(op.growth(), t) * kernel_bound_or_numeric(op.kernel(), t, *op.grid()).value;
    }
    return out;
}

std::vector<double> image_bounds(const HammersteinOperator& op, BoundSource source) {
    std::vector<double> out(op.period());
    for (std::size_t r = 0; r < out.size(); ++r) {
        const auto t = static_cast<Time>(r);
        out[r] = source == BoundSource::Numeric
                     ? op.image_bound(t)
                     : growth_sup_bound(op.growth(), t) * kernel_bound_or_numeric(op.kernel(), t, *op.grid()).value;
    }
    return out;
}

double compute_l2(const HammersteinOperator& op, const GridFunction& u0, int window, L2Mode mode,
                  BoundSource source) {
    if (window < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
    double worst_l1 = 0.0;
    if (mode == L2Mode::UpperBound) {
        const auto img = image_bounds(op, source);
        worst_l1 = *std::max_element(img.begin(), img.end());
    } else {
        const auto p = static_cast<Time>(op.period());
        for (Time s = 0; s < p; ++s) {
            const GridFunction state = general_solution(op, s - 1, s - window, u0);
            double l1 = op.l1(s - 1, state);
            if (source == BoundSource::ClosedForm) {
                l1 *= kernel_bound_or_numeric(op.kernel(), s - 1, *op.grid()).value / op.kernel_row_bound(s - 1);
            }
            worst_l1 = std::max(worst_l1, l1);
        }
    }
    return sup_norm(u0) + worst_l1 + op.forcing_sup();
}

double ErrorBudget::error_estimate() const {
    return std::pow(ell, static_cast<double>(windows)) / (1.0 - ell) * l2;
}

long windows_needed(double ell, double distance, double tol) {
    if (!(ell < 1.0) || ell < 0.0) {
        throw Error(ErrorCode::NoContraction, "contraction factor " + std::to_string(ell) + " is not below 1");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (!(distance >= 0.0) || !std::isfinite(distance)) {
        throw Error(ErrorCode::DivergentInput, "distance bound is not a finite nonnegative number");
    }
    const double scale = distance / (1.0 - ell);
    if (scale <= tol) return 0;
    if (ell == 0.0) return 1;
    auto fits = [&](long t) { return std::pow(ell, static_cast<double>(t)) * scale <= tol; };
    long t = std::max(0L, static_cast<long>(std::ceil(std::log(tol / scale) / std::log(ell))));
    while (!fits(t)) ++t;
    while (t > 0 && fits(t - 1)) --t;
    return t;
}

ErrorBudget required_iterations(double ell, double l2, double tol, int window) {
    if (window < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
    return budget_for_windows(ell, l2, tol, window, windows_needed(ell, l2, tol));
}

ErrorBudget budget_for_windows(double ell, double l2, double tol, int window, long windows) {
    if (!(ell < 1.0)) throw Error(ErrorCode::NoContraction, "contraction factor is not below 1");
    return {ell, l2, tol, window, windows, windows * window};
}

double sweep_distance_bound(const HammersteinOperator& op, const GridFunction& u0, BoundSource source) {
    const auto img = image_bounds(op, source);
    const double image = *std::max_element(img.begin(), img.end());
    const double radius = image + op.forcing_sup();  // every image state, u* included
    // first state: u* against u₀; later states share h_t, so only the integral terms differ
    return std::max(sup_norm(u0) + radius, 2.0 * image);
}

AttractorFibers pullback_fibers(const HammersteinOperator& op, const ContractionCertificate& cert,
                                const ErrorBudget& budget, const GridFunction& u0, const PullbackOptions& options) {
    if (!cert.valid()) {
        throw Error(ErrorCode::NoContraction, "certificate has ell = " + std::to_string(cert.ell));
    }
    const std::size_t harvest = options.harvest == 0 ? op.period() + 1 : options.harvest;
    if (budget.steps > options.max_steps) {
        throw Error(ErrorCode::BudgetExceeded, "pullback needs " + std::to_string(budget.steps) +
                                                   " steps, limit is " + std::to_string(options.max_steps));
    }

    AttractorFibers out;
    out.period = op.period();
    out.budget = budget;
    out.states.reserve(harvest);

    GridFunction u = u0;
    for (Time s = -budget.steps; s < 0; ++s) u = op.apply(s, u);
    out.states.push_back(u);
    for (std::size_t k = 1; k < harvest; ++k) {
        u = op.apply(static_cast<Time>(k) - 1, u);
        out.states.push_back(u);
    }

    const double contraction = std::pow(cert.ell, static_cast<double>(budget.windows));
    out.pullback_estimate = contraction / (1.0 - cert.ell) * budget.l2;
    out.sweep_estimate = contraction * sweep_distance_bound(op, u0, options.source);
    out.certified_error = std::max(out.pullback_estimate, out.sweep_estimate);
    return out;
}

ErrorBudget plan_budget(const HammersteinOperator& op, const ContractionCertificate& cert, const GridFunction& u0,
                        double tol, L2Mode mode, BoundSource source) {
    if (!cert.valid()) {
        throw Error(ErrorCode::NoContraction, "certificate has ell = " + std::to_string(cert.ell));
    }
    const double l2 = compute_l2(op, u0, cert.window, mode, source);
    const double d0 = sweep_distance_bound(op, u0, source);
    const long t = std::max(windows_needed(cert.ell, l2, tol), windows_needed(cert.ell, d0 * (1.0 - cert.ell), tol));
    return budget_for_windows(cert.ell, l2, tol, cert.window, t);
}

DecaySeries attraction_rate(const HammersteinOperator& op, const ContractionCertificate& cert,
                            const AttractorFibers& fibers, std::span<const GridFunction> initial, Time tau,
                            int horizon) {
    if (initial.empty()) throw Error(ErrorCode::InvalidArgument, "attraction rate of an empty set");
    if (horizon < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");

    const double eps = fibers.certified_error;
    double diam = 0.0;
    for (const auto& b : initial) diam = std::max(diam, sup_distance(b, fibers.fiber(tau)));

    DecaySeries out;
    out.start = tau;
    std::vector<GridFunction> states(initial.begin(), initial.end());
    double product = 1.0;
    for (Time t = tau; t <= tau + horizon; ++t) {
        if (t > tau) {
            for (auto& s : states) s = op.apply(t - 1, s);
            product *= cert.lambda(t - 1);
        }
        const GridFunction& target = fibers.fiber(t);
        out.distance.push_back(hausdorff_semidistance(states, std::span<const GridFunction>(&target, 1)));
        out.bound.push_back(product * (diam + eps) + 2.0 * eps);
    }
    return out;
}

}  // namespace ide
