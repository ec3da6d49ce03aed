#include "ide/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ide/error.hpp"

namespace ide::semilinear {

Nonlinearity zero_nonlinearity(int dim) {
    return {"zero", [dim](const Vector&) { return Vector::Zero(dim); }, 0.0, true};
}

Nonlinearity constant_nonlinearity(Vector value) {
    return {"constant", [value = std::move(value)](const Vector&) { return value; }, 0.0, true};
}

Nonlinearity sigmoid_nonlinearity(double scale, double gain) {
    return {"bounded-sigmoid",
            [scale, gain](const Vector& u) { return Vector(scale * (gain * u.array()).tanh()); },
            std::abs(scale * gain), true};
}

double sample_lipschitz(const Nonlinearity& k, int dim, int pairs, std::uint64_t seed, double radius) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-radius, radius);
    double worst = 0.0;
    Vector u(dim), v(dim);
    for (int p = 0; p < pairs; ++p) {
        for (int i = 0; i < dim; ++i) {
            u[i] = coord(rng);
            v[i] = coord(rng);
        }
        const double d = max_norm(u - v);
        if (d > 0.0) worst = std::max(worst, max_norm(k.eval(u) - k.eval(v)) / d);
    }
    return worst;
}

SemilinearSystem::SemilinearSystem(std::vector<Matrix> linear, std::vector<Nonlinearity> nonlinear, double gamma,
                                   std::vector<double> alphas)
    : linear_(std::move(linear)), nonlinear_(std::move(nonlinear)), gamma_(gamma), alphas_(std::move(alphas)) {
    if (linear_.empty() || nonlinear_.empty() || alphas_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "semilinear system needs matrices, nonlinearities and alphas");
    }
    dim_ = static_cast<int>(linear_.front().rows());
    for (const auto& m : linear_) {
        if (m.rows() != dim_ || m.cols() != dim_) {
            throw Error(ErrorCode::InvalidArgument, "all L_t must be square of the same dimension");
        }
    }
    for (const auto& k : nonlinear_) {
        if (!k.eval || !(k.kappa >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "nonlinearity '" + k.name + "' needs a map and kappa >= 0");
        }
    }
    if (!(gamma_ >= 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be >= 1");
    for (double a : alphas_) {
        if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha_t must be positive");
    }
    period_ = std::lcm(std::lcm(linear_.size(), nonlinear_.size()), alphas_.size());
}

SemilinearSystem SemilinearSystem::with_estimated_constants(std::vector<Matrix> linear,
                                                            std::vector<Nonlinearity> nonlinear) {
    std::vector<double> alphas;
    alphas.reserve(linear.size());
    for (const auto& m : linear) alphas.push_back(std::max(operator_norm(m), 1e-300));
    SemilinearSystem sys(std::move(linear), std::move(nonlinear), 1.0, std::move(alphas));
    // α_r = ‖L_r‖ already gives γ = 1 by submultiplicativity; sampling only confirms it
    sys.gamma_ = std::max(1.0, transition_bound_ratio(sys, 2 * static_cast<int>(sys.period())));
    sys.estimated_ = true;
    return sys;
}

double SemilinearSystem::contraction_product() const {
    double p = 1.0;
    for (std::size_t r = 0; r < period_; ++r) {
        const auto t = static_cast<Time>(r);
        p *= alpha(t) + gamma_ * kappa(t);
    }
    return p;
}

Matrix transition(const SemilinearSystem& sys, Time t, Time tau) {
    if (t < tau) throw Error(ErrorCode::InvalidTimeOrder, "transition operator needs tau <= t");
    Matrix phi = Matrix::Identity(sys.dim(), sys.dim());
    for (Time s = tau; s < t; ++s) phi = sys.linear(s) * phi;
    return phi;
}

Vector iterate(const SemilinearSystem& sys, Time t, Time tau, Vector u) {
    if (t < tau) throw Error(ErrorCode::InvalidTimeOrder, "general solution needs tau <= t");
    for (Time s = tau; s < t; ++s) u = sys.step(s, u);
    return u;
}

Vector voc_solution(const SemilinearSystem& sys, Time t, Time tau, const Vector& u) {
    if (t < tau) throw Error(ErrorCode::InvalidTimeOrder, "variation of constants needs tau <= t");
    std::vector<Vector> states;
    states.reserve(static_cast<std::size_t>(t - tau));
    Vector x = u;
    for (Time s = tau; s < t; ++s) {
        states.push_back(x);
        x = sys.step(s, x);
    }
    // accumulate Φ(t, s+1) from the right end backwards
    Matrix phi = Matrix::Identity(sys.dim(), sys.dim());
    Vector sum = Vector::Zero(sys.dim());
    for (Time s = t - 1; s >= tau; --s) {
        sum += phi * sys.nonlinear(s).eval(states[static_cast<std::size_t>(s - tau)]);
        phi = phi * sys.linear(s);
    }
    return phi * u + sum;
}

double gronwall_bound(const SemilinearSystem& sys, Time t, Time tau, double delta0) {
    if (t < tau) throw Error(ErrorCode::InvalidTimeOrder, "Gronwall bound needs tau <= t");
    double p = sys.gamma() * delta0;
    for (Time r = tau; r < t; ++r) p *= sys.alpha(r) + sys.gamma() * sys.kappa(r);
    return p;
}

double transition_bound_ratio(const SemilinearSystem& sys, int span) {
    double worst = 0.0;
    for (std::size_t start = 0; start < sys.period(); ++start) {
        const auto tau = static_cast<Time>(start);
        Matrix phi = Matrix::Identity(sys.dim(), sys.dim());
        double alphas = 1.0;
        for (int len = 0; len <= span; ++len) {
            worst = std::max(worst, operator_norm(phi) / (sys.gamma() * alphas));
            phi = sys.linear(tau + len) * phi;
            alphas *= sys.alpha(tau + len);
        }
    }
    return worst;
}

PeriodicFibers pullback_limit(const SemilinearSystem& sys, Time t, double tol, const Vector& u0, int max_periods) {
    const double rho = sys.contraction_product();
    if (!(rho < 1.0)) {
        throw Error(ErrorCode::NoContraction,
                    "periodic contraction product is " + std::to_string(rho) + ", needs < 1");
    }
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    const auto theta = static_cast<Time>(sys.period());

    auto fibers_at_depth = [&](int m) {
        std::vector<Vector> out;
        out.reserve(sys.period());
        Vector x = iterate(sys, t, t - m * theta, u0);
        out.push_back(x);
        for (Time k = 1; k < theta; ++k) {
            x = sys.step(t + k - 1, x);
            out.push_back(x);
        }
        return out;
    };

    PeriodicFibers result{t, fibers_at_depth(1), 1, 0.0};
    for (int m = 2; m <= max_periods; ++m) {
        auto next = fibers_at_depth(m);
        double change = 0.0;
        for (std::size_t k = 0; k < next.size(); ++k) change = std::max(change, max_norm(next[k] - result.fibers[k]));
        result = {t, std::move(next), m, change};
        if (change <= tol) return result;
    }
    throw Error(ErrorCode::BudgetExceeded,
                "pullback limit did not settle within " + std::to_string(max_periods) + " periods");
}

}  // namespace ide::semilinear
