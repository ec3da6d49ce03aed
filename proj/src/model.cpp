#include "ide/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ide/error.hpp"

namespace ide {

PeriodicSchedule::PeriodicSchedule(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "empty periodic schedule");
}

double PeriodicSchedule::max() const { return *std::max_element(values_.begin(), values_.end()); }
double PeriodicSchedule::min() const { return *std::min_element(values_.begin(), values_.end()); }

PeriodicSchedule sinusoidal_schedule(double amplitude, int theta) {
    if (theta < 1) throw Error(ErrorCode::InvalidArgument, "period must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(theta));
    for (int r = 0; r < theta; ++r) {
        v[static_cast<std::size_t>(r)] =
            amplitude * (1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * r / theta));
    }
    return PeriodicSchedule(std::move(v));
}

// ---------------------------------------------------------------- kernels

std::string_view to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::Laplace: return "laplace";
        case KernelFamily::Gauss: return "gauss";
        case KernelFamily::Tent: return "tent";
    }
    return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "laplace") return KernelFamily::Laplace;
    if (name == "gauss") return KernelFamily::Gauss;
    if (name == "tent") return KernelFamily::Tent;
    throw Error(ErrorCode::InvalidArgument, "unknown kernel family '" + std::string(name) + "'");
}

double kernel_eval(const KernelSpec& spec, Time t, double x, double y) {
    const double a = spec.a(t);
    const double d = std::abs(x - y);
    switch (spec.family) {
        case KernelFamily::Laplace: return 0.5 * a * std::exp(-a * d);
        case KernelFamily::Gauss: return a / std::sqrt(std::numbers::pi) * std::exp(-a * a * d * d);
        case KernelFamily::Tent: return std::max(0.0, a - a * a * d);
    }
    return 0.0;
}

double kernel_bound(const KernelSpec& spec, Time t, double length) {
    if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "habitat length must be positive");
    const double a = spec.a(t);
    const double aL = a * length;
    switch (spec.family) {
        case KernelFamily::Laplace: return -std::expm1(-0.5 * aL);
        case KernelFamily::Gauss: return std::erf(0.5 * aL);
        case KernelFamily::Tent:
            // Centre row integral while the tent support covers the whole habitat.
            if (aL > 2.0) {
                throw Error(ErrorCode::BoundFormulaOutOfRange,
                            "tent bound aL - a^2L^2/4 only holds for aL <= 2 (aL = " + std::to_string(aL) + ")");
            }
            return aL - 0.25 * aL * aL;
    }
    return 0.0;
}

double kernel_bound_numeric(const KernelSpec& spec, Time t, const Grid& grid) {
    // uniform nodes: the kernel only sees |i - j|·h
    const auto& w = grid.weights();
    const Eigen::Index size = w.size();
    Eigen::VectorXd profile(size);
    for (Eigen::Index m = 0; m < size; ++m) {
        profile[m] = std::abs(kernel_eval(spec, t, 0.0, static_cast<double>(m) * grid.step()));
    }
    double best = 0.0;
    for (Eigen::Index i = 0; i < size; ++i) {
        double row = 0.0;
        for (Eigen::Index j = 0; j < size; ++j) row += w[j] * profile[std::abs(i - j)];
        best = std::max(best, row);
    }
    return best;
}

KernelBound kernel_bound_or_numeric(const KernelSpec& spec, Time t, const Grid& grid) {
    try {
        return {kernel_bound(spec, t, grid.length()), true};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundFormulaOutOfRange) throw;
        return {kernel_bound_numeric(spec, t, grid), false};
    }
}

// ---------------------------------------------------------------- growth

std::string_view to_string(GrowthFamily family) {
    switch (family) {
        case GrowthFamily::Logistic: return "logistic";
        case GrowthFamily::BevertonHolt: return "beverton_holt";
        case GrowthFamily::Ricker: return "ricker";
    }
    return "?";
}

GrowthFamily parse_growth_family(std::string_view name) {
    if (name == "logistic") return GrowthFamily::Logistic;
    if (name == "beverton_holt") return GrowthFamily::BevertonHolt;
    if (name == "ricker") return GrowthFamily::Ricker;
    throw Error(ErrorCode::InvalidArgument, "unknown growth family '" + std::string(name) + "'");
}

Profile abs_linear_profile(double slope, double offset, double length) {
    const double edge = slope * 0.5 * length + offset;
    return {[slope, offset](double x) { return slope * std::abs(x) + offset; }, std::max(offset, edge),
            std::min(offset, edge)};
}

Profile constant_profile(double value) {
    return {[value](double) { return value; }, value, value};
}

Profile sampled_profile(std::function<double(double)> eval, double length, int samples) {
    const Grid g(length, samples, QuadratureRule::Trapezoid);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < g.nodes().size(); ++i) {
        const double v = eval(g.nodes()[i]);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    return {std::move(eval), hi, lo};
}

double growth_sup_bound(const GrowthSpec& spec, Time t) {
    const double beta = spec.beta(t);
    switch (spec.family) {
        case GrowthFamily::Logistic: return 0.25 * beta;
        case GrowthFamily::BevertonHolt: return beta;
        case GrowthFamily::Ricker: {
            const double b_min = spec.alpha(t) * spec.profile.inf;
            return b_min > 0.0 ? 1.0 / (std::numbers::e * b_min) : std::numeric_limits<double>::infinity();
        }
    }
    return 0.0;
}

double growth_lipschitz(const GrowthSpec& spec, Time t) {
    switch (spec.family) {
        case GrowthFamily::Logistic:
        case GrowthFamily::BevertonHolt: return spec.beta(t);
        case GrowthFamily::Ricker: return 1.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------- inhomogeneity

std::size_t InhomogeneitySpec::season(Time t) const {
    const auto m = static_cast<Time>(amplitudes.size());
    const auto day = static_cast<Time>(periodic_index(t - 1, static_cast<std::size_t>(theta))) + 1;
    // smallest k with day <= k·θ/m, evaluated in integers
    const Time k = (day * m + theta - 1) / theta;
    return static_cast<std::size_t>(k - 1);
}

double InhomogeneitySpec::max_amplitude() const {
    double m = 0.0;
    for (double a : amplitudes) m = std::max(m, std::abs(a));
    return m;
}

InhomogeneitySpec seasonal_variant(int index, int theta) {
    switch (index) {
        case 1: return {{1.0, 1.0, 2.0, 2.0}, theta};
        case 2: return {{1.0, 2.0, 1.0, 2.0}, theta};
        case 3: return {{2.0, 2.0, 1.0, 1.0}, theta};
        case 4: return {{2.0, 1.0, 2.0, 1.0}, theta};
        default: break;
    }
    throw Error(ErrorCode::InvalidArgument, "seasonal variant must be 1..4, got " + std::to_string(index));
}

InhomogeneitySpec parse_variant(std::string_view name, int theta) {
    if (name.size() == 2 && name[0] == 'h' && name[1] >= '1' && name[1] <= '4') {
        return seasonal_variant(name[1] - '0', theta);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown inhomogeneity variant '" + std::string(name) + "'");
}

double inhomogeneity_eval(const InhomogeneitySpec& spec, Time t, double x, double length) {
    return spec.amplitude(t) * std::cos(std::numbers::pi * x / length);
}

// ---------------------------------------------------------------- Lipschitz data

double hammerstein_lipschitz(const KernelSpec& kernel, const GrowthSpec& growth, Time t, double length) {
    return growth_lipschitz(growth, t) * kernel_bound(kernel, t, length);
}

double example_C(int theta, double a, double length, double b_hat_sup) {
    if (theta < 1 || !(a > 0.0) || !(length > 0.0) || !(b_hat_sup > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "example_C needs theta >= 1 and positive a, L, sup b");
    }
    double log_prod = 0.0;
    for (int r = 0; r < theta; ++r) log_prod += std::log1p(0.5 * std::sin(2.0 * std::numbers::pi * r / theta));
    const double kernel_mass = -std::expm1(-0.5 * a * length);
    return std::exp((-std::log(2.0) - log_prod) / theta) / (b_hat_sup * kernel_mass);
}

}  // namespace ide
