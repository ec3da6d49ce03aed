#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ide/grid.hpp"

namespace ide {

// A θ-periodic scalar schedule; a single entry means "constant in time".
class PeriodicSchedule {
public:
    PeriodicSchedule() : values_{1.0} {}
    PeriodicSchedule(double constant) : values_{constant} {}  // NOLINT(google-explicit-constructor)
    explicit PeriodicSchedule(std::vector<double> values);

    double operator()(Time t) const { return values_[periodic_index(t, values_.size())]; }
    std::size_t period() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    double max() const;
    double min() const;

private:
    std::vector<double> values_;
};

/// α_t = C(1 + ½ sin(2πt/θ)) for t = 0..θ-1.
PeriodicSchedule sinusoidal_schedule(double amplitude, int theta);

// ---------------------------------------------------------------- kernels

enum class KernelFamily { Laplace, Gauss, Tent };

std::string_view to_string(KernelFamily family);
KernelFamily parse_kernel_family(std::string_view name);

struct KernelSpec {
    KernelFamily family = KernelFamily::Laplace;
    PeriodicSchedule a;  // a_t > 0
};

double kernel_eval(const KernelSpec& spec, Time t, double x, double y);

/// Closed-form sup_x ∫|k_t(x,y)| dy over [-L/2, L/2].
/// The tent formula aL - a²L²/4 is only the true value while aL <= 2; outside that
/// window it throws BoundFormulaOutOfRange.
double kernel_bound(const KernelSpec& spec, Time t, double length);

/// Quadrature version: max over nodes x of Σ_j ω_j |k_t(x, η_j)|.
double kernel_bound_numeric(const KernelSpec& spec, Time t, const Grid& grid);

struct KernelBound {
    double value;
    bool closed_form;  // false when the quadrature fallback was used
};

/// Closed form when it is valid, quadrature bound otherwise.
KernelBound kernel_bound_or_numeric(const KernelSpec& spec, Time t, const Grid& grid);

// ---------------------------------------------------------------- growth

enum class GrowthFamily { Logistic, BevertonHolt, Ricker };

std::string_view to_string(GrowthFamily family);
GrowthFamily parse_growth_family(std::string_view name);

/// Nonnegative spatial profile b̂ together with its extrema on the habitat.
struct Profile {
    std::function<double(double)> eval;
    double sup = 0.0;
    double inf = 0.0;
};

/// b̂(x) = slope·|x| + offset with exact extrema on [-L/2, L/2].
Profile abs_linear_profile(double slope, double offset, double length);
Profile constant_profile(double value);
/// Extrema estimated as node max/min on a grid of `samples` subintervals.
Profile sampled_profile(std::function<double(double)> eval, double length, int samples = 4000);

/// g_t(x, z) with b_t(x) = α_t·b̂(x).
struct GrowthSpec {
    GrowthFamily family = GrowthFamily::BevertonHolt;
    PeriodicSchedule alpha;
    Profile profile;

    double b(Time t, double x) const { return alpha(t) * profile.eval(x); }
    /// β_t = α_t · sup|b̂|
    double beta(Time t) const { return alpha(t) * profile.sup; }
};

/// Growth map for a given local coefficient b = b_t(x).
inline double growth_value(GrowthFamily family, double b, double z) {
    switch (family) {
        case GrowthFamily::Logistic: return std::max(0.0, b * z * (1.0 - z));
        case GrowthFamily::BevertonHolt: return b * z / (1.0 + std::abs(z));
        case GrowthFamily::Ricker: return z * std::exp(-b * std::abs(z));
    }
    return 0.0;
}

inline double growth_eval(const GrowthSpec& spec, Time t, double x, double z) {
    return growth_value(spec.family, spec.b(t, x), z);
}

/// Bound on sup_{x,z} |g_t(x,z)|.
/// Logistic β/4, Beverton-Holt β. Ricker: 1/(e·inf b_t), which is +inf when b_t vanishes.
double growth_sup_bound(const GrowthSpec& spec, Time t);

/// Global Lipschitz constant of z -> g_t(x,z), uniformly in x.
/// β_t for logistic and Beverton-Holt; 1 for Ricker (slope of z·e^{-b|z|} at zero).
double growth_lipschitz(const GrowthSpec& spec, Time t);

// ---------------------------------------------------------------- inhomogeneity

/// Seasonal forcing amplitude(season(t))·cos(πx/L). The period θ is split into
/// amplitudes.size() equal half-open seasons ((k-1)θ/m, kθ/m].
struct InhomogeneitySpec {
    std::vector<double> amplitudes{1.0, 1.0, 2.0, 2.0};
    int theta = 365;

    /// Zero-based season of integer day t.
    std::size_t season(Time t) const;
    double amplitude(Time t) const { return amplitudes[season(t)]; }
    double max_amplitude() const;
};

/// The four seasonal variants h1..h4 (index 1-4).
InhomogeneitySpec seasonal_variant(int index, int theta);
InhomogeneitySpec parse_variant(std::string_view name, int theta);

double inhomogeneity_eval(const InhomogeneitySpec& spec, Time t, double x, double length);

// ---------------------------------------------------------------- Lipschitz data

/// λ_t = ĝ_t · sup_x ∫|k_t(x,y)| dy using the closed-form kernel bound.
double hammerstein_lipschitz(const KernelSpec& kernel, const GrowthSpec& growth, Time t, double length);

/// Amplitude C making Π_{r<θ} C·b̂_sup·(1 + ½ sin(2πr/θ))·(1 - e^{-aL/2}) equal to 1/2.
double example_C(int theta, double a, double length, double b_hat_sup);

}  // namespace ide
