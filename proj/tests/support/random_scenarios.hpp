#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "ide/attractor.hpp"
#include "ide/dynamics.hpp"
#include "ide/semilinear.hpp"

namespace ide::testing {

struct RandomScenario {
    std::shared_ptr<HammersteinOperator> op;
    ContractionCertificate cert;  // numeric λ, window = period
    GridFunction u0;
};

inline GridFunction random_state(const GridPtr& g, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd v(static_cast<Eigen::Index>(g->size()));
    for (auto& x : v) x = u(rng);
    return {g, v};
}

/// Small periodic Beverton-Holt IDE whose discrete certificate ℓ is drawn from [ell_lo, ell_hi].
inline RandomScenario random_contractive_scenario(std::mt19937_64& rng, double ell_lo = 0.2, double ell_hi = 0.9) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int theta = 2 + static_cast<int>(u(rng) * 7);
    const double length = 1.0 + 5.0 * u(rng);
    const int n = 30 + static_cast<int>(u(rng) * 50);
    const auto family = static_cast<KernelFamily>(static_cast<int>(u(rng) * 3) % 3);
    const double a = family == KernelFamily::Tent ? (0.3 + 1.6 * u(rng)) / length : 0.5 + 5.0 * u(rng);

    std::vector<double> alpha(static_cast<std::size_t>(theta));
    for (auto& v : alpha) v = 0.5 + u(rng);
    std::vector<double> amps(1 + static_cast<std::size_t>(u(rng) * 4));
    for (auto& v : amps) v = 3.0 * u(rng);
    const Profile profile = abs_linear_profile(u(rng), 0.5 + u(rng), length);
    const auto grid = build_grid(length, n);
    const KernelSpec kernel{family, PeriodicSchedule(a)};

    // λ is linear in α: rescale so that the period product hits the drawn target
    const HammersteinOperator base(kernel, {GrowthFamily::BevertonHolt, PeriodicSchedule(alpha), profile},
                                   {amps, theta}, grid);
    const auto lam = lipschitz_constants(base, BoundSource::Numeric);
    double log_prod = 0.0;
    for (double l : lam) log_prod += std::log(l);
    const double target = ell_lo + (ell_hi - ell_lo) * u(rng);
    const double scale = std::exp((std::log(target) - log_prod) / theta);
    for (auto& v : alpha) v *= scale;

    RandomScenario s{std::make_shared<HammersteinOperator>(
                         kernel, GrowthSpec{GrowthFamily::BevertonHolt, PeriodicSchedule(alpha), profile},
                         InhomogeneitySpec{amps, theta}, grid),
                     {}, random_state(grid, rng, 5.0)};
    const auto lambdas = lipschitz_constants(*s.op, BoundSource::Numeric);
    s.cert = certify_contraction(lambdas, theta);
    return s;
}

namespace sl = ide::semilinear;

inline sl::Matrix random_matrix(int d, std::mt19937_64& rng, double norm) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    sl::Matrix m(d, d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    return m * (norm / sl::operator_norm(m));
}

inline sl::Vector random_vector(int d, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    sl::Vector v(d);
    for (auto& x : v) x = u(rng);
    return v;
}

/// Random periodic semilinear system with sigmoid nonlinearities, α_r = ‖L_r‖ and γ = 1.
inline sl::SemilinearSystem random_system(std::mt19937_64& rng, int dim, int period, double norm, double kappa) {
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<sl::Matrix> mats;
    std::vector<sl::Nonlinearity> ks;
    std::vector<double> alphas;
    for (int r = 0; r < period; ++r) {
        mats.push_back(random_matrix(dim, rng, norm * u(rng)));
        alphas.push_back(sl::operator_norm(mats.back()));
        ks.push_back(sl::sigmoid_nonlinearity(kappa * u(rng), 1.0 + u(rng)));
    }
    return {std::move(mats), std::move(ks), 1.0, std::move(alphas)};
}

/// L_t alternating diag(0.9, 0.1) / diag(0.1, 0.9) with K ≡ (1, -0.5).
inline sl::SemilinearSystem two_period_demo() {
    sl::Matrix a = sl::Matrix::Zero(2, 2), b = sl::Matrix::Zero(2, 2);
    a.diagonal() << 0.9, 0.1;
    b.diagonal() << 0.1, 0.9;
    sl::Vector k(2);
    k << 1.0, -0.5;
    return {{a, b}, {sl::constant_nonlinearity(k)}, 1.0, {0.9, 0.9}};
}

}  // namespace ide::testing
