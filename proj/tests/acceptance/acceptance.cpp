// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria
//   acceptance 3 7        run criteria 3 and 7
//
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ide/attractor.hpp"
#include "ide/csv.hpp"
#include "ide/scenario.hpp"
#include "ide/semilinear.hpp"
#include "support/random_scenarios.hpp"

using namespace ide;
using csv::format_double;
namespace fs = std::filesystem;
namespace sl = ide::semilinear;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ScenarioConfig example_config() { return load_config(fs::path(IDE_CONFIG_DIR) / "example.json"); }

GridFunction random_state(const GridPtr& g, std::mt19937_64& rng, double scale) {
    return ide::testing::random_state(g, rng, scale);
}

// ---------------------------------------------------------------- 1

Outcome reference_means() {
    const std::array<double, 4> reference{7.9640, 5.8614, 8.0794, 10.1816};
    auto cfg = example_config();
    std::ostringstream os;
    bool pass = true;

    cfg.nodes = 1000;
    const auto coarse = compare_inhomogeneities(cfg);
    cfg.nodes = 2000;
    const auto fine = compare_inhomogeneities(cfg);

    os << "means n=1000:";
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& o = coarse.outcomes[i];
        if (!o.run) {
            os << " " << o.variant << "=error(" << o.error << ")";
            pass = false;
            continue;
        }
        const double m = o.run->report.mean_total;
        const double rel = std::abs(m - reference[i]) / reference[i];
        os << " " << o.variant << "=" << format_double(m) << " (rel " << format_double(rel) << ")";
        if (!(rel <= 0.01)) pass = false;
    }
    const bool argmax = coarse.best && coarse.outcomes[*coarse.best].variant == "h4";
    os << "; argmax " << (coarse.best ? coarse.outcomes[*coarse.best].variant : "none") << " (expect h4)";
    if (!argmax) pass = false;

    os << "; |mean(2000)-mean(1000)|:";
    for (std::size_t i = 0; i < 4; ++i) {
        if (!coarse.outcomes[i].run || !fine.outcomes[i].run) {
            pass = false;
            continue;
        }
        const double d = std::abs(fine.outcomes[i].run->report.mean_total - coarse.outcomes[i].run->report.mean_total);
        os << " " << format_double(d);
        if (!(d < 1e-3)) pass = false;
    }
    double wall = 0.0;
    for (const auto& o : coarse.outcomes) wall += o.run ? o.run->report.wall_seconds : 0.0;
    os << "; n=1000 wall " << format_double(std::round(wall * 10) / 10) << " s";
    if (!(wall <= 600.0)) pass = false;
    return {pass, os.str()};
}

// ---------------------------------------------------------------- 2

Outcome certificate() {
    auto cfg = example_config();
    cfg.nodes = 100;
    const auto op = make_operator(cfg);
    const auto cert = certify_contraction(lipschitz_constants(op, BoundSource::ClosedForm), 365);
    const auto fed = budget_for_windows(cert.ell, 1.0, cfg.tol, 365, 24);
    const double l2 = compute_l2(op, initial_condition(cfg.initial, op.grid()), 365, L2Mode::UpperBound,
                                 BoundSource::ClosedForm);
    const auto computed = required_iterations(cert.ell, l2, cfg.tol, 365);
    std::ostringstream os;
    os << "ell=" << format_double(cert.ell) << " |ell-0.5|=" << format_double(std::abs(cert.ell - 0.5))
       << "; S(t=24)=" << fed.steps << "; computed l2=" << format_double(l2) << " gives t=" << computed.windows
       << " S=" << computed.steps;
    return {std::abs(cert.ell - 0.5) <= 1e-10 && fed.steps == 8760, os.str()};
}

// ---------------------------------------------------------------- 3

Outcome certified_error_validity() {
    std::mt19937_64 rng(2024);
    long checks = 0, violations = 0;
    double worst_ratio = 0.0, max_ell = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto s = ide::testing::random_contractive_scenario(rng, 0.2, 0.9);
        const auto& op = *s.op;
        const int T = s.cert.window;
        max_ell = std::max(max_ell, s.cert.ell);
        const auto budget = plan_budget(op, s.cert, s.u0, 1e-8, L2Mode::StateDependent, BoundSource::Numeric);
        // reference fibers far below the budget tolerance
        const auto ref_budget = plan_budget(op, s.cert, s.u0, 1e-14, L2Mode::StateDependent, BoundSource::Numeric);
        const auto fibers = pullback_fibers(op, s.cert, ref_budget, s.u0);

        double d = 0.0;
        for (Time t = 0; t < T; ++t) d = std::max(d, sup_distance(s.u0, general_solution(op, t, t - T, s.u0)));
        const double slack = fibers.certified_error + 1e-12;
        // φ(t, t - wT, u₀) equals φ(t + wT, t, u₀) for a T-periodic equation
        for (Time t = 0; t < T; ++t) {
            GridFunction u = s.u0;
            for (long w = 1; w <= budget.windows; ++w) {
                u = general_solution(op, t + w * T, t + (w - 1) * T, u);
                const double measured = sup_distance(fibers.fiber(t), u);
                const double bound = std::pow(s.cert.ell, static_cast<double>(w)) / (1 - s.cert.ell) * d;
                ++checks;
                if (!(measured <= bound + slack)) ++violations;
                worst_ratio = std::max(worst_ratio, measured / (bound + slack));
            }
        }
    }
    std::ostringstream os;
    os << "20 scenarios, max ell " << format_double(max_ell) << ", " << checks << " checks, " << violations
       << " violations, worst measured/bound " << format_double(worst_ratio);
    return {violations == 0 && max_ell <= 0.9, os.str()};
}

// ---------------------------------------------------------------- 4

Outcome periodicity_invariance() {
    auto cfg = example_config();
    cfg.horizon = 2 * cfg.period;
    const auto run = run_attractor(cfg);
    const auto op = make_operator(cfg);
    const double eps = run.report.certified_error;
    const auto theta = static_cast<std::size_t>(cfg.period);
    double inv = 0.0, closure = 0.0;
    for (std::size_t k = 0; k < theta; ++k) {
        const auto t = static_cast<Time>(k);
        inv = std::max(inv, sup_distance(op.apply(t, run.fibers.states[k]), run.fibers.states[(k + 1) % theta]));
        closure = std::max(closure, sup_distance(run.fibers.states[k], run.fibers.states[k + theta]));
    }
    std::ostringstream os;
    os << "certified_error=" << format_double(eps) << "; max invariance residual=" << format_double(inv)
       << "; max |u*_t - u*_{t+theta}|=" << format_double(closure);
    return {inv <= 2 * eps && closure <= 2 * eps, os.str()};
}

// ---------------------------------------------------------------- 5

Outcome process_property() {
    auto cfg = example_config();
    cfg.nodes = 200;
    const auto op = make_operator(cfg);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> start(-1000, 1000), len(0, 60);
    int mismatches = 0;
    for (int k = 0; k < 100; ++k) {
        const Time tau = start(rng), s = tau + len(rng), t = s + len(rng);
        const auto u = random_state(op.grid(), rng, 5.0);
        if (!(general_solution(op, t, s, general_solution(op, s, tau, u)) == general_solution(op, t, tau, u))) {
            ++mismatches;
        }
    }
    return {mismatches == 0, "100 random (tau,s,t,u), " + std::to_string(mismatches) + " bitwise mismatches"};
}

// ---------------------------------------------------------------- 6

Outcome discrete_lipschitz() {
    std::mt19937_64 rng(6);
    std::vector<std::shared_ptr<HammersteinOperator>> ops;
    auto cfg = example_config();
    ops.push_back(std::make_shared<HammersteinOperator>(make_operator(cfg)));
    for (auto [family, a] : {std::pair{KernelFamily::Gauss, 1.0}, std::pair{KernelFamily::Tent, 0.3}}) {
        auto c = cfg;
        c.kernel = family;
        c.kernel_a = {a};
        c.nodes = 400;
        ops.push_back(std::make_shared<HammersteinOperator>(make_operator(c)));
    }
    for (int k = 0; k < 5; ++k) ops.push_back(ide::testing::random_contractive_scenario(rng, 0.1, 3.0).op);

    long pairs = 0, violations = 0;
    double worst = 0.0;
    std::uniform_int_distribution<int> day(-400, 400);
    std::uniform_real_distribution<double> scale(0.01, 20.0);
    for (const auto& op : ops) {
        for (int p = 0; p < 200; ++p) {
            const Time t = day(rng);
            const auto u = random_state(op->grid(), rng, scale(rng));
            const auto w = random_state(op->grid(), rng, scale(rng));
            const double in = sup_distance(u, w);
            const double out = sup_distance(op->apply(t, u), op->apply(t, w));
            const double lam = op->growth().beta(t) * kernel_bound_numeric(op->kernel(), t, *op->grid());
            ++pairs;
            if (!(out <= lam * in * (1 + 1e-12))) ++violations;
            worst = std::max(worst, out / (lam * in));
        }
    }
    std::ostringstream os;
    os << ops.size() << " scenarios x 200 pairs, " << violations << " violations, worst ratio/lambda_num "
       << format_double(worst);
    return {violations == 0 && pairs == static_cast<long>(ops.size()) * 200, os.str()};
}

// ---------------------------------------------------------------- 7

Outcome kernel_bounds() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double gauss = 0.0, laplace = 0.0, tent = 0.0;
    auto check = [&](KernelFamily f, double a, double L, double& worst) {
        const KernelSpec spec{f, PeriodicSchedule(a)};
        const double diff = std::abs(kernel_bound_numeric(spec, 0, *build_grid(L, 2000)) - kernel_bound(spec, 0, L));
        worst = std::max(worst, diff);
    };
    check(KernelFamily::Gauss, 1.0, 2.0, gauss);
    check(KernelFamily::Laplace, 10.0, 6.0, laplace);
    check(KernelFamily::Tent, 0.5, 2.0, tent);
    for (int k = 0; k < 30; ++k) {
        check(KernelFamily::Gauss, 0.5 + 1.5 * u(rng), 1.0 + 2.0 * u(rng), gauss);
        check(KernelFamily::Laplace, 0.5 + 9.5 * u(rng), 1.0 + 7.0 * u(rng), laplace);
        const double L = 1.0 + 7.0 * u(rng);
        check(KernelFamily::Tent, (0.2 + 1.8 * u(rng)) / L, L, tent);
    }
    const double exact = kernel_bound({KernelFamily::Laplace, PeriodicSchedule(10.0)}, 0, 6.0);
    const double machine = std::abs(exact - (1.0 - std::exp(-30.0)));
    std::ostringstream os;
    os << "max |numeric-closed| at n=2000: gauss " << format_double(gauss) << ", laplace " << format_double(laplace)
       << ", tent " << format_double(tent) << "; laplace(a=10,L=6) closed-form error " << format_double(machine);
    return {gauss <= 1e-6 && laplace <= 5e-3 && tent <= 5e-3 && machine <= 2.220446049250313e-16, os.str()};
}

// ---------------------------------------------------------------- 8

Outcome generic_solver() {
    IterateContractionProblem<double> affine{[](const double& x) { return 0.5 * x + 1.0; },
                                             [](const double& a, const double& b) { return std::abs(a - b); }, 1,
                                             0.5};
    const auto r1 = fixed_point_iterate(affine, 0.0, 1e-13);
    const double err1 = std::abs(r1.point - 2.0);

    using V = std::array<double, 2>;
    IterateContractionProblem<V> rot{[](const V& v) { return V{1.2 * v[1], 0.4 * v[0]}; },
                                     [](const V& a, const V& b) {
                                         return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
                                     },
                                     2, 0.48};
    long windows = 0, violations = 0;
    const auto r2 = fixed_point_iterate<V>(rot, V{4.0, -9.0}, 1e-12, [&](long, const V& x, double bound) {
        ++windows;
        if (!(std::max(std::abs(x[0]), std::abs(x[1])) <= bound * (1 + 1e-12))) ++violations;
    });
    const double err2 = std::max(std::abs(r2.point[0]), std::abs(r2.point[1]));
    std::ostringstream os;
    os << "affine |x-2|=" << format_double(err1) << "; rotation |x|=" << format_double(err2) << " after "
       << r2.windows << " windows, " << violations << " bound violations over " << windows << " windows";
    return {err1 <= 1e-12 && err2 <= 1e-12 && violations == 0 && windows == r2.windows && windows > 0, os.str()};
}

// ---------------------------------------------------------------- 9

Outcome semilinear_suite() {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(1, 8), period(1, 5), horizon(0, 50), start(-40, 40);
    double worst_voc = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int d = dim(rng);
        const auto sys = ide::testing::random_system(rng, d, period(rng), 1.3, 0.5);
        const Time tau = start(rng), t = tau + horizon(rng);
        const sl::Vector u = ide::testing::random_vector(d, rng, 3.0);
        const sl::Vector direct = sl::iterate(sys, t, tau, u);
        worst_voc = std::max(worst_voc,
                             sl::max_norm(sl::voc_solution(sys, t, tau, u) - direct) / std::max(1.0, sl::max_norm(direct)));
    }

    int dominated = 0;
    for (int k = 0; k < 100; ++k) {
        const int d = dim(rng);
        const auto sys = ide::testing::random_system(rng, d, period(rng), 1.1, 0.4);
        const Time tau = start(rng), t = tau + horizon(rng);
        const sl::Vector u = ide::testing::random_vector(d, rng, 4.0), v = ide::testing::random_vector(d, rng, 4.0);
        const double sep = sl::max_norm(sl::iterate(sys, t, tau, u) - sl::iterate(sys, t, tau, v));
        if (sep <= sl::gronwall_bound(sys, t, tau, sl::max_norm(u - v)) * (1 + 1e-12)) ++dominated;
    }

    const auto demo = ide::testing::two_period_demo();
    const double tol = 1e-12;
    sl::Vector u0(2);
    u0 << 5.0, -5.0;
    const auto fibers = sl::pullback_limit(demo, 0, tol, u0);
    double oracle = 0.0;
    for (Time t = 0; t < 2; ++t) {
        oracle = std::max(oracle, sl::max_norm(fibers.fiber(t) - sl::iterate(demo, t, t - 1000, u0)));
    }
    std::ostringstream os;
    os << "voc rel err max " << format_double(worst_voc) << "; gronwall dominates " << dominated
       << "/100; two-period fibers vs 1000-step oracle " << format_double(oracle) << " (tol " << format_double(tol)
       << ")";
    return {worst_voc <= 1e-10 && dominated == 100 && oracle <= tol, os.str()};
}

// ---------------------------------------------------------------- 10

Outcome pointwise() {
    std::mt19937_64 rng(10);
    const auto g = build_grid(6.0, 200);
    const PointwiseOperator op(sinusoidal_schedule(0.1, 365), abs_linear_profile(2.0, 3.0, 6.0), g);
    std::uniform_int_distribution<int> day(-365, 365);
    std::uniform_real_distribution<double> scale(0.01, 50.0);
    int violations = 0;
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const Time t = day(rng);
        const auto u = random_state(g, rng, scale(rng)), w = random_state(g, rng, scale(rng));
        const double ratio = sup_distance(op.apply(t, u), op.apply(t, w)) / sup_distance(u, w);
        if (!(ratio <= op.lipschitz(t) * (1 + 1e-12))) ++violations;
        worst = std::max(worst, ratio / op.lipschitz(t));
    }
    return {violations == 0,
            "500 pairs, " + std::to_string(violations) + " violations, worst ratio/sup b_t " + format_double(worst)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"reference means, argmax h4 and n-refinement", reference_means},
        {"contraction certificate ell = 1/2 and S = 8760", certificate},
        {"certified-error validity on random scenarios", certified_error_validity},
        {"fiber periodicity and invariance", periodicity_invariance},
        {"process property bit-exact", process_property},
        {"discrete Lipschitz bound", discrete_lipschitz},
        {"closed-form vs numeric kernel bounds", kernel_bounds},
        {"generic iterate-contraction solver", generic_solver},
        {"semilinear suite", semilinear_suite},
        {"pointwise operator contraction", pointwise},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto started = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::printf("%s criterion %d: %s [%.1fs] -- %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, secs,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
