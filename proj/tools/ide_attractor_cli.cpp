// Command-line front end: simulate, attractor, compare, semilinear, lipschitz, convergence.
//
// Exit codes: 0 success, 1 config error, 2 no contraction, 3 budget exceeded.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ide/csv.hpp"
#include "ide/error.hpp"
#include "ide/scenario.hpp"

namespace fs = std::filesystem;
using ide::csv::format_double;

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::optional<int> nodes;
    std::optional<double> tol;
    std::optional<std::string> variant;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_variant = true) {
    cmd->add_option("--config", o.config, "Scenario JSON")->required();
    cmd->add_option("--out", o.out, "Output directory (overrides output_dir)");
    cmd->add_option("--nodes", o.nodes, "Number of grid subintervals n");
    cmd->add_option("--tol", o.tol, "Target tolerance");
    if (with_variant) {
        cmd->add_option("--variant", o.variant, "Seasonal forcing")->check(CLI::IsMember({"h1", "h2", "h3", "h4"}));
    }
}

ide::ScenarioConfig resolve(const CommonOptions& o) {
    ide::ScenarioConfig cfg = ide::load_config(o.config);
    if (o.nodes) {
        if (*o.nodes < 1) throw ide::Error(ide::ErrorCode::Config, "--nodes: must be >= 1");
        cfg.nodes = *o.nodes;
    }
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw ide::Error(ide::ErrorCode::Config, "--tol: must be positive");
        cfg.tol = *o.tol;
    }
    if (o.variant) cfg.variant = *o.variant;
    if (!o.out.empty()) cfg.output_dir = o.out;
    return cfg;
}

void print_run(const ide::RunReport& r) {
    std::cout << "variant " << r.variant << "  n=" << r.nodes << "  ell=" << format_double(r.certificate.ell)
              << " (closed " << format_double(r.ell_closed_form) << ", numeric " << format_double(r.ell_numeric)
              << ")\n"
              << "  l2=" << format_double(r.budget.l2) << "  t=" << r.budget.windows << "  S=" << r.budget.steps
              << "  certified error=" << format_double(r.certified_error) << "\n"
              << "  mean total population=" << format_double(r.mean_total)
              << "  closure gap=" << format_double(r.closure_gap) << "  (" << r.wall_seconds << " s)\n";
}

int cmd_attractor(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto run = ide::run_attractor(cfg);
    const auto grid = ide::build_grid(cfg.length, cfg.nodes);
    ide::write_attractor_outputs(run, *grid, cfg.output_dir);
    print_run(run.report);
    return 0;
}

int cmd_compare(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto cmp = ide::compare_inhomogeneities(cfg);
    const auto grid = ide::build_grid(cfg.length, cfg.nodes);
    int code = 0;
    for (const auto& outcome : cmp.outcomes) {
        if (outcome.run) {
            ide::write_attractor_outputs(*outcome.run, *grid, fs::path(cfg.output_dir) / outcome.variant);
            print_run(outcome.run->report);
        } else {
            std::cerr << "variant " << outcome.variant << " failed: " << outcome.error << "\n";
            code = 1;
        }
    }
    ide::csv::write(fs::path(cfg.output_dir) / "comparison.csv", ide::comparison_table(cmp));
    if (cmp.best) std::cout << "best: " << cmp.outcomes[*cmp.best].variant << "  ordering: " << cmp.ordering() << "\n";
    return code;
}

int cmd_simulate(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto sim = ide::run_simulation(cfg);
    const auto& grid = *sim.segment.states.front().grid();
    ide::csv::Table traj{{"t", "node", "x", "value"}, {}};
    ide::csv::Table totals{{"t", "total"}, {}};
    for (std::size_t k = 0; k < sim.segment.states.size(); ++k) {
        const auto t = std::to_string(sim.segment.start + static_cast<ide::Time>(k));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            traj.rows.push_back({t, std::to_string(i), format_double(grid.node(i)),
                                 format_double(sim.segment.states[k][i])});
        }
        totals.rows.push_back({t, format_double(sim.totals[k])});
    }
    ide::csv::write(fs::path(cfg.output_dir) / "trajectory.csv", traj);
    ide::csv::write(fs::path(cfg.output_dir) / "totals.csv", totals);
    std::cout << "simulated " << cfg.horizon << " steps; final total population "
              << format_double(sim.totals.back()) << "\n";
    return 0;
}

int cmd_lipschitz(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto rep = ide::run_lipschitz_report(cfg);
    ide::csv::write(fs::path(cfg.output_dir) / "lipschitz.csv", ide::lipschitz_table(rep));
    ide::csv::Table summary{{"key", "value"},
                            {{"ell_closed_form", format_double(rep.ell_closed_form)},
                             {"ell_numeric", format_double(rep.ell_numeric)},
                             {"l2", format_double(rep.budget.l2)},
                             {"windows", std::to_string(rep.budget.windows)},
                             {"steps", std::to_string(rep.budget.steps)}}};
    ide::csv::write(fs::path(cfg.output_dir) / "report.csv", summary);
    std::cout << "ell (closed form) = " << format_double(rep.ell_closed_form)
              << "\nell (numeric)     = " << format_double(rep.ell_numeric) << "\nl2 = " << format_double(rep.budget.l2)
              << "  t = " << rep.budget.windows << "  S = " << rep.budget.steps << "\n";
    return 0;
}

int cmd_semilinear(const CommonOptions& o) {
    const auto cfg = resolve(o);
    const auto rep = ide::run_semilinear(cfg);
    ide::csv::Table fibers{{"t", "component", "value"}, {}};
    for (std::size_t k = 0; k < rep.fibers.fibers.size(); ++k) {
        const auto& f = rep.fibers.fibers[k];
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            fibers.rows.push_back({std::to_string(rep.fibers.start + static_cast<ide::Time>(k)), std::to_string(i),
                                   format_double(f[i])});
        }
    }
    ide::csv::write(fs::path(cfg.output_dir) / "semilinear_fibers.csv", fibers);
    ide::csv::Table report{{"key", "value"},
                           {{"contraction_product", format_double(rep.contraction_product)},
                            {"gamma", format_double(rep.gamma)},
                            {"constants_estimated", rep.constants_estimated ? "1" : "0"},
                            {"periods", std::to_string(rep.fibers.periods)},
                            {"last_change", format_double(rep.fibers.last_change)}}};
    ide::csv::write(fs::path(cfg.output_dir) / "report.csv", report);
    std::cout << "periodic product " << format_double(rep.contraction_product) << ", depth " << rep.fibers.periods
              << " periods; fiber(0)[0] = " << format_double(rep.fibers.fibers.front()[0])
              << (rep.constants_estimated ? "  (constants estimated, not certified)" : "") << "\n";
    return 0;
}

int cmd_convergence(const CommonOptions& o, int levels) {
    const auto cfg = resolve(o);
    const auto lv = ide::run_convergence(cfg, levels);
    ide::csv::Table t{{"nodes", "mean_total", "change", "certified_error"}, {}};
    for (const auto& l : lv) {
        t.rows.push_back({std::to_string(l.nodes), format_double(l.mean_total), format_double(l.change),
                          format_double(l.certified_error)});
        std::cout << "n=" << l.nodes << "  mean=" << format_double(l.mean_total)
                  << "  change=" << format_double(l.change) << "\n";
    }
    ide::csv::write(fs::path(cfg.output_dir) / "convergence.csv", t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified pullback attractors of periodic integrodifference equations"};
    app.require_subcommand(1);

    CommonOptions opts;
    int levels = 2;
    auto* simulate = app.add_subcommand("simulate", "Forward trajectory from the initial condition");
    auto* attractor = app.add_subcommand("attractor", "Certified attractor fibers for one forcing variant");
    auto* compare = app.add_subcommand("compare", "Mean total populations for h1..h4");
    auto* semil = app.add_subcommand("semilinear", "Periodic pullback limit of the semilinear test system");
    auto* lipschitz = app.add_subcommand("lipschitz", "Per-step Lipschitz constants, ell and the step budget");
    auto* convergence = app.add_subcommand("convergence", "Node refinement study of the mean total population");
    for (auto* cmd : {simulate, attractor, semil, lipschitz, convergence}) add_common(cmd, opts);
    add_common(compare, opts, false);
    convergence->add_option("--levels", levels, "Number of refinement levels (n, 2n, ...)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*simulate) return cmd_simulate(opts);
        if (*attractor) return cmd_attractor(opts);
        if (*compare) return cmd_compare(opts);
        if (*semil) return cmd_semilinear(opts);
        if (*lipschitz) return cmd_lipschitz(opts);
        if (*convergence) return cmd_convergence(opts, levels);
    } catch (const ide::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case ide::ErrorCode::NoContraction: return 2;
            case ide::ErrorCode::BudgetExceeded: return 3;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
