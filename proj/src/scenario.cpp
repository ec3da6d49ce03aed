#include "ide/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ide/error.hpp"

namespace ide {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Config, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) config_error(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) config_error(join(path, key), "unknown key");
    }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) config_error(join(path, key), "missing required key");
    return obj.at(key);
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) config_error(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) config_error(path, "expected an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) config_error(path, "expected a string");
    return v.get<std::string>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) config_error(path, "expected a number or a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void require_divides(std::size_t len, int period, const std::string& path) {
    if (period % static_cast<int>(len) != 0) {
        config_error(path, "schedule length " + std::to_string(len) + " does not divide the period " +
                               std::to_string(period));
    }
}

semilinear::Matrix parse_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) config_error(path, "expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(v.size());
    semilinear::Matrix m(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        const auto row = as_numbers(v[static_cast<std::size_t>(i)], rp);
        if (static_cast<Eigen::Index>(row.size()) != rows) config_error(rp, "matrix must be square");
        for (Eigen::Index j = 0; j < rows; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    return m;
}

SemilinearConfig parse_semilinear(const json& v, const std::string& path) {
    check_keys(v, path, {"matrices", "nonlinear", "gamma", "alphas", "initial", "tol"});
    SemilinearConfig out;
    const auto& mats = require(v, path, "matrices");
    if (!mats.is_array() || mats.empty()) config_error(join(path, "matrices"), "expected a non-empty array");
    for (std::size_t i = 0; i < mats.size(); ++i) {
        out.matrices.push_back(parse_matrix(mats[i], join(path, "matrices") + "[" + std::to_string(i) + "]"));
        if (out.matrices.back().rows() != out.matrices.front().rows()) {
            config_error(join(path, "matrices"), "all matrices must share one dimension");
        }
    }
    const auto dim = static_cast<std::size_t>(out.matrices.front().rows());
    if (v.contains("nonlinear")) {
        const auto& nl = v.at("nonlinear");
        if (!nl.is_array() || nl.empty()) config_error(join(path, "nonlinear"), "expected a non-empty array");
        for (std::size_t i = 0; i < nl.size(); ++i) {
            const std::string np = join(path, "nonlinear") + "[" + std::to_string(i) + "]";
            check_keys(nl[i], np, {"id", "value", "scale", "gain"});
            NonlinearityConfig k;
            k.id = as_string(require(nl[i], np, "id"), join(np, "id"));
            if (k.id == "constant") {
                k.value = as_numbers(require(nl[i], np, "value"), join(np, "value"));
                if (k.value.size() != dim) config_error(join(np, "value"), "length must equal the dimension");
            } else if (k.id == "bounded-sigmoid") {
                if (nl[i].contains("scale")) k.scale = as_number(nl[i].at("scale"), join(np, "scale"));
                if (nl[i].contains("gain")) k.gain = as_number(nl[i].at("gain"), join(np, "gain"));
            } else if (k.id != "zero") {
                config_error(join(np, "id"), "unknown nonlinearity '" + k.id + "' (zero, constant, bounded-sigmoid)");
            }
            out.nonlinear.push_back(std::move(k));
        }
    } else {
        out.nonlinear.push_back({});
    }
    if (v.contains("gamma")) {
        out.gamma = as_number(v.at("gamma"), join(path, "gamma"));
        if (!(*out.gamma >= 1.0)) config_error(join(path, "gamma"), "must be >= 1");
    }
    if (v.contains("alphas")) {
        out.alphas = as_numbers(v.at("alphas"), join(path, "alphas"));
        for (double a : out.alphas) {
            if (!(a > 0.0)) config_error(join(path, "alphas"), "entries must be positive");
        }
    }
    if (out.gamma.has_value() != !out.alphas.empty()) {
        config_error(path, "gamma and alphas must be given together (or both omitted to estimate them)");
    }
    if (v.contains("initial")) {
        out.initial = as_numbers(v.at("initial"), join(path, "initial"));
        if (out.initial.size() != dim) config_error(join(path, "initial"), "length must equal the dimension");
    } else {
        out.initial.assign(dim, 0.0);
    }
    if (v.contains("tol")) {
        out.tol = as_number(v.at("tol"), join(path, "tol"));
        if (!(out.tol > 0.0)) config_error(join(path, "tol"), "must be positive");
    }
    return out;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Config, std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object() || doc.empty()) {
        config_error("", "empty document; required keys: schema_version, grid, period, tol, kernel, growth, "
                         "inhomogeneity, initial_condition");
    }
    check_keys(doc, "", {"schema_version", "grid", "period", "tol", "kernel", "growth", "inhomogeneity",
                         "initial_condition", "horizon", "bounds", "max_steps", "output_dir", "semilinear"});

    ScenarioConfig cfg;
    cfg.schema_version = as_int(require(doc, "", "schema_version"), "schema_version");
    if (cfg.schema_version != kSchemaVersion) {
        config_error("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
    }

    const auto& grid = require(doc, "", "grid");
    check_keys(grid, "grid", {"length", "nodes"});
    cfg.length = as_number(require(grid, "grid", "length"), "grid.length");
    cfg.nodes = as_int(require(grid, "grid", "nodes"), "grid.nodes");
    if (!(cfg.length > 0.0)) config_error("grid.length", "must be positive");
    if (cfg.nodes < 1) config_error("grid.nodes", "must be >= 1");

    cfg.period = as_int(require(doc, "", "period"), "period");
    if (cfg.period < 1) config_error("period", "must be >= 1");
    cfg.tol = as_number(require(doc, "", "tol"), "tol");
    if (!(cfg.tol > 0.0)) config_error("tol", "must be positive");

    const auto& kernel = require(doc, "", "kernel");
    check_keys(kernel, "kernel", {"family", "a"});
    try {
        cfg.kernel = parse_kernel_family(as_string(require(kernel, "kernel", "family"), "kernel.family"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) throw;
        config_error("kernel.family", "unknown id (laplace, gauss, tent)");
    }
    cfg.kernel_a = as_numbers(require(kernel, "kernel", "a"), "kernel.a");
    for (double a : cfg.kernel_a) {
        if (!(a > 0.0)) config_error("kernel.a", "entries must be positive");
    }
    require_divides(cfg.kernel_a.size(), cfg.period, "kernel.a");

    const auto& growth = require(doc, "", "growth");
    check_keys(growth, "growth", {"family", "alpha", "profile"});
    try {
        cfg.growth = parse_growth_family(as_string(require(growth, "growth", "family"), "growth.family"));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) throw;
        config_error("growth.family", "unknown id (logistic, beverton_holt, ricker)");
    }
    const auto& alpha = require(growth, "growth", "alpha");
    check_keys(alpha, "growth.alpha", {"schedule", "amplitude", "values"});
    cfg.alpha.schedule = as_string(require(alpha, "growth.alpha", "schedule"), "growth.alpha.schedule");
    if (cfg.alpha.schedule == "sinusoidal" || cfg.alpha.schedule == "constant") {
        cfg.alpha.amplitude = as_number(require(alpha, "growth.alpha", "amplitude"), "growth.alpha.amplitude");
        if (!(cfg.alpha.amplitude >= 0.0)) config_error("growth.alpha.amplitude", "must be nonnegative");
    } else if (cfg.alpha.schedule == "values") {
        cfg.alpha.values = as_numbers(require(alpha, "growth.alpha", "values"), "growth.alpha.values");
        for (double a : cfg.alpha.values) {
            if (!(a >= 0.0)) config_error("growth.alpha.values", "entries must be nonnegative");
        }
        require_divides(cfg.alpha.values.size(), cfg.period, "growth.alpha.values");
    } else if (cfg.alpha.schedule == "example-auto") {
        if (cfg.kernel != KernelFamily::Laplace || cfg.kernel_a.size() != 1) {
            config_error("growth.alpha.schedule", "example-auto needs a Laplace kernel with constant a");
        }
    } else {
        config_error("growth.alpha.schedule",
                     "unknown id '" + cfg.alpha.schedule + "' (example-auto, sinusoidal, constant, values)");
    }
    const auto& profile = require(growth, "growth", "profile");
    check_keys(profile, "growth.profile", {"id", "slope", "offset", "value", "sup"});
    cfg.profile.id = as_string(require(profile, "growth.profile", "id"), "growth.profile.id");
    if (cfg.profile.id == "abs_linear") {
        if (profile.contains("slope")) cfg.profile.slope = as_number(profile.at("slope"), "growth.profile.slope");
        if (profile.contains("offset")) cfg.profile.offset = as_number(profile.at("offset"), "growth.profile.offset");
        if (cfg.profile.offset < 0.0 || cfg.profile.slope * 0.5 * cfg.length + cfg.profile.offset < 0.0) {
            config_error("growth.profile", "profile must be nonnegative on the habitat");
        }
    } else if (cfg.profile.id == "constant") {
        cfg.profile.value = as_number(require(profile, "growth.profile", "value"), "growth.profile.value");
        if (cfg.profile.value < 0.0) config_error("growth.profile.value", "must be nonnegative");
    } else {
        config_error("growth.profile.id", "unknown id '" + cfg.profile.id + "' (abs_linear, constant)");
    }
    if (profile.contains("sup")) cfg.profile.sup = as_number(profile.at("sup"), "growth.profile.sup");

    const auto& inh = require(doc, "", "inhomogeneity");
    check_keys(inh, "inhomogeneity", {"variant", "amplitudes"});
    cfg.variant = as_string(require(inh, "inhomogeneity", "variant"), "inhomogeneity.variant");
    if (cfg.variant == "custom") {
        cfg.amplitudes = as_numbers(require(inh, "inhomogeneity", "amplitudes"), "inhomogeneity.amplitudes");
    } else if (!(cfg.variant.size() == 2 && cfg.variant[0] == 'h' && cfg.variant[1] >= '1' && cfg.variant[1] <= '4')) {
        config_error("inhomogeneity.variant", "unknown id '" + cfg.variant + "' (h1, h2, h3, h4, custom)");
    }

    const auto& ic = require(doc, "", "initial_condition");
    check_keys(ic, "initial_condition", {"id", "value", "coefficients"});
    cfg.initial.id = as_string(require(ic, "initial_condition", "id"), "initial_condition.id");
    if (cfg.initial.id == "constant") {
        cfg.initial.value = as_number(require(ic, "initial_condition", "value"), "initial_condition.value");
    } else if (cfg.initial.id == "custom-polynomial") {
        cfg.initial.coefficients =
            as_numbers(require(ic, "initial_condition", "coefficients"), "initial_condition.coefficients");
    } else if (cfg.initial.id != "paper-default") {
        config_error("initial_condition.id",
                     "unknown id '" + cfg.initial.id + "' (paper-default, constant, custom-polynomial)");
    }

    if (doc.contains("horizon")) {
        cfg.horizon = as_int(doc.at("horizon"), "horizon");
        if (cfg.horizon < 0) config_error("horizon", "must be >= 0");
    }
    if (doc.contains("bounds")) {
        const auto& b = doc.at("bounds");
        check_keys(b, "bounds", {"lambda", "l2"});
        if (b.contains("lambda")) {
            const auto s = as_string(b.at("lambda"), "bounds.lambda");
            if (s == "closed_form") cfg.lambda_source = BoundSource::ClosedForm;
            else if (s == "numeric") cfg.lambda_source = BoundSource::Numeric;
            else config_error("bounds.lambda", "expected closed_form or numeric");
        }
        if (b.contains("l2")) {
            const auto s = as_string(b.at("l2"), "bounds.l2");
            if (s == "upper_bound") cfg.l2_mode = L2Mode::UpperBound;
            else if (s == "state_dependent") cfg.l2_mode = L2Mode::StateDependent;
            else config_error("bounds.l2", "expected upper_bound or state_dependent");
        }
    }
    if (doc.contains("max_steps")) {
        const auto& m = doc.at("max_steps");
        if (!m.is_number_integer() || m.get<long>() < 0) config_error("max_steps", "expected a nonnegative integer");
        cfg.max_steps = m.get<long>();
    }
    if (doc.contains("output_dir")) cfg.output_dir = as_string(doc.at("output_dir"), "output_dir");
    if (doc.contains("semilinear")) cfg.semilinear = parse_semilinear(doc.at("semilinear"), "semilinear");
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::Config, "cannot open config " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

Profile make_profile(const ScenarioConfig& cfg) {
    Profile p = cfg.profile.id == "constant" ? constant_profile(cfg.profile.value)
                                             : abs_linear_profile(cfg.profile.slope, cfg.profile.offset, cfg.length);
    if (cfg.profile.sup) p.sup = *cfg.profile.sup;
    return p;
}

PeriodicSchedule make_alpha(const ScenarioConfig& cfg, const Profile& profile) {
    const auto& a = cfg.alpha;
    if (a.schedule == "example-auto") {
        return sinusoidal_schedule(example_C(cfg.period, cfg.kernel_a.front(), cfg.length, profile.sup), cfg.period);
    }
    if (a.schedule == "sinusoidal") return sinusoidal_schedule(a.amplitude, cfg.period);
    if (a.schedule == "constant") return PeriodicSchedule(a.amplitude);
    return PeriodicSchedule(a.values);
}

KernelSpec make_kernel(const ScenarioConfig& cfg) { return {cfg.kernel, PeriodicSchedule(cfg.kernel_a)}; }

GrowthSpec make_growth(const ScenarioConfig& cfg) {
    GrowthSpec g;
    g.family = cfg.growth;
    g.profile = make_profile(cfg);
    g.alpha = make_alpha(cfg, g.profile);
    return g;
}

InhomogeneitySpec make_forcing(const ScenarioConfig& cfg) {
    if (cfg.variant == "custom") return {cfg.amplitudes, cfg.period};
    return parse_variant(cfg.variant, cfg.period);
}

HammersteinOperator make_operator(const ScenarioConfig& cfg) {
    return {make_kernel(cfg), make_growth(cfg), make_forcing(cfg), build_grid(cfg.length, cfg.nodes)};
}

GridFunction initial_condition(const InitialConfig& ic, const GridPtr& grid) {
    if (ic.id == "paper-default") {
        return GridFunction::sample(grid, [](double x) { return std::abs(x) <= 1.0 ? 2.0 * x * x + 0.5 : 2.5; });
    }
    if (ic.id == "constant") return GridFunction::constant(grid, ic.value);
    if (ic.id == "custom-polynomial") {
        const auto coeffs = ic.coefficients;
        return GridFunction::sample(grid, [coeffs](double x) {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
        });
    }
    throw Error(ErrorCode::Config, "initial_condition.id: unknown id '" + ic.id + "'");
}

// ---------------------------------------------------------------- attractor runs

AttractorRun run_attractor(const ScenarioConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const HammersteinOperator op = make_operator(cfg);
    const GridFunction u0 = initial_condition(cfg.initial, op.grid());

    const auto closed = lipschitz_constants(op, BoundSource::ClosedForm);
    const auto numeric = lipschitz_constants(op, BoundSource::Numeric);
    const int window = static_cast<int>(op.period());
    const auto cert_closed = certify_contraction(closed, window);
    const auto cert_numeric = certify_contraction(numeric, window);
    const auto& cert = cfg.lambda_source == BoundSource::ClosedForm ? cert_closed : cert_numeric;

    const ErrorBudget budget = plan_budget(op, cert, u0, cfg.tol, cfg.l2_mode, cfg.lambda_source);
    PullbackOptions opts;
    opts.max_steps = cfg.max_steps;
    opts.harvest = std::max<std::size_t>(static_cast<std::size_t>(cfg.horizon), op.period() + 1);
    opts.source = cfg.lambda_source;
    AttractorFibers fibers = pullback_fibers(op, cert, budget, u0, opts);

    RunReport rep;
    rep.variant = cfg.variant;
    rep.nodes = cfg.nodes;
    rep.certificate = cert;
    rep.ell_closed_form = cert_closed.ell;
    rep.ell_numeric = cert_numeric.ell;
    rep.budget = budget;
    rep.pullback_estimate = fibers.pullback_estimate;
    rep.sweep_estimate = fibers.sweep_estimate;
    rep.certified_error = fibers.certified_error;

    const std::size_t shown = std::max<std::size_t>(static_cast<std::size_t>(cfg.horizon), 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < fibers.states.size(); ++k) {
        const double total = total_population(fibers.states[k]);
        if (k < op.period()) sum += total;
        if (k < shown) rep.fibers.push_back({static_cast<Time>(k), sup_norm(fibers.states[k]), total});
    }
    rep.mean_total = sum / static_cast<double>(op.period());
    rep.closure_gap = sup_distance(fibers.states[op.period()], fibers.states[0]);
    for (std::size_t k = 0; k < op.period(); ++k) {
        const auto t = static_cast<Time>(k);
        rep.invariance_residual =
            std::max(rep.invariance_residual, sup_distance(op.apply(t, fibers.fiber(t)), fibers.fiber(t + 1)));
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return {std::move(rep), std::move(fibers)};
}

csv::Table report_table(const RunReport& r) {
    using csv::format_double;
    csv::Table t{{"key", "value"}, {}};
    auto add = [&](std::string key, std::string value) { t.rows.push_back({std::move(key), std::move(value)}); };
    add("variant", r.variant);
    add("nodes", std::to_string(r.nodes));
    add("window", std::to_string(r.certificate.window));
    add("ell", format_double(r.certificate.ell));
    add("ell_closed_form", format_double(r.ell_closed_form));
    add("ell_numeric", format_double(r.ell_numeric));
    add("l2", format_double(r.budget.l2));
    add("tol", format_double(r.budget.tol));
    add("windows", std::to_string(r.budget.windows));
    add("steps", std::to_string(r.budget.steps));
    add("pullback_estimate", format_double(r.pullback_estimate));
    add("sweep_estimate", format_double(r.sweep_estimate));
    add("certified_error", format_double(r.certified_error));
    add("mean_total", format_double(r.mean_total));
    add("closure_gap", format_double(r.closure_gap));
    add("invariance_residual", format_double(r.invariance_residual));
    add("wall_seconds", format_double(r.wall_seconds));
    return t;
}

void write_attractor_outputs(const AttractorRun& run, const Grid& grid, const std::filesystem::path& dir) {
    using csv::format_double;
    csv::Table fibers{{"t", "node", "x", "value"}, {}};
    csv::Table totals{{"t", "total", "sup_norm"}, {}};
    for (const auto& f : run.report.fibers) {
        const auto& state = run.fibers.states[static_cast<std::size_t>(f.t)];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            fibers.rows.push_back(
                {std::to_string(f.t), std::to_string(i), format_double(grid.node(i)), format_double(state[i])});
        }
        totals.rows.push_back({std::to_string(f.t), format_double(f.total), format_double(f.sup_norm)});
    }
    csv::write(dir / "fibers.csv", fibers);
    csv::write(dir / "totals.csv", totals);
    csv::write(dir / "report.csv", report_table(run.report));
}

int worker_count() {
    if (const char* env = std::getenv("IDE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string Comparison::ordering() const {
    std::vector<std::pair<double, std::string>> v;
    for (const auto& o : outcomes) {
        if (o.run) v.emplace_back(o.run->report.mean_total, o.variant);
    }
    std::sort(v.begin(), v.end());
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " < " : "") + v[i].second;
    return out;
}

Comparison compare_inhomogeneities(const ScenarioConfig& cfg) {
    const std::vector<std::string> variants{"h1", "h2", "h3", "h4"};
    auto run_one = [&cfg](const std::string& variant) {
        VariantOutcome out{variant, std::nullopt, {}};
        ScenarioConfig c = cfg;
        c.variant = variant;
        try {
            out.run = run_attractor(c);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        return out;
    };

    Comparison cmp;
    const int workers = worker_count();
    if (workers <= 1) {
        for (const auto& v : variants) cmp.outcomes.push_back(run_one(v));
    } else {
        std::vector<std::future<VariantOutcome>> jobs;
        for (std::size_t i = 0; i < variants.size(); ++i) {
            if (jobs.size() == static_cast<std::size_t>(workers)) {
                cmp.outcomes.push_back(jobs.front().get());
                jobs.erase(jobs.begin());
            }
            jobs.push_back(std::async(std::launch::async, run_one, variants[i]));
        }
        for (auto& j : jobs) cmp.outcomes.push_back(j.get());
    }
    for (std::size_t i = 0; i < cmp.outcomes.size(); ++i) {
        const auto& o = cmp.outcomes[i];
        if (o.run && (!cmp.best || o.run->report.mean_total > cmp.outcomes[*cmp.best].run->report.mean_total)) {
            cmp.best = i;
        }
    }
    return cmp;
}

csv::Table comparison_table(const Comparison& cmp) {
    using csv::format_double;
    csv::Table t{{"variant", "mean_total", "certified_error", "steps", "best", "error"}, {}};
    for (std::size_t i = 0; i < cmp.outcomes.size(); ++i) {
        const auto& o = cmp.outcomes[i];
        const bool best = cmp.best && *cmp.best == i;
        if (o.run) {
            const auto& r = o.run->report;
            t.rows.push_back({o.variant, format_double(r.mean_total), format_double(r.certified_error),
                              std::to_string(r.budget.steps), best ? "1" : "0", ""});
        } else {
            std::string err = o.error;
            std::replace(err.begin(), err.end(), ',', ';');
            t.rows.push_back({o.variant, "", "", "", "0", err});
        }
    }
    return t;
}

// ---------------------------------------------------------------- other subcommands

TrajectoryRun run_simulation(const ScenarioConfig& cfg) {
    const HammersteinOperator op = make_operator(cfg);
    TrajectoryRun out{trajectory(op, 0, cfg.horizon, initial_condition(cfg.initial, op.grid())), {}};
    for (const auto& s : out.segment.states) out.totals.push_back(total_population(s));
    return out;
}

LipschitzReport run_lipschitz_report(const ScenarioConfig& cfg) {
    const HammersteinOperator op = make_operator(cfg);
    LipschitzReport rep;
    for (std::size_t r = 0; r < op.period(); ++r) {
        const auto t = static_cast<Time>(r);
        LipschitzRow row;
        row.t = t;
        row.a = op.kernel().a(t);
        row.beta = op.growth().beta(t);
        const auto kb = kernel_bound_or_numeric(op.kernel(), t, *op.grid());
        row.kernel_closed = kb.value;
        row.closed_form_valid = kb.closed_form;
        row.kernel_numeric = op.kernel_row_bound(t);
        row.lambda_closed = growth_lipschitz(op.growth(), t) * kb.value;
        row.lambda_numeric = op.lipschitz_numeric(t);
        rep.rows.push_back(row);
    }
    const int window = static_cast<int>(op.period());
    const auto closed = certify_contraction(lipschitz_constants(op, BoundSource::ClosedForm), window);
    const auto numeric = certify_contraction(lipschitz_constants(op, BoundSource::Numeric), window);
    rep.ell_closed_form = closed.ell;
    rep.ell_numeric = numeric.ell;
    const auto& cert = cfg.lambda_source == BoundSource::ClosedForm ? closed : numeric;
    rep.budget = plan_budget(op, cert, initial_condition(cfg.initial, op.grid()), cfg.tol, cfg.l2_mode,
                             cfg.lambda_source);
    return rep;
}

csv::Table lipschitz_table(const LipschitzReport& rep) {
    using csv::format_double;
    csv::Table t{{"t", "a", "beta", "kernel_bound_closed", "closed_form_valid", "kernel_bound_numeric",
                  "lambda_closed", "lambda_numeric"},
                 {}};
    for (const auto& r : rep.rows) {
        t.rows.push_back({std::to_string(r.t), format_double(r.a), format_double(r.beta),
                          format_double(r.kernel_closed), r.closed_form_valid ? "1" : "0",
                          format_double(r.kernel_numeric), format_double(r.lambda_closed),
                          format_double(r.lambda_numeric)});
    }
    return t;
}

semilinear::SemilinearSystem make_semilinear(const SemilinearConfig& cfg) {
    std::vector<semilinear::Nonlinearity> ks;
    const int dim = static_cast<int>(cfg.matrices.front().rows());
    for (const auto& k : cfg.nonlinear) {
        if (k.id == "constant") {
            ks.push_back(semilinear::constant_nonlinearity(
                Eigen::Map<const semilinear::Vector>(k.value.data(), static_cast<Eigen::Index>(k.value.size()))));
        } else if (k.id == "bounded-sigmoid") {
            ks.push_back(semilinear::sigmoid_nonlinearity(k.scale, k.gain));
        } else {
            ks.push_back(semilinear::zero_nonlinearity(dim));
        }
    }
    if (cfg.gamma) return {cfg.matrices, std::move(ks), *cfg.gamma, cfg.alphas};
    return semilinear::SemilinearSystem::with_estimated_constants(cfg.matrices, std::move(ks));
}

SemilinearReport run_semilinear(const ScenarioConfig& cfg) {
    SemilinearConfig sc;
    if (cfg.semilinear) {
        sc = *cfg.semilinear;
    } else {
        sc.matrices = {semilinear::Matrix::Constant(1, 1, 0.5)};
        sc.nonlinear = {NonlinearityConfig{"constant", {1.0}, 1.0, 1.0}};
        sc.gamma = 1.0;
        sc.alphas = {0.5};
        sc.initial = {0.0};
        sc.tol = 1e-12;
    }
    const auto sys = make_semilinear(sc);
    const semilinear::Vector u0 =
        Eigen::Map<const semilinear::Vector>(sc.initial.data(), static_cast<Eigen::Index>(sc.initial.size()));
    SemilinearReport rep;
    rep.fibers = semilinear::pullback_limit(sys, 0, sc.tol, u0);
    rep.contraction_product = sys.contraction_product();
    rep.gamma = sys.gamma();
    rep.constants_estimated = sys.constants_estimated();
    return rep;
}

std::vector<ConvergenceLevel> run_convergence(const ScenarioConfig& cfg, int levels) {
    if (levels < 1) throw Error(ErrorCode::InvalidArgument, "convergence study needs at least one level");
    std::vector<ConvergenceLevel> out;
    ScenarioConfig c = cfg;
    for (int k = 0; k < levels; ++k) {
        const auto run = run_attractor(c);
        ConvergenceLevel lvl{c.nodes, run.report.mean_total, 0.0, run.report.certified_error};
        if (!out.empty()) lvl.change = std::abs(lvl.mean_total - out.back().mean_total);
        out.push_back(lvl);
        c.nodes *= 2;
    }
    return out;
}

}  // namespace ide
