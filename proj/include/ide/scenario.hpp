#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ide/attractor.hpp"
#include "ide/csv.hpp"
#include "ide/dynamics.hpp"
#include "ide/model.hpp"
#include "ide/semilinear.hpp"

namespace ide {

inline constexpr int kSchemaVersion = 1;

struct ProfileConfig {
    std::string id = "abs_linear";  // abs_linear | constant
    double slope = 2.0;
    double offset = 3.0;
    double value = 1.0;
    std::optional<double> sup;  // user-supplied exact supremum
};

struct AlphaConfig {
    std::string schedule = "example-auto";  // example-auto | sinusoidal | constant | values
    double amplitude = 1.0;                 // C for sinusoidal, the value for constant
    std::vector<double> values;
};

struct InitialConfig {
    std::string id = "paper-default";  // paper-default | constant | custom-polynomial
    double value = 0.0;
    std::vector<double> coefficients;  // c_0 + c_1 x + ...
};

struct NonlinearityConfig {
    std::string id = "zero";  // zero | constant | bounded-sigmoid
    std::vector<double> value;
    double scale = 1.0;
    double gain = 1.0;
};

struct SemilinearConfig {
    std::vector<semilinear::Matrix> matrices;  // one per period slot
    std::vector<NonlinearityConfig> nonlinear;
    std::optional<double> gamma;
    std::vector<double> alphas;
    std::vector<double> initial;
    double tol = 1e-10;
};

/// Validated scenario, see configs/ for the shipped documents.
struct ScenarioConfig {
    int schema_version = kSchemaVersion;
    double length = 6.0;
    int nodes = 1000;  // subintervals n
    int period = 365;
    double tol = 1e-6;

    KernelFamily kernel = KernelFamily::Laplace;
    std::vector<double> kernel_a{10.0};

    GrowthFamily growth = GrowthFamily::BevertonHolt;
    AlphaConfig alpha;
    ProfileConfig profile;

    std::string variant = "h4";       // h1..h4 or "custom"
    std::vector<double> amplitudes;   // for "custom"

    InitialConfig initial;
    int horizon = 366;  // T'
    BoundSource lambda_source = BoundSource::ClosedForm;
    L2Mode l2_mode = L2Mode::UpperBound;
    long max_steps = 50'000'000;
    std::string output_dir = "out";

    std::optional<SemilinearConfig> semilinear;
};

/// Parses and validates a JSON scenario. Unknown keys are rejected; errors carry the key path.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

Profile make_profile(const ScenarioConfig& cfg);
PeriodicSchedule make_alpha(const ScenarioConfig& cfg, const Profile& profile);
KernelSpec make_kernel(const ScenarioConfig& cfg);
GrowthSpec make_growth(const ScenarioConfig& cfg);
InhomogeneitySpec make_forcing(const ScenarioConfig& cfg);
HammersteinOperator make_operator(const ScenarioConfig& cfg);

/// paper-default: 2x²+0.5 on [-1,1] and 2.5 elsewhere.
GridFunction initial_condition(const InitialConfig& ic, const GridPtr& grid);

struct FiberSummary {
    Time t = 0;
    double sup_norm = 0.0;
    double total = 0.0;
};

struct RunReport {
    std::string variant;
    int nodes = 0;
    ContractionCertificate certificate;
    double ell_closed_form = 0.0;
    double ell_numeric = 0.0;
    ErrorBudget budget;
    double pullback_estimate = 0.0;
    double sweep_estimate = 0.0;
    double certified_error = 0.0;
    std::vector<FiberSummary> fibers;  // t = 0 .. harvested - 1
    double mean_total = 0.0;           // (1/θ) Σ_{t<θ} ū_t
    double closure_gap = 0.0;          // ‖u*_θ - u*_0‖
    double invariance_residual = 0.0;  // max_t ‖H_t(u*_t) - u*_{t+1 mod θ}‖
    double wall_seconds = 0.0;
};

struct AttractorRun {
    RunReport report;
    AttractorFibers fibers;
};

AttractorRun run_attractor(const ScenarioConfig& cfg);

/// fibers.csv, totals.csv and report.csv in dir.
void write_attractor_outputs(const AttractorRun& run, const Grid& grid, const std::filesystem::path& dir);
csv::Table report_table(const RunReport& report);

struct VariantOutcome {
    std::string variant;
    std::optional<AttractorRun> run;
    std::string error;
};

struct Comparison {
    std::vector<VariantOutcome> outcomes;
    std::optional<std::size_t> best;  // argmax of the mean total population

    /// Variants sorted by increasing mean, joined with '<'.
    std::string ordering() const;
};

/// Runs h1..h4 on the same scenario (the variant field is ignored). Uses IDE_WORKERS threads.
Comparison compare_inhomogeneities(const ScenarioConfig& cfg);
csv::Table comparison_table(const Comparison& cmp);

struct TrajectoryRun {
    TrajectorySegment segment;
    std::vector<double> totals;
};

/// Forward solution from u₀ at time 0 over the horizon.
TrajectoryRun run_simulation(const ScenarioConfig& cfg);

struct LipschitzRow {
    Time t = 0;
    double a = 0.0;
    double beta = 0.0;
    double kernel_closed = 0.0;
    bool closed_form_valid = true;
    double kernel_numeric = 0.0;
    double lambda_closed = 0.0;
    double lambda_numeric = 0.0;
};

struct LipschitzReport {
    std::vector<LipschitzRow> rows;
    double ell_closed_form = 0.0;
    double ell_numeric = 0.0;
    ErrorBudget budget;
};

LipschitzReport run_lipschitz_report(const ScenarioConfig& cfg);
csv::Table lipschitz_table(const LipschitzReport& rep);

struct SemilinearReport {
    semilinear::PeriodicFibers fibers;
    double contraction_product = 0.0;
    double gamma = 1.0;
    bool constants_estimated = false;
};

/// Uses the config's semilinear block, or the scalar demo u ↦ 0.5u + 1 when absent.
SemilinearReport run_semilinear(const ScenarioConfig& cfg);
semilinear::SemilinearSystem make_semilinear(const SemilinearConfig& cfg);

struct ConvergenceLevel {
    int nodes = 0;
    double mean_total = 0.0;
    double change = 0.0;  // against the previous level, 0 for the first
    double certified_error = 0.0;
};

/// Attractor runs at n, 2n, ..., 2^{levels-1} n.
std::vector<ConvergenceLevel> run_convergence(const ScenarioConfig& cfg, int levels = 2);

/// Worker count from IDE_WORKERS (default 1).
int worker_count();

}  // namespace ide
