#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathsim/linmodel.hpp"
#include "pathsim/patheffects.hpp"
#include "pathsim/scenario.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/synthgen.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "1.0.0";

/// Named regression used by the pipeline.
struct ModelSpec {
    std::string name;
    std::string response;
    std::vector<std::string> predictors;
    OutcomeKind kind = OutcomeKind::continuous;
};

/// What the analysis stages fit. The defaults are the EU-2027 study models.
struct ModelConfig {
    std::vector<ModelSpec> models;          // fixed-formula models (Y2, Y3 OLS; Y1 logit)
    std::vector<ModelSpec> heatmap_models;  // standardized-beta refits, one per outcome column
    std::vector<std::string> heatmap_rows;  // predictor order of the heatmap
    std::vector<std::string> stepwise_responses;
    MediationModel mediation;
    ModerationModel moderation;            // X x MOD on the outcome
    ModerationModel a_path_moderation;     // X x MOD on the mediator
    double vif_threshold = 5.0;
    double alpha = 0.05;
    std::size_t bootstrap_resamples = 5000;
    double bootstrap_level = 0.95;
};

ModelConfig default_model_config();
/// JSON with keys models, heatmap_models, heatmap_rows, stepwise_responses,
/// mediation, moderation, a_path_moderation, vif_threshold, alpha,
/// bootstrap_resamples, bootstrap_level. Omitted keys keep their defaults.
ModelConfig load_model_config(const std::string& text);
std::string serialize_model_config(const ModelConfig& config);

struct FittedModel {
    ModelSpec spec;
    std::optional<OlsFit> ols;
    std::optional<LogitFit> logit;
    std::optional<RocCurve> roc;  // logit only, in-sample
};

struct HeatmapCell {
    std::string predictor;
    std::string outcome;
    std::optional<double> beta;  // blank when the predictor is not in the outcome's model
    std::optional<double> p;
};

struct Heatmap {
    std::vector<std::string> rows;
    std::vector<std::string> cols;
    std::vector<HeatmapCell> cells;  // row-major
    std::vector<std::string> logit_outcomes;  // columns holding standardized-predictor logit coefficients

    std::optional<double> beta(const std::string& predictor, const std::string& outcome) const;
};

struct EdaColumn {
    std::string name;
    std::string kind;
    SummaryStats stats;
    double variance = 0.0;
    std::vector<std::size_t> histogram;  // 10 equal-width bins over [min, max]
};

struct EdaReport {
    std::vector<EdaColumn> columns;
    std::vector<std::string> corr_names;
    std::vector<double> correlation;  // row-major
};

struct RunMetadata {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t bootstrap_resamples = 0;
    std::string timestamp;  // ISO-8601 UTC
    std::string source;     // "scenario" or "csv"
};

/// Pipeline stages in execution order.
inline constexpr const char* kStages[] = {"policy_scenario", "variable_system", "synthetic_data", "eda",
                                          "multivariate_modeling", "path_effects", "strategy_evaluation"};

struct PipelineReport {
    RunMetadata meta;
    std::optional<ScenarioSpec> scenario;
    ModelConfig config;
    std::vector<std::string> scenario_violations;
    std::optional<DataTable> data;       // generated or ingested table
    std::optional<QualityReport> quality;
    std::optional<EdaReport> eda;
    std::optional<VifPruneResult> vif;
    std::vector<FittedModel> models;
    std::vector<std::pair<std::string, StepwiseResult>> stepwise;
    std::optional<MediationReport> mediation;
    std::optional<ModerationReport> moderation;
    std::optional<ModerationReport> a_path_moderation;
    std::optional<Heatmap> heatmap;
    std::vector<std::string> completed_stages;
    std::string failed_stage;  // empty on success
    std::string error;

    bool ok() const noexcept { return failed_stage.empty(); }
    const FittedModel* model(const std::string& name) const;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;        // overrides scenario seed / bootstrap seed
    std::optional<std::size_t> n;             // overrides scenario n
    std::optional<std::size_t> resamples;     // overrides config bootstrap count
    std::string timestamp;                    // empty -> current UTC time
};

/// Scenario route: generate, check quality, then analyze.
/// Stage failures are recorded in the report (failed_stage, error); stages
/// before the failure keep their results.
PipelineReport run_pipeline(const ScenarioSpec& spec, const ModelConfig& config = default_model_config(),
                            const RunOptions& options = {});

/// Ingested-data route: the table replaces generation. With `spec` the
/// quality gate also runs.
PipelineReport run_analysis(const DataTable& data, const ModelConfig& config = default_model_config(),
                            const ScenarioSpec* spec = nullptr, const RunOptions& options = {});

/// Process exit codes of the command-line tool.
enum class ExitCode : int {
    ok = 0,
    internal = 1,          // unexpected exception
    usage = 2,             // bad flags or arguments
    invalid_scenario = 3,  // unreadable or invalid scenario / model config
    data_error = 4,        // unreadable CSV or a formula naming a missing column
    fit_failure = 5,       // an analysis stage failed
    quality_failed = 6,    // pipeline completed but the quality gate failed
    io_error = 7,          // outputs could not be written
};

/// ok only when every stage completed and the quality gate (if run) passed.
ExitCode exit_code(const PipelineReport& report);

/// Full structured report. Non-finite numbers become null.
std::string report_json(const PipelineReport& report);
std::string heatmap_csv(const Heatmap& heatmap);
std::string trace_text(const PipelineReport& report);

struct ManifestEntry {
    std::string file;
    std::size_t bytes = 0;
    std::string sha256;
};

/// Writes report.json, data.csv, heatmap.csv and trace.txt into `out_dir`
/// (created if needed). Throws Error with the path on I/O failure.
std::vector<ManifestEntry> emit_outputs(const PipelineReport& report, const std::string& out_dir);

std::string sha256_hex(const std::string& bytes);

}  // namespace pathsim
