#include "pathsim/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>

#include <json.hpp>

#include "pathsim/error.hpp"
#include "pathsim/rng.hpp"

namespace pathsim {

using json = nlohmann::ordered_json;

ModelConfig default_model_config() {
    ModelConfig c;
    c.models = {
        {"Y2", "Y2", {"X2", "M2", "X6"}, OutcomeKind::continuous},
        {"Y3", "Y3", {"M2", "X5"}, OutcomeKind::continuous},
        {"Y1", "Y1", {"X3", "M1", "X6"}, OutcomeKind::binary},
    };
    c.heatmap_models = {
        {"Y1", "Y1", {"X3", "M1", "MOD1", "X6"}, OutcomeKind::binary},
        {"Y2", "Y2", {"M2", "X2", "X6"}, OutcomeKind::continuous},
        {"Y3", "Y3", {"M2", "X5", "X6"}, OutcomeKind::continuous},
    };
    c.heatmap_rows = {"X3", "M1", "MOD1", "M2", "X2", "X5", "X6"};
    c.stepwise_responses = {"Y2", "Y3"};
    c.mediation = {"X3", "M1", "Y1", {"X6"}, OutcomeKind::binary};
    c.moderation = {"X3", "MOD1", "Y1", {"M1", "X6"}, OutcomeKind::binary};
    c.a_path_moderation = {"X3", "MOD1", "M1", {}, OutcomeKind::continuous};
    return c;
}

// ---------------------------------------------------------------------------
// Model config JSON

namespace {

OutcomeKind parse_kind(const json& j, const std::string& where) {
    const auto s = j.get<std::string>();
    if (s == "continuous") return OutcomeKind::continuous;
    if (s == "binary") return OutcomeKind::binary;
    throw ScenarioError(where, "kind must be \"continuous\" or \"binary\"");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) throw ScenarioError(where, "expected an object");
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ScenarioError(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
}

ModelSpec parse_model(const json& j, const std::string& where) {
    check_keys(j, where, {"name", "response", "predictors", "kind"});
    ModelSpec m;
    m.response = j.at("response").get<std::string>();
    m.name = j.value("name", m.response);
    m.predictors = j.at("predictors").get<std::vector<std::string>>();
    m.kind = j.contains("kind") ? parse_kind(j["kind"], where + ".kind") : OutcomeKind::continuous;
    return m;
}

json model_json(const ModelSpec& m) {
    return {{"name", m.name}, {"response", m.response}, {"predictors", m.predictors}, {"kind", to_string(m.kind)}};
}

MediationModel parse_mediation(const json& j, const std::string& where) {
    check_keys(j, where, {"x", "m", "y", "controls", "kind"});
    MediationModel m;
    m.x = j.at("x").get<std::string>();
    m.m = j.at("m").get<std::string>();
    m.y = j.at("y").get<std::string>();
    m.controls = j.value("controls", std::vector<std::string>{});
    m.outcome_kind = j.contains("kind") ? parse_kind(j["kind"], where + ".kind") : OutcomeKind::continuous;
    return m;
}

ModerationModel parse_moderation(const json& j, const std::string& where) {
    check_keys(j, where, {"x", "moderator", "y", "controls", "kind"});
    ModerationModel m;
    m.x = j.at("x").get<std::string>();
    m.moderator = j.at("moderator").get<std::string>();
    m.y = j.at("y").get<std::string>();
    m.controls = j.value("controls", std::vector<std::string>{});
    m.outcome_kind = j.contains("kind") ? parse_kind(j["kind"], where + ".kind") : OutcomeKind::continuous;
    return m;
}

json mediation_model_json(const MediationModel& m) {
    return {{"x", m.x}, {"m", m.m}, {"y", m.y}, {"controls", m.controls}, {"kind", to_string(m.outcome_kind)}};
}

json moderation_model_json(const ModerationModel& m) {
    return {{"x", m.x},
            {"moderator", m.moderator},
            {"y", m.y},
            {"controls", m.controls},
            {"kind", to_string(m.outcome_kind)}};
}

json config_json(const ModelConfig& c) {
    json j;
    j["models"] = json::array();
    for (const auto& m : c.models) j["models"].push_back(model_json(m));
    j["heatmap_models"] = json::array();
    for (const auto& m : c.heatmap_models) j["heatmap_models"].push_back(model_json(m));
    j["heatmap_rows"] = c.heatmap_rows;
    j["stepwise_responses"] = c.stepwise_responses;
    j["mediation"] = mediation_model_json(c.mediation);
    j["moderation"] = moderation_model_json(c.moderation);
    j["a_path_moderation"] = moderation_model_json(c.a_path_moderation);
    j["vif_threshold"] = c.vif_threshold;
    j["alpha"] = c.alpha;
    j["bootstrap_resamples"] = c.bootstrap_resamples;
    j["bootstrap_level"] = c.bootstrap_level;
    return j;
}

}  // namespace

ModelConfig load_model_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError("model config", std::string("syntax error: ") + e.what());
    }
    check_keys(j, "", {"models", "heatmap_models", "heatmap_rows", "stepwise_responses", "mediation", "moderation",
                       "a_path_moderation", "vif_threshold", "alpha", "bootstrap_resamples", "bootstrap_level"});
    ModelConfig c = default_model_config();
    try {
        if (j.contains("models")) {
            c.models.clear();
            for (std::size_t i = 0; i < j["models"].size(); ++i)
                c.models.push_back(parse_model(j["models"][i], "models[" + std::to_string(i) + "]"));
        }
        if (j.contains("heatmap_models")) {
            c.heatmap_models.clear();
            for (std::size_t i = 0; i < j["heatmap_models"].size(); ++i)
                c.heatmap_models.push_back(
                    parse_model(j["heatmap_models"][i], "heatmap_models[" + std::to_string(i) + "]"));
        }
        if (j.contains("heatmap_rows")) c.heatmap_rows = j["heatmap_rows"].get<std::vector<std::string>>();
        if (j.contains("stepwise_responses"))
            c.stepwise_responses = j["stepwise_responses"].get<std::vector<std::string>>();
        if (j.contains("mediation")) c.mediation = parse_mediation(j["mediation"], "mediation");
        if (j.contains("moderation")) c.moderation = parse_moderation(j["moderation"], "moderation");
        if (j.contains("a_path_moderation"))
            c.a_path_moderation = parse_moderation(j["a_path_moderation"], "a_path_moderation");
        if (j.contains("vif_threshold")) c.vif_threshold = j["vif_threshold"].get<double>();
        if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
        if (j.contains("bootstrap_resamples")) c.bootstrap_resamples = j["bootstrap_resamples"].get<std::size_t>();
        if (j.contains("bootstrap_level")) c.bootstrap_level = j["bootstrap_level"].get<double>();
    } catch (const json::exception& e) {
        throw ScenarioError("model config", e.what());
    }
    return c;
}

std::string serialize_model_config(const ModelConfig& config) { return config_json(config).dump(2) + "\n"; }

// ---------------------------------------------------------------------------

std::optional<double> Heatmap::beta(const std::string& predictor, const std::string& outcome) const {
    for (const auto& c : cells)
        if (c.predictor == predictor && c.outcome == outcome) return c.beta;
    return std::nullopt;
}

const FittedModel* PipelineReport::model(const std::string& name) const {
    for (const auto& m : models)
        if (m.spec.name == name) return &m;
    return nullptr;
}

namespace {

// Sub-stream tag separating bootstrap draws from the generator's per-variable streams.
constexpr std::uint64_t kBootstrapStreamTag = 0x626F6F7473747270ull;

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class StageFailure : public Error {
public:
    using Error::Error;
};

// Every column a config touches, tagged with the model that needs it.
std::vector<std::pair<std::string, std::string>> referenced_columns(const ModelConfig& c) {
    std::vector<std::pair<std::string, std::string>> out;
    auto model = [&](const ModelSpec& m, const std::string& label) {
        out.emplace_back(m.response, label);
        for (const auto& p : m.predictors) out.emplace_back(p, label);
    };
    for (const auto& m : c.models)
        model(m, m.name + " model (" + std::string(m.kind == OutcomeKind::binary ? "logit" : "OLS") + ")");
    for (const auto& m : c.heatmap_models) model(m, m.name + " heatmap model");
    for (const auto& r : c.stepwise_responses) out.emplace_back(r, "stepwise " + r);
    const auto& med = c.mediation;
    for (const auto& name : {med.x, med.m, med.y}) out.emplace_back(name, "mediation " + med.x + "->" + med.m + "->" + med.y);
    for (const auto& name : med.controls) out.emplace_back(name, "mediation " + med.x + "->" + med.m + "->" + med.y);
    for (const auto* mod : {&c.moderation, &c.a_path_moderation}) {
        const std::string label = "moderation " + mod->x + "x" + mod->moderator + "->" + mod->y;
        for (const auto& name : {mod->x, mod->moderator, mod->y}) out.emplace_back(name, label);
        for (const auto& name : mod->controls) out.emplace_back(name, label);
    }
    return out;
}

// Column names available for modelling once categorical variables are one-hot coded.
std::set<std::string> modelling_names_from_table(const DataTable& t) {
    std::set<std::string> names;
    for (const auto& c : t.columns()) {
        if (c.kind == ColumnKind::categorical) {
            for (std::size_t l = 1; l < c.levels.size(); ++l) names.insert(c.name + "=" + c.levels[l]);
        } else {
            names.insert(c.name);
        }
    }
    return names;
}

std::set<std::string> modelling_names_from_spec(const ScenarioSpec& s) {
    std::set<std::string> names;
    for (const auto& v : s.variables) {
        if (v.kind == Kind::categorical) {
            for (std::size_t l = 1; l < v.levels.size(); ++l) names.insert(v.name + "=" + v.levels[l]);
        } else {
            names.insert(v.name);
        }
    }
    return names;
}

void check_formulas(const ModelConfig& config, const std::set<std::string>& available) {
    for (const auto& [column, who] : referenced_columns(config))
        if (!available.count(column))
            throw StageFailure(who + " references missing column \"" + column + "\"");
}

EdaReport run_eda(const DataTable& raw, const DataTable& prepared) {
    EdaReport eda;
    for (const auto& c : raw.columns()) {
        EdaColumn col;
        col.name = c.name;
        col.kind = to_string(c.kind);
        if (c.kind == ColumnKind::categorical) {
            col.histogram.assign(c.levels.size(), 0);
            for (double v : c.values) ++col.histogram[static_cast<std::size_t>(v)];
        } else {
            col.stats = summarize(c.values);
            col.variance = col.stats.sd * col.stats.sd;
            col.histogram.assign(10, 0);
            const double width = (col.stats.max - col.stats.min) / 10.0;
            for (double v : c.values) {
                std::size_t bin = width > 0.0 ? static_cast<std::size_t>((v - col.stats.min) / width) : 0;
                ++col.histogram[std::min<std::size_t>(bin, 9)];
            }
        }
        eda.columns.push_back(std::move(col));
    }
    std::vector<std::span<const double>> cols;
    for (const auto& c : prepared.columns()) {
        eda.corr_names.push_back(c.name);
        cols.emplace_back(c.values);
    }
    eda.correlation = correlation_matrix(cols);
    return eda;
}

DataTable standardized_copy(const DataTable& prepared, const ModelSpec& m) {
    DataTable t;
    for (const auto& p : m.predictors) t.add_column(p, standardize(prepared.values(p)));
    if (m.kind == OutcomeKind::binary) t.add_column(prepared.column(m.response));
    else t.add_column(m.response, standardize(prepared.values(m.response)));
    return t;
}

Heatmap build_heatmap(const DataTable& prepared, const ModelConfig& config) {
    Heatmap h;
    h.rows = config.heatmap_rows;
    for (const auto& m : config.heatmap_models) {
        h.cols.push_back(m.name);
        if (m.kind == OutcomeKind::binary) h.logit_outcomes.push_back(m.name);
    }
    std::vector<std::vector<std::pair<std::string, PathEstimate>>> fitted;
    for (const auto& m : config.heatmap_models) {
        const DataTable z = standardized_copy(prepared, m);
        std::vector<std::pair<std::string, PathEstimate>> terms;
        if (m.kind == OutcomeKind::binary) {
            const LogitFit f = logit_fit(z, m.response, m.predictors);
            for (const auto& p : m.predictors) {
                const auto j = f.term_index(p);
                terms.emplace_back(p, PathEstimate{f.coefficients[j], f.std_errors[j], f.p_values[j]});
            }
        } else {
            const OlsFit f = ols_fit(z, m.response, m.predictors);
            for (const auto& p : m.predictors) {
                const auto j = f.term_index(p);
                terms.emplace_back(p, PathEstimate{f.coefficients[j], f.std_errors[j], f.p_values[j]});
            }
        }
        fitted.push_back(std::move(terms));
    }
    for (const auto& row : h.rows) {
        for (std::size_t k = 0; k < config.heatmap_models.size(); ++k) {
            HeatmapCell cell;
            cell.predictor = row;
            cell.outcome = config.heatmap_models[k].name;
            for (const auto& [term, est] : fitted[k]) {
                if (term != row) continue;
                cell.beta = est.coef;
                cell.p = est.p;
            }
            h.cells.push_back(std::move(cell));
        }
    }
    return h;
}

std::vector<std::string> vif_candidates(const DataTable& prepared, const ModelConfig& config, const ScenarioSpec* spec) {
    std::set<std::string> outcomes;
    if (spec) {
        for (const auto& v : spec->variables)
            if (v.role == Role::outcome) outcomes.insert(v.name);
    } else {
        for (const auto& m : config.models) outcomes.insert(m.response);
        for (const auto& m : config.heatmap_models) outcomes.insert(m.response);
    }
    std::vector<std::string> out;
    for (const auto& c : prepared.columns())
        if (!outcomes.count(c.name)) out.push_back(c.name);
    return out;
}

template <typename F>
void stage(PipelineReport& report, const char* name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report.failed_stage = name;
        report.error = e.what();
        throw StageFailure(e.what());
    }
    report.completed_stages.emplace_back(name);
}

void analyze_stages(PipelineReport& report, const DataTable& data, const ScenarioSpec* spec, std::uint64_t seed) {
    const ModelConfig& config = report.config;
    DataTable prepared;

    stage(report, "eda", [&] {
        prepared = prepare_features(data);
        report.eda = run_eda(data, prepared);
        const auto candidates = vif_candidates(prepared, config, spec);
        report.vif = vif_prune(prepared, candidates, config.vif_threshold);
    });

    stage(report, "multivariate_modeling", [&] {
        for (const auto& m : config.models) {
            FittedModel fm;
            fm.spec = m;
            if (m.kind == OutcomeKind::binary) {
                fm.logit = logit_fit(prepared, m.response, m.predictors);
                fm.roc = roc_auc(fm.logit->fitted, prepared.values(m.response));
            } else {
                fm.ols = ols_fit(prepared, m.response, m.predictors);
            }
            report.models.push_back(std::move(fm));
        }
        for (const auto& response : config.stepwise_responses) {
            std::vector<std::string> candidates;
            for (const auto& name : report.vif->retained)
                if (name != response) candidates.push_back(name);
            report.stepwise.emplace_back(response, stepwise(prepared, response, candidates));
        }
    });

    stage(report, "path_effects", [&] {
        report.mediation = baron_kenny(prepared, config.mediation, config.alpha);
        BootstrapOptions boot;
        boot.resamples = report.meta.bootstrap_resamples;
        boot.level = config.bootstrap_level;
        boot.seed = derive_seed(seed, kBootstrapStreamTag);
        report.mediation->bootstrap = bootstrap_indirect(prepared, config.mediation, boot);
        report.moderation = moderation(prepared, config.moderation);
        report.a_path_moderation = moderation(prepared, config.a_path_moderation);
    });

    stage(report, "strategy_evaluation", [&] { report.heatmap = build_heatmap(prepared, config); });
}

void init_meta(PipelineReport& report, const RunOptions& options, std::uint64_t seed, std::size_t n, const char* source) {
    report.meta.seed = seed;
    report.meta.n = n;
    report.meta.bootstrap_resamples = options.resamples.value_or(report.config.bootstrap_resamples);
    report.meta.timestamp = options.timestamp.empty() ? utc_now() : options.timestamp;
    report.meta.source = source;
}

}  // namespace

PipelineReport run_pipeline(const ScenarioSpec& input, const ModelConfig& config, const RunOptions& options) {
    PipelineReport report;
    report.config = config;
    ScenarioSpec spec = input;
    if (options.seed) spec.seed = *options.seed;
    if (options.n) spec.n = *options.n;
    report.scenario = spec;
    init_meta(report, options, spec.seed, spec.n, "scenario");

    try {
        stage(report, "policy_scenario", [&] {
            report.scenario_violations = validate_scenario(spec);
            if (!report.scenario_violations.empty()) {
                std::string msg = "invalid scenario:";
                for (const auto& v : report.scenario_violations) msg += " " + v + ";";
                throw StageFailure(msg);
            }
        });
        stage(report, "variable_system", [&] { check_formulas(config, modelling_names_from_spec(spec)); });
        stage(report, "synthetic_data", [&] {
            report.data = generate(spec);
            report.quality = quality_gate(*report.data, spec);
        });
        analyze_stages(report, *report.data, &spec, spec.seed);
    } catch (const StageFailure&) {
    }
    return report;
}

PipelineReport run_analysis(const DataTable& data, const ModelConfig& config, const ScenarioSpec* spec,
                            const RunOptions& options) {
    PipelineReport report;
    report.config = config;
    const std::uint64_t seed = options.seed.value_or(spec ? spec->seed : ScenarioSpec::default_seed);
    if (spec) report.scenario = *spec;
    init_meta(report, options, seed, data.n_rows(), "csv");
    report.data = data;

    try {
        if (spec) {
            stage(report, "policy_scenario", [&] {
                report.scenario_violations = validate_scenario(*spec);
                if (!report.scenario_violations.empty()) throw StageFailure("invalid scenario");
            });
        }
        stage(report, "variable_system", [&] { check_formulas(config, modelling_names_from_table(data)); });
        stage(report, "synthetic_data", [&] {
            if (spec) report.quality = quality_gate(data, *spec);
        });
        analyze_stages(report, data, spec, seed);
    } catch (const StageFailure&) {
    }
    return report;
}

ExitCode exit_code(const PipelineReport& report) {
    if (!report.ok()) {
        const std::string& s = report.failed_stage;
        if (s == "policy_scenario" || s == "synthetic_data") return ExitCode::invalid_scenario;
        if (s == "variable_system") return ExitCode::data_error;
        return ExitCode::fit_failure;
    }
    if (report.quality && !report.quality->pass) return ExitCode::quality_failed;
    return ExitCode::ok;
}

}  // namespace pathsim
