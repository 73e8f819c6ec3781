#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "pathsim/error.hpp"
#include "pathsim/pipeline.hpp"

namespace pathsim {

using json = nlohmann::ordered_json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json nums(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json estimate_json(const PathEstimate& e) { return {{"coef", num(e.coef)}, {"se", num(e.se)}, {"p", num(e.p)}}; }

json terms_json(const std::vector<std::string>& terms, const std::vector<double>& coef, const std::vector<double>& se,
                const std::vector<double>& stat, const std::vector<double>& p, const char* stat_name) {
    json a = json::array();
    for (std::size_t j = 0; j < terms.size(); ++j)
        a.push_back({{"term", terms[j]},
                     {"coef", num(coef[j])},
                     {"se", num(se[j])},
                     {stat_name, num(stat[j])},
                     {"p", num(p[j])}});
    return a;
}

json ols_json(const OlsFit& f) {
    return {{"method", "ols"},
            {"n", f.n},
            {"df_resid", f.df_resid},
            {"r2", num(f.r2)},
            {"adj_r2", num(f.adj_r2)},
            {"residual_sd", num(f.residual_sd)},
            {"aic", num(f.aic)},
            {"terms", terms_json(f.terms, f.coefficients, f.std_errors, f.t_stats, f.p_values, "t")}};
}

json logit_json(const LogitFit& f) {
    return {{"method", "logit"},
            {"n", f.n},
            {"log_likelihood", num(f.log_likelihood)},
            {"aic", num(f.aic)},
            {"iterations", f.iterations},
            {"converged", f.converged},
            {"max_abs_score", num(f.max_abs_score)},
            {"terms", terms_json(f.terms, f.coefficients, f.std_errors, f.z_stats, f.p_values, "z")}};
}

json model_spec_json(const ModelSpec& m) {
    return {{"name", m.name}, {"response", m.response}, {"predictors", m.predictors}, {"kind", to_string(m.kind)}};
}

json fitted_json(const FittedModel& m) {
    json j = {{"spec", model_spec_json(m.spec)}};
    if (m.ols) j["fit"] = ols_json(*m.ols);
    if (m.logit) j["fit"] = logit_json(*m.logit);
    if (m.roc) j["roc"] = {{"auc", num(m.roc->auc)}, {"n_pos", m.roc->n_pos}, {"n_neg", m.roc->n_neg}};
    return j;
}

json quality_json(const QualityReport& q) {
    json gates = json::object();
    for (const char* g : kQualityGates) gates[g] = q.gate_passed(g);
    json checks = json::array();
    for (const auto& c : q.checks)
        checks.push_back(
            {{"gate", c.gate}, {"item", c.item}, {"target", c.target}, {"observed", num(c.observed)}, {"pass", c.pass}});
    return {{"pass", q.pass}, {"gates", gates}, {"checks", checks}};
}

json eda_json(const EdaReport& e) {
    json cols = json::array();
    for (const auto& c : e.columns) {
        json j = {{"name", c.name}, {"kind", c.kind}};
        if (c.kind == "categorical") {
            j["level_counts"] = c.histogram;
        } else {
            j["n"] = c.stats.n;
            j["mean"] = num(c.stats.mean);
            j["sd"] = num(c.stats.sd);
            j["variance"] = num(c.variance);
            j["min"] = num(c.stats.min);
            j["max"] = num(c.stats.max);
            j["histogram"] = c.histogram;
        }
        cols.push_back(std::move(j));
    }
    json rows = json::array();
    const std::size_t k = e.corr_names.size();
    for (std::size_t a = 0; a < k; ++a)
        rows.push_back(nums(std::vector<double>(e.correlation.begin() + static_cast<std::ptrdiff_t>(a * k),
                                                e.correlation.begin() + static_cast<std::ptrdiff_t>((a + 1) * k))));
    return {{"columns", cols}, {"correlation", {{"names", e.corr_names}, {"matrix", rows}}}};
}

json vif_json(const VifPruneResult& v) {
    json trace = json::array();
    for (const auto& r : v.table.trace) trace.push_back({{"removed", r.name}, {"vif", num(r.vif)}});
    json final_vifs = json::array();
    for (std::size_t j = 0; j < v.table.names.size(); ++j)
        final_vifs.push_back({{"name", v.table.names[j]}, {"vif", num(v.table.values[j])}});
    return {{"retained", v.retained}, {"vif", final_vifs}, {"removed", trace}};
}

json stepwise_json(const StepwiseResult& s) {
    json trace = json::array();
    for (const auto& st : s.trace)
        trace.push_back(
            {{"action", st.action}, {"term", st.term}, {"aic", num(st.aic)}, {"p", num(st.p_value)}, {"model", st.model}});
    return {{"selected", s.selected}, {"fit", ols_json(s.fit)}, {"trace", trace}};
}

json bootstrap_json(const BootstrapSummary& b) {
    return {{"resamples", b.resamples},
            {"failures", b.failures},
            {"level", num(b.level)},
            {"lower", num(b.lower)},
            {"upper", num(b.upper)},
            {"mean", num(b.mean)},
            {"sd", num(b.sd)},
            {"median", num(b.median)},
            {"excludes_zero", b.lower > 0.0 || b.upper < 0.0}};
}

json mediation_json(const MediationReport& m) {
    json j = {{"x", m.model.x},
              {"m", m.model.m},
              {"y", m.model.y},
              {"controls", m.model.controls},
              {"outcome_kind", to_string(m.model.outcome_kind)},
              {"alpha", num(m.alpha)},
              {"a", estimate_json(m.a)},
              {"b", estimate_json(m.b)},
              {"c", estimate_json(m.c)},
              {"c_prime", estimate_json(m.c_prime)},
              {"indirect", num(m.indirect)},
              {"classification", to_string(m.classification)}};
    if (m.model.outcome_kind == OutcomeKind::binary)
        j["indirect_scale"] = "a on the mediator scale (OLS) times b on the log-odds scale (logit)";
    j["bootstrap"] = m.bootstrap ? bootstrap_json(*m.bootstrap) : json(nullptr);
    return j;
}

bool supports_moderation_claim(const ModerationReport& m, double alpha) {
    return m.interaction.p < alpha && m.high.slope > m.low.slope;
}

json moderation_json(const ModerationReport& m, double alpha) {
    json slopes = json::array();
    for (const auto& s : m.simple_slopes)
        slopes.push_back({{"at", s.label},
                          {"moderator_centered", num(s.moderator)},
                          {"slope", num(s.slope)},
                          {"se", num(s.se)},
                          {"p", num(s.p)}});
    auto sub = [](const SubgroupSlope& s) {
        return json{{"n", s.n}, {"slope", num(s.slope)}, {"se", num(s.se)}, {"p", num(s.p)}};
    };
    return {{"x", m.model.x},
            {"moderator", m.model.moderator},
            {"y", m.model.y},
            {"controls", m.model.controls},
            {"outcome_kind", to_string(m.model.outcome_kind)},
            {"x_main", estimate_json(m.x)},
            {"moderator_main", estimate_json(m.moderator)},
            {"interaction", estimate_json(m.interaction)},
            {"x_mean", num(m.x_mean)},
            {"moderator_mean", num(m.moderator_mean)},
            {"moderator_sd", num(m.moderator_sd)},
            {"moderator_median", num(m.moderator_median)},
            {"simple_slopes", slopes},
            {"subgroups", {{"low", sub(m.low)}, {"high", sub(m.high)}}},
            {"interaction_significant_and_high_gt_low", supports_moderation_claim(m, alpha)}};
}

json heatmap_json(const Heatmap& h) {
    json cells = json::array();
    for (const auto& c : h.cells)
        cells.push_back({{"predictor", c.predictor}, {"outcome", c.outcome}, {"beta", opt(c.beta)}, {"p", opt(c.p)}});
    return {{"rows", h.rows},
            {"cols", h.cols},
            {"standardization", "predictors z-scored; continuous outcomes z-scored; binary outcomes keep log-odds"},
            {"logit_columns", h.logit_outcomes},
            {"cells", cells}};
}

json headline_json(const PipelineReport& r) {
    json h = json::object();
    for (const auto& m : r.models) {
        if (m.ols) h[m.spec.name + "_r2"] = num(m.ols->r2);
        if (m.logit) {
            if (m.roc) h[m.spec.name + "_auc"] = num(m.roc->auc);
            json p = json::object();
            for (const auto& t : m.spec.predictors) p[t] = num(m.logit->p_value(t));
            h[m.spec.name + "_p"] = p;
        }
    }
    if (r.mediation) {
        h["mediation_classification"] = to_string(r.mediation->classification);
        if (r.mediation->bootstrap)
            h["indirect_ci"] = {num(r.mediation->bootstrap->lower), num(r.mediation->bootstrap->upper)};
    }
    if (r.moderation) {
        h["interaction_p"] = num(r.moderation->interaction.p);
        h["subgroup_slope_low"] = num(r.moderation->low.slope);
        h["subgroup_slope_high"] = num(r.moderation->high.slope);
    }
    if (r.quality) h["quality_gate_pass"] = r.quality->pass;
    return h;
}

}  // namespace

std::string report_json(const PipelineReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["status"] = r.ok() ? "ok" : "failed";
    j["failed_stage"] = r.ok() ? json(nullptr) : json(r.failed_stage);
    j["error"] = r.ok() ? json(nullptr) : json(r.error);
    j["completed_stages"] = r.completed_stages;
    j["meta"] = {{"tool_version", kToolVersion},
                 {"schema_version", kSchemaVersion},
                 {"seed", r.meta.seed},
                 {"n", r.meta.n},
                 {"bootstrap_resamples", r.meta.bootstrap_resamples},
                 {"source", r.meta.source},
                 {"timestamp", r.meta.timestamp}};
    j["headline"] = headline_json(r);
    j["scenario"] = r.scenario ? json::parse(serialize_scenario(*r.scenario)) : json(nullptr);
    j["scenario_violations"] = r.scenario_violations;
    j["model_config"] = json::parse(serialize_model_config(r.config));
    j["quality"] = r.quality ? quality_json(*r.quality) : json(nullptr);
    j["eda"] = r.eda ? eda_json(*r.eda) : json(nullptr);
    j["vif"] = r.vif ? vif_json(*r.vif) : json(nullptr);
    json models = json::object();
    for (const auto& m : r.models) models[m.spec.name] = fitted_json(m);
    j["models"] = models;
    json step = json::object();
    for (const auto& [response, s] : r.stepwise) step[response] = stepwise_json(s);
    j["stepwise"] = step;
    j["mediation"] = r.mediation ? mediation_json(*r.mediation) : json(nullptr);
    j["moderation"] = r.moderation ? moderation_json(*r.moderation, r.config.alpha) : json(nullptr);
    j["a_path_moderation"] = r.a_path_moderation ? moderation_json(*r.a_path_moderation, r.config.alpha) : json(nullptr);
    j["heatmap"] = r.heatmap ? heatmap_json(*r.heatmap) : json(nullptr);
    return j.dump(2) + "\n";
}

std::string heatmap_csv(const Heatmap& h) {
    std::ostringstream out;
    out << "predictor";
    for (const auto& c : h.cols) out << ',' << c;
    out << '\n';
    char buf[64];
    for (const auto& row : h.rows) {
        out << row;
        for (const auto& col : h.cols) {
            out << ',';
            if (const auto b = h.beta(row, col)) {
                std::snprintf(buf, sizeof buf, "%.6f", *b);
                out << buf;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string trace_text(const PipelineReport& r) {
    std::ostringstream out;
    char buf[128];
    out << "stages completed:";
    for (const auto& s : r.completed_stages) out << ' ' << s;
    out << '\n';
    if (!r.ok()) out << "stage failed: " << r.failed_stage << ": " << r.error << '\n';

    if (r.vif) {
        out << "\nVIF pruning (threshold " << r.config.vif_threshold << ")\n";
        if (r.vif->table.trace.empty()) out << "  no column removed\n";
        for (const auto& t : r.vif->table.trace) {
            std::snprintf(buf, sizeof buf, "  remove %-24s VIF %.4f\n", t.name.c_str(), t.vif);
            out << buf;
        }
        out << "  retained:";
        for (const auto& name : r.vif->retained) out << ' ' << name;
        out << '\n';
        for (std::size_t j = 0; j < r.vif->table.names.size(); ++j) {
            std::snprintf(buf, sizeof buf, "  %-24s VIF %.4f\n", r.vif->table.names[j].c_str(), r.vif->table.values[j]);
            out << buf;
        }
    }
    for (const auto& [response, s] : r.stepwise) {
        out << "\nStepwise (AIC, both directions) for " << response << '\n';
        for (const auto& st : s.trace) {
            std::snprintf(buf, sizeof buf, "  %-6s %-24s AIC %.4f  model:", st.action.c_str(),
                          st.term.empty() ? "-" : st.term.c_str(), st.aic);
            out << buf;
            for (const auto& t : st.model) out << ' ' << t;
            out << '\n';
        }
        out << "  selected:";
        for (const auto& t : s.selected) out << ' ' << t;
        out << '\n';
    }
    return out.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::vector<ManifestEntry> emit_outputs(const PipelineReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());

    const std::pair<const char*, std::string> files[] = {
        {"report.json", report_json(report)},
        {"data.csv", report.data ? to_csv(*report.data) : std::string()},
        {"heatmap.csv", report.heatmap ? heatmap_csv(*report.heatmap) : std::string()},
        {"trace.txt", trace_text(report)},
    };
    std::vector<ManifestEntry> manifest;
    for (const auto& [name, content] : files) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot open " + path.string() + " for writing");
        out << content;
        out.close();
        if (!out) throw Error("write failed: " + path.string());
        manifest.push_back({name, content.size(), sha256_hex(content)});
    }
    return manifest;
}

}  // namespace pathsim
