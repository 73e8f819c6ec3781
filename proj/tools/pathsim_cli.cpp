// pathsim: scenario simulation and path-model analysis.
//
//   pathsim validate --scenario s.json
//   pathsim simulate [--scenario s.json] [--seed N] [--n N] [--out dir] [--format csv|json]
//   pathsim analyze  --data d.csv [--config c.json] [--scenario s.json] [--boot B] [--out dir]
//   pathsim pipeline [--scenario s.json] [--config c.json] [--seed N] [--n N] [--boot B] [--out dir]
//
// Without --scenario the built-in default scenario is used.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathsim/error.hpp"
#include "pathsim/pipeline.hpp"

using namespace pathsim;
using json = nlohmann::ordered_json;

namespace {

struct Args {
    std::string scenario;
    std::string config;
    std::string data;
    std::string out;
    std::string format = "json";
    std::string timestamp;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n;
    std::optional<std::size_t> boot;
};

int code(ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ScenarioSpec scenario_from(const Args& a) { return a.scenario.empty() ? default_scenario() : load_scenario_file(a.scenario); }

ModelConfig config_from(const Args& a) {
    return a.config.empty() ? default_model_config() : load_model_config(read_file(a.config));
}

RunOptions options_from(const Args& a) {
    RunOptions o;
    o.seed = a.seed;
    o.n = a.n;
    o.resamples = a.boot;
    o.timestamp = a.timestamp;
    return o;
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error("cannot write " + path.string());
}

int finish(const PipelineReport& report, const Args& a) {
    if (!report.ok()) std::cerr << "pathsim: stage " << report.failed_stage << " failed: " << report.error << "\n";
    if (report.quality && !report.quality->pass) {
        for (const auto& c : report.quality->checks)
            if (!c.pass) std::cerr << "pathsim: quality gate " << c.gate << " failed: " << c.item << "\n";
    }
    if (a.out.empty()) {
        if (a.format == "csv") std::cout << (report.heatmap ? heatmap_csv(*report.heatmap) : std::string());
        else std::cout << report_json(report);
    } else {
        json manifest = json::array();
        for (const auto& e : emit_outputs(report, a.out))
            manifest.push_back({{"file", e.file}, {"bytes", e.bytes}, {"sha256", e.sha256}});
        std::cout << manifest.dump(2) << "\n";
    }
    return code(exit_code(report));
}

int cmd_validate(const Args& a) {
    const ScenarioSpec spec = scenario_from(a);
    const auto violations = validate_scenario(spec);
    if (a.format == "json") {
        std::cout << json{{"valid", violations.empty()}, {"violations", violations}}.dump(2) << "\n";
    } else {
        for (const auto& v : violations) std::cout << v << "\n";
        if (violations.empty()) std::cout << "ok\n";
    }
    return code(violations.empty() ? ExitCode::ok : ExitCode::invalid_scenario);
}

int cmd_simulate(const Args& a) {
    ScenarioSpec spec = scenario_from(a);
    if (a.seed) spec.seed = *a.seed;
    if (a.n) spec.n = *a.n;
    const auto violations = validate_scenario(spec);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "pathsim: " << v << "\n";
        return code(ExitCode::invalid_scenario);
    }
    const DataTable table = generate(spec);
    const QualityReport quality = quality_gate(table, spec);

    std::string text;
    if (a.format == "json") {
        json cols = json::object();
        for (const auto& c : table.columns()) {
            if (c.kind == ColumnKind::categorical) {
                json labels = json::array();
                for (double v : c.values) labels.push_back(c.levels[static_cast<std::size_t>(v)]);
                cols[c.name] = labels;
            } else {
                cols[c.name] = c.values;
            }
        }
        text = json{{"seed", spec.seed}, {"n", spec.n}, {"quality_pass", quality.pass}, {"columns", cols}}.dump(2) + "\n";
    } else {
        text = to_csv(table);
    }
    if (a.out.empty()) std::cout << text;
    else write_text(a.out, a.format == "json" ? "data.json" : "data.csv", text);

    for (const auto& c : quality.checks)
        if (!c.pass) std::cerr << "pathsim: quality gate " << c.gate << " failed: " << c.item << "\n";
    return code(quality.pass ? ExitCode::ok : ExitCode::quality_failed);
}

int cmd_analyze(const Args& a) {
    std::optional<ScenarioSpec> spec;
    if (!a.scenario.empty()) spec = load_scenario_file(a.scenario);
    const ModelConfig config = config_from(a);
    const DataTable data = read_csv_file(a.data, spec ? &*spec : nullptr);
    return finish(run_analysis(data, config, spec ? &*spec : nullptr, options_from(a)), a);
}

int cmd_pipeline(const Args& a) {
    return finish(run_pipeline(scenario_from(a), config_from(a), options_from(a)), a);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pathsim: policy scenario simulation and structural path analysis"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Args args;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", args.scenario, "Scenario JSON file (default: built-in scenario)");
        sub->add_option("--format", args.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", args.out, "Output directory");
    };
    auto run_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", args.seed, "Override the scenario seed");
        sub->add_option("--boot", args.boot, "Bootstrap resamples")->check(CLI::PositiveNumber);
        sub->add_option("--config", args.config, "Model config JSON file");
        sub->add_option("--timestamp", args.timestamp, "Fixed report timestamp (default: now)");
    };

    auto* validate = app.add_subcommand("validate", "Lint a scenario file");
    common(validate);
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic table");
    common(simulate);
    simulate->add_option("--seed", args.seed, "Override the scenario seed");
    simulate->add_option("--n", args.n, "Override the row count")->check(CLI::PositiveNumber);
    auto* analyze = app.add_subcommand("analyze", "Analyze a CSV table");
    common(analyze);
    run_flags(analyze);
    analyze->add_option("--data", args.data, "Input CSV")->required();
    auto* pipeline = app.add_subcommand("pipeline", "Generate and analyze end to end");
    common(pipeline);
    run_flags(pipeline);
    pipeline->add_option("--n", args.n, "Override the row count")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::usage);
    }
    try {
        if (validate->parsed()) {
            if (validate->count("--format") == 0) args.format = "text";
            return cmd_validate(args);
        }
        if (simulate->parsed()) {
            if (simulate->count("--format") == 0) args.format = "csv";
            return cmd_simulate(args);
        }
        if (analyze->parsed()) return cmd_analyze(args);
        return cmd_pipeline(args);
    } catch (const ScenarioError& e) {
        std::cerr << "pathsim: " << e.what() << "\n";
        return code(ExitCode::invalid_scenario);
    } catch (const DataError& e) {
        std::cerr << "pathsim: " << e.what() << "\n";
        return code(ExitCode::data_error);
    } catch (const FitError& e) {
        std::cerr << "pathsim: " << e.what() << "\n";
        return code(ExitCode::fit_failure);
    } catch (const Error& e) {
        std::cerr << "pathsim: " << e.what() << "\n";
        return code(ExitCode::io_error);
    } catch (const std::exception& e) {
        std::cerr << "pathsim: internal error: " << e.what() << "\n";
        return code(ExitCode::internal);
    }
}
