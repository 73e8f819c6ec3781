#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathsim {

enum class Role { exogenous, mediator, moderator, outcome };
enum class Kind { continuous, binary, categorical };

const char* to_string(Role role) noexcept;
const char* to_string(Kind kind) noexcept;

struct NormalDist {
    double mean = 0.0;
    double sd = 1.0;
    bool operator==(const NormalDist&) const = default;
};

/// One variable of the structural system.
///
/// Sampled variables (exogenous, moderator) carry a distribution matching
/// their kind: `normal` for continuous, `bernoulli_p` for binary, and
/// `level_probs` aligned with `levels` for categorical. Endogenous variables
/// (mediator, outcome) carry no distribution; their value is
/// intercept + weighted parents + noise, passed through the logistic link and
/// a Bernoulli draw when binary.
struct VariableSpec {
    std::string name;
    Role role = Role::exogenous;
    Kind kind = Kind::continuous;
    std::string description;
    std::optional<NormalDist> normal;
    std::optional<double> bernoulli_p;
    std::vector<std::string> levels;
    std::vector<double> level_probs;
    double intercept = 0.0;

    bool is_endogenous() const noexcept { return role == Role::mediator || role == Role::outcome; }
    bool operator==(const VariableSpec&) const = default;
};

struct PathSpec {
    std::string source;
    std::string target;
    double weight = 0.0;
    bool operator==(const PathSpec&) const = default;
};

struct InteractionSpec {
    std::string factor_a;
    std::string factor_b;
    std::string target;
    double weight = 0.0;
    bool operator==(const InteractionSpec&) const = default;
};

struct NoiseSpec {
    std::string target;
    double sd = 0.0;
    bool operator==(const NoiseSpec&) const = default;
};

struct ScenarioSpec {
    static constexpr std::size_t default_n = 150;
    static constexpr std::uint64_t default_seed = 42;

    std::size_t n = default_n;
    std::uint64_t seed = default_seed;
    std::vector<VariableSpec> variables;
    std::vector<PathSpec> paths;
    std::vector<InteractionSpec> interactions;
    std::vector<NoiseSpec> noise;

    /// Index into `variables`, or nullopt.
    std::optional<std::size_t> index_of(std::string_view name) const;
    const VariableSpec* find(std::string_view name) const;
    /// Noise sd for an endogenous variable (0 when no entry exists).
    double noise_sd(std::string_view target) const;

    bool operator==(const ScenarioSpec&) const = default;
};

/// Parses a scenario JSON document. Missing `n` / `seed` default to 150 / 42.
/// Throws ScenarioError naming the line (syntax) or field path (schema),
/// including unknown keys and duplicate variable names.
ScenarioSpec load_scenario(std::string_view text);
ScenarioSpec load_scenario_file(const std::string& path);

/// Canonical JSON text; load_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const ScenarioSpec& spec);

/// Every violation found, empty when the scenario is valid.
std::vector<std::string> validate_scenario(const ScenarioSpec& spec);

/// Evaluation order of the variables: sampled variables and endogenous ones
/// after all of their parents, ties broken by declaration order.
/// Throws ScenarioError when paths and interactions form a cycle.
std::vector<std::size_t> topological_order(const ScenarioSpec& spec);

/// Calibrated EU-2027 compliance scenario (14 variables, n = 150, seed = 42).
ScenarioSpec default_scenario();

}  // namespace pathsim
