#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pathsim/scenario.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

/// Samples a table from the structural scenario.
///
/// Sampled variables draw from their distributions. Endogenous variables are
/// computed in topological order as
///     intercept + sum(w * source) + sum(w * a * b) + N(0, noise sd)
/// and binary ones then take a Bernoulli draw with logistic(predictor).
/// Variable i draws from RngStream(seed, i), so adding a variable leaves the
/// others untouched. Throws ScenarioError listing violations for an invalid spec.
DataTable generate(const ScenarioSpec& spec);

/// Modelling copy of a table: continuous columns z-scored, categorical
/// columns replaced by reference-coded indicators. Binary columns unchanged.
DataTable prepare_features(const DataTable& table);

struct QualityCheck {
    std::string gate;  // structure | distribution | sign | regressibility | completeness
    std::string item;
    std::string target;
    double observed = 0.0;
    bool pass = false;
};

struct QualityReport {
    std::vector<QualityCheck> checks;
    bool pass = false;

    /// True when every check of `gate` passed (and at least one ran).
    bool gate_passed(std::string_view gate) const;
};

inline constexpr const char* kQualityGates[] = {"structure", "distribution", "sign", "regressibility", "completeness"};

/// Structure: every declared variable present with its kind.
/// Distribution: sampled continuous means within 3 sd / sqrt(n) of the spec
///   and sds within 20%; binary and categorical shares within 3 binomial sds.
/// Sign: corr(source, target) has the sign of every path with |w| >= 0.1.
/// Regressibility: OLS of each continuous endogenous variable on its declared
///   parents (interactions as products) reaches R^2 >= 0.2.
/// Completeness: no NaN or infinite values.
QualityReport quality_gate(const DataTable& table, const ScenarioSpec& spec);

}  // namespace pathsim
