#include <algorithm>
#include <cmath>
#include <optional>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

namespace {

struct Candidate {
    std::vector<std::string> model;
    OlsFit fit;
};

// Keeps terms in candidate order so traces and final models read predictably.
std::vector<std::string> ordered(const std::vector<std::string>& model, std::span<const std::string> candidates) {
    std::vector<std::string> out;
    for (const auto& c : candidates)
        if (std::find(model.begin(), model.end(), c) != model.end()) out.push_back(c);
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

StepwiseResult stepwise(const DataTable& table, std::string_view response, std::span<const std::string> candidates,
                        const StepwiseOptions& options) {
    if (candidates.empty()) throw DataError("stepwise: no candidate predictors");
    const Eigen::VectorXd y = column_vector(table, response);
    auto fit_model = [&](const std::vector<std::string>& model) {
        return ols_fit(build_design(table, model, true), y, response);
    };

    std::vector<std::string> model;
    if (options.direction == StepDirection::backward) model.assign(candidates.begin(), candidates.end());
    OlsFit current = fit_model(model);

    StepwiseResult result;
    result.trace.push_back({"start", "", current.aic, std::numeric_limits<double>::quiet_NaN(), model});

    const bool can_add = options.direction != StepDirection::backward;
    const bool can_remove = options.direction != StepDirection::forward;
    const std::size_t max_steps = 4 * candidates.size() + 4;

    for (std::size_t step = 0; step < max_steps; ++step) {
        std::optional<Candidate> best;
        std::string best_term;
        std::string best_action;
        double best_p = std::numeric_limits<double>::quiet_NaN();

        if (options.criterion == StepCriterion::aic) {
            double best_aic = current.aic;
            auto consider = [&](std::vector<std::string> next, const std::string& term, const char* action) {
                OlsFit f = fit_model(next);
                if (f.aic < best_aic) {
                    best_aic = f.aic;
                    best_term = term;
                    best_action = action;
                    best = Candidate{std::move(next), std::move(f)};
                }
            };
            if (can_add) {
                for (const auto& c : candidates) {
                    if (contains(model, c)) continue;
                    auto next = model;
                    next.push_back(c);
                    consider(ordered(next, candidates), c, "add");
                }
            }
            if (can_remove) {
                for (const auto& term : model) {
                    auto next = model;
                    next.erase(std::find(next.begin(), next.end(), term));
                    consider(std::move(next), term, "remove");
                }
            }
            if (best) best_p = best_action == "add" ? best->fit.p_value(best_term) : current.p_value(best_term);
        } else {
            if (can_remove) {
                double max_p = options.p_remove;
                for (const auto& term : model) {
                    const double p = current.p_value(term);
                    if (p > max_p) {
                        max_p = p;
                        best_term = term;
                        best_p = p;
                    }
                }
                if (!best_term.empty()) {
                    auto next = model;
                    next.erase(std::find(next.begin(), next.end(), best_term));
                    OlsFit f = fit_model(next);
                    best_action = "remove";
                    best = Candidate{std::move(next), std::move(f)};
                }
            }
            if (!best && can_add) {
                double min_p = options.p_enter;
                for (const auto& c : candidates) {
                    if (contains(model, c)) continue;
                    auto next = model;
                    next.push_back(c);
                    next = ordered(next, candidates);
                    OlsFit f = fit_model(next);
                    const double p = f.p_value(c);
                    if (p < min_p) {
                        min_p = p;
                        best_term = c;
                        best_action = "add";
                        best_p = p;
                        best = Candidate{std::move(next), std::move(f)};
                    }
                }
            }
        }

        if (!best) break;
        model = std::move(best->model);
        current = std::move(best->fit);
        result.trace.push_back({best_action, best_term, current.aic, best_p, model});
    }

    result.selected = model;
    result.fit = std::move(current);
    return result;
}

}  // namespace pathsim
