#include <algorithm>
#include <cmath>
#include <exception>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/patheffects.hpp"
#include "pathsim/rng.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

const char* to_string(OutcomeKind kind) noexcept { return kind == OutcomeKind::binary ? "binary" : "continuous"; }

const char* to_string(MediationClass c) noexcept {
    switch (c) {
        case MediationClass::full: return "full";
        case MediationClass::partial: return "partial";
        case MediationClass::none: return "none";
    }
    return "none";
}

namespace {

std::vector<std::string> with_front(std::vector<std::string> front, const std::vector<std::string>& rest) {
    front.insert(front.end(), rest.begin(), rest.end());
    return front;
}

PathEstimate outcome_path(const DataTable& table, const MediationModel& model, const std::vector<std::string>& predictors,
                          const std::string& term) {
    if (model.outcome_kind == OutcomeKind::binary) {
        const LogitFit f = logit_fit(table, model.y, predictors);
        const auto j = f.term_index(term);
        return {f.coefficients[j], f.std_errors[j], f.p_values[j]};
    }
    const OlsFit f = ols_fit(table, model.y, predictors);
    const auto j = f.term_index(term);
    return {f.coefficients[j], f.std_errors[j], f.p_values[j]};
}

}  // namespace

MediationReport baron_kenny(const DataTable& table, const MediationModel& model, double alpha) {
    MediationReport r;
    r.model = model;
    r.alpha = alpha;

    r.c = outcome_path(table, model, with_front({model.x}, model.controls), model.x);
    {
        const OlsFit f = ols_fit(table, model.m, with_front({model.x}, model.controls));
        const auto j = f.term_index(model.x);
        r.a = {f.coefficients[j], f.std_errors[j], f.p_values[j]};
    }
    const auto step3 = with_front({model.x, model.m}, model.controls);
    r.b = outcome_path(table, model, step3, model.m);
    r.c_prime = outcome_path(table, model, step3, model.x);
    r.indirect = r.a.coef * r.b.coef;

    const bool a_sig = r.a.p < alpha;
    const bool b_sig = r.b.p < alpha;
    const bool c_sig = r.c.p < alpha;
    const bool cp_sig = r.c_prime.p < alpha;
    if (a_sig && b_sig && c_sig) r.classification = cp_sig ? MediationClass::partial : MediationClass::full;
    else r.classification = MediationClass::none;
    return r;
}

std::vector<std::size_t> seeded_resample(std::uint64_t seed, std::size_t r, std::size_t n) {
    RngStream rng(seed, r);
    std::vector<std::size_t> rows(n);
    for (auto& row : rows) row = static_cast<std::size_t>(rng.uniform_index(n));
    return rows;
}

std::pair<double, double> percentile_interval(std::vector<double> estimates, double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("percentile_interval: level must lie in (0, 1)");
    std::sort(estimates.begin(), estimates.end());
    const double tail = (1.0 - level) / 2.0;
    return {quantile_sorted(estimates, tail), quantile_sorted(estimates, 1.0 - tail)};
}

namespace {

// Full-sample design matrices; each resample gathers rows from them.
struct BootstrapProblem {
    Eigen::MatrixXd xa;  // [1, x, controls]
    Eigen::VectorXd m;
    Design outcome;      // [1, x, m, controls]
    Eigen::VectorXd y;
    bool binary = false;
    std::size_t n = 0;
};

BootstrapProblem make_problem(const DataTable& table, const MediationModel& model) {
    BootstrapProblem p;
    p.n = table.n_rows();
    p.binary = model.outcome_kind == OutcomeKind::binary;
    p.xa = build_design(table, with_front({model.x}, model.controls), true).x;
    p.m = column_vector(table, model.m);
    p.outcome = build_design(table, with_front({model.x, model.m}, model.controls), true);
    p.y = column_vector(table, model.y);
    return p;
}

// a*b for the given rows, or nullopt when a fit fails on this resample.
std::optional<double> resample_indirect(const BootstrapProblem& p, const std::vector<std::size_t>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd xa(n, p.xa.cols());
    Eigen::VectorXd m(n);
    Design outcome;
    outcome.terms = p.outcome.terms;
    outcome.x.resize(n, p.outcome.x.cols());
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto src = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
        xa.row(i) = p.xa.row(src);
        m[i] = p.m[src];
        outcome.x.row(i) = p.outcome.x.row(src);
        y[i] = p.y[src];
    }
    try {
        const double a = ols_coefficients(xa, m)[1];
        const double b = p.binary ? logit_fit(outcome, y).coefficients[2] : ols_coefficients(outcome.x, y)[2];
        return a * b;
    } catch (const FitError&) {
        return std::nullopt;
    }
}

BootstrapSummary summarize_draws(const std::vector<std::optional<double>>& draws, const BootstrapOptions& options,
                                 const MediationModel& model) {
    BootstrapSummary s;
    s.level = options.level;
    s.resamples = draws.size();
    s.estimates.reserve(draws.size());
    for (const auto& d : draws) {
        if (d) s.estimates.push_back(*d);
        else ++s.failures;
    }
    if (static_cast<double>(s.failures) > options.max_failure_fraction * static_cast<double>(draws.size()))
        throw DataError("bootstrap of " + model.x + " -> " + model.m + " -> " + model.y + ": " +
                        std::to_string(s.failures) + " of " + std::to_string(draws.size()) +
                        " resamples failed to fit (separation, rank loss or single class)");
    if (s.estimates.empty()) throw DataError("bootstrap: no successful resamples");
    std::tie(s.lower, s.upper) = percentile_interval(s.estimates, options.level);
    s.mean = mean(s.estimates);
    s.sd = sample_sd(s.estimates);
    s.median = quantile(s.estimates, 0.5);
    return s;
}

std::vector<std::size_t> rows_for(const BootstrapOptions& options, std::size_t r, std::size_t n) {
    return options.resample ? options.resample(r) : seeded_resample(options.seed, r, n);
}

void check_options(const BootstrapOptions& options) {
    if (options.resamples == 0) throw std::invalid_argument("bootstrap: resample count must be positive");
    if (!(options.level > 0.0 && options.level < 1.0)) throw std::invalid_argument("bootstrap: level must lie in (0, 1)");
}

}  // namespace

BootstrapSummary bootstrap_indirect_serial(const DataTable& table, const MediationModel& model,
                                           const BootstrapOptions& options) {
    check_options(options);
    const BootstrapProblem problem = make_problem(table, model);
    std::vector<std::optional<double>> draws(options.resamples);
    for (std::size_t r = 0; r < options.resamples; ++r) draws[r] = resample_indirect(problem, rows_for(options, r, problem.n));
    return summarize_draws(draws, options, model);
}

BootstrapSummary bootstrap_indirect(const DataTable& table, const MediationModel& model, const BootstrapOptions& options) {
    check_options(options);
    const BootstrapProblem problem = make_problem(table, model);
    std::vector<std::optional<double>> draws(options.resamples);
    std::exception_ptr error;
    const auto count = static_cast<long long>(options.resamples);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < count; ++r) {
        try {
            const auto idx = static_cast<std::size_t>(r);
            draws[idx] = resample_indirect(problem, rows_for(options, idx, problem.n));
        } catch (...) {
#pragma omp critical(pathsim_bootstrap_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return summarize_draws(draws, options, model);
}

}  // namespace pathsim
