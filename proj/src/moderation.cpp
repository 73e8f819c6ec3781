#include <algorithm>
#include <cmath>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/patheffects.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

namespace {

struct CoefView {
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    Eigen::MatrixXd covariance;
    double df = 0.0;  // 0 means normal reference (logit)

    std::size_t index(const std::string& term) const {
        return static_cast<std::size_t>(std::find(terms.begin(), terms.end(), term) - terms.begin());
    }
    double p_of(double stat) const { return df > 0.0 ? t_two_sided_p(stat, df) : z_two_sided_p(stat); }
    PathEstimate estimate(const std::string& term) const {
        const auto j = index(term);
        const double se = std::sqrt(std::max(0.0, covariance(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j))));
        const double b = coefficients[j];
        return {b, se, se > 0.0 ? p_of(b / se) : (b == 0.0 ? 1.0 : 0.0)};
    }
};

CoefView fit_view(const DataTable& table, const std::string& y, const std::vector<std::string>& predictors,
                  OutcomeKind kind) {
    if (kind == OutcomeKind::binary) {
        LogitFit f = logit_fit(table, y, predictors);
        return {std::move(f.terms), std::move(f.coefficients), std::move(f.covariance), 0.0};
    }
    OlsFit f = ols_fit(table, y, predictors);
    return {std::move(f.terms), std::move(f.coefficients), std::move(f.covariance), static_cast<double>(f.df_resid)};
}

DataTable subset(const DataTable& table, const std::vector<std::size_t>& rows) { return table.select_rows(rows); }

}  // namespace

ModerationReport moderation(const DataTable& table, const ModerationModel& model) {
    ModerationReport r;
    r.model = model;

    const auto x = table.values(model.x);
    const auto mod = table.values(model.moderator);
    r.x_mean = mean(x);
    r.moderator_mean = mean(mod);
    r.moderator_sd = sample_sd(mod);
    if (!(r.moderator_sd > 0.0)) throw DataError("moderator \"" + model.moderator + "\" has zero variance");
    r.moderator_median = quantile(mod, 0.5);

    const std::string xc = model.x + "_c";
    const std::string mc = model.moderator + "_c";
    const std::string inter = model.x + "_c:" + model.moderator + "_c";

    DataTable work;
    std::vector<double> xcv(x.size()), mcv(x.size()), prod(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xcv[i] = x[i] - r.x_mean;
        mcv[i] = mod[i] - r.moderator_mean;
        prod[i] = xcv[i] * mcv[i];
    }
    work.add_column(xc, std::move(xcv));
    work.add_column(mc, std::move(mcv));
    work.add_column(inter, std::move(prod));
    for (const auto& c : model.controls) work.add_column(table.column(c));
    work.add_column(table.column(model.y));

    std::vector<std::string> predictors{xc, mc, inter};
    predictors.insert(predictors.end(), model.controls.begin(), model.controls.end());
    const CoefView fit = fit_view(work, model.y, predictors, model.outcome_kind);
    r.x = fit.estimate(xc);
    r.moderator = fit.estimate(mc);
    r.interaction = fit.estimate(inter);

    const auto jx = static_cast<Eigen::Index>(fit.index(xc));
    const auto ji = static_cast<Eigen::Index>(fit.index(inter));
    const double vxx = fit.covariance(jx, jx);
    const double vii = fit.covariance(ji, ji);
    const double vxi = fit.covariance(jx, ji);
    const std::pair<const char*, double> levels[] = {{"-1sd", -r.moderator_sd}, {"mean", 0.0}, {"+1sd", r.moderator_sd}};
    for (const auto& [label, level] : levels) {
        SimpleSlope s;
        s.label = label;
        s.moderator = level;
        s.slope = r.x.coef + r.interaction.coef * level;
        s.se = std::sqrt(std::max(0.0, vxx + level * level * vii + 2.0 * level * vxi));
        s.p = s.se > 0.0 ? fit.p_of(s.slope / s.se) : (s.slope == 0.0 ? 1.0 : 0.0);
        r.simple_slopes.push_back(s);
    }

    std::vector<std::size_t> low_rows, high_rows;
    for (std::size_t i = 0; i < mod.size(); ++i) (mod[i] <= r.moderator_median ? low_rows : high_rows).push_back(i);
    std::vector<std::string> sub_predictors{model.x};
    sub_predictors.insert(sub_predictors.end(), model.controls.begin(), model.controls.end());
    auto subgroup = [&](const char* label, const std::vector<std::size_t>& rows) {
        SubgroupSlope s;
        s.label = label;
        s.n = rows.size();
        const CoefView f = fit_view(subset(table, rows), model.y, sub_predictors, model.outcome_kind);
        const PathEstimate e = f.estimate(model.x);
        s.slope = e.coef;
        s.se = e.se;
        s.p = e.p;
        return s;
    };
    r.low = subgroup("low", low_rows);
    r.high = subgroup("high", high_rows);
    return r;
}

}  // namespace pathsim
