#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

namespace {

// Relative pivot threshold below which a QR column counts as dependent.
constexpr double kRankTolerance = 1e-10;

}  // namespace

double t_two_sided_p(double t, double df) {
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return 0.0;
    const boost::math::students_t dist(df);
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

double z_two_sided_p(double z) {
    if (std::isnan(z)) return 1.0;
    if (std::isinf(z)) return 0.0;
    const boost::math::normal dist;
    return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(z))), 0.0, 1.0);
}

Eigen::VectorXd column_vector(const DataTable& table, std::string_view name) {
    const auto v = table.values(name);
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw DataError("column \"" + std::string(name) + "\" has non-finite values");
        out[static_cast<Eigen::Index>(i)] = v[i];
    }
    return out;
}

Design build_design(const DataTable& table, std::span<const std::string> predictors, bool intercept) {
    Design d;
    const auto n = static_cast<Eigen::Index>(table.n_rows());
    const auto p = static_cast<Eigen::Index>(predictors.size() + (intercept ? 1 : 0));
    d.x.resize(n, p);
    Eigen::Index col = 0;
    if (intercept) {
        d.terms.emplace_back(kInterceptTerm);
        d.x.col(col++).setOnes();
    }
    for (const auto& name : predictors) {
        if (std::find(d.terms.begin(), d.terms.end(), name) != d.terms.end())
            throw FitError(FitErrorKind::rank_deficient, "predictor \"" + name + "\" listed twice", {name});
        d.x.col(col++) = column_vector(table, name);
        if (sample_sd(table.values(name)) == 0.0)
            throw FitError(FitErrorKind::zero_variance, "predictor \"" + name + "\" has zero variance", {name});
        d.terms.push_back(name);
    }
    return d;
}

std::size_t OlsFit::term_index(std::string_view term) const {
    const auto it = std::find(terms.begin(), terms.end(), term);
    if (it == terms.end()) throw DataError("term \"" + std::string(term) + "\" not in model");
    return static_cast<std::size_t>(it - terms.begin());
}

namespace {

Eigen::ColPivHouseholderQR<Eigen::MatrixXd> checked_qr(const Eigen::MatrixXd& x, const std::vector<std::string>* terms) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x.rows(), x.cols());
    qr.setThreshold(kRankTolerance);
    qr.compute(x);
    if (qr.rank() < x.cols()) {
        std::vector<std::string> dependent;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index k = qr.rank(); k < x.cols(); ++k) {
            const auto idx = static_cast<std::size_t>(perm[k]);
            dependent.push_back(terms ? (*terms)[idx] : "column " + std::to_string(idx));
        }
        std::string msg = "design matrix is rank deficient; dependent column(s):";
        for (const auto& name : dependent) msg += " " + name;
        throw FitError(FitErrorKind::rank_deficient, msg, dependent);
    }
    return qr;
}

}  // namespace

Eigen::VectorXd ols_coefficients(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    if (x.rows() < x.cols()) throw FitError(FitErrorKind::insufficient_rows, "fewer rows than terms");
    return checked_qr(x, nullptr).solve(y);
}

OlsFit ols_fit(const Design& design, const Eigen::VectorXd& y, std::string_view response) {
    const auto n = static_cast<std::size_t>(design.x.rows());
    const auto k = static_cast<std::size_t>(design.x.cols());
    if (n <= k)
        throw FitError(FitErrorKind::insufficient_rows,
                       "model for \"" + std::string(response) + "\" has " + std::to_string(n) + " rows for " +
                           std::to_string(k) + " terms");
    const auto qr = checked_qr(design.x, &design.terms);
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd fitted = design.x * beta;
    const Eigen::VectorXd resid = y - fitted;

    OlsFit fit;
    fit.terms = design.terms;
    fit.n = n;
    fit.df_resid = n - k;
    fit.intercept = !design.terms.empty() && design.terms.front() == kInterceptTerm;
    fit.rss = resid.squaredNorm();

    const double ybar = y.mean();
    const double tss = fit.intercept ? (y.array() - ybar).square().sum() : y.squaredNorm();
    if (tss == 0.0)
        throw FitError(FitErrorKind::zero_variance, "response \"" + std::string(response) + "\" has zero variance",
                       {std::string(response)});
    fit.r2 = std::clamp(1.0 - fit.rss / tss, 0.0, 1.0);
    const double denom_df = static_cast<double>(fit.intercept ? n - 1 : n);
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * denom_df / static_cast<double>(fit.df_resid);
    const double sigma2 = fit.rss / static_cast<double>(fit.df_resid);
    fit.residual_sd = std::sqrt(sigma2);
    fit.aic = static_cast<double>(n) * std::log(fit.rss / static_cast<double>(n)) + 2.0 * static_cast<double>(k);

    // (X'X)^-1 = P R^-1 R^-T P^T for X P = Q R.
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k))
                                  .triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
    const Eigen::MatrixXd xtx_inv_perm = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * xtx_inv_perm * perm.transpose();
    fit.covariance = sigma2 * xtx_inv;

    fit.coefficients.resize(k);
    fit.std_errors.resize(k);
    fit.t_stats.resize(k);
    fit.p_values.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const double b = beta[jj];
        const double se = std::sqrt(std::max(0.0, fit.covariance(jj, jj)));
        fit.coefficients[j] = b;
        fit.std_errors[j] = se;
        if (se > 0.0) fit.t_stats[j] = b / se;
        else fit.t_stats[j] = b == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), b);
        fit.p_values[j] = t_two_sided_p(fit.t_stats[j], static_cast<double>(fit.df_resid));
    }
    fit.residuals.assign(resid.data(), resid.data() + resid.size());
    fit.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    return fit;
}

OlsFit ols_fit(const DataTable& table, std::string_view response, std::span<const std::string> predictors,
               bool intercept) {
    const Design design = build_design(table, predictors, intercept);
    return ols_fit(design, column_vector(table, response), response);
}

}  // namespace pathsim
