#include <algorithm>
#include <cmath>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

std::size_t LogitFit::term_index(std::string_view term) const {
    const auto it = std::find(terms.begin(), terms.end(), term);
    if (it == terms.end()) throw DataError("term \"" + std::string(term) + "\" not in model");
    return static_cast<std::size_t>(it - terms.begin());
}

namespace {

double softplus(double eta) { return std::max(eta, 0.0) + std::log1p(std::exp(-std::abs(eta))); }

double sigmoid(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

double loglik_from_eta(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y[i] * eta[i] - softplus(eta[i]);
    return ll;
}

}  // namespace

double logit_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta) {
    return loglik_from_eta(x * beta, y);
}

LogitFit logit_fit(const Design& design, const Eigen::VectorXd& y, const LogitOptions& options) {
    const Eigen::MatrixXd& x = design.x;
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (y.size() != n) throw DataError("logit_fit: response length differs from design");
    std::size_t positives = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (y[i] != 0.0 && y[i] != 1.0) throw FitError(FitErrorKind::non_binary_response, "logit response must be 0/1");
        positives += y[i] == 1.0;
    }
    if (positives == 0 || positives == static_cast<std::size_t>(n))
        throw FitError(FitErrorKind::single_class, "logit response has a single class");
    if (n <= k) throw FitError(FitErrorKind::insufficient_rows, "logit model has no residual degrees of freedom");
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(n, k);
        qr.setThreshold(1e-10);
        qr.compute(x);
        if (qr.rank() < k) {
            std::vector<std::string> dependent;
            for (Eigen::Index j = qr.rank(); j < k; ++j)
                dependent.push_back(design.terms[static_cast<std::size_t>(qr.colsPermutation().indices()[j])]);
            std::string msg = "logit design is rank deficient; dependent column(s):";
            for (const auto& d : dependent) msg += " " + d;
            throw FitError(FitErrorKind::rank_deficient, msg, dependent);
        }
    }

    LogitFit fit;
    fit.terms = design.terms;
    fit.n = static_cast<std::size_t>(n);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double ll = loglik_from_eta(eta, y);
    fit.loglik_trace.push_back(ll);

    Eigen::VectorXd p(n), w(n), score(k);
    Eigen::MatrixXd info(k, k);
    auto refresh = [&] {
        for (Eigen::Index i = 0; i < n; ++i) {
            p[i] = sigmoid(eta[i]);
            w[i] = p[i] * (1.0 - p[i]);
        }
        score = x.transpose() * (y - p);
        info = x.transpose() * w.asDiagonal() * x;
    };

    refresh();
    while (true) {
        if (score.cwiseAbs().maxCoeff() < options.score_tol) {
            fit.converged = true;
            break;
        }
        if (fit.iterations >= options.max_iter) break;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
            throw FitError(FitErrorKind::separation, "logit information matrix is singular (separated data)");
        const Eigen::VectorXd delta = ldlt.solve(score);

        // Step halving keeps the log-likelihood nondecreasing.
        double step = 1.0;
        Eigen::VectorXd candidate = beta + delta;
        Eigen::VectorXd eta_new = x * candidate;
        double ll_new = loglik_from_eta(eta_new, y);
        for (int halvings = 0; halvings < 40 && !(ll_new >= ll); ++halvings) {
            step *= 0.5;
            candidate = beta + step * delta;
            eta_new = x * candidate;
            ll_new = loglik_from_eta(eta_new, y);
        }
        ++fit.iterations;
        if (!(ll_new >= ll)) {
            // No ascent possible along the Newton direction: at the optimum up to rounding.
            fit.converged = true;
            break;
        }
        const double change = (candidate - beta).cwiseAbs().maxCoeff();
        beta = candidate;
        eta = eta_new;
        ll = ll_new;
        fit.loglik_trace.push_back(ll);
        refresh();
        if (change < options.step_tol) {
            fit.converged = true;
            break;
        }
    }

    if (eta.cwiseAbs().maxCoeff() > options.separation_eta)
        throw FitError(FitErrorKind::separation,
                       "logit coefficients diverge: fitted probabilities reach 0 or 1 (quasi-complete separation)");

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    fit.covariance = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    fit.log_likelihood = ll;
    fit.aic = -2.0 * ll + 2.0 * static_cast<double>(k);
    fit.max_abs_score = score.cwiseAbs().maxCoeff();
    fit.coefficients.resize(static_cast<std::size_t>(k));
    fit.std_errors.resize(static_cast<std::size_t>(k));
    fit.z_stats.resize(static_cast<std::size_t>(k));
    fit.p_values.resize(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        fit.coefficients[jj] = beta[j];
        fit.std_errors[jj] = std::sqrt(std::max(0.0, fit.covariance(j, j)));
        fit.z_stats[jj] = fit.std_errors[jj] > 0.0 ? beta[j] / fit.std_errors[jj] : 0.0;
        fit.p_values[jj] = z_two_sided_p(fit.z_stats[jj]);
    }
    fit.fitted.assign(p.data(), p.data() + n);
    fit.linear_predictor.assign(eta.data(), eta.data() + n);
    return fit;
}

LogitFit logit_fit(const DataTable& table, std::string_view response, std::span<const std::string> predictors,
                   const LogitOptions& options) {
    const Design design = build_design(table, predictors, true);
    return logit_fit(design, column_vector(table, response), options);
}

}  // namespace pathsim
