#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pathsim {

class DataTable;

inline constexpr const char* kInterceptTerm = "(Intercept)";

/// Design matrix with named columns.
struct Design {
    std::vector<std::string> terms;
    Eigen::MatrixXd x;
};

/// Builds [1 | predictors] (or just predictors). Throws DataError for missing
/// columns or non-finite values and FitError(zero_variance) naming any
/// constant predictor.
Design build_design(const DataTable& table, std::span<const std::string> predictors, bool intercept = true);
Eigen::VectorXd column_vector(const DataTable& table, std::string_view name);

// ---------------------------------------------------------------------------
// OLS

struct OlsFit {
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;
    Eigen::MatrixXd covariance;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double rss = 0.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double residual_sd = 0.0;
    double aic = 0.0;  // n ln(RSS / n) + 2k
    std::size_t n = 0;
    std::size_t df_resid = 0;
    bool intercept = true;

    std::size_t term_index(std::string_view term) const;
    double coef(std::string_view term) const { return coefficients[term_index(term)]; }
    double p_value(std::string_view term) const { return p_values[term_index(term)]; }
};

/// Least squares via column-pivoted Householder QR. Requires n > #terms and
/// full column rank (FitError names the dependent columns otherwise).
/// Standard errors come from sigma^2 (X'X)^-1, p values from Student t with
/// df = n - #terms.
OlsFit ols_fit(const DataTable& table, std::string_view response, std::span<const std::string> predictors,
               bool intercept = true);
OlsFit ols_fit(const Design& design, const Eigen::VectorXd& y, std::string_view response = "y");

/// Coefficients only; needs full rank but no residual degrees of freedom.
/// Used inside resampling loops.
Eigen::VectorXd ols_coefficients(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

// ---------------------------------------------------------------------------
// VIF

inline constexpr double kInfiniteVif = std::numeric_limits<double>::infinity();

struct VifRemoval {
    std::string name;
    double vif = 0.0;
};

struct VifTable {
    std::vector<std::string> names;
    std::vector<double> values;  // infinite under perfect collinearity
    std::vector<VifRemoval> trace;

    double vif(std::string_view name) const;
};

/// VIF_j = 1 / (1 - R^2_j), R^2_j from regressing column j on the others with
/// an intercept. Perfect collinearity yields kInfiniteVif.
VifTable vif(const DataTable& table, std::span<const std::string> columns);

struct VifPruneResult {
    std::vector<std::string> retained;
    VifTable table;  // VIFs of the retained set plus the elimination trace
};

/// Drops the highest-VIF column while any VIF exceeds `threshold`; ties go to
/// the later-declared column.
VifPruneResult vif_prune(const DataTable& table, std::span<const std::string> columns, double threshold = 5.0);

// ---------------------------------------------------------------------------
// Stepwise

enum class StepDirection { forward, backward, both };
enum class StepCriterion { aic, pvalue };

struct StepwiseStep {
    std::string action;  // "start", "add" or "remove"
    std::string term;
    double aic = 0.0;
    double p_value = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> model;
};

struct StepwiseResult {
    OlsFit fit;
    std::vector<std::string> selected;
    std::vector<StepwiseStep> trace;
};

struct StepwiseOptions {
    StepDirection direction = StepDirection::both;
    StepCriterion criterion = StepCriterion::aic;
    double p_enter = 0.05;
    double p_remove = 0.10;
};

/// Greedy selection. AIC mode takes the single move that lowers AIC most and
/// stops at a local minimum; p-value mode enters below p_enter and removes
/// above p_remove.
StepwiseResult stepwise(const DataTable& table, std::string_view response, std::span<const std::string> candidates,
                        const StepwiseOptions& options = {});

// ---------------------------------------------------------------------------
// Logistic regression

struct LogitOptions {
    int max_iter = 50;
    double score_tol = 1e-8;
    double step_tol = 1e-10;
    /// |linear predictor| above this on any row after convergence flags separation.
    double separation_eta = 20.0;
};

struct LogitFit {
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> z_stats;
    std::vector<double> p_values;
    Eigen::MatrixXd covariance;
    std::vector<double> fitted;  // probabilities
    std::vector<double> linear_predictor;
    std::vector<double> loglik_trace;  // one entry per accepted iterate, starting value first
    double log_likelihood = 0.0;
    double aic = 0.0;  // -2 loglik + 2k
    double max_abs_score = 0.0;
    std::size_t n = 0;
    int iterations = 0;
    bool converged = false;

    std::size_t term_index(std::string_view term) const;
    double coef(std::string_view term) const { return coefficients[term_index(term)]; }
    double p_value(std::string_view term) const { return p_values[term_index(term)]; }
};

/// Bernoulli maximum likelihood by IRLS with step halving. Throws FitError for
/// a non-binary or single-class response, rank deficiency, or separation.
LogitFit logit_fit(const DataTable& table, std::string_view response, std::span<const std::string> predictors,
                   const LogitOptions& options = {});
LogitFit logit_fit(const Design& design, const Eigen::VectorXd& y, const LogitOptions& options = {});

/// Bernoulli log-likelihood of coefficients `beta`.
double logit_loglik(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& beta);

// ---------------------------------------------------------------------------
// ROC

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // (0,0) first, then one per distinct score, descending
    double auc = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

/// Mann-Whitney AUC with midranks for ties. Throws FitError(single_class)
/// unless both labels occur.
RocCurve roc_auc(std::span<const double> scores, std::span<const double> labels);

// ---------------------------------------------------------------------------

/// Two-sided p value of a t statistic with `df` degrees of freedom.
double t_two_sided_p(double t, double df);
/// Two-sided p value of a standard normal statistic.
double z_two_sided_p(double z);

}  // namespace pathsim
