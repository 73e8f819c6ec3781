#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pathsim {

class DataTable;

enum class OutcomeKind { continuous, binary };
enum class MediationClass { full, partial, none };

const char* to_string(OutcomeKind kind) noexcept;
const char* to_string(MediationClass c) noexcept;

/// Which variables form the X -> M -> Y chain.
struct MediationModel {
    std::string x;
    std::string m;
    std::string y;
    std::vector<std::string> controls;
    OutcomeKind outcome_kind = OutcomeKind::continuous;
};

struct PathEstimate {
    double coef = 0.0;
    double se = 0.0;
    double p = 1.0;
};

struct BootstrapSummary {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    std::size_t resamples = 0;  // requested
    std::size_t failures = 0;   // discarded (separation, rank loss, single class)
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
    std::vector<double> estimates;  // successful a*b draws, in resample order
};

struct MediationReport {
    MediationModel model;
    PathEstimate a;        // M ~ X + controls
    PathEstimate b;        // Y ~ X + M + controls, coefficient of M
    PathEstimate c;        // Y ~ X + controls
    PathEstimate c_prime;  // Y ~ X + M + controls, coefficient of X
    double indirect = 0.0;
    double alpha = 0.05;
    MediationClass classification = MediationClass::none;
    std::optional<BootstrapSummary> bootstrap;
};

/// Classical four regressions (c, a, b, c'). Outcome models are OLS for a
/// continuous Y and logit for a binary Y; the a path is always OLS.
///   full    <=> a, b, c significant and c' not
///   partial <=> a, b, c and c' all significant
///   none    otherwise
MediationReport baron_kenny(const DataTable& table, const MediationModel& model, double alpha = 0.05);

/// Row indices of resample r (size n, drawn with replacement).
using ResampleFn = std::function<std::vector<std::size_t>(std::size_t r)>;

struct BootstrapOptions {
    std::size_t resamples = 5000;
    double level = 0.95;
    std::uint64_t seed = 42;
    /// More failed resamples than this fraction aborts with a DataError.
    double max_failure_fraction = 0.10;
    /// Overrides seeded case resampling (e.g. exhaustive enumeration).
    ResampleFn resample;
};

/// Case-resampling bootstrap of a*b with a percentile interval. Resample r
/// draws its rows from RngStream(seed, r) unless options.resample is set, so
/// the result does not depend on execution order. The parallel kernel is
/// bit-identical to the serial reference.
BootstrapSummary bootstrap_indirect(const DataTable& table, const MediationModel& model, const BootstrapOptions& options);
BootstrapSummary bootstrap_indirect_serial(const DataTable& table, const MediationModel& model,
                                           const BootstrapOptions& options);

/// Rows of resample r under seeded case resampling.
std::vector<std::size_t> seeded_resample(std::uint64_t seed, std::size_t r, std::size_t n);

/// Percentile interval over `estimates` (linear-interpolation quantiles).
std::pair<double, double> percentile_interval(std::vector<double> estimates, double level);

// ---------------------------------------------------------------------------

struct ModerationModel {
    std::string x;
    std::string moderator;
    std::string y;
    std::vector<std::string> controls;
    OutcomeKind outcome_kind = OutcomeKind::continuous;
};

struct SimpleSlope {
    std::string label;        // "-1sd", "mean", "+1sd"
    double moderator = 0.0;   // centered moderator value
    double slope = 0.0;
    double se = 0.0;
    double p = 1.0;
};

struct SubgroupSlope {
    std::string label;  // "low" (moderator <= median) or "high"
    std::size_t n = 0;
    double slope = 0.0;
    double se = 0.0;
    double p = 1.0;
};

struct ModerationReport {
    ModerationModel model;
    PathEstimate x;            // centered x main effect
    PathEstimate moderator;    // centered moderator main effect
    PathEstimate interaction;  // coefficient of x_c * mod_c
    double x_mean = 0.0;
    double moderator_mean = 0.0;
    double moderator_sd = 0.0;
    double moderator_median = 0.0;
    std::vector<SimpleSlope> simple_slopes;
    SubgroupSlope low;
    SubgroupSlope high;
};

/// Mean-centers x and the moderator, fits y ~ x_c + mod_c + x_c*mod_c + controls
/// (OLS or logit), evaluates simple slopes at mod_c = -sd, 0, +sd with SEs from
/// the coefficient covariance, and refits y ~ x + controls on the median-split
/// halves. Throws DataError for a zero-variance moderator.
ModerationReport moderation(const DataTable& table, const ModerationModel& model);

}  // namespace pathsim
