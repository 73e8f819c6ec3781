#include <algorithm>
#include <cmath>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/table.hpp"

namespace pathsim {

double VifTable::vif(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return values[i];
    throw DataError("no VIF recorded for \"" + std::string(name) + "\"");
}

namespace {

// Auxiliary R^2 at or above this is treated as perfect collinearity.
constexpr double kPerfectFit = 1.0 - 1e-12;

double auxiliary_vif(const Eigen::MatrixXd& cols, Eigen::Index j) {
    const Eigen::Index n = cols.rows();
    const Eigen::Index k = cols.cols();
    Eigen::MatrixXd x(n, k);
    x.col(0).setOnes();
    for (Eigen::Index c = 0, out = 1; c < k; ++c)
        if (c != j) x.col(out++) = cols.col(c);
    const Eigen::VectorXd y = cols.col(j);
    // Rank-revealing solve; dependent regressors get zero weight instead of failing.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    const Eigen::VectorXd beta = qr.solve(y);
    const double rss = (y - x * beta).squaredNorm();
    const double tss = (y.array() - y.mean()).square().sum();
    if (tss == 0.0) return kInfiniteVif;
    const double r2 = 1.0 - rss / tss;
    if (r2 >= kPerfectFit) return kInfiniteVif;
    return 1.0 / (1.0 - std::max(0.0, r2));
}

}  // namespace

VifTable vif(const DataTable& table, std::span<const std::string> columns) {
    if (columns.size() < 2) throw DataError("vif needs at least 2 columns");
    const auto n = static_cast<Eigen::Index>(table.n_rows());
    const auto k = static_cast<Eigen::Index>(columns.size());
    if (n <= k) throw FitError(FitErrorKind::insufficient_rows, "vif: fewer rows than columns");
    Eigen::MatrixXd cols(n, k);
    for (Eigen::Index j = 0; j < k; ++j) cols.col(j) = column_vector(table, columns[static_cast<std::size_t>(j)]);

    VifTable out;
    out.names.assign(columns.begin(), columns.end());
    out.values.resize(columns.size());
    for (Eigen::Index j = 0; j < k; ++j) out.values[static_cast<std::size_t>(j)] = auxiliary_vif(cols, j);
    return out;
}

VifPruneResult vif_prune(const DataTable& table, std::span<const std::string> columns, double threshold) {
    std::vector<std::string> current(columns.begin(), columns.end());
    std::vector<VifRemoval> trace;
    VifTable table_now = vif(table, current);
    while (current.size() >= 2) {
        // Highest VIF; on ties (relative 1e-9, or both infinite) the later column wins.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < current.size(); ++i) {
            const double a = table_now.values[i];
            const double b = table_now.values[worst];
            const bool tie = a == b || (std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= 1e-9 * std::abs(b));
            if (a > b || tie) worst = i;
        }
        if (!(table_now.values[worst] > threshold)) break;
        trace.push_back({current[worst], table_now.values[worst]});
        current.erase(current.begin() + static_cast<long>(worst));
        if (current.size() < 2) {
            table_now.names = current;
            table_now.values.assign(current.size(), 1.0);
            break;
        }
        table_now = vif(table, current);
    }
    table_now.trace = std::move(trace);
    return {current, std::move(table_now)};
}

}  // namespace pathsim
