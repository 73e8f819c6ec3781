#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pathsim {

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample (n - 1) denominator
    double min = 0.0;
    double max = 0.0;
};

double mean(std::span<const double> x);
/// Sample standard deviation; 0 for fewer than two values.
double sample_sd(std::span<const double> x);
SummaryStats summarize(std::span<const double> x);

/// Sample Pearson correlation, clamped to [-1, 1].
/// Throws DataError on length mismatch, n < 2, or a zero-variance column.
double pearson_corr(std::span<const double> x, std::span<const double> y);

/// z-scores using the sample sd. Throws DataError on zero variance.
std::vector<double> standardize(std::span<const double> x);

/// Linear-interpolation quantile: h = (n - 1) q, interpolated between floor(h)
/// and ceil(h) of the sorted data. Throws on empty x or q outside [0, 1].
double quantile(std::span<const double> x, double q);
/// Same rule on data the caller has already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double q);

/// Row-major k x k correlation matrix of k equal-length columns.
/// The parallel kernel splits the upper triangle across OpenMP threads and is
/// bit-identical to the serial reference.
std::vector<double> correlation_matrix(const std::vector<std::span<const double>>& columns);
std::vector<double> correlation_matrix_serial(const std::vector<std::span<const double>>& columns);

}  // namespace pathsim
