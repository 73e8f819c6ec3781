#include "pathsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pathsim/error.hpp"

namespace pathsim {

double mean(std::span<const double> x) {
    if (x.empty()) throw DataError("mean of empty vector");
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

SummaryStats summarize(std::span<const double> x) {
    if (x.empty()) throw DataError("summary of empty vector");
    SummaryStats s;
    s.n = x.size();
    s.mean = mean(x);
    s.sd = sample_sd(x);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

double pearson_corr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DataError("pearson_corr: length mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    if (x.size() < 2) throw DataError("pearson_corr: need at least 2 observations");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("pearson_corr: zero-variance column");
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> standardize(std::span<const double> x) {
    const double m = mean(x);
    const double sd = sample_sd(x);
    if (!(sd > 0.0)) throw DataError("standardize: zero-variance column");
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] - m) / sd;
    return z;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw DataError("quantile of empty vector");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must lie in [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    const double frac = h - static_cast<double>(lo);
    if (lo == hi || frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> x, double q) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, q);
}

namespace {

struct Centered {
    std::vector<std::vector<double>> dev;
    std::vector<double> norm;
};

Centered center_columns(const std::vector<std::span<const double>>& columns) {
    Centered c;
    c.dev.reserve(columns.size());
    c.norm.reserve(columns.size());
    const std::size_t n = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != n) throw DataError("correlation_matrix: columns differ in length");
        const double m = mean(col);
        std::vector<double> d(col.size());
        double ss = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i) {
            d[i] = col[i] - m;
            ss += d[i] * d[i];
        }
        if (ss == 0.0) throw DataError("correlation_matrix: zero-variance column");
        c.dev.push_back(std::move(d));
        c.norm.push_back(ss);
    }
    return c;
}

double corr_cell(const Centered& c, std::size_t a, std::size_t b) {
    double sxy = 0.0;
    const auto& x = c.dev[a];
    const auto& y = c.dev[b];
    for (std::size_t i = 0; i < x.size(); ++i) sxy += x[i] * y[i];
    return std::clamp(sxy / std::sqrt(c.norm[a] * c.norm[b]), -1.0, 1.0);
}

}  // namespace

std::vector<double> correlation_matrix_serial(const std::vector<std::span<const double>>& columns) {
    const std::size_t k = columns.size();
    const Centered c = center_columns(columns);
    std::vector<double> out(k * k, 1.0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            const double r = corr_cell(c, a, b);
            out[a * k + b] = r;
            out[b * k + a] = r;
        }
    }
    return out;
}

std::vector<double> correlation_matrix(const std::vector<std::span<const double>>& columns) {
    const std::size_t k = columns.size();
    const Centered c = center_columns(columns);
    std::vector<double> out(k * k, 1.0);
    const auto pairs = static_cast<long long>(k * k);
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < pairs; ++idx) {
        const auto a = static_cast<std::size_t>(idx) / k;
        const auto b = static_cast<std::size_t>(idx) % k;
        if (b <= a) continue;
        const double r = corr_cell(c, a, b);
        out[a * k + b] = r;
        out[b * k + a] = r;
    }
    return out;
}

}  // namespace pathsim
