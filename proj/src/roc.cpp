#include <algorithm>
#include <numeric>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"

namespace pathsim {

RocCurve roc_auc(std::span<const double> scores, std::span<const double> labels) {
    if (scores.size() != labels.size()) throw DataError("roc_auc: scores and labels differ in length");
    RocCurve roc;
    for (double l : labels) {
        if (l == 1.0) ++roc.n_pos;
        else if (l == 0.0) ++roc.n_neg;
        else throw FitError(FitErrorKind::non_binary_response, "roc_auc: labels must be 0/1");
    }
    if (roc.n_pos == 0 || roc.n_neg == 0) throw FitError(FitErrorKind::single_class, "roc_auc: labels have a single class");

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the midrank sum of positives stays integral, so U is exact.
    long long twice_rank_sum = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const long long twice_midrank = static_cast<long long>(i + 1 + j);  // 2 * average of ranks i+1..j
        for (std::size_t t = i; t < j; ++t)
            if (labels[order[t]] == 1.0) twice_rank_sum += twice_midrank;
        i = j;
    }
    const long long np = static_cast<long long>(roc.n_pos);
    const long long nn = static_cast<long long>(roc.n_neg);
    const long long twice_u = twice_rank_sum - np * (np + 1);
    const long long twice_pairs = 2 * np * nn;
    const long long twice_v = twice_pairs - twice_u;
    // Report the smaller side directly and the larger as its complement so that
    // auc(s) + auc(-s) == 1 holds exactly in floating point.
    const double pairs = static_cast<double>(twice_pairs);
    roc.auc = twice_u <= twice_v ? static_cast<double>(twice_u) / pairs : 1.0 - static_cast<double>(twice_v) / pairs;

    // Curve: sweep thresholds from the highest score down.
    roc.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = n; i > 0;) {
        std::size_t j = i;
        const double s = scores[order[i - 1]];
        while (j > 0 && scores[order[j - 1]] == s) {
            if (labels[order[j - 1]] == 1.0) ++tp;
            else ++fp;
            --j;
        }
        roc.points.push_back({s, static_cast<double>(fp) / static_cast<double>(roc.n_neg),
                              static_cast<double>(tp) / static_cast<double>(roc.n_pos)});
        i = j;
    }
    return roc;
}

}  // namespace pathsim
