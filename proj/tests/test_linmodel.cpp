#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/synthgen.hpp"

using namespace pathsim;

namespace {

std::vector<std::string> names(std::initializer_list<const char*> l) { return {l.begin(), l.end()}; }

// Random design: y = 1 + 0.5 x1 - 0.8 x2 + 0.3 x3 + noise.
DataTable random_design(std::uint64_t seed, std::size_t n) {
    DataTable t;
    const auto x1 = fixtures::normals(seed, 0, n);
    const auto x2 = fixtures::normals(seed, 1, n);
    auto x3 = fixtures::normals(seed, 2, n);
    const auto e = fixtures::normals(seed, 3, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x3[i] = 4.0 + 2.0 * x3[i] + 0.3 * x1[i];
        y[i] = 1.0 + 0.5 * x1[i] - 0.8 * x2[i] + 0.3 * x3[i] + e[i];
    }
    t.add_column("x1", x1);
    t.add_column("x2", x2);
    t.add_column("x3", x3);
    t.add_column("y", y);
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// OLS

TEST_CASE("ols: exact line") {
    const DataTable t = fixtures::table({{"x", {1, 2, 3, 4}}, {"y", {2, 4, 6, 8}}});
    const OlsFit f = ols_fit(t, "y", names({"x"}));
    CHECK(std::abs(f.coef("x") - 2.0) < 1e-12);
    CHECK(std::abs(f.coef(kInterceptTerm)) < 1e-12);
    CHECK(std::abs(f.r2 - 1.0) < 1e-12);
}

TEST_CASE("ols: hand-computed four-point fixture") {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 2, 2, 4};
    const DataTable t = fixtures::table({{"x", x}, {"y", y}});
    const OlsFit f = ols_fit(t, "y", names({"x"}));
    const oracle::Line line = oracle::simple_ols(x, y);
    CHECK(std::abs(line.slope - 0.9) < 1e-12);
    CHECK(std::abs(line.intercept - 0.9) < 1e-12);
    CHECK(std::abs(f.coef("x") - 0.9) < 1e-12);
    CHECK(std::abs(f.coef(kInterceptTerm) - 0.9) < 1e-12);

    // residuals 0.1, 0.2, -0.7, 0.4: RSS 0.7, sigma^2 0.35, Sxx 5, TSS 4.75
    CHECK(std::abs(f.rss - 0.7) < 1e-12);
    CHECK(f.df_resid == 2);
    const double se_slope = std::sqrt(0.35 / 5.0);
    CHECK(std::abs(f.std_errors[f.term_index("x")] - se_slope) < 1e-12);
    // intercept variance sigma^2 (1/n + xbar^2 / Sxx)
    CHECK(std::abs(f.std_errors[f.term_index(kInterceptTerm)] - std::sqrt(0.35 * (0.25 + 2.25 / 5.0))) < 1e-12);
    const double tstat = 0.9 / se_slope;
    CHECK(std::abs(f.t_stats[f.term_index("x")] - tstat) < 1e-10);
    // Student t with 2 df: two-sided p = 1 - t / sqrt(t^2 + 2)
    CHECK(std::abs(f.p_value("x") - (1.0 - tstat / std::sqrt(tstat * tstat + 2.0))) < 1e-10);
    CHECK(std::abs(f.r2 - (1.0 - 0.7 / 4.75)) < 1e-12);
    CHECK(std::abs(f.adj_r2 - (1.0 - (0.7 / 2.0) / (4.75 / 3.0))) < 1e-12);
    CHECK(std::abs(f.aic - (4.0 * std::log(0.7 / 4.0) + 4.0)) < 1e-12);
    CHECK(std::abs(f.residual_sd - std::sqrt(0.35)) < 1e-12);
}

TEST_CASE("ols: errors") {
    SUBCASE("rank deficiency names the dependent columns") {
        const auto a = fixtures::normals(1, 0, 20);
        const auto b = fixtures::normals(1, 1, 20);
        std::vector<double> c(20), y = fixtures::normals(1, 2, 20);
        for (std::size_t i = 0; i < 20; ++i) c[i] = a[i] + b[i];
        DataTable t = fixtures::table({{"a", a}, {"b", b}, {"c", c}, {"y", y}});
        try {
            ols_fit(t, "y", names({"a", "b", "c"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::rank_deficient);
            CHECK(!e.columns().empty());
            const auto& cols = e.columns();
            CHECK(std::any_of(cols.begin(), cols.end(), [](const std::string& s) { return s == "a" || s == "b" || s == "c"; }));
        }
    }
    SUBCASE("insufficient rows") {
        const DataTable t = fixtures::table({{"x", {1, 2}}, {"y", {3, 5}}});
        try {
            ols_fit(t, "y", names({"x"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::insufficient_rows);
        }
    }
    SUBCASE("zero-variance predictor is named") {
        const DataTable t = fixtures::table({{"k", {1, 1, 1, 1}}, {"x", {1, 2, 3, 5}}, {"y", {3, 5, 4, 6}}});
        try {
            ols_fit(t, "y", names({"x", "k"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::zero_variance);
            CHECK(e.columns() == std::vector<std::string>{"k"});
        }
    }
    SUBCASE("missing column") {
        const DataTable t = fixtures::table({{"x", {1, 2, 3, 4}}, {"y", {3, 5, 4, 6}}});
        CHECK_THROWS_AS(ols_fit(t, "y", names({"nope"})), DataError);
    }
}

TEST_CASE("ols: residuals are orthogonal to every predictor") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 30 + 10 * seed;
        const DataTable t = random_design(seed, n);
        const OlsFit f = ols_fit(t, "y", names({"x1", "x2", "x3"}));
        double sum = 0.0;
        for (double r : f.residuals) sum += r;
        CHECK(std::abs(sum) < 1e-8 * n);
        for (const char* c : {"x1", "x2", "x3"}) {
            const auto x = t.values(c);
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += x[i] * f.residuals[i];
            CHECK(std::abs(dot) < 1e-8 * n);
        }
        CHECK(f.r2 >= 0.0);
        CHECK(f.r2 <= 1.0);
        CHECK(f.adj_r2 <= f.r2);
        CHECK(f.df_resid == n - 4);
        for (double p : f.p_values) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("ols: standardized coefficients equal raw coefficients times sd_x / sd_y") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DataTable t = random_design(seed, 80);
        const OlsFit raw = ols_fit(t, "y", names({"x1", "x2", "x3"}));
        DataTable z;
        for (const char* c : {"x1", "x2", "x3", "y"}) z.add_column(c, standardize(t.values(c)));
        const OlsFit std_fit = ols_fit(z, "y", names({"x1", "x2", "x3"}));
        const double sy = sample_sd(t.values("y"));
        for (const char* c : {"x1", "x2", "x3"})
            CHECK(std::abs(std_fit.coef(c) - raw.coef(c) * sample_sd(t.values(c)) / sy) < 1e-8);
    }
}

TEST_CASE("ols: no-intercept fit") {
    const DataTable t = fixtures::table({{"x", {1, 2, 3, 4}}, {"y", {2.1, 3.9, 6.2, 7.8}}});
    const OlsFit f = ols_fit(t, "y", names({"x"}), false);
    CHECK(f.terms == std::vector<std::string>{"x"});
    // sum xy / sum xx
    CHECK(std::abs(f.coef("x") - (2.1 + 7.8 + 18.6 + 31.2) / 30.0) < 1e-12);
}

TEST_CASE("ols: default scenario Y2 and Y3 models") {
    const DataTable p = prepare_features(generate(default_scenario()));
    const OlsFit y2 = ols_fit(p, "Y2", names({"X2", "M2", "X6"}));
    CHECK(y2.r2 >= 0.46);
    CHECK(y2.r2 <= 0.62);
    const OlsFit y3 = ols_fit(p, "Y3", names({"M2", "X5"}));
    CHECK(y3.r2 >= 0.34);
    CHECK(y3.r2 <= 0.50);
}

// ---------------------------------------------------------------------------
// VIF

TEST_CASE("vif: orthogonal centered columns") {
    const DataTable t = fixtures::table({{"a", {1, -1, 1, -1}}, {"b", {1, 1, -1, -1}}});
    const VifTable v = vif(t, names({"a", "b"}));
    CHECK(std::abs(v.vif("a") - 1.0) < 1e-12);
    CHECK(std::abs(v.vif("b") - 1.0) < 1e-12);
}

TEST_CASE("vif: exact linear combination is infinite") {
    const auto a = fixtures::normals(3, 0, 30);
    const auto b = fixtures::normals(3, 1, 30);
    std::vector<double> c(30);
    for (std::size_t i = 0; i < 30; ++i) c[i] = a[i] + b[i];
    const DataTable t = fixtures::table({{"a", a}, {"b", b}, {"c", c}});
    const VifTable v = vif(t, names({"a", "b", "c"}));
    CHECK(std::isinf(v.vif("c")));
    CHECK(std::isinf(v.vif("a")));
}

TEST_CASE("vif: equicorrelated triple has VIF 1.5") {
    // Columns h1 + h4, h2 + h4, h3 + h4 of an order-8 Hadamard matrix: centered,
    // equal norms, pairwise correlation exactly 1/2.
    const double h[8][4] = {{1, 1, 1, 1},   {-1, 1, -1, 1}, {1, -1, -1, 1}, {-1, -1, 1, 1},
                            {1, 1, 1, -1},  {-1, 1, -1, -1}, {1, -1, -1, -1}, {-1, -1, 1, -1}};
    std::vector<double> c1(8), c2(8), c3(8);
    for (int i = 0; i < 8; ++i) {
        c1[i] = h[i][0] + h[i][3];
        c2[i] = h[i][1] + h[i][3];
        c3[i] = h[i][2] + h[i][3];
    }
    REQUIRE(std::abs(pearson_corr(c1, c2) - 0.5) < 1e-15);
    REQUIRE(std::abs(pearson_corr(c1, c3) - 0.5) < 1e-15);
    REQUIRE(std::abs(pearson_corr(c2, c3) - 0.5) < 1e-15);
    const DataTable t = fixtures::table({{"c1", c1}, {"c2", c2}, {"c3", c3}});
    const VifTable v = vif(t, names({"c1", "c2", "c3"}));
    for (const char* c : {"c1", "c2", "c3"}) CHECK(std::abs(v.vif(c) - 1.5) < 1e-12);
}

TEST_CASE("vif_prune: orthogonal set untouched, near-duplicate eliminated") {
    const std::size_t n = 150;
    DataTable t;
    for (std::uint64_t j = 0; j < 5; ++j) t.add_column("X" + std::to_string(j + 1), fixtures::normals(8, j, n));
    const VifPruneResult keep = vif_prune(t, t.names());
    CHECK(keep.retained == t.names());
    CHECK(keep.table.trace.empty());

    const auto x3 = t.values("X3");
    const auto tiny = fixtures::normals(8, 9, n);
    std::vector<double> dup(n);
    for (std::size_t i = 0; i < n; ++i) dup[i] = x3[i] + 0.01 * tiny[i];
    t.add_column("X3dup", dup);
    const VifPruneResult pruned = vif_prune(t, t.names());
    REQUIRE(pruned.table.trace.size() == 1);
    const std::string removed = pruned.table.trace[0].name;
    CHECK((removed == "X3" || removed == "X3dup"));
    CHECK(pruned.table.trace[0].vif > 5.0);
    CHECK(pruned.retained.size() == 5);
    for (double v : pruned.table.values) CHECK(v <= 5.0);
    for (double v : pruned.table.values) CHECK(v >= 1.0 - 1e-12);
}

TEST_CASE("vif_prune: exact duplicates drop the later column") {
    const auto a = fixtures::normals(4, 0, 40);
    const auto b = fixtures::normals(4, 1, 40);
    const DataTable t = fixtures::table({{"a", a}, {"b", b}, {"a2", a}});
    const VifPruneResult r = vif_prune(t, names({"a", "b", "a2"}));
    CHECK(r.retained == names({"a", "b"}));
    REQUIRE(r.table.trace.size() == 1);
    CHECK(r.table.trace[0].name == "a2");
    CHECK(std::isinf(r.table.trace[0].vif));
}

TEST_CASE("vif_prune: terminates with all survivors under the threshold") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 100;
        DataTable t;
        const auto base = fixtures::normals(seed, 0, n);
        for (std::uint64_t j = 1; j <= 6; ++j) {
            auto col = fixtures::normals(seed, j, n);
            const double load = 0.4 * static_cast<double>(j);
            for (std::size_t i = 0; i < n; ++i) col[i] = load * base[i] + col[i] * 0.3;
            t.add_column("c" + std::to_string(j), col);
        }
        const VifPruneResult r = vif_prune(t, t.names());
        CHECK(r.table.trace.size() + r.retained.size() == 6);
        for (double v : r.table.values) CHECK(v <= 5.0);
    }
}

TEST_CASE("vif_prune: default scenario keeps at least ten columns") {
    const DataTable p = prepare_features(generate(default_scenario()));
    std::vector<std::string> cols;
    for (const auto& name : p.names())
        if (name != "Y1" && name != "Y2" && name != "Y3") cols.push_back(name);
    const VifPruneResult r = vif_prune(p, cols);
    CHECK(r.retained.size() >= 10);
}

// ---------------------------------------------------------------------------
// Stepwise

TEST_CASE("stepwise recovers the single true predictor") {
    const std::size_t n = 150;
    const auto truth = fixtures::normals(21, 0, n);
    const auto e = fixtures::normals(21, 1, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.8 * truth[i] + e[i];
    DataTable t;
    t.add_column("noise1", fixtures::normals(21, 2, n));
    t.add_column("truth", truth);
    t.add_column("noise2", fixtures::normals(21, 3, n));
    t.add_column("noise3", fixtures::normals(21, 4, n));
    t.add_column("y", y);
    const auto cands = names({"noise1", "truth", "noise2", "noise3"});
    for (auto crit : {StepCriterion::aic, StepCriterion::pvalue}) {
        for (auto dir : {StepDirection::forward, StepDirection::backward, StepDirection::both}) {
            StepwiseOptions o;
            o.criterion = crit;
            o.direction = dir;
            const StepwiseResult r = stepwise(t, "y", cands, o);
            CHECK(std::find(r.selected.begin(), r.selected.end(), "truth") != r.selected.end());
            CHECK(!r.trace.empty());
            CHECK(r.trace.front().action == "start");
        }
    }
}

TEST_CASE("stepwise keeps every true parent of a noiseless response") {
    const std::size_t n = 60;
    const auto a = fixtures::normals(5, 0, n), b = fixtures::normals(5, 1, n), c = fixtures::normals(5, 2, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.5 * a[i] - 0.3 * b[i] + 0.2 * c[i];
    const DataTable t = fixtures::table({{"a", a}, {"b", b}, {"c", c}, {"y", y}});
    for (auto dir : {StepDirection::forward, StepDirection::backward, StepDirection::both}) {
        StepwiseOptions o;
        o.direction = dir;
        auto sel = stepwise(t, "y", names({"a", "b", "c"}), o).selected;
        std::sort(sel.begin(), sel.end());
        CHECK(sel == names({"a", "b", "c"}));
    }
}

TEST_CASE("stepwise trace is consistent with AIC decreasing") {
    const DataTable t = random_design(3, 120);
    const StepwiseResult r = stepwise(t, "y", names({"x1", "x2", "x3"}));
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].aic < r.trace[i - 1].aic);
    CHECK(std::abs(r.trace.back().aic - r.fit.aic) < 1e-9);
}

TEST_CASE("stepwise on a response unrelated to the candidate stays intercept-only") {
    // p-value entry at 0.05 with one candidate: the entry rate is the test size.
    int intercept_only = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        const DataTable t = fixtures::table({{"x", fixtures::normals(5000 + rep, 0, 150)},
                                             {"y", fixtures::normals(5000 + rep, 1, 150)}});
        StepwiseOptions o;
        o.criterion = StepCriterion::pvalue;
        intercept_only += stepwise(t, "y", names({"x"}), o).selected.empty();
    }
    CHECK(intercept_only >= 95);
}

// ---------------------------------------------------------------------------
// Logit

TEST_CASE("logit: antisymmetric data gives a zero intercept") {
    std::vector<double> x, y;
    const auto base = fixtures::normals(31, 0, 40);
    const auto u = fixtures::normals(31, 1, 40);
    for (std::size_t i = 0; i < 40; ++i) {
        const double yi = u[i] < 0.8 * base[i] ? 1.0 : 0.0;
        x.push_back(base[i]);
        y.push_back(yi);
        x.push_back(-base[i]);
        y.push_back(1.0 - yi);
    }
    const DataTable t = fixtures::table({{"x", x}});
    DataTable tt = t;
    tt.add_column("y", y, ColumnKind::binary);
    const LogitFit f = logit_fit(tt, "y", names({"x"}));
    CHECK(f.converged);
    CHECK(std::abs(f.coef(kInterceptTerm)) < 1e-6);
}

TEST_CASE("logit: four-point fixture matches the likelihood grid search") {
    const std::vector<double> x{-2, -1, 1, 2}, y{0, 1, 0, 1};
    const oracle::Line mle = oracle::logit_grid_mle(x, y);
    DataTable t;
    t.add_column("x", x);
    t.add_column("y", y, ColumnKind::binary);
    const LogitFit f = logit_fit(t, "y", names({"x"}));
    CHECK(f.converged);
    CHECK(std::abs(f.coef(kInterceptTerm) - mle.intercept) < 1e-4);
    CHECK(std::abs(f.coef("x") - mle.slope) < 1e-4);
    CHECK(f.max_abs_score < 1e-8);
}

TEST_CASE("logit: log-likelihood never decreases across iterations") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const std::size_t n = 200;
        const auto x1 = fixtures::normals(seed, 0, n), x2 = fixtures::normals(seed, 1, n);
        RngStream rng(seed, 2);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double eta = -0.3 + 1.5 * x1[i] - 2.0 * x2[i];
            y[i] = bernoulli_sample(rng, 1.0 / (1.0 + std::exp(-eta)));
        }
        DataTable t = fixtures::table({{"x1", x1}, {"x2", x2}});
        t.add_column("y", y, ColumnKind::binary);
        const LogitFit f = logit_fit(t, "y", names({"x1", "x2"}));
        CHECK(f.converged);
        CHECK(f.iterations <= 50);
        for (std::size_t i = 1; i < f.loglik_trace.size(); ++i) CHECK(f.loglik_trace[i] >= f.loglik_trace[i - 1]);
        CHECK(std::abs(f.aic - (-2.0 * f.log_likelihood + 6.0)) < 1e-9);
        for (double p : f.p_values) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("logit: errors") {
    SUBCASE("single class") {
        DataTable t = fixtures::table({{"x", {1, 2, 3, 4}}});
        t.add_column("y", {1, 1, 1, 1}, ColumnKind::binary);
        try {
            logit_fit(t, "y", names({"x"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::single_class);
        }
    }
    SUBCASE("complete separation is flagged") {
        DataTable t = fixtures::table({{"x", {-3, -2, -1, 1, 2, 3}}});
        t.add_column("y", {0, 0, 0, 1, 1, 1}, ColumnKind::binary);
        try {
            logit_fit(t, "y", names({"x"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::separation);
        }
    }
    SUBCASE("non-binary response") {
        const DataTable t = fixtures::table({{"x", {1, 2, 3, 4}}, {"y", {0, 1, 2, 1}}});
        try {
            logit_fit(t, "y", names({"x"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::non_binary_response);
        }
    }
    SUBCASE("rank deficiency") {
        DataTable t = fixtures::table({{"a", {1, 2, 3, 4, 5, 6}}, {"b", {2, 4, 6, 8, 10, 12}}});
        t.add_column("y", {0, 1, 0, 1, 1, 0}, ColumnKind::binary);
        try {
            logit_fit(t, "y", names({"a", "b"}));
            FAIL("expected FitError");
        } catch (const FitError& e) {
            CHECK(e.kind() == FitErrorKind::rank_deficient);
        }
    }
}

TEST_CASE("logit: default scenario survival model") {
    const DataTable p = prepare_features(generate(default_scenario()));
    const LogitFit f = logit_fit(p, "Y1", names({"X3", "M1", "X6"}));
    CHECK(f.converged);
    CHECK(f.p_value("X3") < 0.05);
    CHECK(f.p_value("M1") < 0.05);
    CHECK(f.p_value("X6") < 0.05);
    CHECK(f.coef("X3") > 0.0);
    CHECK(f.coef("M1") > 0.0);
    CHECK(f.coef("X6") < 0.0);
    const RocCurve roc = roc_auc(f.fitted, p.values("Y1"));
    CHECK(roc.auc >= 0.63);
    CHECK(roc.auc <= 0.79);
}

// ---------------------------------------------------------------------------
// ROC

namespace {

// Pairwise Mann-Whitney count, ties worth one half.
double brute_auc(const std::vector<double>& s, const std::vector<double>& y) {
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (y[i] != 1.0) continue;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (y[j] != 0.0) continue;
            pairs += 1.0;
            wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
        }
    }
    return wins / pairs;
}

}  // namespace

TEST_CASE("roc: fixtures") {
    CHECK(roc_auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, std::vector<double>{0, 0, 1, 1}).auc == 1.0);
    CHECK(roc_auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, std::vector<double>{0, 1, 0, 1}).auc == 0.5);
    CHECK(roc_auc(std::vector<double>{0.9, 0.8, 0.2, 0.1}, std::vector<double>{0, 0, 1, 1}).auc == 0.0);
    CHECK_THROWS_AS(roc_auc(std::vector<double>{0.1, 0.2}, std::vector<double>{1, 1}), FitError);
}

TEST_CASE("roc: AUC equals the pairwise count, complements exactly, curve is monotone") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 20 + seed * 3;
        RngStream rng(seed, 0);
        std::vector<double> s(n), y(n), neg(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = i % 3 == 0 ? 1.0 : 0.0;
            // coarse scores force ties
            s[i] = std::round(4.0 * (rng.standard_normal() + y[i])) / 4.0;
            neg[i] = -s[i];
        }
        const RocCurve r = roc_auc(s, y);
        CHECK(std::abs(r.auc - brute_auc(s, y)) < 1e-12);
        CHECK(r.auc + roc_auc(neg, y).auc == 1.0);
        CHECK(r.points.front().fpr == 0.0);
        CHECK(r.points.front().tpr == 0.0);
        CHECK(r.points.back().fpr == 1.0);
        CHECK(r.points.back().tpr == 1.0);
        for (std::size_t i = 1; i < r.points.size(); ++i) {
            CHECK(r.points[i].fpr >= r.points[i - 1].fpr);
            CHECK(r.points[i].tpr >= r.points[i - 1].tpr);
        }
    }
}
