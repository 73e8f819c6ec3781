#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/stats.hpp"
#include "pathsim/synthgen.hpp"

using namespace pathsim;
using fixtures::endogenous;
using fixtures::normal;

namespace {

ScenarioSpec noiseless_system(std::uint64_t seed) {
    ScenarioSpec s;
    s.n = 200;
    s.seed = seed;
    s.variables = {normal("A"), normal("B", 2.0, 0.5), normal("C", -1.0, 3.0), endogenous("M", Role::mediator),
                   endogenous("Y")};
    s.paths = {{"A", "M", 0.6}, {"B", "M", -0.3}, {"M", "Y", 0.7}, {"C", "Y", 0.25}, {"A", "Y", -0.1}};
    s.noise = {{"M", 0.0}, {"Y", 0.0}};
    s.variables[3].intercept = 0.4;
    return s;
}

Column categorical(std::string name, std::vector<std::string> levels, std::vector<double> codes) {
    Column c;
    c.name = std::move(name);
    c.kind = ColumnKind::categorical;
    c.levels = std::move(levels);
    c.values = std::move(codes);
    return c;
}

}  // namespace

TEST_CASE("noiseless path propagates exactly") {
    ScenarioSpec s;
    s.variables = {normal("X3"), endogenous("M1", Role::mediator)};
    s.paths = {{"X3", "M1", 0.5}};
    s.noise = {{"M1", 0.0}};
    const DataTable t = generate(s);
    const auto x = t.values("X3");
    const auto m = t.values("M1");
    for (std::size_t i = 0; i < t.n_rows(); ++i) CHECK(m[i] == 0.5 * x[i]);
}

TEST_CASE("pure interaction propagates exactly") {
    ScenarioSpec s;
    s.variables = {normal("X3"), normal("MOD1", 0.0, 1.0, Role::moderator), endogenous("Y")};
    s.interactions = {{"X3", "MOD1", "Y", 1.0}};
    s.noise = {{"Y", 0.0}};
    const DataTable t = generate(s);
    for (std::size_t i = 0; i < t.n_rows(); ++i) CHECK(t.values("Y")[i] == t.values("X3")[i] * t.values("MOD1")[i]);
}

TEST_CASE("default scenario yields a complete 150 x 14 table") {
    const DataTable t = generate(default_scenario());
    CHECK(t.n_rows() == 150);
    CHECK(t.n_cols() == 14);
    for (const auto& c : t.columns())
        for (double v : c.values) CHECK(std::isfinite(v));
    for (double v : t.values("Y1")) CHECK((v == 0.0 || v == 1.0));
    CHECK(t.column("MOD2").kind == ColumnKind::categorical);
}

TEST_CASE("large-sample mean of a lone normal variable") {
    ScenarioSpec s;
    s.n = 100000;
    s.variables = {normal("Z", 10.0, 2.0)};
    const DataTable t = generate(s);
    // 3 sd / sqrt(n) = 0.019
    CHECK(std::abs(mean(t.values("Z")) - 10.0) < 0.02);
    CHECK(std::abs(sample_sd(t.values("Z")) - 2.0) < 0.02);
}

TEST_CASE("categorical and bernoulli sampling follow their probabilities") {
    ScenarioSpec s;
    s.n = 50000;
    VariableSpec cat;
    cat.name = "K";
    cat.role = Role::moderator;
    cat.kind = Kind::categorical;
    cat.levels = {"a", "b", "c"};
    cat.level_probs = {0.5, 0.3, 0.2};
    VariableSpec bin;
    bin.name = "B";
    bin.kind = Kind::binary;
    bin.bernoulli_p = 0.25;
    s.variables = {cat, bin};
    const DataTable t = generate(s);
    std::vector<double> counts(3, 0.0);
    for (double v : t.values("K")) counts[static_cast<std::size_t>(v)] += 1.0;
    const double n = 50000.0;
    CHECK(std::abs(counts[0] / n - 0.5) < 4 * std::sqrt(0.25 / n));
    CHECK(std::abs(counts[2] / n - 0.2) < 4 * std::sqrt(0.16 / n));
    CHECK(std::abs(mean(t.values("B")) - 0.25) < 4 * std::sqrt(0.1875 / n));
}

TEST_CASE("binary outcome with zero intercept is roughly balanced") {
    ScenarioSpec s;
    s.n = 20000;
    s.variables = {normal("X"), endogenous("Y", Role::outcome, Kind::binary)};
    s.paths = {{"X", "Y", 1.0}};
    s.noise = {{"Y", 0.0}};
    const DataTable t = generate(s);
    CHECK(std::abs(mean(t.values("Y")) - 0.5) < 0.02);
}

TEST_CASE("generation is seed-deterministic and streams are per variable") {
    const ScenarioSpec s = default_scenario();
    CHECK(generate(s) == generate(s));

    ScenarioSpec other = s;
    other.seed = 43;
    CHECK(!(generate(other) == generate(s)));

    // appending a variable leaves existing columns untouched
    ScenarioSpec extended = s;
    extended.variables.push_back(normal("X7"));
    const DataTable a = generate(s);
    const DataTable b = generate(extended);
    for (const auto& c : a.columns()) CHECK(b.column(c.name) == c);
}

TEST_CASE("invalid scenario is refused") {
    ScenarioSpec s = default_scenario();
    s.paths.push_back({"Y1", "M1", 0.2});
    s.paths.push_back({"M1", "Y1", 0.2});
    CHECK_THROWS_AS(generate(s), ScenarioError);
}

TEST_CASE("zero-noise recovery of generating weights") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const ScenarioSpec s = noiseless_system(seed);
        const DataTable t = generate(s);
        const std::vector<std::string> m_parents{"A", "B"};
        const OlsFit fm = ols_fit(t, "M", m_parents);
        CHECK(std::abs(fm.coef("A") - 0.6) < 1e-6);
        CHECK(std::abs(fm.coef("B") + 0.3) < 1e-6);
        CHECK(std::abs(fm.coef(kInterceptTerm) - 0.4) < 1e-6);
        CHECK(fm.r2 >= 1.0 - 1e-9);

        const std::vector<std::string> y_parents{"M", "C", "A"};
        const OlsFit fy = ols_fit(t, "Y", y_parents);
        CHECK(std::abs(fy.coef("M") - 0.7) < 1e-6);
        CHECK(std::abs(fy.coef("C") - 0.25) < 1e-6);
        CHECK(std::abs(fy.coef("A") + 0.1) < 1e-6);
        CHECK(fy.r2 >= 1.0 - 1e-9);
    }
}

TEST_CASE("one_hot uses the first level as reference") {
    DataTable t;
    t.add_column("x", {1, 2, 3, 4});
    t.add_column(categorical("col", {"A", "B", "C"}, {0, 2, 1, 0}));
    t.add_column("z", {5, 6, 7, 8});
    const DataTable h = one_hot(t, "col");
    CHECK(h.names() == std::vector<std::string>{"x", "col=B", "col=C", "z"});
    CHECK(h.column("col=B").kind == ColumnKind::indicator);
    CHECK(h.column("col=B").group == "col");
    // row 0 is level A -> (0, 0); row 1 is level C -> (0, 1)
    CHECK(h.values("col=B")[0] == 0.0);
    CHECK(h.values("col=C")[0] == 0.0);
    CHECK(h.values("col=B")[1] == 0.0);
    CHECK(h.values("col=C")[1] == 1.0);
    CHECK(h.values("col=B")[2] == 1.0);

    DataTable two;
    two.add_column(categorical("size", {"low", "high"}, {0, 1, 1}));
    CHECK(one_hot(two, "size").names() == std::vector<std::string>{"size=high"});
}

TEST_CASE("one_hot errors") {
    DataTable t;
    t.add_column("x", {1, 2});
    t.add_column(categorical("one", {"A"}, {0, 0}));
    t.add_column(categorical("bad", {"A", "B"}, {0, 5}));
    CHECK_THROWS_AS(one_hot(t, "x"), DataError);
    CHECK_THROWS_AS(one_hot(t, "one"), DataError);
    CHECK_THROWS_AS(one_hot(t, "bad"), DataError);
    CHECK_THROWS_AS(one_hot(t, "missing"), DataError);
}

TEST_CASE("prepare_features z-scores continuous columns and expands categoricals") {
    const DataTable p = prepare_features(generate(default_scenario()));
    CHECK(p.has("MOD2=logistics"));
    CHECK(p.has("MOD2=services"));
    CHECK(!p.has("MOD2"));
    CHECK(std::abs(mean(p.values("X3"))) < 1e-12);
    CHECK(std::abs(sample_sd(p.values("M2")) - 1.0) < 1e-12);
    CHECK(p.column("Y1").kind == ColumnKind::binary);
    for (double v : p.values("Y1")) CHECK((v == 0.0 || v == 1.0));
}

TEST_CASE("data table guards its invariants") {
    DataTable t;
    t.add_column("a", {1, 2, 3});
    CHECK_THROWS_AS(t.add_column("a", {1, 2, 3}), DataError);
    CHECK_THROWS_AS(t.add_column("b", {1, 2}), DataError);
    CHECK_THROWS_AS(t.add_column("c", {0, 1, 2}, ColumnKind::binary), DataError);
    CHECK_THROWS_AS(t.values("zzz"), DataError);
}

TEST_CASE("quality gate passes on the default scenario") {
    const ScenarioSpec s = default_scenario();
    const QualityReport q = quality_gate(generate(s), s);
    CHECK(q.pass);
    for (const char* gate : kQualityGates) CHECK_MESSAGE(q.gate_passed(gate), gate);
    bool all = true;
    for (const auto& c : q.checks) all = all && c.pass;
    CHECK(all == q.pass);
}

TEST_CASE("each quality gate has a failing fixture") {
    const ScenarioSpec s = default_scenario();
    const DataTable good = generate(s);

    SUBCASE("structure: a declared column is missing") {
        DataTable t = good;
        t.remove_column("M2");
        const QualityReport q = quality_gate(t, s);
        CHECK(!q.pass);
        CHECK(!q.gate_passed("structure"));
    }
    SUBCASE("structure: wrong kind") {
        DataTable t = good;
        const auto y = t.column("Y1").values;
        t.remove_column("Y1");
        std::vector<double> shifted(y);
        for (auto& v : shifted) v += 0.5;
        t.add_column("Y1", shifted);
        CHECK(!quality_gate(t, s).gate_passed("structure"));
    }
    SUBCASE("distribution: shifted mean") {
        DataTable t = good;
        for (auto& v : t.values_mut("X4")) v += 1.0;
        const QualityReport q = quality_gate(t, s);
        CHECK(!q.gate_passed("distribution"));
        CHECK(q.gate_passed("structure"));
    }
    SUBCASE("distribution: inflated sd") {
        DataTable t = good;
        for (auto& v : t.values_mut("X1")) v *= 1.5;
        CHECK(!quality_gate(t, s).gate_passed("distribution"));
    }
    SUBCASE("sign: negated source column") {
        DataTable t = good;
        for (auto& v : t.values_mut("X3")) v = -v;
        const QualityReport q = quality_gate(t, s);
        CHECK(!q.gate_passed("sign"));
    }
    SUBCASE("regressibility: mediator replaced by unrelated noise") {
        DataTable t = good;
        const auto noise = fixtures::normals(99, 0, t.n_rows());
        auto& m2 = t.values_mut("M2");
        std::copy(noise.begin(), noise.end(), m2.begin());
        CHECK(!quality_gate(t, s).gate_passed("regressibility"));
    }
    SUBCASE("completeness: one NaN") {
        DataTable t = good;
        t.values_mut("X2")[17] = std::nan("");
        const QualityReport q = quality_gate(t, s);
        CHECK(!q.gate_passed("completeness"));
        CHECK(!q.pass);
    }
}

TEST_CASE("csv round trip reproduces the table") {
    const ScenarioSpec s = default_scenario();
    const DataTable t = generate(s);
    std::stringstream buf;
    write_csv(t, buf);
    const DataTable with_hint = read_csv(buf, &s);
    CHECK(with_hint == t);

    std::stringstream again(to_csv(t));
    const DataTable inferred = read_csv(again);
    CHECK(inferred.names() == t.names());
    CHECK(inferred.column("Y1").kind == ColumnKind::binary);
    CHECK(inferred.column("MOD2").kind == ColumnKind::categorical);
    for (const auto& c : t.columns())
        if (c.kind != ColumnKind::categorical) CHECK(inferred.column(c.name).values == c.values);
}

TEST_CASE("csv reader handles quoting, NA and indicator columns") {
    std::stringstream in("\xEF\xBB\xBFid,\"label, with comma\",g=b,v\n1,\"x\",1,NA\n2,y,0,2.5\n");
    const DataTable t = read_csv(in);
    CHECK(t.names() == std::vector<std::string>{"id", "label, with comma", "g=b", "v"});
    CHECK(t.column("label, with comma").kind == ColumnKind::categorical);
    CHECK(t.column("g=b").kind == ColumnKind::indicator);
    CHECK(std::isnan(t.values("v")[0]));
    CHECK(t.values("v")[1] == 2.5);

    std::stringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_csv(ragged), DataError);
    CHECK_THROWS(read_csv_file("/nonexistent/path.csv"));
}
