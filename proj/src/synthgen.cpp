#include "pathsim/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pathsim/error.hpp"
#include "pathsim/linmodel.hpp"
#include "pathsim/rng.hpp"
#include "pathsim/stats.hpp"

namespace pathsim {

namespace {

double logistic(double eta) {
    if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

std::vector<double> sample_column(const VariableSpec& v, std::size_t n, RngStream& rng) {
    std::vector<double> out(n);
    switch (v.kind) {
        case Kind::continuous:
            for (auto& x : out) x = normal_sample(rng, v.normal->mean, v.normal->sd);
            break;
        case Kind::binary:
            for (auto& x : out) x = bernoulli_sample(rng, *v.bernoulli_p) ? 1.0 : 0.0;
            break;
        case Kind::categorical:
            for (auto& x : out) {
                const double u = rng.uniform();
                double cum = 0.0;
                std::size_t level = v.level_probs.size() - 1;
                for (std::size_t l = 0; l < v.level_probs.size(); ++l) {
                    cum += v.level_probs[l];
                    if (u < cum) {
                        level = l;
                        break;
                    }
                }
                x = static_cast<double>(level);
            }
            break;
    }
    return out;
}

ColumnKind column_kind(Kind kind) {
    switch (kind) {
        case Kind::continuous: return ColumnKind::continuous;
        case Kind::binary: return ColumnKind::binary;
        case Kind::categorical: return ColumnKind::categorical;
    }
    return ColumnKind::continuous;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

DataTable generate(const ScenarioSpec& spec) {
    if (const auto violations = validate_scenario(spec); !violations.empty()) {
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw ScenarioError("", msg);
    }
    const std::size_t n = spec.n;
    const auto order = topological_order(spec);
    std::vector<std::vector<double>> values(spec.variables.size());

    for (const std::size_t idx : order) {
        const VariableSpec& v = spec.variables[idx];
        RngStream rng(spec.seed, idx);
        if (!v.is_endogenous()) {
            values[idx] = sample_column(v, n, rng);
            continue;
        }
        std::vector<double> lp(n, v.intercept);
        for (const auto& p : spec.paths) {
            if (p.target != v.name) continue;
            const auto& src = values[*spec.index_of(p.source)];
            for (std::size_t i = 0; i < n; ++i) lp[i] += p.weight * src[i];
        }
        for (const auto& it : spec.interactions) {
            if (it.target != v.name) continue;
            const auto& a = values[*spec.index_of(it.factor_a)];
            const auto& b = values[*spec.index_of(it.factor_b)];
            for (std::size_t i = 0; i < n; ++i) lp[i] += it.weight * a[i] * b[i];
        }
        const double sd = spec.noise_sd(v.name);
        for (std::size_t i = 0; i < n; ++i) {
            if (sd > 0.0) lp[i] += normal_sample(rng, 0.0, sd);
            if (v.kind == Kind::binary) lp[i] = bernoulli_sample(rng, logistic(lp[i])) ? 1.0 : 0.0;
        }
        values[idx] = std::move(lp);
    }

    DataTable table;
    for (std::size_t idx = 0; idx < spec.variables.size(); ++idx) {
        const VariableSpec& v = spec.variables[idx];
        Column c;
        c.name = v.name;
        c.kind = column_kind(v.kind);
        c.levels = v.levels;
        c.values = std::move(values[idx]);
        table.add_column(std::move(c));
    }
    return table;
}

DataTable prepare_features(const DataTable& table) {
    DataTable out;
    for (const auto& c : table.columns()) {
        if (c.kind == ColumnKind::continuous) {
            Column z = c;
            z.values = standardize(c.values);
            out.add_column(std::move(z));
        } else {
            out.add_column(c);
        }
    }
    for (const auto& c : table.columns())
        if (c.kind == ColumnKind::categorical) out = one_hot(out, c.name);
    return out;
}

// ---------------------------------------------------------------------------

bool QualityReport::gate_passed(std::string_view gate) const {
    bool any = false;
    for (const auto& c : checks) {
        if (c.gate != gate) continue;
        any = true;
        if (!c.pass) return false;
    }
    return any;
}

QualityReport quality_gate(const DataTable& table, const ScenarioSpec& spec) {
    QualityReport report;
    auto add = [&](std::string gate, std::string item, std::string target, double observed, bool pass) {
        report.checks.push_back({std::move(gate), std::move(item), std::move(target), observed, pass});
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(table.n_rows());

    // Structure. A categorical variable may also appear as its one-hot indicators.
    std::vector<bool> present(spec.variables.size(), false);
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        const VariableSpec& v = spec.variables[i];
        const std::string want = to_string(column_kind(v.kind));
        bool ok = false;
        if (table.has(v.name)) {
            const Column& c = table.column(v.name);
            ok = c.kind == column_kind(v.kind) && (v.kind != Kind::categorical || c.levels == v.levels);
        } else if (v.kind == Kind::categorical) {
            std::size_t indicators = 0;
            for (const auto& c : table.columns())
                if (c.kind == ColumnKind::indicator && c.group == v.name) ++indicators;
            ok = indicators + 1 == v.levels.size();
        }
        present[i] = ok && table.has(v.name);
        add("structure", v.name + " kind", want, ok ? 1.0 : 0.0, ok);
    }
    const bool rows_ok = table.n_rows() == spec.n;
    add("structure", "row count", std::to_string(spec.n), n, rows_ok);

    auto finite_column = [&](const std::string& name) {
        if (!table.has(name)) return false;
        const auto v = table.values(name);
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };

    // Distribution of sampled variables.
    for (std::size_t i = 0; i < spec.variables.size(); ++i) {
        const VariableSpec& v = spec.variables[i];
        if (v.is_endogenous()) continue;
        if (!present[i] || !finite_column(v.name)) {
            add("distribution", v.name, "column present and finite", nan, false);
            continue;
        }
        const auto x = table.values(v.name);
        if (v.kind == Kind::continuous) {
            const double m = mean(x);
            const double band = 3.0 * v.normal->sd / std::sqrt(n);
            add("distribution", v.name + " mean", fmt(v.normal->mean) + " +/- " + fmt(band), m,
                std::abs(m - v.normal->mean) <= band);
            const double sd = sample_sd(x);
            add("distribution", v.name + " sd", fmt(v.normal->sd) + " +/- 20%", sd,
                std::abs(sd - v.normal->sd) <= 0.2 * v.normal->sd);
        } else {
            const std::vector<double> probs =
                v.kind == Kind::binary ? std::vector<double>{1.0 - *v.bernoulli_p, *v.bernoulli_p} : v.level_probs;
            for (std::size_t level = 0; level < probs.size(); ++level) {
                const double share =
                    static_cast<double>(std::count(x.begin(), x.end(), static_cast<double>(level))) / n;
                const double band = 3.0 * std::sqrt(probs[level] * (1.0 - probs[level]) / n);
                const std::string label = v.kind == Kind::binary ? std::to_string(level) : v.levels[level];
                add("distribution", v.name + " share " + label, fmt(probs[level]) + " +/- " + fmt(band), share,
                    std::abs(share - probs[level]) <= band);
            }
        }
    }

    // Sign consistency of material paths.
    for (const auto& p : spec.paths) {
        if (std::abs(p.weight) < 0.1) continue;
        const std::string item = p.source + "->" + p.target;
        const std::string target = p.weight > 0 ? "corr > 0" : "corr < 0";
        if (!finite_column(p.source) || !finite_column(p.target)) {
            add("sign", item, target, nan, false);
            continue;
        }
        double r = nan;
        try {
            r = pearson_corr(table.values(p.source), table.values(p.target));
        } catch (const DataError&) {
        }
        add("sign", item, target, r, p.weight > 0 ? r > 0.0 : r < 0.0);
    }

    // Regressibility of continuous endogenous variables on their declared parents.
    for (const auto& v : spec.variables) {
        if (!v.is_endogenous() || v.kind != Kind::continuous) continue;
        std::vector<std::string> parents;
        for (const auto& p : spec.paths)
            if (p.target == v.name) parents.push_back(p.source);
        std::vector<const InteractionSpec*> products;
        for (const auto& it : spec.interactions)
            if (it.target == v.name) products.push_back(&it);
        if (parents.empty() && products.empty()) continue;

        double r2 = nan;
        bool ok = finite_column(v.name);
        for (const auto& name : parents) ok = ok && finite_column(name);
        for (const auto* it : products) ok = ok && finite_column(it->factor_a) && finite_column(it->factor_b);
        if (ok) {
            DataTable design_table;
            std::vector<std::string> terms;
            for (const auto& name : parents) {
                if (design_table.has(name)) continue;
                design_table.add_column(name, std::vector<double>(table.values(name).begin(), table.values(name).end()));
                terms.push_back(name);
            }
            for (const auto* it : products) {
                const auto a = table.values(it->factor_a);
                const auto b = table.values(it->factor_b);
                std::vector<double> prod(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
                const std::string name = it->factor_a + "*" + it->factor_b;
                design_table.add_column(name, std::move(prod));
                terms.push_back(name);
            }
            design_table.add_column("__response", std::vector<double>(table.values(v.name).begin(), table.values(v.name).end()));
            try {
                r2 = ols_fit(design_table, "__response", terms).r2;
            } catch (const Error&) {
                r2 = nan;
            }
        }
        add("regressibility", v.name + " ~ parents", "R^2 >= 0.2", r2, r2 >= 0.2);
    }

    // Completeness.
    std::size_t bad = 0;
    for (const auto& c : table.columns())
        for (double x : c.values) bad += !std::isfinite(x);
    add("completeness", "non-finite cells", "0", static_cast<double>(bad), bad == 0);

    report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const QualityCheck& c) { return c.pass; });
    return report;
}

}  // namespace pathsim
