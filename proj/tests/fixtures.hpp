#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pathsim/rng.hpp"
#include "pathsim/scenario.hpp"
#include "pathsim/table.hpp"

namespace fixtures {

using pathsim::DataTable;
using pathsim::Role;
using pathsim::ScenarioSpec;
using pathsim::VariableSpec;

inline DataTable table(std::initializer_list<std::pair<std::string, std::vector<double>>> cols) {
    DataTable t;
    for (const auto& [name, values] : cols) t.add_column(name, values);
    return t;
}

inline VariableSpec normal(std::string name, double mean = 0.0, double sd = 1.0, Role role = Role::exogenous) {
    VariableSpec v;
    v.name = std::move(name);
    v.role = role;
    v.normal = pathsim::NormalDist{mean, sd};
    return v;
}

inline VariableSpec endogenous(std::string name, Role role = Role::outcome,
                               pathsim::Kind kind = pathsim::Kind::continuous) {
    VariableSpec v;
    v.name = std::move(name);
    v.role = role;
    v.kind = kind;
    return v;
}

/// x -> m -> y chain (plus optional direct x -> y) with N(0,1) x.
inline ScenarioSpec chain(double a, double b, double direct, double noise_m, double noise_y, std::size_t n,
                          std::uint64_t seed) {
    ScenarioSpec s;
    s.n = n;
    s.seed = seed;
    s.variables = {normal("X"), endogenous("M", Role::mediator), endogenous("Y")};
    s.paths = {{"X", "M", a}, {"M", "Y", b}};
    if (direct != 0.0) s.paths.push_back({"X", "Y", direct});
    s.noise = {{"M", noise_m}, {"Y", noise_y}};
    return s;
}

/// Standard normal column of length n from its own stream.
inline std::vector<double> normals(std::uint64_t seed, std::uint64_t stream, std::size_t n) {
    pathsim::RngStream rng(seed, stream);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.standard_normal();
    return v;
}

}  // namespace fixtures
