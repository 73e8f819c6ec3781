#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pathsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input data: length mismatch, zero variance, missing or malformed column.
class DataError : public Error {
public:
    using Error::Error;
};

/// Scenario file could not be parsed or violates the file grammar.
/// `location` is "line N" for syntax errors or a field path such as
/// "variables[3].dist.sd" for schema errors.
class ScenarioError : public Error {
public:
    ScenarioError(std::string location, const std::string& what)
        : Error(location.empty() ? what : location + ": " + what), location_(std::move(location)) {}
    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

enum class FitErrorKind {
    insufficient_rows,
    rank_deficient,
    zero_variance,
    single_class,
    separation,
    non_binary_response,
};

const char* to_string(FitErrorKind kind) noexcept;

/// A model could not be fitted. `columns` names the offending columns when known.
class FitError : public Error {
public:
    FitError(FitErrorKind kind, const std::string& what, std::vector<std::string> columns = {})
        : Error(what), kind_(kind), columns_(std::move(columns)) {}
    FitErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::string>& columns() const noexcept { return columns_; }

private:
    FitErrorKind kind_;
    std::vector<std::string> columns_;
};

}  // namespace pathsim
