#pragma once

#include <stdexcept>
#include <string>

namespace mgraph {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    InvalidParameter,
    Parse,
    IllConditionedFit,
    SolverStall,
    ContractionFailure,
    DegenerateLevelSet,
    NonFinite,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// True for failures of the numerics (as opposed to bad input).
    [[nodiscard]] bool numerical() const noexcept
    {
        return kind_ != ErrorKind::InvalidParameter && kind_ != ErrorKind::Parse;
    }

private:
    ErrorKind kind_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::InvalidParameter, what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

class IllConditionedFit : public Error {
public:
    IllConditionedFit(const std::string& what, double condition)
        : Error(ErrorKind::IllConditionedFit, what), condition_(condition)
    {
    }

    [[nodiscard]] double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class DegenerateLevelSet : public Error {
public:
    explicit DegenerateLevelSet(const std::string& what) : Error(ErrorKind::DegenerateLevelSet, what) {}
};

class NonFiniteValue : public Error {
public:
    explicit NonFiniteValue(const std::string& what) : Error(ErrorKind::NonFinite, what) {}
};

}  // namespace mgraph
