#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wearsim {

/// One broken rule, e.g. {"processor.coeff_a", "negative coefficient"}.
struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

/// Outcome of a validation pass. Violations are collected, never thrown.
struct ValidationResult {
    std::vector<Violation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] bool has_rule(const std::string& rule) const;
    void add(std::string field, std::string rule);
    void append(const ValidationResult& other, const std::string& prefix = {});
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (negative time, negative Δf, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownLevelError : public Error {
public:
    using Error::Error;
};

/// No ladder level finishes the task inside its window.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& task_id, double required_freq_hz);

    [[nodiscard]] double required_freq_hz() const noexcept { return required_freq_hz_; }

private:
    double required_freq_hz_;
};

/// Raised when a scenario or spec fails validation; carries every violation.
class ValidationError : public Error {
public:
    explicit ValidationError(ValidationResult result, const std::string& context = {});

    [[nodiscard]] const ValidationResult& result() const noexcept { return result_; }

private:
    ValidationResult result_;
};

/// Malformed scenario document; position is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Missing, unknown or mistyped key. `key` is the dotted path of the offender.
class SchemaError : public Error {
public:
    SchemaError(std::string key, const std::string& what);

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what);
};

std::string format_violations(const ValidationResult& result);

} // namespace wearsim
