#include "wearsim/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wearsim {

bool ValidationResult::has_rule(const std::string& rule) const
{
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
}

void ValidationResult::add(std::string field, std::string rule)
{
    violations.push_back({std::move(field), std::move(rule)});
}

void ValidationResult::append(const ValidationResult& other, const std::string& prefix)
{
    for (const auto& v : other.violations) {
        violations.push_back({prefix.empty() ? v.field : prefix + "." + v.field, v.rule});
    }
}

std::string format_violations(const ValidationResult& result)
{
    std::ostringstream os;
    for (const auto& v : result.violations) {
        os << "  " << v.field << ": " << v.rule << '\n';
    }
    return os.str();
}

static std::string validation_message(const ValidationResult& result, const std::string& context)
{
    std::ostringstream os;
    if (!context.empty()) {
        os << context << ": ";
    }
    os << result.violations.size() << " validation error(s)\n" << format_violations(result);
    return os.str();
}

InfeasibleError::InfeasibleError(const std::string& task_id, double required_freq_hz)
    : Error("task '" + task_id + "' is infeasible: needs " + std::to_string(required_freq_hz) +
            " Hz, above the top ladder level"),
      required_freq_hz_(required_freq_hz)
{
}

ValidationError::ValidationError(ValidationResult result, const std::string& context)
    : Error(validation_message(result, context)), result_(std::move(result))
{
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : Error("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": " + what),
      line_(line), column_(column)
{
}

SchemaError::SchemaError(std::string key, const std::string& what)
    : Error("schema error at '" + key + "': " + what), key_(std::move(key))
{
}

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what)
{
}

} // namespace wearsim
