#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace scholarmeter {

/// Malformed input: bad syntax, unreadable file, non-numeric field.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::string field = {})
        : std::runtime_error(line ? "line " + std::to_string(line) + (field.empty() ? "" : " [" + field + "]") + ": " + what
                                  : what),
          line_(line),
          field_(std::move(field)) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

struct Diagnostic {
    std::size_t line = 0;
    std::string field;
    std::string message;

    std::string to_string() const;
};

/// Input parsed but violates a domain invariant. Carries every offending record.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    explicit ValidationError(const std::string& message) : ValidationError(std::vector<Diagnostic>{{0, {}, message}}) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace scholarmeter
