#pragma once

#include <stdexcept>
#include <string>

namespace situwalk {

/// File or line-oriented input could not be parsed. Carries the offending
/// line (1-based, 0 if not line-specific) so callers can point at the input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : std::move(message)),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A precondition on well-formed data was violated (unknown item, unmapped
/// location, missing concept, ...). Distinct from ParseError so the CLI can
/// map usage/config problems and data problems to different exit codes.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(std::string message) : std::runtime_error(std::move(message)) {}
};

} // namespace situwalk
