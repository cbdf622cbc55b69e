#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Input outside the physical or numerical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed configuration text; line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spdc
