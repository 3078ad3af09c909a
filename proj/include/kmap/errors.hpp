#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmap {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input (CSV/JSON documents, net definitions).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string location = {})
        : Error(location.empty() ? what : location + ": " + what),
          location_(std::move(location)) {}

    const std::string& location() const { return location_; }

private:
    std::string location_;
};

// A node label that does not exist in the net.
class UnknownNodeError : public Error {
public:
    explicit UnknownNodeError(const std::string& label)
        : Error("unknown node '" + label + "'"), label_(label) {}

    const std::string& label() const { return label_; }

private:
    std::string label_;
};

// Path enumeration exceeded its work budget. Carries the offending pair so
// batch runs can name it.
class BudgetExhaustedError : public Error {
public:
    BudgetExhaustedError(std::string source, std::string target, std::uint64_t visited)
        : Error("work budget exhausted while enumerating paths " + source + " -> " + target +
                " (visited " + std::to_string(visited) + " states)"),
          source_(std::move(source)), target_(std::move(target)), visited_(visited) {}

    const std::string& source() const { return source_; }
    const std::string& target() const { return target_; }
    std::uint64_t visited() const { return visited_; }

private:
    std::string source_, target_;
    std::uint64_t visited_;
};

// Linear system singular to working tolerance.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

}  // namespace kmap
