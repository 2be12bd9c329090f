#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvalue {

// Broken preconditions on internal APIs (bad indices, wrong shapes, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Generator matrices that do not define a fully projection-regular net.
class InvalidNet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedBase : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimensions beyond what the word-packed representation or a guard allows.
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace tvalue

namespace tvalue {

// A leading minor of a generator matrix is singular at some embedded level.
class InvalidEmbeddedNet : public InvalidNet {
public:
    InvalidEmbeddedNet(std::size_t coordinate, std::size_t level, const std::string& what)
        : InvalidNet(what), coordinate_(coordinate), level_(level) {}

    std::size_t coordinate() const noexcept { return coordinate_; }
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t coordinate_;
    std::size_t level_;
};

}  // namespace tvalue
