#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual auto kind() const noexcept -> const char* { return "error"; }
};

/// Malformed input file. Carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }

    auto line() const noexcept -> std::size_t { return line_; }
    auto kind() const noexcept -> const char* override { return "parse"; }

private:
    std::size_t line_;
};

/// Parameters outside their documented range (odd n*d, epsilon >= 1/2, ...).
class ParameterError : public Error {
public:
    using Error::Error;
    auto kind() const noexcept -> const char* override { return "parameter"; }
};

/// An operation was called on an input violating its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
    auto kind() const noexcept -> const char* override { return "precondition"; }
};

/// A resource ceiling (table size, collection size, universe size) was hit.
class SizeError : public Error {
public:
    SizeError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage))
    {
    }

    auto stage() const noexcept -> const std::string& { return stage_; }
    auto kind() const noexcept -> const char* override { return "size"; }

private:
    std::string stage_;
};

/// A co-degree condition Delta_i(H) <= C p^(i-1) |E|/|V| failed for some i.
class CodegreeError : public Error {
public:
    CodegreeError(int index, const std::string& message)
        : Error(message), index_(index)
    {
    }

    auto index() const noexcept -> int { return index_; }
    auto kind() const noexcept -> const char* override { return "codegree"; }

private:
    int index_;
};

/// matching_refinement found no edge outside every subset.
class RefinementUnavailable : public Error {
public:
    using Error::Error;
    auto kind() const noexcept -> const char* override { return "refinement-unavailable"; }
};

} // namespace hcm
