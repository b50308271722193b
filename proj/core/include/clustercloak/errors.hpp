#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace clustercloak {

/// Precondition breach by the caller (empty input, bad argument, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Base for recoverable domain errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A user id is already registered in the cluster set.
class DuplicateUserError : public Error {
public:
    using Error::Error;
};

/// A user id is not registered in the cluster set.
class UnknownUserError : public Error {
public:
    using Error::Error;
};

/// The population cannot satisfy the requested anonymity levels
/// (fewer users than the largest k, or no merge partner left).
class AnonymityUnsatisfiableError : public Error {
public:
    using Error::Error;
};

/// The point-of-interest store holds nothing matching the query.
class NoResultError : public Error {
public:
    using Error::Error;
};

/// Malformed CSV input; carries the 1-based offending line.
class CsvError : public Error {
public:
    CsvError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Bad key=value config file (unknown key, unparsable value).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An event trace referenced a user inconsistently; carries the
/// sequence number of the offending event.
class TraceError : public Error {
public:
    TraceError(std::uint64_t seq, const std::string& what)
        : Error("event seq " + std::to_string(seq) + ": " + what), seq_(seq) {}

    std::uint64_t seq() const { return seq_; }

private:
    std::uint64_t seq_;
};

/// The independent safety scan found an infeasible cluster or a broken
/// user index. Indicates an engine bug, never a workload property.
class SafetyViolationError : public Error {
public:
    using Error::Error;
};

}  // namespace clustercloak
