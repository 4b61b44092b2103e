#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foundry {

enum class ErrorKind {
    config,
    io,
    precondition,
    transport,
    malformed_output,
    missing_fixture,
    fixture_conflict,
    empty_proposal,
    degenerate_taxonomy,
    undefined_denominator,
    plan,
    empty_space,
    schedule,
    metric,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// I/O failure that happened part way through a batch write.
class IoError : public Error {
public:
    IoError(const std::string& message, std::size_t records_written)
        : Error(ErrorKind::io, message + " (records written: " + std::to_string(records_written) + ")"),
          records_written_(records_written) {}

    std::size_t records_written() const { return records_written_; }

private:
    std::size_t records_written_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace foundry
