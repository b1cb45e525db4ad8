#pragma once

#include <stdexcept>
#include <string>

namespace ilp {

// Failure categories surfaced by the library. The CLI maps these onto its
// exit-code contract: usage/config problems exit 1, data/IO problems exit 2.
enum class ErrorKind {
    MalformedHeader,   // wire bytes violate the record layout
    TruncatedStream,   // byte stream or record sequence ended mid-message
    MessageTooLarge,   // reassembly buffer exceeded its cap
    ClosedSender,      // enqueue/send after close
    QueueFull,         // max_queue_bytes would be exceeded
    AlreadyStarted,    // second start_shaping on one sender
    UnsupportedMode,   // e.g. truncated-normal delays
    ConfigError,       // invalid distribution parameters, sweep/kind mismatch
    ParseError,        // malformed trace or config file
    ValidationError,   // well-formed input violating a data contract
    ConnectError,      // socket connect/bind/resolve failure
    IoError,           // read/write failure on an established connection
    InternalError,     // replay self-check (round-trip oracle) failed
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

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace ilp
