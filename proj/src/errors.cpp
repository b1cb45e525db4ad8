#include "ilp/errors.hpp"

namespace ilp {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedHeader: return "malformed header";
        case ErrorKind::TruncatedStream: return "truncated stream";
        case ErrorKind::MessageTooLarge: return "message too large";
        case ErrorKind::ClosedSender: return "closed sender";
        case ErrorKind::QueueFull: return "queue full";
        case ErrorKind::AlreadyStarted: return "already started";
        case ErrorKind::UnsupportedMode: return "unsupported mode";
        case ErrorKind::ConfigError: return "config error";
        case ErrorKind::ParseError: return "parse error";
        case ErrorKind::ValidationError: return "validation error";
        case ErrorKind::ConnectError: return "connect error";
        case ErrorKind::IoError: return "io error";
        case ErrorKind::InternalError: return "internal error";
    }
    return "unknown error";
}

}  // namespace ilp
