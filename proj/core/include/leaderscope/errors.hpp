#pragma once

// Error taxonomy shared by the whole library.
//
// Every failure carries a stable machine-readable name (e.g. "InvalidSequence")
// plus a category that maps onto the CLI process exit code:
//
//   config       — the request itself is malformed (bad descriptor, bad flag value)
//   input        — a data file or signal is unreadable / has the wrong shape
//   precondition — the inputs are well-formed but violate a mathematical
//                  precondition of the requested operation (index conditions,
//                  compatibility of a sequence/family pair, resolution limits)

#include <stdexcept>
#include <string>
#include <utility>

namespace leaderscope {

enum class ErrorKind { config = 2, input = 3, precondition = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Stable identifier, e.g. "IndexConditionViolated".
    const std::string& name() const noexcept { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

[[noreturn]] inline void fail(ErrorKind kind, const char* name, const std::string& message) {
    throw Error(kind, name, message);
}

}  // namespace leaderscope
