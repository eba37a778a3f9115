#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsforge {

/// Error families; the CLI maps them onto exit codes 1, 2 and 3.
enum class ErrorKind { InvalidInput, Computation, Validation };

/// Every failure carries a stable machine-readable code (e.g. "NotGalois")
/// next to the human message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error(ErrorKind::InvalidInput, "SyntaxError",
                message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::InvalidInput, code, msg);
}
[[noreturn]] inline void fail_compute(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Computation, code, msg);
}
[[noreturn]] inline void fail_validation(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Validation, code, msg);
}

}  // namespace bsforge
