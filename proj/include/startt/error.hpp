#pragma once

#include <stdexcept>
#include <string>

namespace startt {

// Domain-level failure with a stable machine-readable code ("OutOfRange",
// "NotMaximal", ...). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw DomainError(code, what);
}

// Invariant breach inside the library itself.
[[noreturn]] inline void internal_error(const std::string& what) {
    throw std::logic_error("internal: " + what);
}

} // namespace startt
