#pragma once

#include <stdexcept>
#include <string>

namespace ck {

// All library failures are reported through Error. `code` is a stable
// machine-readable tag (e.g. "ZeroRow", "BlowupGuard"); `what()` carries the
// human-readable detail including offending indices.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace ck
