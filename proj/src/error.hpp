#pragma once

#include <stdexcept>
#include <string>

namespace dyadnet {

enum class errc {
    invalid_argument,   // bad value, dimension mismatch, unmet precondition
    parse_error,        // malformed matrix/net text
    cap_exceeded,       // enumeration or size cap hit; caller should pick another route
    io_error,
    verify_failed,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace dyadnet
