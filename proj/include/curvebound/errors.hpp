#pragma once

#include <stdexcept>
#include <string>

namespace curvebound {

// Error taxonomy used across the toolkit. The CLI maps any Error to exit
// code 2; verification failures are ordinary Verdict results, never thrown.
enum class ErrorCode {
    input,         // malformed or out-of-range user data
    domain,        // parameter outside a formula's validity domain
    scope,         // request outside what the model supports
    resolution,    // sampling too coarse for the requested operation
    parameter,     // missing or inconsistent configuration
    ambiguity,     // result not unique (cut locus, hint on curve, ...)
    precondition,  // checked hypothesis of an inequality violated
    io             // file system / parse failures
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::input: return "input";
        case ErrorCode::domain: return "domain";
        case ErrorCode::scope: return "scope";
        case ErrorCode::resolution: return "resolution";
        case ErrorCode::parameter: return "parameter";
        case ErrorCode::ambiguity: return "ambiguity";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

}  // namespace curvebound
