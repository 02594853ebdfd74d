#pragma once

#include <stdexcept>
#include <string>

namespace hotspots {

enum class ErrorCode {
    invalid_argument = 1,
    degenerate_geometry,
    resource_limit,
    empty_system,
    factorization_failed,
    not_converged,
    io_error,
    internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hotspots
