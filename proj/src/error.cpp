#include "hotspots/error.hpp"

namespace hotspots {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::degenerate_geometry: return "degenerate_geometry";
        case ErrorCode::resource_limit: return "resource_limit";
        case ErrorCode::empty_system: return "empty_system";
        case ErrorCode::factorization_failed: return "factorization_failed";
        case ErrorCode::not_converged: return "not_converged";
        case ErrorCode::io_error: return "io_error";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

}  // namespace hotspots
