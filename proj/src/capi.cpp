#include "hotspots_lab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "hotspots/eigensolve.hpp"
#include "hotspots/error.hpp"
#include "hotspots/geometry.hpp"
#include "hotspots/report.hpp"

struct hsl_config {
    hotspots::RunConfig c;
};

struct hsl_result {
    hotspots::RunResult r;
    std::string json;
};

struct hsl_triangle {
    hotspots::Triangle t;
};

namespace {

thread_local std::string last_error;

hsl_status fail(hsl_status s, const std::string& what) {
    last_error = what;
    return s;
}

hsl_status from_error(const hotspots::Error& e) {
    using hotspots::ErrorCode;
    switch (e.code()) {
        case ErrorCode::invalid_argument:
        case ErrorCode::degenerate_geometry: return fail(HSL_INVALID_ARGUMENT, e.what());
        case ErrorCode::io_error: return fail(HSL_IO_ERROR, e.what());
        case ErrorCode::resource_limit:
        case ErrorCode::empty_system:
        case ErrorCode::factorization_failed:
        case ErrorCode::not_converged: return fail(HSL_SOLVER_FAILURE, e.what());
        case ErrorCode::internal: break;
    }
    return fail(HSL_INTERNAL, e.what());
}

// Runs fn and maps exceptions to status codes.
template <class F>
hsl_status guarded(F&& fn) {
    try {
        last_error.clear();
        return fn();
    } catch (const hotspots::Error& e) {
        return from_error(e);
    } catch (const std::exception& e) {
        return fail(HSL_INTERNAL, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hsl_status null_argument() { return fail(HSL_INVALID_ARGUMENT, "null argument"); }

}  // namespace

extern "C" {

const char* hsl_version(void) { return "1.0.0"; }

const char* hsl_status_string(hsl_status status) {
    switch (status) {
        case HSL_OK: return "ok";
        case HSL_ANOMALY: return "anomaly";
        case HSL_INVALID_CONFIG: return "invalid config";
        case HSL_SOLVER_FAILURE: return "solver failure";
        case HSL_IO_ERROR: return "io error";
        case HSL_INVALID_ARGUMENT: return "invalid argument";
        case HSL_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* hsl_last_error(void) { return last_error.c_str(); }

void hsl_string_free(char* s) { std::free(s); }

hsl_status hsl_config_create(const char* command, hsl_config** out) {
    if (!command || !out) return null_argument();
    return guarded([&] {
        *out = new hsl_config{};
        (*out)->c.command = command;
        return HSL_OK;
    });
}

hsl_status hsl_config_from_json(const char* json, hsl_config** out) {
    if (!json || !out) return null_argument();
    return guarded([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json);
        } catch (const nlohmann::json::exception& e) {
            return fail(HSL_INVALID_CONFIG, e.what());
        }
        try {
            *out = new hsl_config{hotspots::run_config_from_json(j)};
        } catch (const hotspots::Error& e) {
            return fail(HSL_INVALID_CONFIG, e.what());
        }
        return HSL_OK;
    });
}

hsl_status hsl_config_to_json(const hsl_config* config, char** out) {
    if (!config || !out) return null_argument();
    return guarded([&] {
        *out = copy_string(hotspots::to_json(config->c).dump(2));
        return *out ? HSL_OK : fail(HSL_INTERNAL, "out of memory");
    });
}

hsl_status hsl_config_add_triangle(hsl_config* config, const char* text) {
    if (!config || !text) return null_argument();
    return guarded([&] {
        config->c.triangles.push_back(hotspots::parse_triangle_literal(text));
        return HSL_OK;
    });
}

hsl_status hsl_config_set_levels(hsl_config* config, int lo, int hi) {
    if (!config) return null_argument();
    config->c.lo = lo;
    config->c.hi = hi;
    return HSL_OK;
}

hsl_status hsl_config_set_int(hsl_config* config, const char* key, long long value) {
    if (!config || !key) return null_argument();
    const std::string k = key;
    hotspots::RunConfig& c = config->c;
    const int v = static_cast<int>(value);
    if (value != v) return fail(HSL_INVALID_ARGUMENT, k + " out of range");
    if (k == "order") c.order = v;
    else if (k == "grid") c.grid = v;
    else if (k == "steps") c.steps = v;
    else if (k == "jobs") c.jobs = v;
    else if (k == "max-iterations") c.max_iterations = v;
    else return fail(HSL_INVALID_ARGUMENT, "unknown integer key '" + k + "'");
    return HSL_OK;
}

hsl_status hsl_config_set_double(hsl_config* config, const char* key, double value) {
    if (!config || !key) return null_argument();
    const std::string k = key;
    hotspots::RunConfig& c = config->c;
    if (k == "tol-grad") c.grad_tol = value;
    else if (k == "tol-mono") c.mono_tol = value;
    else if (k == "tol-vertex") c.vertex_tol = value;
    else if (k == "solver-tol") c.solver_tol = value;
    else return fail(HSL_INVALID_ARGUMENT, "unknown floating-point key '" + k + "'");
    return HSL_OK;
}

hsl_status hsl_config_set_string(hsl_config* config, const char* key, const char* value) {
    if (!config || !key || !value) return null_argument();
    const std::string k = key, v = value;
    hotspots::RunConfig& c = config->c;
    if (k == "out") {
        c.out = v;
    } else if (k == "seed-field") {
        c.seed_field = v;
    } else if (k == "test-hook") {
        c.test_hook = v;
    } else if (k == "seed") {
        try {
            std::size_t used = 0;
            const unsigned long long s = std::stoull(v, &used, 16);
            if (used != v.size()) throw std::invalid_argument("trailing characters");
            c.seed = s;
        } catch (const std::exception&) {
            return fail(HSL_INVALID_CONFIG, "seed must be hexadecimal, got '" + v + "'");
        }
    } else {
        return fail(HSL_INVALID_ARGUMENT, "unknown string key '" + k + "'");
    }
    return HSL_OK;
}

hsl_status hsl_config_validate(const hsl_config* config) {
    if (!config) return null_argument();
    try {
        hotspots::validate(config->c);
    } catch (const std::exception& e) {
        return fail(HSL_INVALID_CONFIG, e.what());
    }
    return HSL_OK;
}

void hsl_config_free(hsl_config* config) { delete config; }

hsl_status hsl_run(const hsl_config* config, hsl_result** out) {
    if (!config || !out) return null_argument();
    return guarded([&] {
        auto* res = new hsl_result{hotspots::run(config->c), {}};
        if (!res->r.report.is_null()) res->json = res->r.report.dump(2);
        *out = res;
        const auto status = static_cast<hsl_status>(static_cast<int>(res->r.code));
        if (!res->r.error.empty()) last_error = res->r.error;
        return status;
    });
}

int hsl_result_exit_code(const hsl_result* result) { return result ? static_cast<int>(result->r.code) : -1; }

const char* hsl_result_json(const hsl_result* result) { return result ? result->json.c_str() : ""; }

const char* hsl_result_summary(const hsl_result* result) { return result ? result->r.summary.c_str() : ""; }

const char* hsl_result_error(const hsl_result* result) { return result ? result->r.error.c_str() : ""; }

size_t hsl_result_file_count(const hsl_result* result) { return result ? result->r.files.size() : 0; }

const char* hsl_result_file_suffix(const hsl_result* result, size_t index) {
    if (!result || index >= result->r.files.size()) return nullptr;
    return result->r.files[index].suffix.c_str();
}

hsl_status hsl_result_write(const hsl_result* result, const char* prefix) {
    if (!result || !prefix) return null_argument();
    return guarded([&] {
        hotspots::write_outputs(result->r, prefix);
        return HSL_OK;
    });
}

void hsl_result_free(hsl_result* result) { delete result; }

hsl_status hsl_triangle_create(const double xy[6], hsl_triangle** out) {
    if (!xy || !out) return null_argument();
    return guarded([&] {
        *out = new hsl_triangle{hotspots::Triangle({xy[0], xy[1]}, {xy[2], xy[3]}, {xy[4], xy[5]})};
        return HSL_OK;
    });
}

hsl_status hsl_triangle_parse(const char* text, hsl_triangle** out) {
    if (!text || !out) return null_argument();
    return guarded([&] {
        *out = new hsl_triangle{hotspots::parse_triangle_literal(text)};
        return HSL_OK;
    });
}

hsl_status hsl_triangle_canonical(const hsl_triangle* t, double xy[6]) {
    if (!t || !xy) return null_argument();
    return guarded([&] {
        const hotspots::Triangle c = hotspots::canonicalize(t->t).triangle;
        for (int k = 0; k < 3; ++k) {
            xy[2 * k] = c.vertex(k).x1;
            xy[2 * k + 1] = c.vertex(k).x2;
        }
        return HSL_OK;
    });
}

void hsl_triangle_free(hsl_triangle* t) { delete t; }

hsl_status hsl_neumann_mu2(const hsl_triangle* t, int level, int order, double* mu2, double* mu3) {
    if (!t || !mu2) return null_argument();
    return guarded([&] {
        if (level < 0 || level > 9 || (order != 1 && order != 2)) {
            return fail(HSL_INVALID_ARGUMENT, "level must be in [0, 9] and order 1 or 2");
        }
        const hotspots::NeumannResult r = hotspots::neumann_mu2(t->t, level, order);
        *mu2 = r.mu2;
        if (mu3) *mu3 = r.mu3;
        return HSL_OK;
    });
}

hsl_status hsl_mu2_estimate(const hsl_triangle* t, int lo, int hi, int order, double* value, double* error_bar) {
    if (!t || !value) return null_argument();
    return guarded([&] {
        if (lo < 0 || hi > 9 || hi < lo + 2 || (order != 1 && order != 2)) {
            return fail(HSL_INVALID_ARGUMENT, "levels need 0 <= lo, lo + 2 <= hi <= 9 and order 1 or 2");
        }
        const hotspots::EigenEstimate e = hotspots::neumann_estimate(t->t, lo, hi, order);
        *value = e.extrapolated;
        if (error_bar) *error_bar = e.error_bar;
        return HSL_OK;
    });
}

}  // extern "C"
