#include "reartool/reartool.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <type_traits>

#include "criteria.hpp"
#include "descriptors.hpp"
#include "error.hpp"
#include "norms.hpp"
#include "reports.hpp"
#include "sup_ratio.hpp"
#include "supremum.hpp"
#include "verify.hpp"

#ifndef REARTOOL_VERSION
#define REARTOOL_VERSION "0.0.0"
#endif

using namespace reartool;

struct rt_qconcave {
    QuasiconcaveFn fn;
};
struct rt_step {
    StepFn fn;
};
struct rt_function {
    PiecewiseFn fn;
};

namespace {

thread_local std::string g_last_error;

rt_status status_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return RT_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return RT_ERR_PARSE;
        case ErrorCode::NotQuasiconcave: return RT_ERR_NOT_QUASICONCAVE;
        case ErrorCode::NonIntegrable: return RT_ERR_NON_INTEGRABLE;
        case ErrorCode::TrivialSpace: return RT_ERR_TRIVIAL_SPACE;
        case ErrorCode::PreconditionViolated: return RT_ERR_PRECONDITION;
        case ErrorCode::DomainMismatch: return RT_ERR_DOMAIN_MISMATCH;
        case ErrorCode::CharacterizationDisagreement: return RT_ERR_DISAGREEMENT;
        case ErrorCode::Unsupported: return RT_ERR_UNSUPPORTED;
    }
    return RT_ERR_INTERNAL;
}

// Runs body, translating exceptions into a status and the thread's last error.
template <class F>
rt_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return RT_OK;
    } catch (const Error& e) {
        g_last_error = std::string(to_string(e.code())) + ": " + e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = std::string("internal error: ") + e.what();
    } catch (...) {
        g_last_error = "internal error";
    }
    return RT_ERR_INTERNAL;
}

template <class T>
const T& need(const T* p, const char* what) {
    require(p != nullptr, ErrorCode::InvalidArgument, std::string(what) + " is NULL");
    return *p;
}

// Pointer outputs are cleared first so that a failed call leaves NULL behind.
template <class T>
void need_out(T* p) {
    require(p != nullptr, ErrorCode::InvalidArgument, "output pointer is NULL");
    if constexpr (std::is_pointer_v<T>) *p = nullptr;
}

std::string text(const char* s, const char* what) {
    require(s != nullptr, ErrorCode::InvalidArgument, std::string(what) + " is NULL");
    return s;
}

char* copy_out(const json& j) {
    const std::string s = j.dump();
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* rt_version(void) { return REARTOOL_VERSION; }

int rt_schema_version(void) { return kSchemaVersion; }

const char* rt_status_name(rt_status status) {
    switch (status) {
        case RT_OK: return "OK";
        case RT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case RT_ERR_PARSE: return "Parse";
        case RT_ERR_NOT_QUASICONCAVE: return "NotQuasiconcave";
        case RT_ERR_NON_INTEGRABLE: return "NonIntegrable";
        case RT_ERR_TRIVIAL_SPACE: return "TrivialSpace";
        case RT_ERR_PRECONDITION: return "PreconditionViolated";
        case RT_ERR_DOMAIN_MISMATCH: return "DomainMismatch";
        case RT_ERR_DISAGREEMENT: return "CharacterizationDisagreement";
        case RT_ERR_UNSUPPORTED: return "Unsupported";
        case RT_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* rt_last_error(void) { return g_last_error.c_str(); }

void rt_string_free(char* s) { std::free(s); }

rt_status rt_set_grid_size(size_t n) {
    return guarded([&] {
        require(n >= 16, ErrorCode::InvalidArgument, "grid size must be at least 16");
        set_default_grid_size(n);
    });
}

size_t rt_grid_size(void) { return default_grid_size(); }

rt_status rt_qconcave_new(const char* descriptor, double R, rt_qconcave** out) {
    return guarded([&] {
        need_out(out);
        *out = nullptr;
        const json d = descriptor_from_text(text(descriptor, "descriptor"));
        *out = new rt_qconcave{parse_qconcave(d, make_domain(R))};
    });
}

rt_status rt_qconcave_complementary(const rt_qconcave* phi, rt_qconcave** out) {
    return guarded([&] {
        need_out(out);
        *out = new rt_qconcave{need(phi, "phi").fn.complementary()};
    });
}

rt_status rt_qconcave_eval(const rt_qconcave* phi, double t, double* out) {
    return guarded([&] {
        need_out(out);
        const QuasiconcaveFn& f = need(phi, "phi").fn;
        require(t >= 0.0 && t <= f.domain().R, ErrorCode::InvalidArgument, "t must lie in [0,R]");
        *out = t == 0.0 ? 0.0 : f(t);
    });
}

void rt_qconcave_free(rt_qconcave* phi) { delete phi; }

rt_status rt_step_new(const char* descriptor, double R, rt_step** out) {
    return guarded([&] {
        need_out(out);
        *out = nullptr;
        const json d = descriptor_from_text(text(descriptor, "descriptor"));
        *out = new rt_step{parse_step(d, make_domain(R))};
    });
}

rt_status rt_step_rearranged(const rt_step* f, double t, double* star, double* double_star) {
    return guarded([&] {
        const MonotoneStepFn fs = rearrange(need(f, "f").fn);
        require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
        if (star) *star = fs(t);
        if (double_star) *double_star = fs.double_star(t);
    });
}

void rt_step_free(rt_step* f) { delete f; }

rt_status rt_function_new(const char* descriptor, double R, rt_function** out) {
    return guarded([&] {
        need_out(out);
        *out = nullptr;
        const json d = descriptor_from_text(text(descriptor, "descriptor"));
        *out = new rt_function{parse_piecewise(d, make_domain(R))};
    });
}

rt_status rt_function_eval(const rt_function* w, double t, double* out) {
    return guarded([&] {
        need_out(out);
        const PiecewiseFn& f = need(w, "function").fn;
        require(t > 0.0 && t < f.domain().R, ErrorCode::InvalidArgument, "t must lie in (0,R)");
        *out = f(t);
    });
}

rt_status rt_function_integrate(const rt_function* w, double a, double b, double* out) {
    return guarded([&] {
        need_out(out);
        *out = integrate(need(w, "function").fn, a, b);
    });
}

void rt_function_free(rt_function* w) { delete w; }

rt_status rt_check_b(const rt_qconcave* phi, const char* method, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        const QuasiconcaveFn& f = need(phi, "phi").fn;
        const BReport r = method ? b_check(f, parse_b_method(method)) : b_consensus(f);
        *json_out = copy_out(to_json(r));
    });
}

rt_status rt_marcinkiewicz_norm(const rt_qconcave* phi, const rt_step* f, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        *json_out = copy_out(to_json(marcinkiewicz_norm(need(phi, "phi").fn, need(f, "f").fn)));
    });
}

rt_status rt_gamma_norm(double p, const rt_function* weight, const rt_step* f, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        const GammaSpace space(p, need(weight, "weight").fn);
        *json_out = copy_out(to_json(gamma_norm(space, need(f, "f").fn)));
    });
}

rt_status rt_gamma_fundamental(double p, const rt_function* weight, double t, double* out) {
    return guarded([&] {
        need_out(out);
        *out = gamma_fundamental(GammaSpace(p, need(weight, "weight").fn), t);
    });
}

rt_status rt_linfty_embedding(double p, const rt_function* weight, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        *json_out = copy_out(to_json(linfty_embedding(GammaSpace(p, need(weight, "weight").fn))));
    });
}

rt_status rt_apply(char op, const rt_qconcave* phi, const rt_step* f, const double* t, size_t n,
                   double* values) {
    return guarded([&] {
        require(op == 'S' || op == 'T', ErrorCode::InvalidArgument, "op must be 'S' or 'T'");
        require(n == 0 || (t && values), ErrorCode::InvalidArgument, "point arrays are NULL");
        const QuasiconcaveFn& g = need(phi, "phi").fn;
        const MonotoneStepFn fs = rearrange(need(f, "f").fn);
        const OpResult r = op == 'S' ? apply_S(g, fs) : apply_T(g, fs);
        for (size_t i = 0; i < n; ++i) {
            require(t[i] > 0.0 && t[i] < g.domain().R, ErrorCode::InvalidArgument,
                    "evaluation points must lie in (0,R)");
            values[i] = r.trivial ? INFINITY : r.value(t[i]);
        }
    });
}

rt_status rt_criterion(const char* kind, double p, const rt_qconcave* phi, const rt_qconcave* psi,
                       const rt_function* w1, const rt_function* w2, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        const std::string k = text(kind, "kind");
        const PiecewiseFn& a = need(w1, "w1").fn;
        const PiecewiseFn& b = need(w2, "w2").fn;
        ConditionReport r;
        if (k == "sgg") {
            r = sgg_condition(p, need(phi, "phi").fn, a, b);
        } else if (k == "tgg") {
            r = tgg_condition(p, need(psi, "psi").fn, a, b);
        } else if (k == "stgg") {
            r = stgg_condition(p, need(phi, "phi").fn, need(psi, "psi").fn, a, b);
        } else {
            switch (parse_hardy_kind(k)) {
                case HardyKind::Ghs: r = ghs_condition(p, a, b); break;
                case HardyKind::Gl: r = gl_condition(p, need(psi, "psi").fn, a, b); break;
                case HardyKind::Neugebauer: {
                    const DerivedWeight w = phi ? DerivedWeight(WeightKind::S, p, phi->fn, b)
                                                : DerivedWeight(WeightKind::T, p, need(psi, "psi").fn, b);
                    r = neugebauer_condition(p, w, a);
                    break;
                }
            }
        }
        *json_out = copy_out(to_json(r));
    });
}

rt_status rt_verify(const char* lemma, const char* which, const rt_qconcave* phi,
                    const rt_qconcave* psi, size_t samples, unsigned long long seed, double slack,
                    char** json_out) {
    return guarded([&] {
        need_out(json_out);
        const std::string l = text(lemma, "lemma");
        require(slack >= 0.0 && slack <= 1e-2, ErrorCode::InvalidArgument,
                "slack must lie in [0, 1e-2]");
        const SampleConfig cfg{samples, seed, slack > 0.0 ? slack : 1e-6};
        LemmaVerdict v;
        if (l == "one-star") {
            v = verify_one_star(need(phi, "phi").fn, cfg);
        } else if (l == "endpoints") {
            v = verify_endpoints(parse_endpoint(text(which, "which")), need(phi, "phi").fn, cfg);
        } else if (l == "starfalls") {
            const QuasiconcaveFn& f = need(phi, "phi").fn;
            v = verify_starfalls(parse_starfall(text(which, "which")), f, psi ? psi->fn : f, cfg);
        } else {
            fail(ErrorCode::InvalidArgument, "unknown lemma '" + l + "'");
        }
        *json_out = copy_out(to_json(v));
    });
}

rt_status rt_interpolate(const char* op, double p, const rt_qconcave* phi, const rt_qconcave* psi,
                         const rt_function* w1, const rt_function* w2, size_t samples,
                         unsigned long long seed, double slack, char** json_out) {
    return guarded([&] {
        need_out(json_out);
        require(slack >= 0.0 && slack <= 1e-2, ErrorCode::InvalidArgument,
                "slack must lie in [0, 1e-2]");
        const SampleConfig cfg{samples, seed, slack > 0.0 ? slack : 1e-6};
        const LemmaVerdict v = verify_interpolation(
            DemoOperator::parse(text(op, "op")), p, need(phi, "phi").fn, need(psi, "psi").fn,
            need(w1, "w1").fn, need(w2, "w2").fn, cfg);
        *json_out = copy_out(to_json(v));
    });
}

}  // extern "C"
