#include "hk/hk.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hk/estimate.hpp"
#include "hk/io.hpp"
#include "hk/monomial.hpp"
#include "hk/oracle.hpp"
#include "hk/reduced.hpp"

struct hk_poly {
    hk::Trinomial tri;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
hk_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const hk::budget_error& e) {
        g_last_error = e.what();
        return HK_ERROR_BUDGET;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return HK_ERROR_PARSE;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return HK_ERROR_INVALID;
    } catch (const std::overflow_error& e) {
        g_last_error = e.what();
        return HK_ERROR_INVALID;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return HK_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HK_ERROR_INTERNAL;
    }
}

std::uint64_t effective_budget(uint64_t budget) {
    return budget == 0 ? hk::kDefaultBudget : budget;
}

} // namespace

extern "C" {

const char* hk_status_str(hk_status status) {
    switch (status) {
        case HK_OK: return "ok";
        case HK_ERROR_PARSE: return "parse error";
        case HK_ERROR_INVALID: return "invalid argument";
        case HK_ERROR_BUDGET: return "budget exceeded";
        case HK_ERROR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* hk_last_error(void) { return g_last_error.c_str(); }

hk_status hk_poly_parse(const char* text, int64_t p, hk_poly** out) {
    if (!text || !out) {
        g_last_error = "null argument";
        return HK_ERROR_PARSE;
    }
    *out = nullptr;
    return guarded([&]() {
        if (p < 2) throw std::invalid_argument("characteristic must be a prime >= 2");
        *out = new hk_poly{hk::parse_trinomial(text, static_cast<std::uint64_t>(p))};
        return HK_OK;
    });
}

void hk_poly_free(hk_poly* poly) { delete poly; }

int64_t hk_poly_var_count(const hk_poly* poly) {
    return poly ? static_cast<int64_t>(poly->tri.vars()) : -1;
}

hk_status hk_poly_canonical(const hk_poly* poly, char** out) {
    if (!poly || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        *out = dup_string(poly->tri.to_string());
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

hk_status hk_series_text(const hk_poly* poly, int n_max, uint64_t budget, int format, char** out) {
    if (!poly || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        hk::HKSeries s = hk::hk_series(poly->tri, n_max, effective_budget(budget));
        if (s.points.empty()) throw hk::budget_error("no feasible level within budget");
        std::string text = format == 1 ? hk::series_to_csv(s) : hk::series_to_json(s).dump(2) + "\n";
        *out = dup_string(text);
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

hk_status hk_colength_text(const hk_poly* poly, int n, uint64_t budget, char** out) {
    if (!poly || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        *out = dup_string(std::to_string(hk::colength(poly->tri, n, effective_budget(budget))));
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

hk_status hk_classify_csv(const hk_poly* poly, int n, int depth, uint64_t budget, char** out) {
    if (!poly || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        auto verdicts = hk::classify_box(poly->tri, n, depth, effective_budget(budget));
        *out = dup_string(hk::classify_to_csv(verdicts));
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

hk_status hk_analyze_json(const hk_poly* poly, int n, int64_t bound, uint64_t budget, char** out) {
    if (!poly || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        if (bound < 1) throw std::invalid_argument("bound must be >= 1");
        hk::ClassTable table = hk::count_unsolvable(poly->tri, n, bound, effective_budget(budget));
        *out = dup_string(hk::analyze_json(poly->tri, n, table).dump(2) + "\n");
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

hk_status hk_estimate_json(const char* series_json, int64_t d, const char* q_max, int force,
                           char** out) {
    if (!series_json || !out) return HK_ERROR_PARSE;
    return guarded([&]() {
        hk::EstimateInput input = hk::series_from_json(series_json);
        std::int64_t dim = d;
        if (dim < 0) {
            if (input.m < 1) throw std::invalid_argument("series lacks a variable count; pass d");
            dim = static_cast<std::int64_t>(input.m) - 1;
        }
        hk::BigInt qm = q_max ? hk::BigInt(std::string(q_max)) : hk::BigInt(10000);
        hk::MultiplicityEstimate est = hk::estimate_multiplicity(input, dim);
        hk::RationalityReport report = hk::rationality_probe(est, qm, force != 0);
        *out = dup_string(hk::estimate_report_json(input, est, report, qm).dump(2) + "\n");
        return *out ? HK_OK : HK_ERROR_INTERNAL;
    });
}

void hk_string_free(char* s) { std::free(s); }

} // extern "C"
