#include "lcy_c.h"

#include "lcy/io.hpp"
#include "lcy/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

struct lcy_pair {
    lcy::LooijengaPair pair;
    lcy::FocusFocusLayout layout;
    bool has_layout = false;
};

struct lcy_cycle {
    lcy::TropicalCycle cycle;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class F>
lcy_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const lcy::InputError& e) {
        last_error = e.what();
        return LCY_INPUT_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LCY_INTERNAL_ERROR;
    } catch (...) {
        last_error = "unknown error";
        return LCY_INTERNAL_ERROR;
    }
}

lcy_status emit(const lcy::Report& r, char** report, char** svg = nullptr) {
    if (report) *report = dup(r.text);
    if (svg) *svg = r.svg.empty() ? nullptr : dup(r.svg);
    return r.status == 0 ? LCY_OK : LCY_NEGATIVE;
}

void need(const void* p, const char* what) {
    if (!p) throw lcy::InputError(std::string("null ") + what);
}

const lcy::FocusFocusLayout& layout(const lcy_pair* p) {
    if (!p->has_layout) {
        auto* q = const_cast<lcy_pair*>(p);
        q->layout = lcy::gs_layout(p->pair);
        q->has_layout = true;
    }
    return p->layout;
}

std::vector<lcy::i64> vec(const int64_t* a, size_t len) {
    if (len && !a) throw lcy::InputError("null divisor");
    return std::vector<lcy::i64>(a, a + len);
}

lcy_pair* wrap(lcy::LooijengaPair p) {
    auto* h = new lcy_pair;
    h->pair = std::move(p);
    return h;
}

} // namespace

extern "C" {

const char* lcy_last_error(void) { return last_error.c_str(); }

void lcy_string_free(char* s) { std::free(s); }

lcy_status lcy_pair_load(const char* path, lcy_pair** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "output");
        *out = wrap(lcy::load_pair(path));
        return LCY_OK;
    });
}

lcy_status lcy_pair_parse(const char* json, lcy_pair** out) {
    return guarded([&] {
        need(json, "text");
        need(out, "output");
        *out = wrap(lcy::read_pair(json));
        return LCY_OK;
    });
}

lcy_status lcy_pair_write(const lcy_pair* p, char** json) {
    return guarded([&] {
        need(p, "pair");
        need(json, "output");
        *json = dup(lcy::write_pair(p->pair));
        return LCY_OK;
    });
}

void lcy_pair_free(lcy_pair* p) { delete p; }

int lcy_pair_n(const lcy_pair* p) { return p ? p->pair.n() : 0; }

lcy_status lcy_pair_self_ints(const lcy_pair* p, int64_t* out, size_t cap) {
    return guarded([&] {
        need(p, "pair");
        const auto& s = p->pair.self_ints();
        for (size_t k = 0; k < s.size() && k < cap; ++k) out[k] = s[k];
        return LCY_OK;
    });
}

lcy_status lcy_cycle_load(const lcy_pair* p, const char* path, lcy_cycle** out) {
    return guarded([&] {
        need(p, "pair");
        need(path, "path");
        need(out, "output");
        *out = new lcy_cycle{lcy::load_cycle(layout(p), path)};
        return LCY_OK;
    });
}

lcy_status lcy_cycle_parse(const lcy_pair* p, const char* json, lcy_cycle** out) {
    return guarded([&] {
        need(p, "pair");
        need(json, "text");
        need(out, "output");
        *out = new lcy_cycle{lcy::read_cycle(layout(p), json)};
        return LCY_OK;
    });
}

lcy_status lcy_cycle_write(const lcy_pair* p, const lcy_cycle* c, char** json) {
    return guarded([&] {
        need(p, "pair");
        need(c, "cycle");
        need(json, "output");
        *json = dup(lcy::write_cycle(layout(p), c->cycle));
        return LCY_OK;
    });
}

void lcy_cycle_free(lcy_cycle* c) { delete c; }

lcy_status lcy_positivity(const lcy_pair* p, char** report) {
    return guarded([&] {
        need(p, "pair");
        return emit(lcy::positivity_report(p->pair), report);
    });
}

lcy_status lcy_polygon(const lcy_pair* p, const int64_t* a, size_t len, char** report, char** svg) {
    return guarded([&] {
        need(p, "pair");
        return emit(lcy::polygon_report(p->pair, vec(a, len), svg != nullptr), report, svg);
    });
}

lcy_status lcy_theta(const lcy_pair* p, int64_t px, int64_t py, int64_t qx, int64_t qy, int order, char** report) {
    return guarded([&] {
        need(p, "pair");
        return emit(lcy::theta_report(p->pair, lcy::I2{px, py}, lcy::I2{qx, qy}, order), report);
    });
}

lcy_status lcy_period_exceptional(const lcy_pair* p, int i, int j, const int64_t* a, size_t len, char** report,
                                  char** svg) {
    return guarded([&] {
        need(p, "pair");
        return emit(lcy::exceptional_period_report(p->pair, i, j, vec(a, len), svg != nullptr), report, svg);
    });
}

lcy_status lcy_period_cycle(const lcy_pair* p, const lcy_cycle* c, char** report, char** svg) {
    return guarded([&] {
        need(p, "pair");
        need(c, "cycle");
        return emit(lcy::cycle_period_report(p->pair, c->cycle, svg != nullptr), report, svg);
    });
}

lcy_status lcy_dp1_e8(int json, char** report) {
    return guarded([&] { return emit(lcy::dp1_e8_report(json != 0), report); });
}

lcy_status lcy_dp1_export(char** pair_json, char** cycle_json[8]) {
    return guarded([&] {
        need(pair_json, "output");
        auto S = lcy::dp1_suite();
        *pair_json = dup(lcy::write_pair(S.pair));
        for (std::size_t k = 0; k < 8; ++k) *cycle_json[k] = dup(lcy::write_cycle(S.layout, S.cycles[k]));
        return LCY_OK;
    });
}

lcy_status lcy_central_fiber(const lcy_pair* p, const int64_t* a, size_t len, int component, char** report) {
    return guarded([&] {
        need(p, "pair");
        return emit(lcy::central_fiber_report(p->pair, vec(a, len), component), report);
    });
}

} // extern "C"
