#ifndef LCY_C_H
#define LCY_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LCY_API __declspec(dllexport)
#else
#define LCY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    LCY_OK = 0,
    LCY_NEGATIVE = 1,    /* computed fine, answer is negative or a check failed */
    LCY_INPUT_ERROR = 2, /* malformed file or invalid arguments */
    LCY_INTERNAL_ERROR = 3
} lcy_status;

typedef struct lcy_pair lcy_pair;
typedef struct lcy_cycle lcy_cycle;

/* message of the last failing call on this thread */
LCY_API const char* lcy_last_error(void);
/* strings returned through char** out-parameters are owned by the caller */
LCY_API void lcy_string_free(char* s);

LCY_API lcy_status lcy_pair_load(const char* path, lcy_pair** out);
LCY_API lcy_status lcy_pair_parse(const char* json, lcy_pair** out);
LCY_API lcy_status lcy_pair_write(const lcy_pair* p, char** json);
LCY_API void lcy_pair_free(lcy_pair* p);
LCY_API int lcy_pair_n(const lcy_pair* p);
/* copies min(n, cap) self-intersections */
LCY_API lcy_status lcy_pair_self_ints(const lcy_pair* p, int64_t* out, size_t cap);

/* cycles are read against the default focus-focus layout of the pair */
LCY_API lcy_status lcy_cycle_load(const lcy_pair* p, const char* path, lcy_cycle** out);
LCY_API lcy_status lcy_cycle_parse(const lcy_pair* p, const char* json, lcy_cycle** out);
LCY_API lcy_status lcy_cycle_write(const lcy_pair* p, const lcy_cycle* c, char** json);
LCY_API void lcy_cycle_free(lcy_cycle* c);

LCY_API lcy_status lcy_positivity(const lcy_pair* p, char** report);
/* a may be NULL (len 0) for the automatic divisor; svg may be NULL */
LCY_API lcy_status lcy_polygon(const lcy_pair* p, const int64_t* a, size_t len, char** report, char** svg);
LCY_API lcy_status lcy_theta(const lcy_pair* p, int64_t px, int64_t py, int64_t qx, int64_t qy, int order, char** report);
/* i, j are 1-based; svg may be NULL */
LCY_API lcy_status lcy_period_exceptional(const lcy_pair* p, int i, int j, const int64_t* a, size_t len, char** report,
                                          char** svg);
LCY_API lcy_status lcy_period_cycle(const lcy_pair* p, const lcy_cycle* c, char** report, char** svg);
LCY_API lcy_status lcy_dp1_e8(int json, char** report);
/* pair file of the degree one del Pezzo blowup and its eight root cycles (beta', beta^1..beta^7) */
LCY_API lcy_status lcy_dp1_export(char** pair_json, char** cycle_json[8]);
/* component < 0 lists all components */
LCY_API lcy_status lcy_central_fiber(const lcy_pair* p, const int64_t* a, size_t len, int component, char** report);

#ifdef __cplusplus
}
#endif

#endif
