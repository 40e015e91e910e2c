#ifndef TAMER_TAMER_H
#define TAMER_TAMER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TAMER_API __declspec(dllexport)
#else
#define TAMER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; also the CLI exit codes. */
typedef enum tamer_status {
    TAMER_OK = 0,
    TAMER_VERIFICATION_FAILED = 1,
    TAMER_INPUT_ERROR = 2,
    TAMER_BUDGET_EXCEEDED = 3,
    TAMER_INTERNAL_ERROR = 4
} tamer_status;

typedef struct tamer_context tamer_context;
typedef struct tamer_model tamer_model;

TAMER_API const char* tamer_version(void);

TAMER_API tamer_context* tamer_context_new(void);
TAMER_API void tamer_context_free(tamer_context* ctx);

/* Torsion-enumeration budget and Hopf dimension budget; 0 keeps the default. */
TAMER_API tamer_status tamer_set_budget(tamer_context* ctx, uint64_t torsion, uint64_t dim);
/* Campaign worker threads; 0 means hardware concurrency. */
TAMER_API tamer_status tamer_set_threads(tamer_context* ctx, unsigned threads);

/* Names of the subcommands, NULL past the end. */
TAMER_API const char* tamer_command_name(size_t index);

/* Runs a subcommand on a JSON request object. The report (or the error
 * report) is available through tamer_result until the next call. */
TAMER_API tamer_status tamer_run(tamer_context* ctx, const char* command, const char* request_json);
TAMER_API const char* tamer_result(const tamer_context* ctx);
TAMER_API const char* tamer_last_error(const tamer_context* ctx);
/* Name of the budget that tripped, or "". */
TAMER_API const char* tamer_last_budget(const tamer_context* ctx);

/* Parsed and validated root-stack model. */
TAMER_API tamer_status tamer_model_parse(tamer_context* ctx, const char* model_json, tamer_model** out);
TAMER_API void tamer_model_free(tamer_model* model);
/* Canonical JSON; owned by the model. */
TAMER_API const char* tamer_model_json(const tamer_model* model);
/* Sets *exists to 1 when an abelian torsor with the prescribed branching exists. */
TAMER_API tamer_status tamer_model_decide(tamer_context* ctx, const tamer_model* model, int* exists);
/* Order of the torsion subgroup of the Picard group. */
TAMER_API tamer_status tamer_model_torsion_order(tamer_context* ctx, const tamer_model* model, uint64_t* order);

#ifdef __cplusplus
}
#endif

#endif
