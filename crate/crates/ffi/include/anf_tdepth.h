#ifndef ANF_TDEPTH_H
#define ANF_TDEPTH_H

/* Generated by cbindgen from anf-tdepth-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum AnfStatus {
  ANF_STATUS_OK = 0,
  ANF_STATUS_NULL_ARGUMENT = 1,
  ANF_STATUS_INVALID_UTF8 = 2,
  ANF_STATUS_PARSE_ERROR = 3,
  ANF_STATUS_DOMAIN_ERROR = 4,
  ANF_STATUS_SYNTHESIS_ERROR = 5,
  ANF_STATUS_VERIFICATION_FAILED = 6,
} AnfStatus;

/**
 * Toffoli decomposition selector.
 */
typedef enum AnfVariant {
  ANF_VARIANT_T_DEPTH1 = 0,
  ANF_VARIANT_LOGICAL_AND = 1,
} AnfVariant;

/**
 * Opaque multi-output Boolean function.
 */
typedef struct AnfFunction AnfFunction;

/**
 * Opaque synthesis result: circuits plus the measured report.
 */
typedef struct AnfSynthesis AnfSynthesis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *anf_tdepth_last_error(void);

/**
 * Parses ANF text (same grammar as the CLI). On success stores a new
 * handle in `out`; release it with [`anf_tdepth_function_free`].
 *
 * # Safety
 * `text` must be NUL-terminated and `out` non-null.
 */
enum AnfStatus anf_tdepth_parse_anf(const char *text, struct AnfFunction **out);

/**
 * Parses truth-table text (bit/hex lines or a "vars N outs M" table).
 *
 * # Safety
 * `text` must be NUL-terminated and `out` non-null.
 */
enum AnfStatus anf_tdepth_parse_table(const char *text, struct AnfFunction **out);

/**
 * # Safety
 * `f` must be a handle from a parse call, not yet freed.
 */
void anf_tdepth_function_free(struct AnfFunction *f);

/**
 * Input arity; 0 on null.
 *
 * # Safety
 * `f` must be a live handle or null.
 */
uint32_t anf_tdepth_function_inputs(const struct AnfFunction *f);

/**
 * Output count; 0 on null.
 *
 * # Safety
 * `f` must be a live handle or null.
 */
uint32_t anf_tdepth_function_outputs(const struct AnfFunction *f);

/**
 * Maximum algebraic degree; 0 on null.
 *
 * # Safety
 * `f` must be a live handle or null.
 */
uint32_t anf_tdepth_function_degree(const struct AnfFunction *f);

/**
 * Evaluates the function at point `x` (variable i is bit i).
 *
 * # Safety
 * `f` must be a live handle or null.
 */
uint64_t anf_tdepth_function_evaluate(const struct AnfFunction *f, uint64_t x);

/**
 * Synthesizes a circuit. On success stores a handle in `out`; release it
 * with [`anf_tdepth_synthesis_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` non-null.
 */
enum AnfStatus anf_tdepth_synthesize(const struct AnfFunction *f,
                                     enum AnfVariant variant,
                                     struct AnfSynthesis **out);

/**
 * # Safety
 * `s` must be a handle from [`anf_tdepth_synthesize`], not yet freed.
 */
void anf_tdepth_synthesis_free(struct AnfSynthesis *s);

/**
 * JSON resource report of a synthesis. The string must be released with
 * [`anf_tdepth_string_free`].
 *
 * # Safety
 * `s` must be a live handle; `out` non-null.
 */
enum AnfStatus anf_tdepth_synthesis_report_json(const struct AnfSynthesis *s, char **out);

/**
 * Circuit text of a synthesis (the QASM-compatible dialect). Release with
 * [`anf_tdepth_string_free`].
 *
 * # Safety
 * `s` must be a live handle; `out` non-null.
 */
enum AnfStatus anf_tdepth_synthesis_circuit_text(const struct AnfSynthesis *s, char **out);

/**
 * Exhaustively checks a synthesis against its function at Toffoli
 * granularity.
 *
 * # Safety
 * Both handles must be live.
 */
enum AnfStatus anf_tdepth_synthesis_verify(const struct AnfSynthesis *s,
                                           const struct AnfFunction *f);

/**
 * JSON record with the closed-form and summation bounds for (n, m), plus
 * the identity check between them. Release with
 * [`anf_tdepth_string_free`].
 *
 * # Safety
 * `out` must be non-null.
 */
enum AnfStatus anf_tdepth_estimate_json(uint32_t n,
                                        uint32_t m,
                                        enum AnfVariant variant,
                                        char **out);

/**
 * JSON record with the function-specific accounting. Release with
 * [`anf_tdepth_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` non-null.
 */
enum AnfStatus anf_tdepth_function_estimate_json(const struct AnfFunction *f,
                                                 enum AnfVariant variant,
                                                 char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must originate from this library and not have been freed already.
 */
void anf_tdepth_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ANF_TDEPTH_H */
