#ifndef HAMFVS_H
#define HAMFVS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum HamfvsStatus {
  HAMFVS_STATUS_OK = 0,
  /**
   * A required pointer was null or a string was not UTF-8.
   */
  HAMFVS_STATUS_INVALID_ARGUMENT = 1,
  HAMFVS_STATUS_FORMAT = 2,
  HAMFVS_STATUS_PRECONDITION = 3,
  HAMFVS_STATUS_CERTIFICATION = 4,
  HAMFVS_STATUS_UNDECIDED = 5,
} HamfvsStatus;

/**
 * An FVS instance: graph, budget and optional Hamiltonian cycle.
 */
typedef struct HamfvsInstance HamfvsInstance;

/**
 * Output of a reduction: the reduced instance and its trace.
 */
typedef struct HamfvsReduction HamfvsReduction;

/**
 * Message of the last failed call on this thread, or null if none. The
 * caller owns the string.
 */
char *hamfvs_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library that has not
 * been freed yet.
 */
void hamfvs_string_free(char *s);

/**
 * Parses the graph text format into a new instance.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HamfvsStatus hamfvs_instance_parse(const char *text, struct HamfvsInstance **out);

/**
 * Frees an instance.
 *
 * # Safety
 * `inst` must be null or a handle from [`hamfvs_instance_parse`] not yet freed.
 */
void hamfvs_instance_free(struct HamfvsInstance *inst);

/**
 * Number of vertices.
 *
 * # Safety
 * `inst` must be a live instance handle.
 */
uintptr_t hamfvs_instance_order(const struct HamfvsInstance *inst);

/**
 * Number of edges.
 *
 * # Safety
 * `inst` must be a live instance handle.
 */
uintptr_t hamfvs_instance_size(const struct HamfvsInstance *inst);

/**
 * The budget `k`.
 *
 * # Safety
 * `inst` must be a live instance handle.
 */
uint64_t hamfvs_instance_budget(const struct HamfvsInstance *inst);

/**
 * Minimum FVS size. `time_budget_secs <= 0` means no time limit.
 *
 * # Safety
 * `inst` must be a live instance handle and `opt` a valid pointer.
 */
enum HamfvsStatus hamfvs_solve(const struct HamfvsInstance *inst,
                               double time_budget_secs,
                               uintptr_t *opt);

/**
 * Runs the reduction to `target` (for example `"4reg-planar-ham"`).
 *
 * # Safety
 * `inst` must be a live instance handle, `target` a valid NUL-terminated
 * string and `out` a valid pointer.
 */
enum HamfvsStatus hamfvs_reduce(const struct HamfvsInstance *inst,
                                const char *target,
                                struct HamfvsReduction **out);

/**
 * Frees a reduction.
 *
 * # Safety
 * `red` must be null or a handle from [`hamfvs_reduce`] not yet freed.
 */
void hamfvs_reduction_free(struct HamfvsReduction *red);

/**
 * Budget of the reduced instance.
 *
 * # Safety
 * `red` must be a live reduction handle.
 */
uint64_t hamfvs_reduction_budget(const struct HamfvsReduction *red);

/**
 * Reduced graph in the text format (with budget and witness lines).
 *
 * # Safety
 * `red` must be a live reduction handle. Free the result with
 * [`hamfvs_string_free`].
 */
char *hamfvs_reduction_graph(const struct HamfvsReduction *red);

/**
 * Reduction trace as JSON.
 *
 * # Safety
 * `red` must be a live reduction handle. Free the result with
 * [`hamfvs_string_free`].
 */
char *hamfvs_reduction_trace(const struct HamfvsReduction *red);

/**
 * Replays a trace against an output graph and re-checks all certificates.
 *
 * # Safety
 * Both arguments must be valid NUL-terminated strings.
 */
enum HamfvsStatus hamfvs_verify(const char *graph_text, const char *trace_json);

/**
 * Certifies a gadget (`"R"`, `"L"`, `"D"` or `"Y"` with `p`) and writes its
 * report as JSON to `out`.
 *
 * # Safety
 * `kind` must be a valid NUL-terminated string and `out` a valid pointer.
 * Free `*out` with [`hamfvs_string_free`].
 */
enum HamfvsStatus hamfvs_gadget_report(const char *kind, uintptr_t p, char **out);

#endif  /* HAMFVS_H */
