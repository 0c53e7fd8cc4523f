#ifndef KBCOMPLETE_H
#define KBCOMPLETE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KbcStatus {
  KBC_STATUS_OK = 0,
  KBC_STATUS_NULL_ARGUMENT = 1,
  KBC_STATUS_INVALID_UTF8 = 2,
  KBC_STATUS_PARSE = 3,
  KBC_STATUS_INVALID = 4,
  KBC_STATUS_CONFLICT = 5,
  KBC_STATUS_INCONSISTENT = 6,
  KBC_STATUS_BUDGET_EXHAUSTED = 7,
  KBC_STATUS_COMPLETE = 8,
  KBC_STATUS_PAUSED = 9,
  KBC_STATUS_PANIC = 10,
} KbcStatus;

typedef enum KbcVerdict {
  KBC_VERDICT_ENTAILED = 0,
  KBC_VERDICT_REFUTED = 1,
  KBC_VERDICT_UNKNOWN = 2,
} KbcVerdict;

typedef enum KbcSessionStatus {
  KBC_SESSION_STATUS_RUNNING = 0,
  KBC_SESSION_STATUS_PAUSED = 1,
  KBC_SESSION_STATUS_FINISHED = 2,
} KbcSessionStatus;

/**
 * A parsed knowledge base.
 */
typedef struct KbcKb KbcKb;

/**
 * A completion session.
 */
typedef struct KbcSession KbcSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread; empty if none. Valid until
 * the next failing call on this thread.
 */
const char *kbc_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kbc_string_free(char *s);

/**
 * Parse ontology text into a new knowledge base handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum KbcStatus kbc_kb_parse(const char *text, struct KbcKb **out);

/**
 * # Safety
 * `kb` must come from [`kbc_kb_parse`] and not have been freed. Null is ignored.
 */
void kbc_kb_free(struct KbcKb *kb);

/**
 * Canonical ontology text of `kb`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_kb_write(const struct KbcKb *kb, char **out);

/**
 * Whether `c` is subsumed by `d` w.r.t. the TBox. A zero budget means the
 * default.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KbcStatus kbc_subsumes(const struct KbcKb *kb,
                            const char *c,
                            const char *d,
                            size_t budget,
                            bool *out);

/**
 * Three-valued instance check of `individual` against `c`.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KbcStatus kbc_instance_check(const struct KbcKb *kb,
                                  const char *individual,
                                  const char *c,
                                  size_t budget,
                                  enum KbcVerdict *out);

/**
 * Good common subsumer of `c` and `d`, using the conjunction hierarchy
 * over `names` (all defined names when `names` is null).
 *
 * # Safety
 * Pointers must be valid; `names` must hold `n_names` strings.
 */
enum KbcStatus kbc_gcs(const struct KbcKb *kb,
                       const char *c,
                       const char *d,
                       const char *const *names,
                       size_t n_names,
                       size_t budget,
                       char **out);

/**
 * Stem base of a context in `.cxt` format, one implication per line.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_stem_base(const char *cxt, char **out);

/**
 * Start completing a copy of `kb` over `names`. `order` may be null for
 * the order of `names`; a zero budget means the default.
 *
 * # Safety
 * Pointers must be valid; arrays must hold `n_names` strings.
 */
enum KbcStatus kbc_session_start(const struct KbcKb *kb,
                                 const char *const *names,
                                 const char *const *order,
                                 size_t n_names,
                                 size_t budget,
                                 struct KbcSession **out);

/**
 * Rebuild a session from a snapshot.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_resume(const char *snapshot, size_t budget, struct KbcSession **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed. Null is ignored.
 */
void kbc_session_free(struct KbcSession *s);

/**
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_status(const struct KbcSession *s, enum KbcSessionStatus *out);

/**
 * The pending question as its id and the rendering `{a, b} -> {c}`.
 * Returns [`KbcStatus::Complete`] when nothing is left to ask.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_question(const struct KbcSession *s, uint64_t *id, char **implication);

/**
 * Accept question `id`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_answer_yes(struct KbcSession *s, uint64_t id);

/**
 * Reject question `id` with a new individual whose row over the session
 * names is given as `+`, `-` and `?` characters.
 *
 * # Safety
 * Pointers must be valid; strings NUL-terminated.
 */
enum KbcStatus kbc_session_answer_no(struct KbcSession *s,
                                     uint64_t id,
                                     const char *individual,
                                     const char *row);

/**
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_postpone(struct KbcSession *s);

/**
 * Remove event `index` from the log and replay the rest. The number of
 * later events dropped as no longer applicable is stored in `dropped`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_undo(struct KbcSession *s, size_t index, size_t *dropped);

/**
 * Current snapshot of the session (does not pause it).
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_snapshot(const struct KbcSession *s, char **out);

/**
 * Completed ontology text and final partial context (`BP` dialect).
 *
 * # Safety
 * Pointers must be valid.
 */
enum KbcStatus kbc_session_export(const struct KbcSession *s, char **ontology, char **context);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KBCOMPLETE_H */
