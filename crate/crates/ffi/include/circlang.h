#ifndef CIRCLANG_H
#define CIRCLANG_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CirclangConvention {
  CIRCLANG_CONVENTION_COUNT_K = 0,
  CIRCLANG_CONVENTION_SKIP_K = 1,
} CirclangConvention;

typedef enum CirclangCountKind {
  CIRCLANG_COUNT_KIND_ALL = 0,
  CIRCLANG_COUNT_KIND_SURJECTIVE = 1,
  CIRCLANG_COUNT_KIND_BALANCED = 2,
  CIRCLANG_COUNT_KIND_STIRLING = 3,
} CirclangCountKind;

typedef enum CirclangPartitionMode {
  CIRCLANG_PARTITION_MODE_REMOVAL = 0,
  CIRCLANG_PARTITION_MODE_NON_REMOVAL = 1,
} CirclangPartitionMode;

typedef enum CirclangSearchMode {
  CIRCLANG_SEARCH_MODE_EXHAUSTIVE = 0,
  CIRCLANG_SEARCH_MODE_MAXIMAL = 1,
} CirclangSearchMode;

typedef enum CirclangStatus {
  CIRCLANG_STATUS_OK = 0,
  /**
   * The query ran but has no solution, or a check came out false.
   */
  CIRCLANG_STATUS_NO_SOLUTION = 1,
  CIRCLANG_STATUS_INVALID_ARGUMENT = 2,
  CIRCLANG_STATUS_NULL_POINTER = 3,
  CIRCLANG_STATUS_PARSE_ERROR = 4,
  CIRCLANG_STATUS_DOMAIN_ERROR = 5,
  CIRCLANG_STATUS_BUDGET_EXCEEDED = 6,
  CIRCLANG_STATUS_BUFFER_TOO_SMALL = 7,
  CIRCLANG_STATUS_PANIC = 8,
} CirclangStatus;

typedef struct CirclangAlphabet CirclangAlphabet;

typedef struct CirclangGrammar CirclangGrammar;

typedef struct CirclangPartition CirclangPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *circlang_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void circlang_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *circlang_version(void);

/**
 * The built-in straight/curved English letter partition.
 */
enum CirclangStatus circlang_alphabet_english(struct CirclangAlphabet **out_alphabet);

/**
 * Parses an alphabet from its JSON form.
 */
enum CirclangStatus circlang_alphabet_from_json(const char *json,
                                                struct CirclangAlphabet **out_alphabet);

size_t circlang_alphabet_class_count(const struct CirclangAlphabet *alphabet);

void circlang_alphabet_free(struct CirclangAlphabet *alphabet);

/**
 * Compares the run pattern of `sentence` (non-alphabet characters stripped)
 * with `lengths`. Returns OK on a match and NO_SOLUTION otherwise.
 */
enum CirclangStatus circlang_check_sentence(const struct CirclangAlphabet *alphabet,
                                            const char *sentence,
                                            const size_t *lengths,
                                            size_t lengths_len);

/**
 * Parses a grammar file.
 */
enum CirclangStatus circlang_grammar_parse(const char *source,
                                           struct CirclangGrammar **out_grammar);

void circlang_grammar_free(struct CirclangGrammar *grammar);

/**
 * Balanced partition of `1..=n` into `r` groups. `mode` is a
 * `CirclangPartitionMode`.
 */
enum CirclangStatus circlang_partition(size_t n,
                                       size_t r,
                                       size_t k,
                                       uint32_t mode,
                                       struct CirclangPartition **out_partition);

size_t circlang_partition_group_count(const struct CirclangPartition *p);

/**
 * Copies group `index` (0-based) into `buffer`. `out_len` always receives
 * the group size; BUFFER_TOO_SMALL is returned when `capacity` is short.
 */
enum CirclangStatus circlang_partition_group(const struct CirclangPartition *p,
                                             size_t index,
                                             size_t *buffer,
                                             size_t capacity,
                                             size_t *out_len);

/**
 * Groups and construction trace as JSON.
 */
enum CirclangStatus circlang_partition_to_json(const struct CirclangPartition *p, char **out_json);

void circlang_partition_free(struct CirclangPartition *p);

/**
 * Writes the first `count` removals on a circle of `n` into `buffer`,
 * which must hold `count` entries. `convention` is a `CirclangConvention`.
 */
enum CirclangStatus circlang_eliminate(size_t n,
                                       size_t k,
                                       size_t count,
                                       uint32_t convention,
                                       size_t *buffer,
                                       size_t capacity);

/**
 * Arrangement count as a decimal string. `kind` is a `CirclangCountKind`.
 */
enum CirclangStatus circlang_count(uint32_t n, uint32_t r, uint32_t kind, char **out_decimal);

/**
 * Searches for a sequence and sentence for the run pattern `lengths`.
 *
 * `dictionary` may be NULL (with `dictionary_len` 0) to use the grammar's
 * own words. `mode` is a `CirclangSearchMode`; `candidate_cap` of 0 uses the
 * default. On success `out_json` receives the solution JSON; NO_SOLUTION
 * leaves it NULL.
 */
enum CirclangStatus circlang_find_sentence(const struct CirclangAlphabet *alphabet,
                                           const struct CirclangGrammar *grammar,
                                           const char *const *dictionary,
                                           size_t dictionary_len,
                                           const size_t *lengths,
                                           size_t lengths_len,
                                           uint32_t mode,
                                           uint64_t candidate_cap,
                                           char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CIRCLANG_H */
