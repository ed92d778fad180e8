#ifndef SSYM_H
#define SSYM_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum SsymStatus {
  SSYM_STATUS_OK = 0,
  SSYM_STATUS_NULL_POINTER = 1,
  SSYM_STATUS_INVALID_ARGUMENT = 2,
  SSYM_STATUS_PARSE_ERROR = 3,
  SSYM_STATUS_OUT_OF_RANGE = 4,
  SSYM_STATUS_OVERFLOW = 5,
  SSYM_STATUS_BUFFER_TOO_SMALL = 6,
  SSYM_STATUS_PANIC = 7,
} SsymStatus;

/**
 * Memo table shared across antipode calls; safe to use from several threads.
 */
typedef struct SsymCache SsymCache;

/**
 * An integer combination of words.
 */
typedef struct SsymElement SsymElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ssym_last_error(void);

enum SsymStatus ssym_cache_new(struct SsymCache **out);

void ssym_cache_free(struct SsymCache *cache);

/**
 * Number of permutations memoized in `cache`, or 0 for null.
 */
size_t ssym_cache_len(const struct SsymCache *cache);

/**
 * Recursive antipode of the permutation `letters[0..len]`. `cache` may be
 * null, in which case a private cache is used.
 */
enum SsymStatus ssym_antipode(const struct SsymCache *cache,
                              const uint8_t *letters,
                              size_t len,
                              struct SsymElement **out);

/**
 * Antipode of the permutation with descent `a > b` followed by the
 * remaining letters of `1..=n` in increasing order, from the closed form.
 */
enum SsymStatus ssym_closed_antipode(size_t n, size_t a, size_t b, struct SsymElement **out);

/**
 * Closed-form component ending in `j`, last letter stripped.
 */
enum SsymStatus ssym_closed_component(size_t n,
                                      size_t a,
                                      size_t b,
                                      size_t j,
                                      struct SsymElement **out);

/**
 * Writes the case tag (`"a"` … `"n"`) governing component `j` to `tag`, a
 * static NUL-terminated string.
 */
enum SsymStatus ssym_classify(size_t n, size_t a, size_t b, size_t j, const char **tag);

/**
 * Writes the `n` letters of the descent permutation into `buf`.
 */
enum SsymStatus ssym_sigma(size_t n, size_t a, size_t b, uint8_t *buf, size_t capacity);

/**
 * Parses text such as `-132 +231 -312` or `+2·1423`.
 */
enum SsymStatus ssym_element_parse(const char *text, struct SsymElement **out);

void ssym_element_free(struct SsymElement *e);

/**
 * Number of distinct words, or 0 for null.
 */
size_t ssym_element_len(const struct SsymElement *e);

/**
 * Term `index` in lexicographic word order. The word's letters go to
 * `letters` (at most `capacity`), its length to `word_len`, and its
 * coefficient to `coeff`. If `capacity` is too small, `word_len` is still
 * set and `SSYM_STATUS_BUFFER_TOO_SMALL` is returned.
 */
enum SsymStatus ssym_element_term(const struct SsymElement *e,
                                  size_t index,
                                  uint8_t *letters,
                                  size_t capacity,
                                  size_t *word_len,
                                  int64_t *coeff);

/**
 * 1 if equal, 0 if not, -1 if either is null.
 */
int32_t ssym_element_equal(const struct SsymElement *x, const struct SsymElement *y);

/**
 * Text rendering; release with [`ssym_string_free`]. Null on failure.
 */
char *ssym_element_to_string(const struct SsymElement *e);

void ssym_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SSYM_H */
