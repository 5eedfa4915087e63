#ifndef CRYSTALLIZE_H
#define CRYSTALLIZE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CzStatus {
  CZ_STATUS_OK = 0,
  CZ_STATUS_NULL_POINTER = 1,
  CZ_STATUS_INVALID_UTF8 = 2,
  CZ_STATUS_PARSE = 3,
  CZ_STATUS_INVALID_INPUT = 4,
  CZ_STATUS_NOT_FOUND = 5,
  CZ_STATUS_PANIC = 6,
} CzStatus;

// A simplicial cell complex.
typedef struct CzComplex CzComplex;

// A colored graph.
typedef struct CzGraph CzGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; empty if none. The pointer
// stays valid until the next failing call on the same thread.
const char *cz_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void cz_string_free(char *s);

// Parses a graph in gem format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CzStatus cz_graph_parse_gem(const char *text, struct CzGraph **out);

// Built-in catalog entry by name (`s4`, `cp2`, `s2xs2`). `k3` needs its
// data file contents in `data`, which may otherwise be null.
//
// # Safety
// `name` must be a NUL-terminated string, `data` null or NUL-terminated,
// and `out` a valid pointer.
enum CzStatus cz_graph_catalog(const char *name, const char *data, struct CzGraph **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void cz_graph_free(struct CzGraph *g);

// Number of vertices, 0 for a null handle.
//
// # Safety
// `g` must be null or a valid handle.
size_t cz_graph_order(const struct CzGraph *g);

// Dimension (number of colors minus one), 0 for a null handle.
//
// # Safety
// `g` must be null or a valid handle.
size_t cz_graph_dim(const struct CzGraph *g);

// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_graph_write_gem(const struct CzGraph *g, char **out);

// Whether every residue on `dim - k` colors is connected.
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_graph_is_simple(const struct CzGraph *g, size_t k, bool *out);

// Whether every residue missing one color is certified a 3-sphere.
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_graph_is_crystallization(const struct CzGraph *g, bool *out);

// # Safety
// `a`, `b` must be valid handles and `out` a valid pointer.
enum CzStatus cz_graph_isomorphic(const struct CzGraph *a, const struct CzGraph *b, bool *out);

// Connected sum at `v1` of `a` and `v2` of `b`; `perm` holds `perm_len`
// color indices and may be null for the identity.
//
// # Safety
// `a`, `b` must be valid handles, `perm` null or pointing to `perm_len`
// values, and `out` a valid pointer.
enum CzStatus cz_graph_connected_sum(const struct CzGraph *a,
                                     size_t v1,
                                     const struct CzGraph *b,
                                     size_t v2,
                                     const size_t *perm,
                                     size_t perm_len,
                                     struct CzGraph **out);

// The complex dual to a graph.
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_complex_realize(const struct CzGraph *g, struct CzComplex **out);

// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CzStatus cz_complex_parse_pst(const char *text, struct CzComplex **out);

// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_complex_write_pst(const struct CzComplex *c, char **out);

// Dual colored graph of a contracted complex.
//
// # Safety
// `c` must be a valid handle and `out` a valid pointer.
enum CzStatus cz_complex_dual_graph(const struct CzComplex *c, struct CzGraph **out);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void cz_complex_free(struct CzComplex *c);

// Number of facets, 0 for a null handle.
//
// # Safety
// `c` must be null or a valid handle.
size_t cz_complex_num_facets(const struct CzComplex *c);

// Euler characteristic, 0 for a null handle.
//
// # Safety
// `c` must be null or a valid handle.
int64_t cz_complex_euler_characteristic(const struct CzComplex *c);

// Writes the f-vector into `buf`, which must hold `dim + 1` entries;
// `written` receives the number of entries.
//
// # Safety
// `c` must be a valid handle, `buf` must point to `len` writable values
// and `written` must be a valid pointer.
enum CzStatus cz_complex_f_vector(const struct CzComplex *c,
                                  size_t *buf,
                                  size_t len,
                                  size_t *written);

// Runs the simplifier with default weights. `reached` is set when the
// result is a simple contracted complex.
//
// # Safety
// `c` must be a valid handle; `out` and `reached` must be valid pointers.
enum CzStatus cz_complex_simplify(const struct CzComplex *c,
                                  uint64_t seed,
                                  size_t max_steps,
                                  struct CzComplex **out,
                                  bool *reached);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRYSTALLIZE_H */
