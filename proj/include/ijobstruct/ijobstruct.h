#ifndef IJOBSTRUCT_H
#define IJOBSTRUCT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IJO_BUILDING_LIBRARY)
#    define IJO_API __declspec(dllexport)
#  else
#    define IJO_API __declspec(dllimport)
#  endif
#else
#  define IJO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ijo_status {
  IJO_OK = 0,
  IJO_ERR_PARSE = 1,
  IJO_ERR_SINGULAR_MATRIX = 2,
  IJO_ERR_NOT_NORMALIZING = 3,
  IJO_ERR_DIMENSION_MISMATCH = 4,
  IJO_ERR_INVALID_GROUP = 5,
  IJO_ERR_UNKNOWN_RULE = 6,
  IJO_ERR_UNSUPPORTED = 7,
  IJO_ERR_INVALID_ARGUMENT = 8,
  IJO_ERR_INTERNAL = 9
} ijo_status;

/* Exponent matrix of a Delsarte hypersurface. */
typedef struct ijo_matrix ijo_matrix;

/* Result of an operation: a JSON rendering, a human-readable rendering and a
 * short verdict word ("Smooth", "Contradiction", "accepted", ...). */
typedef struct ijo_document ijo_document;

IJO_API const char* ijo_version(void);
IJO_API const char* ijo_status_name(ijo_status status);

/* Message of the last failed call on this thread; "" if none. */
IJO_API const char* ijo_last_error(void);

/* ---- matrices ---------------------------------------------------------- */

/* Text format: "n d" then n+1 rows of n+1 exponents. */
IJO_API ijo_status ijo_matrix_parse(const char* text, ijo_matrix** out);
/* Names: klein, fermat, klein-curve, cone, chain. */
IJO_API ijo_status ijo_matrix_preset(const char* name, ijo_matrix** out);
IJO_API ijo_status ijo_matrix_from_rows(int n, int degree, const int* entries, ijo_matrix** out);
IJO_API int ijo_matrix_n(const ijo_matrix* m);
IJO_API int ijo_matrix_degree(const ijo_matrix* m);
IJO_API int ijo_matrix_entry(const ijo_matrix* m, int row, int col);
/* Canonical representative under simultaneous variable relabeling. */
IJO_API ijo_status ijo_matrix_canonical(const ijo_matrix* m, ijo_matrix** out);
IJO_API void ijo_matrix_free(ijo_matrix* m);

/* ---- operations -------------------------------------------------------- */

IJO_API ijo_status ijo_symmetry(const ijo_matrix* m, ijo_document** out);
IJO_API ijo_status ijo_smoothness(const ijo_matrix* m, ijo_document** out);
IJO_API ijo_status ijo_hodge(int n, int degree, ijo_document** out);
/* h^{n-1-q,q} of a smooth degree-d hypersurface in P^n. */
IJO_API ijo_status ijo_hodge_number(int n, int degree, int q, int64_t* out);

/* weights == NULL selects the generator of the largest cyclic factor of the
 * diagonal group. q < 0 lists every piece. */
IJO_API ijo_status ijo_character(const ijo_matrix* m, const int64_t* weights, int64_t modulus, int q,
                                 ijo_document** out);

typedef struct ijo_obstruct_params {
  int64_t dimension;
  int64_t p;
  int64_t q;
  int64_t r;          /* any representative; reduced mod p */
  int faithful;       /* nonzero if Z/p acts faithfully */
  const char* rules;  /* "R1-R7", "R1-R6,R8", ...; NULL for R1-R7 */
} ijo_obstruct_params;

/* The document's JSON is the certificate. */
IJO_API ijo_status ijo_obstruct(const ijo_obstruct_params* params, ijo_document** out);
IJO_API ijo_status ijo_verify_certificate(const char* certificate_json, ijo_document** out);

/* group: "cyclic:m" or "metacyclic:p,q,r". */
IJO_API ijo_status ijo_rh_oracle(const char* group, int genus_min, int genus_max, int threads, ijo_document** out);

typedef struct ijo_search_params {
  int n;
  int degree;
  int64_t threshold;
  const char* rules;    /* NULL for R1-R7 */
  int threads;          /* <= 0: IJOBSTRUCT_THREADS, else hardware */
  int include_non_hits;
} ijo_search_params;

/* JSON is JSON-lines, one candidate per line. */
IJO_API ijo_status ijo_search(const ijo_search_params* params, ijo_document** out);

/* ---- documents --------------------------------------------------------- */

IJO_API const char* ijo_document_json(const ijo_document* doc);
IJO_API const char* ijo_document_text(const ijo_document* doc);
IJO_API const char* ijo_document_verdict(const ijo_document* doc);
IJO_API void ijo_document_free(ijo_document* doc);

#ifdef __cplusplus
}
#endif

#endif
