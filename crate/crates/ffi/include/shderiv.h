#ifndef SHDERIV_H
#define SHDERIV_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum ShdStatus {
  SHD_STATUS_OK = 0,
  /*
   A relation fails or a mathematical precondition is violated.
   */
  SHD_STATUS_MATH_FAILURE = 1,
  /*
   Malformed input: bad JSON, unknown labels, shape mismatches.
   */
  SHD_STATUS_INPUT_ERROR = 2,
  SHD_STATUS_NULL_POINTER = 3,
  /*
   A string argument is not valid UTF-8.
   */
  SHD_STATUS_INVALID_UTF8 = 4,
  /*
   An internal panic was caught at the boundary.
   */
  SHD_STATUS_PANIC = 5,
} ShdStatus;

/*
 An A-infinity or L-infinity structure, optionally with a derivation.
 */
typedef struct ShdStructure ShdStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message of the last failed call on this thread, or an empty string.
 The pointer stays valid until the next call into the library.
 */
const char *shd_last_error(void);

/*
 Library version as a static string.
 */
const char *shd_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void shd_string_free(char *s);

/*
 Parses a structure document (`"structure": "ainfty"` or `"linfty"`).

 # Safety
 `json` must be a valid C string and `out` a valid pointer.
 */
enum ShdStatus shd_structure_from_json(const char *json, struct ShdStructure **out);

/*
 Loads a built-in fixture, for example `"dual-numbers"` or `"sl2"`.

 # Safety
 `name` must be a valid C string and `out` a valid pointer.
 */
enum ShdStatus shd_structure_from_fixture(const char *name, struct ShdStructure **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void shd_structure_free(struct ShdStructure *s);

/*
 1 for A-infinity, 2 for L-infinity, 0 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
int shd_structure_kind(const struct ShdStructure *s);

/*
 Whether the handle carries a derivation (1) or not (0).

 # Safety
 `s` must be null or a live handle.
 */
int shd_structure_has_derivation(const struct ShdStructure *s);

/*
 Serializes the structure into the JSON document format.

 # Safety
 `s` must be a live handle and `out` a valid pointer.
 */
enum ShdStatus shd_structure_to_json(const struct ShdStructure *s, char **out);

/*
 Checks the structure relations up to `max_arity`, and the derivation
 relations too when `with_derivation` is nonzero. Returns
 `SHD_STATUS_MATH_FAILURE` with the first failing arity and tuple in
 `shd_last_error` when a relation fails.

 # Safety
 `s` must be a live handle.
 */
enum ShdStatus shd_structure_verify(const struct ShdStructure *s,
                                    size_t max_arity,
                                    int with_derivation);

/*
 The tautological derivation `θ_q = m_q` (or `l_q`), of degree one.

 # Safety
 `s` must be a live handle and `out` a valid pointer.
 */
enum ShdStatus shd_derive_tautological(const struct ShdStructure *s, struct ShdStructure **out);

/*
 The inner derivation of the element `label=coeff,…`. `degree` is used
 only when the element is zero; otherwise the element's own degree is
 taken. Fails with `SHD_STATUS_MATH_FAILURE` when `m1(a) != 0`.

 # Safety
 `s` must be a live handle, `element` a valid C string and `out` a valid
 pointer.
 */
enum ShdStatus shd_derive_inner(const struct ShdStructure *s,
                                const char *element,
                                int64_t degree,
                                struct ShdStructure **out);

/*
 Runs the `∂² = 0` check of the `"ass"` or `"lie"` resolution with
 derivation degree `k` up to `max_arity`. The text report is written to
 `report` when it is non-null; a nonzero residue gives
 `SHD_STATUS_MATH_FAILURE`.

 # Safety
 `preset` must be a valid C string; `report` must be null or valid.
 */
enum ShdStatus shd_operad_check_d2(const char *preset, int64_t k, size_t max_arity, char **report);

/*
 `∂g` for the generator `"x^n"`, `"xbar^n"` or `"phi"`, rendered as
 LaTeX when `latex` is nonzero and as plain text otherwise.

 # Safety
 `preset` and `generator` must be valid C strings and `out` a valid
 pointer.
 */
enum ShdStatus shd_operad_differential(const char *preset,
                                       const char *generator,
                                       int64_t k,
                                       int latex,
                                       char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SHDERIV_H */
