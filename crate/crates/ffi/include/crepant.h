#ifndef CREPANT_H
#define CREPANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrepantFormat {
  CREPANT_FORMAT_TEXT = 0,
  CREPANT_FORMAT_JSONL = 1,
} CrepantFormat;

typedef enum CrepantStatus {
  CREPANT_STATUS_OK = 0,
  // The call ran but at least one check failed.
  CREPANT_STATUS_CHECK_FAILED = 1,
  CREPANT_STATUS_INVALID_ARGUMENT = 2,
  CREPANT_STATUS_NOT_FOUND = 3,
  CREPANT_STATUS_DATA_ERROR = 4,
  CREPANT_STATUS_MATH_ERROR = 5,
  CREPANT_STATUS_INTERNAL = 6,
} CrepantStatus;

// Opaque handle to a loaded group.
typedef struct CrepantGroup CrepantGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *crepant_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library on this thread.
const char *crepant_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void crepant_string_free(char *s);

// Loads a group by name (`A5`, `D7`, `E8`). `data_dir` may be null to use
// `CREPANT_DATA_DIR` or the built-in data.
//
// # Safety
// `name` must be a valid C string, `data_dir` null or a valid C string,
// `out` a valid pointer.
enum CrepantStatus crepant_group_load(const char *name,
                                      const char *data_dir,
                                      struct CrepantGroup **out);

// # Safety
// `g` must be null or a handle from [`crepant_group_load`], freed once.
void crepant_group_free(struct CrepantGroup *g);

// Group order, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t crepant_group_order(const struct CrepantGroup *g);

// Number of conjugacy classes, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t crepant_group_class_count(const struct CrepantGroup *g);

// Label of class `index` in table order.
//
// # Safety
// `g` must be a live handle and `out` a valid pointer.
enum CrepantStatus crepant_group_class_label(const struct CrepantGroup *g,
                                             size_t index,
                                             char **out);

// Three-point correlator of three class labels, as a reduced fraction.
//
// # Safety
// `g` must be a live handle, the labels valid C strings, `out` valid.
enum CrepantStatus crepant_three_point(const struct CrepantGroup *g,
                                       const char *a,
                                       const char *b,
                                       const char *c,
                                       char **out);

// Genus-one one-point psi integral of a class.
//
// # Safety
// `g` must be a live handle, `class` a valid C string, `out` valid.
enum CrepantStatus crepant_psi_one_point(const struct CrepantGroup *g,
                                         const char *class_,
                                         char **out);

// Genus-one one-point integral of the first Chern character against a
// nontrivial class.
//
// # Safety
// `g` must be a live handle, `class` a valid C string, `out` valid.
enum CrepantStatus crepant_ch1_one_point(const struct CrepantGroup *g,
                                         const char *class_,
                                         char **out);

// Degree-zero invariant of the resolution by localization, rendered as a
// rational function of the torus weights. `genus` is 1 (one unit
// insertion) or 2 (no insertions).
//
// # Safety
// `name` must be a valid C string, `data_dir` null or valid, `out` valid.
enum CrepantStatus crepant_localization(const char *name,
                                        uint32_t genus,
                                        const char *data_dir,
                                        char **out);

// Runs a verification suite and writes the rendered report.
//
// `suite` is one of `localization`, `hurwitz-hodge`, `three-point`,
// `change-of-vars` (these need `group`), `jfunction`, `wronskian` (these
// use `order`) or `all`. Returns `CheckFailed` when the report contains a
// failed check; the report is written in that case too.
//
// # Safety
// `suite` must be a valid C string, `group` and `data_dir` null or valid,
// `out` valid.
enum CrepantStatus crepant_verify(const char *suite,
                                  const char *group,
                                  size_t order,
                                  const char *data_dir,
                                  enum CrepantFormat format,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREPANT_H */
