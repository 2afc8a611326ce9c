#ifndef MDECC_H
#define MDECC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Status codes returned by every fallible call.
typedef enum MdeccStatus {
  MDECC_STATUS_OK = 0,
  MDECC_STATUS_NULL_POINTER = 1,
  MDECC_STATUS_INVALID_UTF8 = 2,
  MDECC_STATUS_INVALID_CONFIG = 3,
  MDECC_STATUS_OUT_OF_RANGE = 4,
  MDECC_STATUS_LENGTH_MISMATCH = 5,
  MDECC_STATUS_BUFFER_TOO_SMALL = 6,
  MDECC_STATUS_UNCORRECTABLE = 7,
  MDECC_STATUS_AMBIGUOUS = 8,
  MDECC_STATUS_PANIC = 9,
} MdeccStatus;

// Opaque code handle.
typedef struct MdeccCode MdeccCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *mdecc_version(void);

// Message of the last failure on this thread, or NULL. Free with
// `mdecc_string_free`.
char *mdecc_last_error_message(void);

// Free a string returned by this library.
//
// # Safety
// `s` must be NULL or a pointer returned by this library and not yet freed.
void mdecc_string_free(char *s);

// Build a code from a JSON configuration such as
// `{"construction":"A","dims":[4,4]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum MdeccStatus mdecc_code_from_config_json(const char *json, struct MdeccCode **out);

// Release a code handle.
//
// # Safety
// `code` must be NULL or a handle from `mdecc_code_from_config_json` not yet freed.
void mdecc_code_free(struct MdeccCode *code);

// Code name, valid for the lifetime of the handle.
//
// # Safety
// `code` must be a live handle or NULL.
const char *mdecc_code_name(const struct MdeccCode *code);

// Number of parity-check rows r.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum MdeccStatus mdecc_code_redundancy(const struct MdeccCode *code, size_t *out);

// Number of cells N.
//
// # Safety
// `code` must be a live handle; `out` must be writable.
enum MdeccStatus mdecc_code_volume(const struct MdeccCode *code, size_t *out);

// Write the parity-check column of `cell` as `r` bytes.
//
// # Safety
// `code` must be a live handle; `bits` must hold `len` writable bytes.
enum MdeccStatus mdecc_code_column(const struct MdeccCode *code,
                                   size_t cell,
                                   uint8_t *bits,
                                   size_t len);

// Syndrome of an array, written as `r` bytes.
//
// # Safety
// `array` must hold `len` readable bytes; `syndrome` must hold `syndrome_len`
// writable bytes.
enum MdeccStatus mdecc_code_syndrome(const struct MdeccCode *code,
                                     const uint8_t *array,
                                     size_t len,
                                     uint8_t *syndrome,
                                     size_t syndrome_len);

// Decode an array without modifying it. The erroneous cells' linear indices
// go to `cells` (capacity `cap`) and their number to `count`; zero means no
// error.
//
// # Safety
// `array` must hold `len` readable bytes; `cells` must hold `cap` writable
// entries; `count` must be writable.
enum MdeccStatus mdecc_code_decode(const struct MdeccCode *code,
                                   const uint8_t *array,
                                   size_t len,
                                   size_t *cells,
                                   size_t cap,
                                   size_t *count);

// Decode and flip the erroneous cells in place; `count` receives their number.
//
// # Safety
// `array` must hold `len` writable bytes; `count` must be NULL or writable.
enum MdeccStatus mdecc_code_correct(const struct MdeccCode *code,
                                    uint8_t *array,
                                    size_t len,
                                    size_t *count);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MDECC_H */
