/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SPINOTTO_H
#define SPINOTTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SpinottoStatus {
  SPINOTTO_STATUS_OK = 0,
  SPINOTTO_STATUS_INVALID_ARGUMENT = 1,
  SPINOTTO_STATUS_NOT_CONVERGED = 2,
  SPINOTTO_STATUS_NULL_POINTER = 3,
  SPINOTTO_STATUS_BUFFER_TOO_SMALL = 4,
  SPINOTTO_STATUS_INTERNAL = 5,
} SpinottoStatus;

typedef enum SpinottoCycleMode {
  SPINOTTO_CYCLE_MODE_ENGINE = 0,
  SPINOTTO_CYCLE_MODE_REFRIGERATOR = 1,
  SPINOTTO_CYCLE_MODE_HEATER = 2,
  SPINOTTO_CYCLE_MODE_IDLE = 3,
} SpinottoCycleMode;

typedef enum SpinottoLocalMode {
  SPINOTTO_LOCAL_MODE_ENGINE = 0,
  SPINOTTO_LOCAL_MODE_REFRIGERATOR = 1,
  SPINOTTO_LOCAL_MODE_IDLE = 2,
} SpinottoLocalMode;

// Opaque fixed-coupling engine.
typedef struct SpinottoEngine SpinottoEngine;

// Opaque engine whose coupling changes between the two isochores.
typedef struct SpinottoGeneralized SpinottoGeneralized;

// Global thermodynamics of one cycle. `eta` is NaN unless the cycle is an
// engine; `eta_bound` is NaN when `4J >= B1`.
typedef struct SpinottoCycle {
  double w;
  double q1;
  double q2;
  double eta;
  double eta_bound;
  double eta_carnot;
  double eta_uncoupled;
  enum SpinottoCycleMode mode;
} SpinottoCycle;

// Per-spin heats and works; `ps` is the change of `<s_A.S_B>` between the
// hot and cold thermal states.
typedef struct SpinottoLocal {
  double q1a;
  double q2a;
  double q1b;
  double q2b;
  double wa;
  double wb;
  double ps;
  enum SpinottoLocalMode mode_a;
  enum SpinottoLocalMode mode_b;
} SpinottoLocal;

// Effective spin temperatures at the hot and cold thermal points. A spin
// whose populations are not Boltzmann-distributed has NaN temperature.
typedef struct SpinottoTemperatures {
  double a_hot;
  double a_cold;
  double b_hot;
  double b_cold;
  bool b_hot_thermal;
  bool b_cold_thermal;
  double b_hot_spread;
  double b_cold_spread;
} SpinottoTemperatures;

// Work split for a cycle that changes both field and coupling.
// `closed_form_ratio` is NaN unless `B1 == B2`.
typedef struct SpinottoCoop {
  double w;
  double wa;
  double wb;
  double ps;
  double wa_mf;
  double wb_mf;
  double w_coop;
  double cov1;
  double cov2;
  double ratio;
  double closed_form_ratio;
} SpinottoCoop;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, empty after a success.
// The pointer stays valid until the next call into this library.
const char *spinotto_last_error(void);

const char *spinotto_status_name(enum SpinottoStatus status);

// Creates an engine for spin `twice_s / 2`. Requires `J >= 0`,
// `B1 > B2 > 0` and `T1 > T2 > 0`.
//
// # Safety
// `out` must be null or point to writable storage for one pointer.
enum SpinottoStatus spinotto_engine_new(uint32_t twice_s,
                                        double j,
                                        double b1,
                                        double b2,
                                        double t1,
                                        double t2,
                                        struct SpinottoEngine **out);

// # Safety
// `engine` must be null or a handle from [`spinotto_engine_new`] not yet freed.
void spinotto_engine_free(struct SpinottoEngine *engine);

// # Safety
// `engine` must be a live handle and `out` writable.
enum SpinottoStatus spinotto_engine_cycle(const struct SpinottoEngine *engine,
                                          struct SpinottoCycle *out);

// # Safety
// `engine` must be a live handle and `out` writable.
enum SpinottoStatus spinotto_engine_local(const struct SpinottoEngine *engine,
                                          struct SpinottoLocal *out);

// # Safety
// `engine` must be a live handle and `out` writable.
enum SpinottoStatus spinotto_engine_temperatures(const struct SpinottoEngine *engine,
                                                 struct SpinottoTemperatures *out);

// Creates an engine whose coupling is `J1` on the hot isochore and `J2`
// on the cold one. Requires `J1, J2 >= 0`, `B1 >= B2 > 0`, `T1 > T2 > 0`.
//
// # Safety
// `out` must be null or point to writable storage for one pointer.
enum SpinottoStatus spinotto_generalized_new(uint32_t twice_s,
                                             double j1,
                                             double j2,
                                             double b1,
                                             double b2,
                                             double t1,
                                             double t2,
                                             struct SpinottoGeneralized **out);

// # Safety
// `handle` must be null or a handle from [`spinotto_generalized_new`] not yet freed.
void spinotto_generalized_free(struct SpinottoGeneralized *handle);

// # Safety
// `handle` must be a live handle and `out` writable.
enum SpinottoStatus spinotto_generalized_run(const struct SpinottoGeneralized *handle,
                                             struct SpinottoCoop *out);

// Writes the `2(2s+1)` ascending eigenvalues of the pair Hamiltonian into
// `buf`. `*len` is always set to the required length; a short buffer gives
// [`SpinottoStatus::BufferTooSmall`] and leaves `buf` untouched.
//
// # Safety
// `buf` must be valid for `cap` writes (or null when `cap == 0`), `len` writable.
enum SpinottoStatus spinotto_spectrum(uint32_t twice_s,
                                      double j,
                                      double b,
                                      double *buf,
                                      size_t cap,
                                      size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINOTTO_H */
