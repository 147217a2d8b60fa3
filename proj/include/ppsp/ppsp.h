/*
 * C interface to the PPSP protocol lab: parameter checks, protocol parties,
 * the wire format, attacks and the Monte-Carlo harness.
 *
 * Conventions:
 *  - Every fallible call returns ppsp_status; PPSP_OK is 0. On failure
 *    ppsp_last_error() describes the problem (thread-local, valid until the
 *    next failing call on the same thread).
 *  - Opaque handles are released with their matching *_free function.
 *  - Strings and buffers handed out by the library are released with
 *    ppsp_string_free / ppsp_buffer_free.
 *  - Big integers cross the boundary as decimal strings.
 */
#ifndef PPSP_PPSP_H_
#define PPSP_PPSP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PPSP_BUILDING_LIBRARY)
#define PPSP_API __attribute__((visibility("default")))
#else
#define PPSP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppsp_status {
  PPSP_OK = 0,
  PPSP_ERR_INVALID_ARGUMENT = 1,
  PPSP_ERR_INVALID_PARAMS = 2,     /* structural: n, q, k1 > 2 k2, ... */
  PPSP_ERR_PARAMETER_VIOLATION = 3,/* inputs do not respect the params */
  PPSP_ERR_FRAMING = 4,
  PPSP_ERR_PRIME_SEARCH = 5,
  PPSP_ERR_NOT_INVERTIBLE = 6,
  PPSP_ERR_VARIANT_MISMATCH = 7,
  PPSP_ERR_AMBIGUOUS = 8,
  PPSP_ERR_INTERNAL = 9
} ppsp_status;

typedef enum ppsp_variant { PPSP_SPOC13 = 0, PPSP_TPDS14 = 1 } ppsp_variant;

typedef struct ppsp_params {
  uint64_t n;
  uint64_t q;
  uint32_t k1;
  uint32_t k2;
  uint32_t k3;
  uint32_t k4;
  ppsp_variant variant;
} ppsp_params;

typedef struct ppsp_constraint_report {
  int eq_result_fits_p;
  int eq_1a;
  int eq_1b;
  int eq_1c;
  int all_satisfied;
} ppsp_constraint_report;

typedef struct ppsp_threshold_report {
  int64_t k4_correctness_onset;
  int64_t k4_attack1_neighbor;
  int64_t k4_attack1_any;
  int64_t k4_attack2;
  int64_t max_error_bits;
} ppsp_threshold_report;

typedef struct ppsp_buffer {
  uint8_t* data;
  size_t size;
} ppsp_buffer;

PPSP_API const char* ppsp_last_error(void);
PPSP_API const char* ppsp_status_name(ppsp_status status);
PPSP_API void ppsp_string_free(char* s);
PPSP_API void ppsp_buffer_free(ppsp_buffer* buffer);

/* ---- parameters ---------------------------------------------------------- */

/* n=256, q=2^32, k1=512, k2=200, k3=128, k4=128, TPDS14. */
PPSP_API void ppsp_params_default(ppsp_params* out);
PPSP_API ppsp_status ppsp_validate(const ppsp_params* params, ppsp_constraint_report* out);
PPSP_API ppsp_status ppsp_attack_thresholds(const ppsp_params* params, ppsp_threshold_report* out);
PPSP_API ppsp_status ppsp_noise_bound_bits(const ppsp_params* params, int64_t* out);
/* Both reports as text; key_values != 0 selects one-line key=value records. */
PPSP_API ppsp_status ppsp_params_report(const ppsp_params* params, int key_values, char** out);

/* ---- protocol ------------------------------------------------------------ */

typedef struct ppsp_p0 ppsp_p0;           /* P0 between its two steps */
typedef struct ppsp_outcome ppsp_outcome; /* result + P0's view */

/* Session inputs derived from `seed` (each array holds params->n elements).
 * zero_a / zero_b select the all-zero vector instead. */
PPSP_API ppsp_status ppsp_derive_inputs(const ppsp_params* params, uint64_t seed, int zero_a,
                                        int zero_b, uint64_t* a, uint64_t* b);

/* P0 step 1: masks `a`, returns the party handle and the encoded Round1 frame. */
PPSP_API ppsp_status ppsp_p0_round1(const ppsp_params* params, const uint64_t* a, size_t len,
                                    uint64_t seed, ppsp_p0** out_p0, ppsp_buffer* out_frame);
/* P1 step 2: consumes a Round1 frame, returns the encoded Round2 frame. */
PPSP_API ppsp_status ppsp_p1_round2(const ppsp_params* params, const uint64_t* b, size_t len,
                                    uint64_t seed, const uint8_t* round1, size_t round1_len,
                                    ppsp_buffer* out_frame);
/* P0 step 3: consumes a Round2 frame. The p0 handle stays owned by the caller. */
PPSP_API ppsp_status ppsp_p0_finalize(const ppsp_p0* p0, const uint8_t* round2, size_t round2_len,
                                      ppsp_outcome** out);
PPSP_API void ppsp_p0_free(ppsp_p0* p0);

/* All three steps in-process; same seed gives the same transcript as the
 * split calls above. */
PPSP_API ppsp_status ppsp_run_session(const ppsp_params* params, const uint64_t* a,
                                      const uint64_t* b, size_t len, uint64_t seed,
                                      ppsp_outcome** out);
PPSP_API char* ppsp_outcome_result(const ppsp_outcome* outcome);
PPSP_API char* ppsp_outcome_e(const ppsp_outcome* outcome);
PPSP_API ppsp_status ppsp_outcome_frames(const ppsp_outcome* outcome, ppsp_buffer* round1,
                                         ppsp_buffer* round2);
PPSP_API void ppsp_outcome_free(ppsp_outcome* outcome);

PPSP_API ppsp_status ppsp_dot_oracle(const uint64_t* a, const uint64_t* b, size_t len, char** out);

/* ---- wire format --------------------------------------------------------- */

/* Size of the frame starting at prefix[0] as far as known; > len while more
 * bytes are needed. */
PPSP_API ppsp_status ppsp_frame_bytes_needed(const uint8_t* prefix, size_t len, size_t* needed);
/* Full decode check; reports tag and integer count. */
PPSP_API ppsp_status ppsp_frame_inspect(const uint8_t* frame, size_t len, uint8_t* tag, size_t* count);

/* ---- attacks ------------------------------------------------------------- */

PPSP_API ppsp_status ppsp_distinguish_pair(const ppsp_outcome* outcome, const uint64_t* b0,
                                           const uint64_t* b1, size_t len, int* index,
                                           size_t distance_bits[2]);
PPSP_API ppsp_status ppsp_test_candidate(const ppsp_outcome* outcome, const uint64_t* candidate,
                                         size_t len, int slack_bits, int* verdict);

/* Runs the OT-from-PPSP session (n=2, q=2, TPDS14, sizes from `base`) and
 * tries to recover both sender bits. Returns PPSP_ERR_AMBIGUOUS when the
 * attack has no unique answer; *ot_output is set either way. */
PPSP_API ppsp_status ppsp_ot_break(const ppsp_params* base, int sigma, int x0, int x1, uint64_t seed,
                                   int* ot_output, int* recovered_x0, int* recovered_x1);

/* ---- harness ------------------------------------------------------------- */

typedef enum ppsp_input_mode { PPSP_INPUT_ZERO = 0, PPSP_INPUT_RANDOM = 1 } ppsp_input_mode;
typedef enum ppsp_pair_mode { PPSP_PAIR_RANDOM = 0, PPSP_PAIR_NEIGHBOR = 1 } ppsp_pair_mode;
typedef enum ppsp_attack {
  PPSP_ATTACK_ORIGINAL = 0,       /* SPOC13 deterministic distinguisher */
  PPSP_ATTACK_FIXED_A0 = 1,       /* TPDS14, a = 0 */
  PPSP_ATTACK_FIXED_GENERAL = 2,  /* TPDS14, random a */
  PPSP_ATTACK_TEST_CANDIDATE = 3  /* TPDS14 candidate tester */
} ppsp_attack;

typedef struct ppsp_trial_config {
  ppsp_params params;
  uint64_t trials;
  uint64_t seed;
  ppsp_input_mode a_mode;
  ppsp_pair_mode pair_mode;
  ppsp_input_mode b_mode;
  uint32_t threads; /* 0: one per hardware thread */
} ppsp_trial_config;

typedef struct ppsp_sweep_row {
  uint32_t k4;
  uint64_t trials;
  double acc_attack1_random;
  double acc_attack1_neighbor;
  double acc_attack2_random;
  double acc_attack2_neighbor;
  double mean_abs_error_bits;
  uint64_t max_abs_error_bits;
} ppsp_sweep_row;

typedef struct ppsp_ot_report {
  uint64_t runs;
  double ot_correctness;
  double forbidden_bit_recovery;
  double both_bits_recovery;
  uint64_t ambiguous;
} ppsp_ot_report;

typedef struct ppsp_sweep ppsp_sweep;

PPSP_API void ppsp_trial_config_default(ppsp_trial_config* out);
PPSP_API ppsp_status ppsp_run_correctness_trials(const ppsp_trial_config* cfg, double* mean_bits,
                                                 uint64_t* max_bits, uint64_t* failures);
PPSP_API ppsp_status ppsp_run_attack_trials(const ppsp_trial_config* cfg, ppsp_attack attack,
                                            double* accuracy);
PPSP_API ppsp_status ppsp_sweep_run(const ppsp_trial_config* cfg, uint32_t k4_from, uint32_t k4_to,
                                    uint32_t k4_step, ppsp_sweep** out);
PPSP_API size_t ppsp_sweep_row_count(const ppsp_sweep* sweep);
PPSP_API ppsp_status ppsp_sweep_get_row(const ppsp_sweep* sweep, size_t index, ppsp_sweep_row* out);
PPSP_API ppsp_status ppsp_sweep_csv(const ppsp_sweep* sweep, char** out);
PPSP_API ppsp_status ppsp_sweep_summary(const ppsp_sweep* sweep, char** out);
PPSP_API void ppsp_sweep_free(ppsp_sweep* sweep);

PPSP_API ppsp_status ppsp_ot_demo(const ppsp_params* base, uint64_t trials, uint64_t seed,
                                  uint32_t threads, ppsp_ot_report* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PPSP_PPSP_H_ */
