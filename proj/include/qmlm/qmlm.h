/*
 * Copyright 2026 The QMLM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the QMLM library: quantum state simulation under
 * depolarizing noise, fidelity Gram matrices, and the fidelity-based minimal
 * learning machine.
 *
 * Conventions:
 *  - Every function returns a qmlm_status. On failure, qmlm_last_error()
 *    returns a message for the calling thread; output arguments are untouched.
 *  - Objects are opaque handles created by *_create / *_load / producer
 *    functions and released with the matching *_destroy (NULL is accepted).
 *  - Complex data crosses the boundary as interleaved (re, im) doubles.
 *    Density matrices are row-major. Qubit 0 is the most significant bit of
 *    a basis index.
 *  - Buffer-filling functions take a capacity in elements; when it is too
 *    small they fail with QMLM_ERR_INVALID_ARGUMENT and report the required
 *    size through `needed` when that pointer is non-NULL.
 */
#ifndef QMLM_H
#define QMLM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QMLM_BUILDING_LIBRARY)
#    define QMLM_API __declspec(dllexport)
#  else
#    define QMLM_API __declspec(dllimport)
#  endif
#else
#  define QMLM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmlm_status {
    QMLM_OK = 0,
    QMLM_ERR_INVALID_ARGUMENT = 1,
    QMLM_ERR_DIMENSION_MISMATCH = 2,
    QMLM_ERR_LENGTH_MISMATCH = 3,
    QMLM_ERR_COUNT_MISMATCH = 4,
    QMLM_ERR_INVALID_QUBIT = 5,
    QMLM_ERR_PROBABILITY_RANGE = 6,
    QMLM_ERR_THETA_COUNT = 7,
    QMLM_ERR_EMPTY_LABEL = 8,
    QMLM_ERR_NOT_ENCODED_LABEL = 9,
    QMLM_ERR_TOO_SMALL = 10,
    QMLM_ERR_NOT_HERMITIAN = 11,
    QMLM_ERR_NOT_PSD = 12,
    QMLM_ERR_NO_CONVERGENCE = 13,
    QMLM_ERR_IO = 14,
    QMLM_ERR_PARSE = 15,
    QMLM_ERR_INTERNAL = 16
} qmlm_status;

typedef struct qmlm_circuit qmlm_circuit;
typedef struct qmlm_state qmlm_state;
typedef struct qmlm_model qmlm_model;
typedef struct qmlm_mlm qmlm_mlm;
typedef struct qmlm_config qmlm_config;

/* Pass as rcond to use the default cutoff max(rows, cols) * machine epsilon. */
#define QMLM_DEFAULT_RCOND (-1.0)

QMLM_API const char *qmlm_version(void);
QMLM_API const char *qmlm_status_string(qmlm_status status);
/* Nonzero for failures of the numerical kernels (not Hermitian, not PSD, no convergence). */
QMLM_API int qmlm_status_is_numerical(qmlm_status status);
QMLM_API const char *qmlm_last_error(void);

/* ---- circuits ---------------------------------------------------------- */

QMLM_API qmlm_status qmlm_circuit_create(int n_qubits, qmlm_circuit **out);
QMLM_API void qmlm_circuit_destroy(qmlm_circuit *circuit);
QMLM_API qmlm_status qmlm_circuit_rx(qmlm_circuit *circuit, int qubit, double theta);
QMLM_API qmlm_status qmlm_circuit_rz(qmlm_circuit *circuit, int qubit, double theta);
QMLM_API qmlm_status qmlm_circuit_h(qmlm_circuit *circuit, int qubit);
QMLM_API qmlm_status qmlm_circuit_cnot(qmlm_circuit *circuit, int control, int target);
QMLM_API qmlm_status qmlm_circuit_size(const qmlm_circuit *circuit, size_t *n_gates);

/* Text form: "QUBITS n" header, then "RX q theta", "RZ q theta", "H q", "CNOT c t". */
QMLM_API qmlm_status qmlm_circuit_parse(const char *text, qmlm_circuit **out);
QMLM_API qmlm_status qmlm_circuit_load(const char *path, qmlm_circuit **out);
/* Writes a NUL-terminated string; `needed` includes the terminator. */
QMLM_API qmlm_status qmlm_circuit_to_text(const qmlm_circuit *circuit, char *buf, size_t cap,
                                          size_t *needed);

/* Layered RX/RZ + linear CNOT chain ansatz; count must equal 2 * n_qubits * layers. */
QMLM_API qmlm_status qmlm_ansatz(int n_qubits, int layers, const double *thetas, size_t count,
                                 qmlm_circuit **out);

/* ---- states ------------------------------------------------------------ */

/* `dim` is the Hilbert-space dimension; `amplitudes` holds 2 * dim doubles. */
QMLM_API qmlm_status qmlm_state_from_amplitudes(const double *amplitudes, size_t dim,
                                                qmlm_state **out);
/* `matrix` holds 2 * dim * dim doubles. */
QMLM_API qmlm_status qmlm_state_from_density(const double *matrix, size_t dim, qmlm_state **out);
QMLM_API qmlm_status qmlm_state_maximally_mixed(int n_qubits, qmlm_state **out);
QMLM_API void qmlm_state_destroy(qmlm_state *state);

QMLM_API qmlm_status qmlm_state_is_pure(const qmlm_state *state, int *is_pure);
QMLM_API qmlm_status qmlm_state_n_qubits(const qmlm_state *state, int *n_qubits);
QMLM_API qmlm_status qmlm_state_dim(const qmlm_state *state, size_t *dim);
/* Pure states only; capacity in doubles (2 * dim). */
QMLM_API qmlm_status qmlm_state_amplitudes(const qmlm_state *state, double *buf, size_t cap,
                                           size_t *needed);
/* Any state (pure states are returned as |psi><psi|); capacity 2 * dim * dim. */
QMLM_API qmlm_status qmlm_state_density(const qmlm_state *state, double *buf, size_t cap,
                                        size_t *needed);
QMLM_API qmlm_status qmlm_state_purity(const qmlm_state *state, double *purity);

/* CSV state files: "re,im" rows for pure states, 2d interleaved columns per row for mixed. */
QMLM_API qmlm_status qmlm_state_load(const char *path, qmlm_state **out);
QMLM_API qmlm_status qmlm_state_save(const qmlm_state *state, const char *path);

QMLM_API qmlm_status qmlm_simulate_ideal(const qmlm_circuit *circuit, qmlm_state **out);
/* Depolarizing channel on the gate's qubits after every gate: p1 for 1-qubit, p2 for 2-qubit gates. */
QMLM_API qmlm_status qmlm_simulate_noisy(const qmlm_circuit *circuit, double p1, double p2,
                                         qmlm_state **out);
/* (1 - p) rho + p I / d; the result is always a mixed state. */
QMLM_API qmlm_status qmlm_depolarize(const qmlm_state *state, double p, qmlm_state **out);

/* Pure/pure: |<a|b>|^2. Pure/mixed: <psi|rho|psi>. Mixed/mixed: (Tr sqrt(sqrt(a) b sqrt(a)))^2. */
QMLM_API qmlm_status qmlm_fidelity(const qmlm_state *a, const qmlm_state *b, double *fidelity);
/* Re Tr(op rho) for a Hermitian operator given as 2 * dim * dim interleaved doubles. */
QMLM_API qmlm_status qmlm_expectation(const double *op, size_t dim, const qmlm_state *state,
                                      double *value);

/* ---- label encoding ---------------------------------------------------- */

/* Bits are 0/1 bytes. Bit k set -> |+> on qubit k, clear -> |0>. */
QMLM_API qmlm_status qmlm_encode_label(const uint8_t *bits, size_t len, qmlm_state **out);
QMLM_API qmlm_status qmlm_decode_label(const qmlm_state *state, uint8_t *bits, size_t cap,
                                       size_t *len);
QMLM_API qmlm_status qmlm_label_fidelity(const uint8_t *a, const uint8_t *b, size_t len,
                                         double *fidelity);

/* ---- Gram matrices ----------------------------------------------------- */

/* Fills an n x n row-major matrix of pairwise fidelities. */
QMLM_API qmlm_status qmlm_gram(const qmlm_state *const *states, size_t n, double *out);
/* Loads every *.csv state in `dir` (sorted by name) and writes the Gram CSV. */
QMLM_API qmlm_status qmlm_gram_dir_to_csv(const char *dir, const char *csv_path, size_t *n);
QMLM_API qmlm_status qmlm_concentration_stats(const double *gram, size_t n, double *mean,
                                              double *variance);

/* ---- quantum minimal learning machine ---------------------------------- */

/* Inputs may be pure or mixed (pure inputs are promoted); outputs must be pure. */
QMLM_API qmlm_status qmlm_model_train(const qmlm_state *const *inputs,
                                      const qmlm_state *const *outputs, size_t n, double rcond,
                                      qmlm_model **out);
/* `labels` is n rows of `len` bits, row-major. */
QMLM_API qmlm_status qmlm_model_train_labels(const qmlm_state *const *inputs,
                                             const uint8_t *labels, size_t n, size_t len,
                                             double rcond, qmlm_model **out);
QMLM_API void qmlm_model_destroy(qmlm_model *model);
QMLM_API qmlm_status qmlm_model_size(const qmlm_model *model, size_t *n);
/* n x n row-major coefficient matrix. */
QMLM_API qmlm_status qmlm_model_coefficients(const qmlm_model *model, double *buf, size_t cap,
                                             size_t *needed);
/* `similarity` may be NULL; otherwise it receives the n mapped similarities. */
QMLM_API qmlm_status qmlm_model_predict(const qmlm_model *model, const qmlm_state *test,
                                        size_t *index, double *similarity);
QMLM_API qmlm_status qmlm_model_output(const qmlm_model *model, size_t index, qmlm_state **out);
QMLM_API qmlm_status qmlm_model_predict_label(const qmlm_model *model, const qmlm_state *test,
                                              uint8_t *bits, size_t cap, size_t *len);
QMLM_API qmlm_status qmlm_model_save(const qmlm_model *model, const char *dir);
QMLM_API qmlm_status qmlm_model_load(const char *dir, qmlm_model **out);

/* ---- classical minimal learning machine -------------------------------- */

/* Dataset CSV with header x_1..x_M,y_1..y_L; references are the training inputs. */
QMLM_API qmlm_status qmlm_mlm_train_csv(const char *dataset_path, int multi_label, double rcond,
                                        qmlm_mlm **out);
QMLM_API void qmlm_mlm_destroy(qmlm_mlm *model);
QMLM_API qmlm_status qmlm_mlm_size(const qmlm_mlm *model, size_t *n, size_t *input_dim,
                                   size_t *label_len);
QMLM_API qmlm_status qmlm_mlm_reference(const qmlm_mlm *model, size_t index, double *buf,
                                        size_t cap);
QMLM_API qmlm_status qmlm_mlm_label(const qmlm_mlm *model, size_t index, uint8_t *bits,
                                    size_t cap);
QMLM_API qmlm_status qmlm_mlm_predict(const qmlm_mlm *model, const double *x, size_t dim,
                                      size_t *index);
QMLM_API qmlm_status qmlm_mlm_save(const qmlm_mlm *model, const char *path);

/* ---- experiments ------------------------------------------------------- */

QMLM_API qmlm_status qmlm_config_parse(const char *text, qmlm_config **out);
QMLM_API qmlm_status qmlm_config_load(const char *path, qmlm_config **out);
QMLM_API void qmlm_config_destroy(qmlm_config *config);
/* 0 restores the default (QMLM_THREADS, else all cores). */
QMLM_API qmlm_status qmlm_config_set_threads(qmlm_config *config, unsigned threads);

typedef void (*qmlm_row_fn)(const char *csv_row, void *user);

/* Runs the sweep, calling `on_row` with each CSV data row (no newline). */
QMLM_API qmlm_status qmlm_sweep_run(const qmlm_config *config, qmlm_row_fn on_row, void *user);
/* Runs the sweep into a CSV file (header + rows, flushed row by row). */
QMLM_API qmlm_status qmlm_sweep_write_csv(const qmlm_config *config, const char *path,
                                          size_t *rows);
QMLM_API const char *qmlm_sweep_csv_header(void);

typedef void (*qmlm_check_fn)(const char *name, int passed, double worst, double tolerance,
                              void *user);

/* Runs the built-in identity checks; `failures` receives the number failed. */
QMLM_API qmlm_status qmlm_selftest(uint64_t seed, qmlm_check_fn on_check, void *user,
                                   int *failures);

#ifdef __cplusplus
}
#endif

#endif /* QMLM_H */
