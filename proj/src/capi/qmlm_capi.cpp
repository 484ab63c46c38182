// Copyright 2026 The QMLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmlm/qmlm.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmlm/error.hpp"
#include "qmlm/experiment.hpp"
#include "qmlm/fidelity.hpp"
#include "qmlm/io.hpp"
#include "qmlm/learner.hpp"
#include "qmlm/mlm.hpp"
#include "qmlm/selftest.hpp"
#include "qmlm/state.hpp"

struct qmlm_circuit {
    qmlm::Circuit circuit;
};

struct qmlm_state {
    qmlm::AnyState state;
};

struct qmlm_model {
    qmlm::QmlmModel model;
};

struct qmlm_mlm {
    qmlm::MlmModel model;
};

struct qmlm_config {
    qmlm::ExperimentConfig config;
};

namespace {

using namespace qmlm;

thread_local std::string g_last_error;

qmlm_status to_status(Errc code) {
    switch (code) {
    case Errc::InvalidArgument: return QMLM_ERR_INVALID_ARGUMENT;
    case Errc::DimensionMismatch: return QMLM_ERR_DIMENSION_MISMATCH;
    case Errc::LengthMismatch: return QMLM_ERR_LENGTH_MISMATCH;
    case Errc::CountMismatch: return QMLM_ERR_COUNT_MISMATCH;
    case Errc::InvalidQubitIndex: return QMLM_ERR_INVALID_QUBIT;
    case Errc::ProbabilityOutOfRange: return QMLM_ERR_PROBABILITY_RANGE;
    case Errc::ThetaCountMismatch: return QMLM_ERR_THETA_COUNT;
    case Errc::EmptyLabel: return QMLM_ERR_EMPTY_LABEL;
    case Errc::NotAnEncodedLabel: return QMLM_ERR_NOT_ENCODED_LABEL;
    case Errc::TooSmall: return QMLM_ERR_TOO_SMALL;
    case Errc::NotHermitian: return QMLM_ERR_NOT_HERMITIAN;
    case Errc::NotPSD: return QMLM_ERR_NOT_PSD;
    case Errc::NoConvergence: return QMLM_ERR_NO_CONVERGENCE;
    case Errc::Io: return QMLM_ERR_IO;
    case Errc::Parse: return QMLM_ERR_PARSE;
    }
    return QMLM_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes and g_last_error.
template <class Fn>
qmlm_status guarded(Fn &&fn) noexcept {
    try {
        fn();
        return QMLM_OK;
    } catch (const Error &e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        g_last_error = "out of memory";
        return QMLM_ERR_INTERNAL;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return QMLM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QMLM_ERR_INTERNAL;
    }
}

template <class T>
void require(const T *p, const char *name) {
    if (p == nullptr)
        fail(Errc::InvalidArgument, std::string(name) + " is NULL");
}

void check_capacity(std::size_t cap, std::size_t need, std::size_t *needed) {
    if (needed)
        *needed = need;
    if (cap < need)
        fail(Errc::InvalidArgument, "buffer holds " + std::to_string(cap) + " elements, " +
                                        std::to_string(need) + " required");
}

const Statevector &as_pure(const qmlm_state *s, const char *name) {
    require(s, name);
    if (const auto *psi = std::get_if<Statevector>(&s->state))
        return *psi;
    fail(Errc::InvalidArgument, std::string(name) + " must be a pure state");
}

DensityMatrix as_density(const qmlm_state *s, const char *name) {
    require(s, name);
    if (const auto *psi = std::get_if<Statevector>(&s->state))
        return DensityMatrix(*psi);
    return std::get<DensityMatrix>(s->state);
}

Eigen::Index state_dim(const AnyState &s) {
    return std::visit([](const auto &v) { return v.dim(); }, s);
}

ComplexMatrix density_from_buffer(const double *data, std::size_t dim) {
    ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const std::size_t k = 2 * (i * dim + j);
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                complex_t(data[k], data[k + 1]);
        }
    return m;
}

Bits bits_from_buffer(const std::uint8_t *bits, std::size_t len) {
    Bits out(bits, bits + len);
    for (auto b : out)
        if (b > 1)
            fail(Errc::InvalidArgument, "label bits must be 0 or 1");
    return out;
}

qmlm_state *new_state(AnyState s) { return new qmlm_state{std::move(s)}; }

} // namespace

extern "C" {

const char *qmlm_version(void) { return "0.1.0"; }

const char *qmlm_status_string(qmlm_status status) {
    switch (status) {
    case QMLM_OK: return "ok";
    case QMLM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QMLM_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case QMLM_ERR_LENGTH_MISMATCH: return "length mismatch";
    case QMLM_ERR_COUNT_MISMATCH: return "count mismatch";
    case QMLM_ERR_INVALID_QUBIT: return "invalid qubit index";
    case QMLM_ERR_PROBABILITY_RANGE: return "probability out of range";
    case QMLM_ERR_THETA_COUNT: return "wrong number of angles";
    case QMLM_ERR_EMPTY_LABEL: return "empty label";
    case QMLM_ERR_NOT_ENCODED_LABEL: return "not an encoded label";
    case QMLM_ERR_TOO_SMALL: return "input too small";
    case QMLM_ERR_NOT_HERMITIAN: return "matrix not Hermitian";
    case QMLM_ERR_NOT_PSD: return "matrix not positive semidefinite";
    case QMLM_ERR_NO_CONVERGENCE: return "no convergence";
    case QMLM_ERR_IO: return "I/O error";
    case QMLM_ERR_PARSE: return "parse error";
    case QMLM_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

int qmlm_status_is_numerical(qmlm_status status) {
    return status == QMLM_ERR_NOT_HERMITIAN || status == QMLM_ERR_NOT_PSD ||
           status == QMLM_ERR_NO_CONVERGENCE;
}

const char *qmlm_last_error(void) { return g_last_error.c_str(); }

// ---- circuits ----------------------------------------------------------------

qmlm_status qmlm_circuit_create(int n_qubits, qmlm_circuit **out) {
    return guarded([&] {
        require(out, "out");
        *out = new qmlm_circuit{Circuit(n_qubits)};
    });
}

void qmlm_circuit_destroy(qmlm_circuit *circuit) { delete circuit; }

qmlm_status qmlm_circuit_rx(qmlm_circuit *c, int qubit, double theta) {
    return guarded([&] {
        require(c, "circuit");
        c->circuit.add(Gate::rx(qubit, theta));
    });
}

qmlm_status qmlm_circuit_rz(qmlm_circuit *c, int qubit, double theta) {
    return guarded([&] {
        require(c, "circuit");
        c->circuit.add(Gate::rz(qubit, theta));
    });
}

qmlm_status qmlm_circuit_h(qmlm_circuit *c, int qubit) {
    return guarded([&] {
        require(c, "circuit");
        c->circuit.add(Gate::h(qubit));
    });
}

qmlm_status qmlm_circuit_cnot(qmlm_circuit *c, int control, int target) {
    return guarded([&] {
        require(c, "circuit");
        c->circuit.add(Gate::cnot(control, target));
    });
}

qmlm_status qmlm_circuit_size(const qmlm_circuit *c, size_t *n_gates) {
    return guarded([&] {
        require(c, "circuit");
        require(n_gates, "n_gates");
        *n_gates = c->circuit.size();
    });
}

qmlm_status qmlm_circuit_parse(const char *text, qmlm_circuit **out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new qmlm_circuit{circuit_from_text(text)};
    });
}

qmlm_status qmlm_circuit_load(const char *path, qmlm_circuit **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        std::ifstream in(path);
        if (!in)
            fail(Errc::Io, std::string("cannot open ") + path);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        *out = new qmlm_circuit{circuit_from_text(text)};
    });
}

qmlm_status qmlm_circuit_to_text(const qmlm_circuit *c, char *buf, size_t cap, size_t *needed) {
    return guarded([&] {
        require(c, "circuit");
        const std::string text = circuit_to_text(c->circuit);
        check_capacity(cap, text.size() + 1, needed);
        require(buf, "buf");
        std::memcpy(buf, text.c_str(), text.size() + 1);
    });
}

qmlm_status qmlm_ansatz(int n_qubits, int layers, const double *thetas, size_t count,
                        qmlm_circuit **out) {
    return guarded([&] {
        require(out, "out");
        if (count > 0)
            require(thetas, "thetas");
        AnsatzSpec spec;
        spec.n_qubits = n_qubits;
        spec.layers = layers;
        *out = new qmlm_circuit{build_ansatz(spec, std::span<const double>(thetas, count))};
    });
}

// ---- states ------------------------------------------------------------------

qmlm_status qmlm_state_from_amplitudes(const double *amplitudes, size_t dim, qmlm_state **out) {
    return guarded([&] {
        require(amplitudes, "amplitudes");
        require(out, "out");
        ComplexVector v(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i)
            v(static_cast<Eigen::Index>(i)) = complex_t(amplitudes[2 * i], amplitudes[2 * i + 1]);
        *out = new_state(Statevector::from_amplitudes(std::move(v)));
    });
}

qmlm_status qmlm_state_from_density(const double *matrix, size_t dim, qmlm_state **out) {
    return guarded([&] {
        require(matrix, "matrix");
        require(out, "out");
        *out = new_state(DensityMatrix::from_matrix(density_from_buffer(matrix, dim)));
    });
}

qmlm_status qmlm_state_maximally_mixed(int n_qubits, qmlm_state **out) {
    return guarded([&] {
        require(out, "out");
        *out = new_state(DensityMatrix::maximally_mixed(n_qubits));
    });
}

void qmlm_state_destroy(qmlm_state *state) { delete state; }

qmlm_status qmlm_state_is_pure(const qmlm_state *s, int *is_pure) {
    return guarded([&] {
        require(s, "state");
        require(is_pure, "is_pure");
        *is_pure = std::holds_alternative<Statevector>(s->state) ? 1 : 0;
    });
}

qmlm_status qmlm_state_n_qubits(const qmlm_state *s, int *n_qubits) {
    return guarded([&] {
        require(s, "state");
        require(n_qubits, "n_qubits");
        *n_qubits = std::visit([](const auto &v) { return v.n_qubits(); }, s->state);
    });
}

qmlm_status qmlm_state_dim(const qmlm_state *s, size_t *dim) {
    return guarded([&] {
        require(s, "state");
        require(dim, "dim");
        *dim = static_cast<std::size_t>(state_dim(s->state));
    });
}

qmlm_status qmlm_state_amplitudes(const qmlm_state *s, double *buf, size_t cap, size_t *needed) {
    return guarded([&] {
        const Statevector &psi = as_pure(s, "state");
        check_capacity(cap, 2 * static_cast<std::size_t>(psi.dim()), needed);
        require(buf, "buf");
        for (Eigen::Index i = 0; i < psi.dim(); ++i) {
            buf[2 * i] = psi.amplitudes()(i).real();
            buf[2 * i + 1] = psi.amplitudes()(i).imag();
        }
    });
}

qmlm_status qmlm_state_density(const qmlm_state *s, double *buf, size_t cap, size_t *needed) {
    return guarded([&] {
        const DensityMatrix rho = as_density(s, "state");
        const auto d = static_cast<std::size_t>(rho.dim());
        check_capacity(cap, 2 * d * d, needed);
        require(buf, "buf");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const complex_t v = rho.matrix()(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j));
                buf[2 * (i * d + j)] = v.real();
                buf[2 * (i * d + j) + 1] = v.imag();
            }
    });
}

qmlm_status qmlm_state_purity(const qmlm_state *s, double *purity) {
    return guarded([&] {
        require(purity, "purity");
        *purity = as_density(s, "state").purity();
    });
}

qmlm_status qmlm_state_load(const char *path, qmlm_state **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new_state(load_state_file(path));
    });
}

qmlm_status qmlm_state_save(const qmlm_state *s, const char *path) {
    return guarded([&] {
        require(s, "state");
        require(path, "path");
        std::ofstream out(path);
        if (!out)
            fail(Errc::Io, std::string("cannot write ") + path);
        if (const auto *psi = std::get_if<Statevector>(&s->state))
            write_statevector_csv(out, *psi);
        else
            write_density_csv(out, std::get<DensityMatrix>(s->state));
        if (!out)
            fail(Errc::Io, std::string("failed writing ") + path);
    });
}

qmlm_status qmlm_simulate_ideal(const qmlm_circuit *c, qmlm_state **out) {
    return guarded([&] {
        require(c, "circuit");
        require(out, "out");
        *out = new_state(simulate_ideal(c->circuit));
    });
}

qmlm_status qmlm_simulate_noisy(const qmlm_circuit *c, double p1, double p2, qmlm_state **out) {
    return guarded([&] {
        require(c, "circuit");
        require(out, "out");
        *out = new_state(simulate_noisy(c->circuit, p1, p2));
    });
}

qmlm_status qmlm_depolarize(const qmlm_state *s, double p, qmlm_state **out) {
    return guarded([&] {
        require(out, "out");
        *out = new_state(depolarize_global(as_density(s, "state"), p));
    });
}

qmlm_status qmlm_fidelity(const qmlm_state *a, const qmlm_state *b, double *fidelity) {
    return guarded([&] {
        require(a, "a");
        require(b, "b");
        require(fidelity, "fidelity");
        const auto *pa = std::get_if<Statevector>(&a->state);
        const auto *pb = std::get_if<Statevector>(&b->state);
        if (pa && pb)
            *fidelity = fidelity_pure(*pa, *pb);
        else if (pa)
            *fidelity = fidelity_pure_mixed(*pa, std::get<DensityMatrix>(b->state));
        else if (pb)
            *fidelity = fidelity_pure_mixed(*pb, std::get<DensityMatrix>(a->state));
        else
            *fidelity = fidelity_mixed(std::get<DensityMatrix>(a->state),
                                       std::get<DensityMatrix>(b->state));
    });
}

qmlm_status qmlm_expectation(const double *op, size_t dim, const qmlm_state *s, double *value) {
    return guarded([&] {
        require(op, "op");
        require(value, "value");
        *value = expectation(density_from_buffer(op, dim), as_density(s, "state"));
    });
}

// ---- labels --------------------------------------------------------------------

qmlm_status qmlm_encode_label(const uint8_t *bits, size_t len, qmlm_state **out) {
    return guarded([&] {
        require(out, "out");
        if (len > 0)
            require(bits, "bits");
        *out = new_state(encode_label(len ? bits_from_buffer(bits, len) : Bits{}));
    });
}

qmlm_status qmlm_decode_label(const qmlm_state *s, uint8_t *bits, size_t cap, size_t *len) {
    return guarded([&] {
        const Bits decoded = decode_label(as_pure(s, "state"));
        check_capacity(cap, decoded.size(), len);
        require(bits, "bits");
        std::copy(decoded.begin(), decoded.end(), bits);
    });
}

qmlm_status qmlm_label_fidelity(const uint8_t *a, const uint8_t *b, size_t len, double *fidelity) {
    return guarded([&] {
        require(fidelity, "fidelity");
        if (len > 0) {
            require(a, "a");
            require(b, "b");
        }
        *fidelity = label_fidelity(bits_from_buffer(a, len), bits_from_buffer(b, len));
    });
}

// ---- Gram ----------------------------------------------------------------------

qmlm_status qmlm_gram(const qmlm_state *const *states, size_t n, double *out) {
    return guarded([&] {
        require(out, "out");
        if (n == 0)
            fail(Errc::InvalidArgument, "Gram matrix of an empty state list");
        require(states, "states");
        std::vector<AnyState> all;
        for (std::size_t i = 0; i < n; ++i) {
            require(states[i], "states[i]");
            all.push_back(states[i]->state);
        }
        const GramMatrix g = gram_of(all, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out[i * n + j] = g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });
}

qmlm_status qmlm_gram_dir_to_csv(const char *dir, const char *csv_path, size_t *n) {
    return guarded([&] {
        require(dir, "dir");
        require(csv_path, "csv_path");
        const GramMatrix g = gram_of(load_state_dir(dir), 0);
        std::ofstream out(csv_path);
        if (!out)
            fail(Errc::Io, std::string("cannot write ") + csv_path);
        write_gram_csv(out, g);
        if (!out)
            fail(Errc::Io, std::string("failed writing ") + csv_path);
        if (n)
            *n = static_cast<std::size_t>(g.size());
    });
}

qmlm_status qmlm_concentration_stats(const double *gram, size_t n, double *mean, double *variance) {
    return guarded([&] {
        require(gram, "gram");
        require(mean, "mean");
        require(variance, "variance");
        RealMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gram[i * n + j];
        const ConcentrationStats stats = concentration_stats(GramMatrix(std::move(g)));
        *mean = stats.mean;
        *variance = stats.variance;
    });
}

// ---- QMLM ----------------------------------------------------------------------

qmlm_status qmlm_model_train(const qmlm_state *const *inputs, const qmlm_state *const *outputs,
                             size_t n, double rcond, qmlm_model **out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(inputs, "inputs");
            require(outputs, "outputs");
        }
        std::vector<DensityMatrix> in;
        std::vector<Statevector> targets;
        for (std::size_t i = 0; i < n; ++i) {
            in.push_back(as_density(inputs[i], "inputs[i]"));
            targets.push_back(as_pure(outputs[i], "outputs[i]"));
        }
        *out = new qmlm_model{train_qmlm(std::move(in), std::move(targets), rcond, 0)};
    });
}

qmlm_status qmlm_model_train_labels(const qmlm_state *const *inputs, const uint8_t *labels,
                                    size_t n, size_t len, double rcond, qmlm_model **out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(inputs, "inputs");
            require(labels, "labels");
        }
        std::vector<DensityMatrix> in;
        std::vector<Bits> bits;
        for (std::size_t i = 0; i < n; ++i) {
            in.push_back(as_density(inputs[i], "inputs[i]"));
            bits.push_back(bits_from_buffer(labels + i * len, len));
        }
        *out = new qmlm_model{train_qmlm_labels(std::move(in), bits, rcond, 0)};
    });
}

void qmlm_model_destroy(qmlm_model *model) { delete model; }

qmlm_status qmlm_model_size(const qmlm_model *m, size_t *n) {
    return guarded([&] {
        require(m, "model");
        require(n, "n");
        *n = m->model.size();
    });
}

qmlm_status qmlm_model_coefficients(const qmlm_model *m, double *buf, size_t cap, size_t *needed) {
    return guarded([&] {
        require(m, "model");
        const std::size_t n = m->model.size();
        check_capacity(cap, n * n, needed);
        require(buf, "buf");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                buf[i * n + j] = m->model.b()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    });
}

qmlm_status qmlm_model_predict(const qmlm_model *m, const qmlm_state *test, size_t *index,
                               double *sim) {
    return guarded([&] {
        require(m, "model");
        require(index, "index");
        const DensityMatrix rho = as_density(test, "test");
        if (sim) {
            const RealVector s = similarity(m->model, rho);
            std::copy(s.begin(), s.end(), sim);
        }
        *index = predict_qmlm(m->model, rho).index;
    });
}

qmlm_status qmlm_model_output(const qmlm_model *m, size_t index, qmlm_state **out) {
    return guarded([&] {
        require(m, "model");
        require(out, "out");
        if (index >= m->model.size())
            fail(Errc::InvalidArgument, "output index out of range");
        *out = new_state(m->model.train_outputs()[index]);
    });
}

qmlm_status qmlm_model_predict_label(const qmlm_model *m, const qmlm_state *test, uint8_t *bits,
                                     size_t cap, size_t *len) {
    return guarded([&] {
        require(m, "model");
        const Bits label = predict_label_qmlm(m->model, as_density(test, "test"));
        check_capacity(cap, label.size(), len);
        require(bits, "bits");
        std::copy(label.begin(), label.end(), bits);
    });
}

qmlm_status qmlm_model_save(const qmlm_model *m, const char *dir) {
    return guarded([&] {
        require(m, "model");
        require(dir, "dir");
        save_qmlm_model(m->model, dir);
    });
}

qmlm_status qmlm_model_load(const char *dir, qmlm_model **out) {
    return guarded([&] {
        require(dir, "dir");
        require(out, "out");
        *out = new qmlm_model{load_qmlm_model(dir)};
    });
}

// ---- classical MLM -------------------------------------------------------------

qmlm_status qmlm_mlm_train_csv(const char *dataset_path, int multi_label, double rcond,
                               qmlm_mlm **out) {
    return guarded([&] {
        require(dataset_path, "dataset_path");
        require(out, "out");
        std::ifstream in(dataset_path);
        if (!in)
            fail(Errc::Io, std::string("cannot open ") + dataset_path);
        LabeledDataset data = read_dataset_csv(in);
        data.multi_label = multi_label != 0;
        *out = new qmlm_mlm{train_mlm(data, rcond)};
    });
}

void qmlm_mlm_destroy(qmlm_mlm *model) { delete model; }

qmlm_status qmlm_mlm_size(const qmlm_mlm *m, size_t *n, size_t *input_dim, size_t *label_len) {
    return guarded([&] {
        require(m, "model");
        if (n)
            *n = m->model.train_labels.size();
        if (input_dim)
            *input_dim = static_cast<std::size_t>(m->model.references.front().size());
        if (label_len)
            *label_len = m->model.train_labels.front().size();
    });
}

qmlm_status qmlm_mlm_reference(const qmlm_mlm *m, size_t index, double *buf, size_t cap) {
    return guarded([&] {
        require(m, "model");
        if (index >= m->model.references.size())
            fail(Errc::InvalidArgument, "reference index out of range");
        const RealVector &r = m->model.references[index];
        check_capacity(cap, static_cast<std::size_t>(r.size()), nullptr);
        require(buf, "buf");
        std::copy(r.begin(), r.end(), buf);
    });
}

qmlm_status qmlm_mlm_label(const qmlm_mlm *m, size_t index, uint8_t *bits, size_t cap) {
    return guarded([&] {
        require(m, "model");
        if (index >= m->model.train_labels.size())
            fail(Errc::InvalidArgument, "label index out of range");
        const Bits &y = m->model.train_labels[index];
        check_capacity(cap, y.size(), nullptr);
        require(bits, "bits");
        std::copy(y.begin(), y.end(), bits);
    });
}

qmlm_status qmlm_mlm_predict(const qmlm_mlm *m, const double *x, size_t dim, size_t *index) {
    return guarded([&] {
        require(m, "model");
        require(index, "index");
        if (dim > 0)
            require(x, "x");
        *index = predict_mlm(m->model, Eigen::Map<const RealVector>(x, static_cast<Eigen::Index>(dim)))
                     .index;
    });
}

qmlm_status qmlm_mlm_save(const qmlm_mlm *m, const char *path) {
    return guarded([&] {
        require(m, "model");
        require(path, "path");
        std::ofstream out(path);
        if (!out)
            fail(Errc::Io, std::string("cannot write ") + path);
        write_mlm_model(out, m->model);
        if (!out)
            fail(Errc::Io, std::string("failed writing ") + path);
    });
}

// ---- experiments ---------------------------------------------------------------

qmlm_status qmlm_config_parse(const char *text, qmlm_config **out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new qmlm_config{parse_config(text)};
    });
}

qmlm_status qmlm_config_load(const char *path, qmlm_config **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new qmlm_config{load_config(path)};
    });
}

void qmlm_config_destroy(qmlm_config *config) { delete config; }

qmlm_status qmlm_config_set_threads(qmlm_config *config, unsigned threads) {
    return guarded([&] {
        require(config, "config");
        config->config.threads = threads;
    });
}

qmlm_status qmlm_sweep_run(const qmlm_config *config, qmlm_row_fn on_row, void *user) {
    return guarded([&] {
        require(config, "config");
        run_sweep(config->config, [&](const SweepRecord &r) {
            if (on_row)
                on_row(format_record(r).c_str(), user);
        });
    });
}

qmlm_status qmlm_sweep_write_csv(const qmlm_config *config, const char *path, size_t *rows) {
    return guarded([&] {
        require(config, "config");
        require(path, "path");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            fail(Errc::Io, std::string("cannot write ") + path);
        out << sweep_csv_header() << '\n' << std::flush;
        std::size_t count = 0;
        run_sweep(config->config, [&](const SweepRecord &r) {
            out << format_record(r) << '\n' << std::flush;
            if (!out)
                fail(Errc::Io, std::string("failed writing ") + path);
            ++count;
        });
        if (rows)
            *rows = count;
    });
}

const char *qmlm_sweep_csv_header(void) {
    static const std::string header = sweep_csv_header();
    return header.c_str();
}

qmlm_status qmlm_selftest(uint64_t seed, qmlm_check_fn on_check, void *user, int *failures) {
    return guarded([&] {
        int failed = 0;
        for (const CheckResult &c : run_selftest(seed)) {
            failed += c.passed ? 0 : 1;
            if (on_check)
                on_check(c.name.c_str(), c.passed ? 1 : 0, c.worst, c.tolerance, user);
        }
        if (failures)
            *failures = failed;
    });
}

} // extern "C"
