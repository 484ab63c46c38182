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

#include "qmlm/learner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "csv.hpp"
#include "qmlm/error.hpp"
#include "qmlm/io.hpp"

namespace qmlm {

namespace {

constexpr double kLabelTol = 1e-9;

// Relative gap below which two similarities count as tied.
constexpr double kTieTol = 1e-12;

void check_training_lists(std::size_t n_inputs, std::size_t n_outputs) {
    if (n_inputs != n_outputs)
        fail(Errc::CountMismatch, std::to_string(n_inputs) + " training inputs but " +
                                      std::to_string(n_outputs) + " outputs");
    if (n_inputs == 0)
        fail(Errc::TooSmall, "training set is empty");
}

std::size_t argmax_lowest(const RealVector &s) {
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < s.size(); ++j)
        if (s(j) > s(best) + kTieTol * scale)
            best = j;
    return static_cast<std::size_t>(best);
}

std::string indexed_name(const char *stem, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s_%04zu.csv", stem, i);
    return buf;
}

std::ofstream open_out(const std::filesystem::path &p) {
    std::ofstream out(p);
    if (!out)
        fail(Errc::Io, "cannot write " + p.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in)
        fail(Errc::Io, "cannot open " + p.string());
    return in;
}

} // namespace

Statevector encode_label(const Bits &bits) {
    if (bits.empty())
        fail(Errc::EmptyLabel, "cannot encode an empty label");
    // kron(amps, |0>) or kron(amps, |+>), qubit 0 leftmost
    ComplexVector amps = ComplexVector::Ones(1);
    for (auto bit : bits) {
        const Eigen::Index d = amps.size();
        ComplexVector next = ComplexVector::Zero(2 * d);
        for (Eigen::Index i = 0; i < d; ++i) {
            if (bit) {
                next(2 * i) = next(2 * i + 1) = amps(i) * (std::numbers::sqrt2 / 2);
            } else {
                next(2 * i) = amps(i);
            }
        }
        amps = std::move(next);
    }
    return Statevector::from_amplitudes(std::move(amps));
}

Bits decode_label(const Statevector &state) {
    const int n = state.n_qubits();
    const ComplexVector &a = state.amplitudes();
    const double a0 = std::abs(a(0));
    Bits bits(static_cast<std::size_t>(n), 0);
    if (a0 > kLabelTol) {
        for (int k = 0; k < n; ++k) {
            const auto idx = Eigen::Index{1} << (n - 1 - k);
            bits[static_cast<std::size_t>(k)] = std::abs(a(idx)) > 0.5 * a0;
        }
        if ((encode_label(bits).amplitudes() - a).cwiseAbs().maxCoeff() <= kLabelTol)
            return bits;
    }
    fail(Errc::NotAnEncodedLabel, "state is not a |0>/|+> product encoding");
}

double label_fidelity(const Bits &a, const Bits &b) {
    return std::ldexp(1.0, -static_cast<int>(hamming(a, b)));
}

QmlmModel train_qmlm(std::vector<DensityMatrix> inputs, std::vector<Statevector> outputs,
                     double rcond, unsigned threads) {
    check_training_lists(inputs.size(), outputs.size());
    for (const auto &rho : inputs)
        if (rho.dim() != inputs.front().dim())
            fail(Errc::DimensionMismatch, "training inputs have differing dimensions");
    for (const auto &psi : outputs)
        if (psi.dim() != outputs.front().dim())
            fail(Errc::DimensionMismatch, "training outputs have differing dimensions");

    QmlmModel model;
    model.inputs_.reserve(inputs.size());
    for (auto &rho : inputs)
        model.inputs_.emplace_back(std::move(rho));
    model.outputs_ = std::move(outputs);

    const auto n = static_cast<Eigen::Index>(model.size());
    model.rcond_ = rcond < 0.0 ? default_rcond(n, n) : rcond;
    const GramMatrix gx = gram_mixed(std::span<const RootedState>(model.inputs_), threads);
    const GramMatrix gy = gram_pure(model.outputs_);
    model.b_ = solve_linear_map(gx.values(), gy.values(), model.rcond_);
    return model;
}

QmlmModel train_qmlm_labels(std::vector<DensityMatrix> inputs, const std::vector<Bits> &labels,
                            double rcond, unsigned threads) {
    check_training_lists(inputs.size(), labels.size());
    std::vector<Statevector> encoded;
    encoded.reserve(labels.size());
    for (const auto &bits : labels) {
        if (bits.size() != labels.front().size())
            fail(Errc::LengthMismatch, "labels have differing lengths");
        encoded.push_back(encode_label(bits));
    }
    QmlmModel model = train_qmlm(std::move(inputs), std::move(encoded), rcond, threads);
    model.labels_ = labels;
    return model;
}

RealVector fidelity_row(const QmlmModel &model, const DensityMatrix &test) {
    if (test.dim() != model.train_inputs().front().dim())
        fail(Errc::DimensionMismatch, "test state dimension " + std::to_string(test.dim()) +
                                          " vs training dimension " +
                                          std::to_string(model.train_inputs().front().dim()));
    const RootedState rooted(test);
    RealVector f(static_cast<Eigen::Index>(model.size()));
    for (std::size_t i = 0; i < model.size(); ++i)
        f(static_cast<Eigen::Index>(i)) = fidelity_mixed(rooted, model.train_inputs()[i]);
    return f;
}

RealVector similarity(const QmlmModel &model, const DensityMatrix &test) {
    // Instances are rows of gram_mixed * B = gram_pure, so the test fidelities
    // form a row multiplied by B on the right.
    return model.b().transpose() * fidelity_row(model, test);
}

QmlmPrediction predict_qmlm(const QmlmModel &model, const DensityMatrix &test) {
    const std::size_t idx = argmax_lowest(similarity(model, test));
    return {idx, model.train_outputs()[idx]};
}

Bits predict_label_qmlm(const QmlmModel &model, const DensityMatrix &test) {
    if (!model.train_labels())
        fail(Errc::InvalidArgument, "model was not trained on labels");
    return decode_label(predict_qmlm(model, test).state);
}

double prediction_quality(const Statevector &predicted, const Statevector &true_ideal) {
    return fidelity_pure(predicted, true_ideal);
}

// ---- Persistence -----------------------------------------------------------

void save_qmlm_model(const QmlmModel &model, const std::filesystem::path &dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir / "inputs", ec);
    fs::create_directories(dir / "outputs", ec);
    if (ec)
        fail(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());
    for (std::size_t i = 0; i < model.size(); ++i) {
        auto in = open_out(dir / "inputs" / indexed_name("rho", i));
        write_density_csv(in, model.train_inputs()[i].state());
        auto out = open_out(dir / "outputs" / indexed_name("psi", i));
        write_statevector_csv(out, model.train_outputs()[i]);
    }
    {
        auto b = open_out(dir / "b.csv");
        write_real_matrix_csv(b, model.b(), 17);
    }
    auto meta = open_out(dir / "meta");
    meta << "N " << model.size() << '\n'
         << "n_qubits " << model.input_qubits() << '\n'
         << "output_qubits " << model.output_qubits() << '\n'
         << "rcond " << detail::format_double(model.rcond(), 17) << '\n'
         << "seed " << model.seed() << '\n'
         << "outputs " << (model.train_labels() ? "labels" : "states") << '\n';
    if (!meta)
        fail(Errc::Io, "failed writing " + (dir / "meta").string());
}

QmlmModel load_qmlm_model(const std::filesystem::path &dir) {
    std::map<std::string, std::string> meta;
    {
        auto in = open_in(dir / "meta");
        std::string line;
        while (detail::next_line(in, line)) {
            std::istringstream fields(line);
            std::string key, value;
            if (!(fields >> key >> value))
                fail(Errc::Parse, "malformed meta line '" + line + "'");
            meta[key] = value;
        }
    }
    for (const char *key : {"N", "n_qubits", "rcond", "seed"})
        if (!meta.count(key))
            fail(Errc::Parse, std::string("meta is missing '") + key + "'");

    const auto n = static_cast<std::size_t>(detail::parse_int(meta["N"]));
    if (n == 0)
        fail(Errc::Parse, "meta declares an empty model");
    QmlmModel model;
    model.rcond_ = detail::parse_double(meta["rcond"]);
    model.seed_ = std::stoull(meta["seed"]);
    for (std::size_t i = 0; i < n; ++i) {
        auto in = open_in(dir / "inputs" / indexed_name("rho", i));
        model.inputs_.emplace_back(read_density_csv(in));
        auto out = open_in(dir / "outputs" / indexed_name("psi", i));
        model.outputs_.push_back(read_statevector_csv(out));
    }
    if (model.input_qubits() != detail::parse_int(meta["n_qubits"]))
        fail(Errc::DimensionMismatch, "stored inputs disagree with meta n_qubits");
    auto b = open_in(dir / "b.csv");
    model.b_ = read_real_matrix_csv(b);
    if (model.b_.rows() != static_cast<Eigen::Index>(n) ||
        model.b_.cols() != static_cast<Eigen::Index>(n))
        fail(Errc::DimensionMismatch, "b.csv is not N x N");
    if (meta["outputs"] == "labels") {
        std::vector<Bits> labels;
        for (const auto &psi : model.outputs_)
            labels.push_back(decode_label(psi));
        model.labels_ = std::move(labels);
    }
    return model;
}

} // namespace qmlm
