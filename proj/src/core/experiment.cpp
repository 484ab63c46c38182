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

#include "qmlm/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "csv.hpp"
#include "parallel.hpp"
#include "qmlm/error.hpp"

namespace qmlm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool is_positive_integer(double v) { return v >= 1.0 && v == std::floor(v) && v < 1e6; }

// Accepts "1.5", "pi", "-pi/8", "3*pi/4", "2pi".
double parse_angle(std::string_view text) {
    text = detail::trim(text);
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos)
        return detail::parse_double(text);
    std::string_view coef = detail::trim(text.substr(0, pi_pos));
    std::string_view rest = detail::trim(text.substr(pi_pos + 2));
    double value = std::numbers::pi;
    if (!coef.empty() && coef.back() == '*')
        coef = detail::trim(coef.substr(0, coef.size() - 1));
    if (coef == "-")
        value = -value;
    else if (!coef.empty())
        value *= detail::parse_double(coef);
    if (!rest.empty()) {
        if (rest.front() != '/')
            fail(Errc::Parse, "cannot read angle '" + std::string(text) + "'");
        value /= detail::parse_double(rest.substr(1));
    }
    return value;
}

std::vector<std::string> list_items(std::string_view value) {
    value = detail::trim(value);
    if (!value.empty() && value.front() == '[') {
        if (value.back() != ']')
            fail(Errc::Parse, "unterminated list '" + std::string(value) + "'");
        value = value.substr(1, value.size() - 2);
    }
    auto items = detail::split(value, ',');
    if (items.size() == 1 && items.front().empty())
        items.clear();
    for (const auto &item : items)
        if (item.empty())
            fail(Errc::Parse, "empty list item in '" + std::string(value) + "'");
    return items;
}

std::size_t parse_count(std::string_view text) {
    const long long v = detail::parse_int(text);
    if (v < 0)
        fail(Errc::Parse, "negative count '" + std::string(text) + "'");
    return static_cast<std::size_t>(v);
}

struct CellResult {
    double mean;
    double std_error;
};

// Welford accumulation in trial order.
CellResult summarize(const std::vector<double> &values) {
    double mean = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double v : values) {
        ++k;
        const double delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    if (k < 2)
        return {mean, 0.0};
    const double variance = m2 / static_cast<double>(k - 1);
    return {mean, std::sqrt(variance / static_cast<double>(k))};
}

} // namespace

// ---- Specs -----------------------------------------------------------------

void AnsatzSpec::validate() const {
    if (n_qubits < 1)
        fail(Errc::InvalidArgument, "ansatz needs at least one qubit");
    if (layers < 1)
        fail(Errc::InvalidArgument, "ansatz needs at least one layer");
    if (!(delta > 0.0 && delta <= std::numbers::pi + 1e-12))
        fail(Errc::InvalidArgument, "delta must lie in (0, pi]");
}

void NoiseSpec::validate() const {
    for (double p : {p1, p2})
        if (!(p >= 0.0 && p <= 1.0))
            fail(Errc::ProbabilityOutOfRange, "noise probability " + std::to_string(p) +
                                                  " outside [0, 1]");
}

const char *sweep_name(SweepKind kind) noexcept {
    switch (kind) {
    case SweepKind::Qubits: return "qubits";
    case SweepKind::Delta: return "delta";
    case SweepKind::Layers: return "layers";
    case SweepKind::Noise: return "noise";
    }
    return "unknown";
}

SweepKind sweep_kind_from_name(const std::string &name) {
    for (SweepKind k : {SweepKind::Qubits, SweepKind::Delta, SweepKind::Layers, SweepKind::Noise})
        if (name == sweep_name(k))
            return k;
    fail(Errc::Parse, "unknown sweep kind '" + name + "' (qubits, delta, layers, noise)");
}

AnsatzSpec ExperimentConfig::ansatz_for(double value) const {
    AnsatzSpec spec = ansatz;
    if (sweep == SweepKind::Qubits)
        spec.n_qubits = static_cast<int>(value);
    else if (sweep == SweepKind::Delta)
        spec.delta = value;
    else if (sweep == SweepKind::Layers)
        spec.layers = static_cast<int>(value);
    return spec;
}

NoiseSpec ExperimentConfig::noise_for(double value) const {
    NoiseSpec n = noise;
    if (sweep == SweepKind::Noise) {
        n.p1 *= value;
        n.p2 *= value;
    }
    return n;
}

void ExperimentConfig::validate() const {
    if (trials < 1)
        fail(Errc::InvalidArgument, "trials must be at least 1");
    if (dataset_sizes.empty())
        fail(Errc::InvalidArgument, "dataset_sizes is empty");
    for (std::size_t i = 0; i < dataset_sizes.size(); ++i) {
        if (dataset_sizes[i] < 1)
            fail(Errc::InvalidArgument, "dataset sizes must be at least 1");
        if (i > 0 && dataset_sizes[i] <= dataset_sizes[i - 1])
            fail(Errc::InvalidArgument, "dataset_sizes must be strictly ascending");
    }
    if (sweep_values.empty())
        fail(Errc::InvalidArgument, "sweep.values is empty");
    for (double v : sweep_values) {
        if ((sweep == SweepKind::Qubits || sweep == SweepKind::Layers) && !is_positive_integer(v))
            fail(Errc::InvalidArgument, std::string(sweep_name(sweep)) +
                                            " sweep values must be positive integers");
        if (sweep == SweepKind::Noise && !(v >= 0.0))
            fail(Errc::InvalidArgument, "noise scale factors must be non-negative");
        ansatz_for(v).validate();
        noise_for(v).validate();
    }
    ansatz.validate();
    noise.validate();
}

// ---- Circuits and data -----------------------------------------------------

Rng derive_stream(std::uint64_t seed, double sweep_value, std::size_t dataset_size,
                  std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(sweep_value));
    h = splitmix64(h ^ static_cast<std::uint64_t>(dataset_size));
    h = splitmix64(h ^ index);
    return Rng(h);
}

std::vector<double> sample_thetas(Rng &rng, std::size_t count, double delta) {
    std::uniform_real_distribution<double> dist(-delta, delta);
    std::vector<double> thetas(count);
    for (double &t : thetas)
        t = dist(rng);
    return thetas;
}

Circuit build_ansatz(const AnsatzSpec &spec, std::span<const double> thetas) {
    spec.validate();
    if (thetas.size() != spec.parameter_count())
        fail(Errc::ThetaCountMismatch, "ansatz needs " + std::to_string(spec.parameter_count()) +
                                           " angles, got " + std::to_string(thetas.size()));
    Circuit circuit(spec.n_qubits);
    std::size_t next = 0;
    for (int layer = 0; layer < spec.layers; ++layer) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            circuit.add(Gate::rx(q, thetas[next++]));
            circuit.add(Gate::rz(q, thetas[next++]));
        }
        for (int q = 0; q + 1 < spec.n_qubits; ++q)
            circuit.add(Gate::cnot(q, q + 1));
    }
    return circuit;
}

Dataset generate_dataset(const AnsatzSpec &spec, const NoiseSpec &noise, std::size_t n, Rng &rng) {
    if (n < 1)
        fail(Errc::TooSmall, "dataset size must be at least 1");
    noise.validate();
    Dataset data;
    data.inputs.reserve(n);
    data.outputs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto thetas = sample_thetas(rng, spec.parameter_count(), spec.delta);
        const Circuit circuit = build_ansatz(spec, thetas);
        data.outputs.push_back(simulate_ideal(circuit));
        data.inputs.push_back(simulate_noisy(circuit, noise.p1, noise.p2));
    }
    return data;
}

double run_trial(const QmlmModel &model, const AnsatzSpec &spec, const NoiseSpec &noise, Rng &rng) {
    if (model.input_qubits() != spec.n_qubits)
        fail(Errc::DimensionMismatch, "model trained on " + std::to_string(model.input_qubits()) +
                                          " qubits, trial uses " + std::to_string(spec.n_qubits));
    const auto thetas = sample_thetas(rng, spec.parameter_count(), spec.delta);
    const Circuit circuit = build_ansatz(spec, thetas);
    const Statevector ideal = simulate_ideal(circuit);
    const DensityMatrix noisy = simulate_noisy(circuit, noise.p1, noise.p2);
    return prediction_quality(predict_qmlm(model, noisy).state, ideal);
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig &config, const RecordSink &sink) {
    config.validate();
    const unsigned threads = detail::resolve_threads(config.threads);
    std::vector<SweepRecord> records;
    for (double value : config.sweep_values) {
        const AnsatzSpec spec = config.ansatz_for(value);
        const NoiseSpec noise = config.noise_for(value);
        for (std::size_t n : config.dataset_sizes) {
            Rng train_rng = derive_stream(config.seed, value, n, kTrainingStream);
            Dataset data = generate_dataset(spec, noise, n, train_rng);
            QmlmModel model = train_qmlm(std::move(data.inputs), std::move(data.outputs),
                                         config.rcond, threads);
            model.set_seed(config.seed);

            std::vector<double> fidelities(config.trials);
            detail::parallel_for(config.trials, threads, [&](std::size_t t) {
                Rng rng = derive_stream(config.seed, value, n, t);
                fidelities[t] = run_trial(model, spec, noise, rng);
            });
            const CellResult cell = summarize(fidelities);
            SweepRecord record{config.sweep,  value,         n, std::clamp(cell.mean, 0.0, 1.0),
                               cell.std_error, config.trials, config.seed};
            if (sink)
                sink(record);
            records.push_back(record);
        }
    }
    return records;
}

// ---- Config and CSV --------------------------------------------------------

ExperimentConfig parse_config(const std::string &text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    int line_no = 0;
    bool have_kind = false, have_values = false;
    std::vector<std::string> raw_values;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (detail::trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(detail::trim(std::string_view(line).substr(0, eq)));
        const std::string_view value = detail::trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second)
            fail(Errc::Parse, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        try {
            if (key == "qubits") {
                cfg.ansatz.n_qubits = static_cast<int>(detail::parse_int(value));
            } else if (key == "layers") {
                cfg.ansatz.layers = static_cast<int>(detail::parse_int(value));
            } else if (key == "delta") {
                cfg.ansatz.delta = parse_angle(value);
            } else if (key == "p1") {
                cfg.noise.p1 = detail::parse_double(value);
            } else if (key == "p2") {
                cfg.noise.p2 = detail::parse_double(value);
            } else if (key == "dataset_sizes") {
                cfg.dataset_sizes.clear();
                for (const auto &item : list_items(value))
                    cfg.dataset_sizes.push_back(parse_count(item));
            } else if (key == "trials") {
                cfg.trials = parse_count(value);
            } else if (key == "seed") {
                cfg.seed = std::stoull(std::string(value));
            } else if (key == "rcond") {
                cfg.rcond = detail::parse_double(value);
            } else if (key == "sweep.kind") {
                cfg.sweep = sweep_kind_from_name(std::string(value));
                have_kind = true;
            } else if (key == "sweep.values") {
                raw_values = list_items(value);
                have_values = true;
            } else {
                fail(Errc::Parse, "unknown key '" + key + "'");
            }
        } catch (const Error &e) {
            throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::exception &) {
            fail(Errc::Parse, "line " + std::to_string(line_no) + ": bad value for '" + key + "'");
        }
    }
    if (!have_kind || !have_values)
        fail(Errc::Parse, "config needs both 'sweep.kind' and 'sweep.values'");
    cfg.sweep_values.clear();
    for (const auto &item : raw_values)
        cfg.sweep_values.push_back(parse_angle(item));
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::Io, "cannot open config " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string sweep_csv_header() {
    return "sweep_name,sweep_value,dataset_size,mean_fidelity,std_error,trials,seed";
}

std::string format_record(const SweepRecord &r) {
    std::ostringstream os;
    os << sweep_name(r.sweep) << ',' << detail::format_double(r.sweep_value, 10) << ','
       << r.dataset_size << ',' << detail::format_double(r.mean_fidelity, 10) << ','
       << detail::format_double(r.std_error, 10) << ',' << r.trials << ',' << r.seed;
    return os.str();
}

} // namespace qmlm
