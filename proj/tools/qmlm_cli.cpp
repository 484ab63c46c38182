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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmlm/qmlm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int report(qmlm_status status) {
    if (status == QMLM_OK)
        return kExitOk;
    std::cerr << "error: " << qmlm_last_error() << '\n';
    return qmlm_status_is_numerical(status) ? kExitNumerical : kExitValidation;
}

struct StateList {
    std::vector<qmlm_state *> items;
    StateList() = default;
    StateList(const StateList &) = delete;
    StateList &operator=(const StateList &) = delete;
    ~StateList() {
        for (qmlm_state *s : items)
            qmlm_state_destroy(s);
    }
};

std::string bits_string(const std::vector<std::uint8_t> &bits) {
    std::string out;
    for (auto b : bits)
        out += b ? '1' : '0';
    return out;
}

int run_sweep_command(const std::string &config_path, const std::string &out_path, unsigned threads) {
    qmlm_config *config = nullptr;
    if (qmlm_status s = qmlm_config_load(config_path.c_str(), &config); s != QMLM_OK)
        return report(s);
    qmlm_status s = qmlm_config_set_threads(config, threads);
    std::size_t rows = 0;
    if (s == QMLM_OK)
        s = qmlm_sweep_write_csv(config, out_path.c_str(), &rows);
    qmlm_config_destroy(config);
    if (s == QMLM_OK)
        std::cerr << "wrote " << rows << " rows to " << out_path << '\n';
    return report(s);
}

int run_gram_command(const std::string &dir, const std::string &out_path) {
    std::size_t n = 0;
    const qmlm_status s = qmlm_gram_dir_to_csv(dir.c_str(), out_path.c_str(), &n);
    if (s == QMLM_OK)
        std::cerr << "wrote " << n << "x" << n << " Gram matrix to " << out_path << '\n';
    return report(s);
}

// Builds the input state for a label: one qubit per bit, rotated by a quarter
// turn for set bits, plus a small random perturbation and an entangling chain.
qmlm_status label_input(const std::vector<std::uint8_t> &bits, double jitter, std::mt19937_64 &rng,
                        qmlm_state **out) {
    const int n = static_cast<int>(bits.size());
    std::uniform_real_distribution<double> noise(-jitter, jitter);
    qmlm_circuit *circuit = nullptr;
    qmlm_status s = qmlm_circuit_create(n, &circuit);
    for (int q = 0; s == QMLM_OK && q < n; ++q) {
        s = qmlm_circuit_rx(circuit, q, (bits[q] ? std::numbers::pi / 2 : 0.0) + noise(rng));
        if (s == QMLM_OK)
            s = qmlm_circuit_rz(circuit, q, noise(rng));
    }
    if (s == QMLM_OK)
        s = qmlm_simulate_ideal(circuit, out);
    qmlm_circuit_destroy(circuit);
    return s;
}

int run_demo_mlc(int label_len, int copies, double jitter, std::uint64_t seed) {
    if (label_len < 1 || label_len > 6 || copies < 1 || jitter < 0) {
        std::cerr << "error: demo-mlc needs 1 <= labels <= 6, copies >= 1 and jitter >= 0\n";
        return kExitValidation;
    }
    std::mt19937_64 rng(seed);
    const std::size_t classes = std::size_t{1} << label_len;
    const auto len = static_cast<std::size_t>(label_len);

    StateList train;
    std::vector<std::uint8_t> labels;
    for (int c = 0; c < copies; ++c)
        for (std::size_t code = 0; code < classes; ++code) {
            std::vector<std::uint8_t> bits(len);
            for (std::size_t k = 0; k < len; ++k)
                bits[k] = static_cast<std::uint8_t>((code >> (len - 1 - k)) & 1U);
            qmlm_state *state = nullptr;
            if (qmlm_status s = label_input(bits, jitter, rng, &state); s != QMLM_OK)
                return report(s);
            train.items.push_back(state);
            labels.insert(labels.end(), bits.begin(), bits.end());
        }

    qmlm_model *model = nullptr;
    if (qmlm_status s = qmlm_model_train_labels(train.items.data(), labels.data(), train.items.size(),
                                                len, QMLM_DEFAULT_RCOND, &model);
        s != QMLM_OK)
        return report(s);

    std::cout << "training states: " << train.items.size() << " (" << classes << " labels x "
              << copies << ")\n";
    std::cout << "true,predicted,hamming\n";
    std::size_t exact = 0;
    std::size_t total_hamming = 0;
    qmlm_status s = QMLM_OK;
    for (std::size_t code = 0; code < classes && s == QMLM_OK; ++code) {
        std::vector<std::uint8_t> truth(len);
        for (std::size_t k = 0; k < len; ++k)
            truth[k] = static_cast<std::uint8_t>((code >> (len - 1 - k)) & 1U);
        qmlm_state *test = nullptr;
        s = label_input(truth, jitter, rng, &test);
        std::vector<std::uint8_t> predicted(len);
        std::size_t got = 0;
        if (s == QMLM_OK)
            s = qmlm_model_predict_label(model, test, predicted.data(), predicted.size(), &got);
        qmlm_state_destroy(test);
        if (s != QMLM_OK)
            break;
        std::size_t hamming = 0;
        for (std::size_t k = 0; k < len; ++k)
            hamming += truth[k] != predicted[k] ? 1 : 0;
        exact += hamming == 0 ? 1 : 0;
        total_hamming += hamming;
        std::cout << bits_string(truth) << ',' << bits_string(predicted) << ',' << hamming << '\n';
    }
    qmlm_model_destroy(model);
    if (s != QMLM_OK)
        return report(s);
    std::cout << "exact matches: " << exact << '/' << classes << '\n';
    std::cout << "mean hamming distance: " << static_cast<double>(total_hamming) / static_cast<double>(classes)
              << '\n';
    return kExitOk;
}

void print_check(const char *name, int passed, double worst, double tolerance, void *) {
    std::printf("%s %s worst=%.3e tol=%.1e\n", passed ? "PASS" : "FAIL", name, worst, tolerance);
}

int run_selftest_command(std::uint64_t seed) {
    int failures = 0;
    if (qmlm_status s = qmlm_selftest(seed, print_check, nullptr, &failures); s != QMLM_OK)
        return report(s);
    std::printf("%d check(s) failed\n", failures);
    return failures == 0 ? kExitOk : kExitNumerical;
}

int run_mlm_command(const std::string &dataset, const std::string &out_path, bool multi_label) {
    qmlm_mlm *model = nullptr;
    if (qmlm_status s = qmlm_mlm_train_csv(dataset.c_str(), multi_label ? 1 : 0, QMLM_DEFAULT_RCOND, &model);
        s != QMLM_OK)
        return report(s);
    std::size_t n = 0, dim = 0, label_len = 0;
    qmlm_status s = qmlm_mlm_size(model, &n, &dim, &label_len);
    std::size_t correct = 0;
    std::vector<double> x(dim);
    for (std::size_t i = 0; s == QMLM_OK && i < n; ++i) {
        std::size_t index = 0;
        s = qmlm_mlm_reference(model, i, x.data(), x.size());
        if (s == QMLM_OK)
            s = qmlm_mlm_predict(model, x.data(), x.size(), &index);
        correct += (s == QMLM_OK && index == i) ? 1 : 0;
    }
    if (s == QMLM_OK && !out_path.empty())
        s = qmlm_mlm_save(model, out_path.c_str());
    qmlm_mlm_destroy(model);
    if (s == QMLM_OK)
        std::cout << "training points: " << n << ", recovered by self-prediction: " << correct << '\n';
    return report(s);
}

int run_simulate_command(const std::string &circuit_path, double p1, double p2, const std::string &out_path) {
    qmlm_circuit *circuit = nullptr;
    if (qmlm_status s = qmlm_circuit_load(circuit_path.c_str(), &circuit); s != QMLM_OK)
        return report(s);
    qmlm_state *state = nullptr;
    qmlm_status s = (p1 == 0 && p2 == 0) ? qmlm_simulate_ideal(circuit, &state)
                                         : qmlm_simulate_noisy(circuit, p1, p2, &state);
    qmlm_circuit_destroy(circuit);
    if (s == QMLM_OK)
        s = qmlm_state_save(state, out_path.c_str());
    qmlm_state_destroy(state);
    return report(s);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum minimal learning machine toolkit"};
    app.set_version_flag("--version", qmlm_version());
    app.require_subcommand(1);

    std::string config_path, out_path;
    unsigned threads = 0;
    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write the result CSV");
    sweep->add_option("config", config_path, "Sweep configuration file")->required()->check(CLI::ExistingFile);
    sweep->add_option("-o,--output", out_path, "Output CSV path")->required();
    sweep->add_option("-j,--threads", threads, "Worker threads (0 = automatic)");

    std::string states_dir, gram_out;
    auto *gram = app.add_subcommand("gram", "Compute the fidelity Gram matrix of a directory of states");
    gram->add_option("states-dir", states_dir, "Directory of state CSV files")
        ->required()
        ->check(CLI::ExistingDirectory);
    gram->add_option("-o,--output", gram_out, "Output CSV path")->required();

    int demo_labels = 3;
    int demo_copies = 2;
    double demo_jitter = 0.15;
    std::uint64_t demo_seed = 7;
    auto *demo = app.add_subcommand("demo-mlc", "Multi-label classification of quantum states, end to end");
    demo->add_option("--labels", demo_labels, "Label length in bits")->capture_default_str();
    demo->add_option("--copies", demo_copies, "Training states per label")->capture_default_str();
    demo->add_option("--jitter", demo_jitter, "Angle perturbation half-width")->capture_default_str();
    demo->add_option("--seed", demo_seed, "Random seed")->capture_default_str();

    std::uint64_t selftest_seed = 1;
    auto *selftest = app.add_subcommand("selftest", "Run the built-in numerical identity checks");
    selftest->add_option("--seed", selftest_seed, "Random seed")->capture_default_str();

    std::string dataset_path, mlm_out;
    bool multi_label = false;
    auto *mlm = app.add_subcommand("mlm", "Train a classical minimal learning machine on a CSV dataset");
    mlm->add_option("dataset", dataset_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
    mlm->add_option("-o,--output", mlm_out, "Write the trained model here");
    mlm->add_flag("--multi-label", multi_label, "Use Hamming label distances");

    std::string circuit_path, state_out;
    double p1 = 0, p2 = 0;
    auto *simulate = app.add_subcommand("simulate", "Simulate a circuit file and write the final state");
    simulate->add_option("circuit", circuit_path, "Circuit text file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--p1", p1, "One-qubit depolarizing probability");
    simulate->add_option("--p2", p2, "Two-qubit depolarizing probability");
    simulate->add_option("-o,--output", state_out, "Output state CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    if (*sweep)
        return run_sweep_command(config_path, out_path, threads);
    if (*gram)
        return run_gram_command(states_dir, gram_out);
    if (*demo)
        return run_demo_mlc(demo_labels, demo_copies, demo_jitter, demo_seed);
    if (*selftest)
        return run_selftest_command(selftest_seed);
    if (*mlm)
        return run_mlm_command(dataset_path, mlm_out, multi_label);
    return run_simulate_command(circuit_path, p1, p2, state_out);
}
