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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qmlm/experiment.hpp"
#include "qmlm/fidelity.hpp"
#include "qmlm/learner.hpp"
#include "qmlm/mlm.hpp"
#include "qmlm/qmlm.h"

using namespace qmlm;

namespace {

constexpr double kPi = std::numbers::pi;
using Clock = std::chrono::steady_clock;
using Gen = std::mt19937_64;

struct Outcome {
    bool passed;
    std::string detail;
};

int g_failures = 0;

void criterion(const std::string &name, const std::function<Outcome()> &body) {
    const auto start = Clock::now();
    Outcome out{false, ""};
    try {
        out = body();
    } catch (const std::exception &e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    g_failures += out.passed ? 0 : 1;
    std::printf("%s  %s  [%s; %.1f s]\n", out.passed ? "PASS" : "FAIL", name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char *format, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

ComplexVector random_vector(Gen &g, Eigen::Index d) {
    std::normal_distribution<double> n;
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = complex_t(n(g), n(g));
    return v.normalized();
}

Statevector random_pure(Gen &g, int qubits) {
    return Statevector::from_amplitudes(random_vector(g, Eigen::Index{1} << qubits));
}

RealMatrix gaussian(Gen &g, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> n;
    RealMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = n(g);
    return m;
}

Bits bits_of(std::size_t code, std::size_t len) {
    Bits b(len);
    for (std::size_t k = 0; k < len; ++k)
        b[k] = static_cast<std::uint8_t>((code >> (len - 1 - k)) & 1U);
    return b;
}

double pooled(double se_a, double se_b) { return std::sqrt(se_a * se_a + se_b * se_b); }

using Cells = std::map<std::pair<double, std::size_t>, SweepRecord>;

Cells sweep_cells(const ExperimentConfig &cfg) {
    Cells cells;
    for (const SweepRecord &r : run_sweep(cfg))
        cells.emplace(std::make_pair(r.sweep_value, r.dataset_size), r);
    return cells;
}

ExperimentConfig base_config(SweepKind kind, std::vector<double> values, std::vector<std::size_t> sizes) {
    ExperimentConfig cfg;
    cfg.ansatz.n_qubits = 3;
    cfg.ansatz.layers = 1;
    cfg.ansatz.delta = kPi / 8;
    cfg.noise = NoiseSpec{0.001, 0.01};
    cfg.dataset_sizes = std::move(sizes);
    cfg.trials = 400;
    cfg.sweep = kind;
    cfg.sweep_values = std::move(values);
    return cfg;
}

Outcome label_identity() {
    const auto start = Clock::now();
    constexpr std::size_t kLen = 8;
    constexpr std::size_t kCount = std::size_t{1} << kLen;
    std::vector<Statevector> enc;
    enc.reserve(kCount);
    for (std::size_t c = 0; c < kCount; ++c)
        enc.push_back(encode_label(bits_of(c, kLen)));
    double worst = 0;
    for (std::size_t a = 0; a < kCount; ++a)
        for (std::size_t b = 0; b < kCount; ++b) {
            const auto d = static_cast<int>(std::popcount(a ^ b));
            worst = std::max(worst, std::abs(fidelity_pure(enc[a], enc[b]) - std::ldexp(1.0, -d)));
        }
    const double secs = seconds_since(start);
    return {worst <= 1e-12 && secs <= 10.0, fmt("65536 pairs, worst %.2e <= 1e-12, %.2f s <= 10 s", worst, secs)};
}

Outcome trace_relation() {
    const auto start = Clock::now();
    Gen g(2001);
    const double lambdas[] = {0.0, 0.3, 0.7, 1.0};
    double worst = 0;
    for (int pair = 0; pair < 100; ++pair) {
        const Statevector a = random_pure(g, 2), b = random_pure(g, 2);
        const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
        for (double l1 : lambdas)
            for (double l2 : lambdas) {
                const ComplexMatrix r1 = depolarize_global(DensityMatrix(a), l1).matrix();
                const ComplexMatrix r2 = depolarize_global(DensityMatrix(b), l2).matrix();
                const double alpha = (1 - l1) * (1 - l2);
                const double lhs = (r1 * r2).trace().real();
                worst = std::max(worst, std::abs(lhs - (alpha * f + (1 - alpha) / 4.0)));
            }
    }
    const double secs = seconds_since(start);
    return {worst <= 1e-10 && secs <= 5.0, fmt("1600 cases, worst %.2e <= 1e-10, %.2f s <= 5 s", worst, secs)};
}

Outcome mixed_reduction() {
    Gen g(2002);
    double worst = 0;
    for (int pair = 0; pair < 200; ++pair) {
        const int q = 1 + pair % 4;
        const Statevector a = random_pure(g, q), b = random_pure(g, q);
        const double direct = std::norm(a.amplitudes().dot(b.amplitudes()));
        worst = std::max(worst, std::abs(fidelity_mixed(DensityMatrix(a), DensityMatrix(b)) - direct));
    }
    return {worst <= 1e-8, fmt("200 pairs up to 4 qubits, worst %.2e <= 1e-8", worst)};
}

Outcome moore_penrose() {
    Gen g(2003);
    std::uniform_int_distribution<int> dim(1, 64);
    double worst = 0;
    int shapes[4] = {0, 0, 0, 0};
    for (int k = 0; k < 50; ++k) {
        const int kind = k % 4; // square, tall, wide, rank-deficient
        Eigen::Index r = dim(g), c = dim(g);
        if (kind == 0)
            c = r;
        else if (kind == 1 && r < c)
            std::swap(r, c);
        else if (kind == 2 && r > c)
            std::swap(r, c);
        RealMatrix a;
        if (kind == 3) {
            r = std::max<Eigen::Index>(r, 2);
            c = std::max<Eigen::Index>(c, 2);
            const Eigen::Index rank = std::uniform_int_distribution<Eigen::Index>(1, std::min(r, c) - 1)(g);
            a = gaussian(g, r, rank) * gaussian(g, rank, c);
        } else {
            a = gaussian(g, r, c);
        }
        ++shapes[kind];
        const RealMatrix p = pinv(a);
        const double scale_a = std::max(1.0, a.norm()), scale_p = std::max(1.0, p.norm());
        worst = std::max({worst, (a * p * a - a).norm() / scale_a, (p * a * p - p).norm() / scale_p,
                          ((a * p).transpose() - a * p).cwiseAbs().maxCoeff(),
                          ((p * a).transpose() - p * a).cwiseAbs().maxCoeff()});
    }
    return {worst <= 1e-8, fmt("50 matrices (%g square, %g tall, %g wide, %g rank-deficient)", shapes[0], shapes[1],
                               shapes[2], shapes[3]) +
                               fmt(", worst %.2e <= 1e-8", worst)};
}

Outcome mlm_interpolation() {
    Gen g(2004);
    std::uniform_real_distribution<double> coord(-10, 10);
    std::size_t hits = 0, total = 0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(g);
        const int dim = std::uniform_int_distribution<int>(1, 5)(g);
        LabeledDataset data;
        std::set<std::size_t> used;
        while (data.size() < n) {
            const std::size_t code = std::uniform_int_distribution<std::size_t>(0, 255)(g);
            if (!used.insert(code).second)
                continue;
            RealVector x(dim);
            for (int i = 0; i < dim; ++i)
                x(i) = coord(g);
            data.inputs.push_back(x);
            data.labels.push_back(bits_of(code, 8));
        }
        const MlmModel model = train_mlm(data);
        for (std::size_t i = 0; i < n; ++i) {
            hits += predict_mlm(model, data.inputs[i]).index == i;
            ++total;
        }
    }
    return {hits == total, fmt("%g / %g training inputs recover their own index", static_cast<double>(hits),
                               static_cast<double>(total))};
}

Outcome zero_noise_lookup() {
    AnsatzSpec spec;
    spec.n_qubits = 3;
    Rng rng(2005);
    const Dataset d = generate_dataset(spec, NoiseSpec{0, 0}, 20, rng);
    const QmlmModel model = train_qmlm(d.inputs, d.outputs);
    const double b_dev = (model.b() - RealMatrix::Identity(20, 20)).cwiseAbs().maxCoeff();
    double worst = 0;
    std::size_t self = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const QmlmPrediction p = predict_qmlm(model, d.inputs[i]);
        self += p.index == i;
        worst = std::max(worst, std::abs(1.0 - prediction_quality(p.state, d.outputs[i])));
    }
    return {b_dev <= 1e-8 && worst <= 1e-9,
            fmt("max|b - I| = %.2e <= 1e-8, worst |1 - F| = %.2e <= 1e-9, %g/20 self-predictions", b_dev, worst,
                static_cast<double>(self))};
}

Outcome maximal_noise() {
    AnsatzSpec spec;
    spec.n_qubits = 3;
    Rng rng(2006);
    Dataset d = generate_dataset(spec, NoiseSpec{0.001, 0.01}, 20, rng);
    for (auto &rho : d.inputs)
        rho = DensityMatrix::maximally_mixed(3);
    const double gram_dev = (gram_mixed(d.inputs).values() - RealMatrix::Ones(20, 20)).cwiseAbs().maxCoeff();
    const QmlmModel model = train_qmlm(d.inputs, d.outputs);

    std::vector<DensityMatrix> tests = d.inputs;
    for (int t = 0; t < 50; ++t) {
        const auto thetas = sample_thetas(rng, spec.parameter_count(), spec.delta);
        tests.push_back(simulate_noisy(build_ansatz(spec, thetas), 0.001, 0.01));
    }
    std::size_t zero = 0;
    std::set<std::size_t> seen;
    for (const auto &t : tests) {
        const std::size_t idx = predict_qmlm(model, t).index;
        zero += idx == 0;
        seen.insert(idx);
    }
    std::string picked;
    for (std::size_t s : seen)
        picked += (picked.empty() ? "" : ",") + std::to_string(s);
    return {gram_dev <= 1e-10 && zero == tests.size(),
            fmt("max|G - 1| = %.2e <= 1e-10, %g/%g predictions at index 0", gram_dev, static_cast<double>(zero),
                static_cast<double>(tests.size())) +
                ", indices returned {" + picked + "}"};
}

Outcome dataset_size_and_dimension_trend() {
    ExperimentConfig cfg = base_config(SweepKind::Qubits, {2, 5}, {10, 40, 160});
    cfg.noise = NoiseSpec{0.005, 0.05};
    const auto start = Clock::now();
    const Cells c = sweep_cells(cfg);
    const double secs = seconds_since(start);
    bool ok = secs <= 600;
    std::string detail;
    for (double q : {2.0, 5.0}) {
        const SweepRecord &lo = c.at({q, 10}), &hi = c.at({q, 160});
        const double se = pooled(lo.std_error, hi.std_error);
        ok = ok && hi.mean_fidelity >= lo.mean_fidelity - se;
        detail += fmt("Q=%g: N=10 %.4f, N=40 %.4f, N=160 %.4f; ", q, lo.mean_fidelity,
                      c.at({q, 40}).mean_fidelity, hi.mean_fidelity);
    }
    const SweepRecord &two = c.at({2, 160}), &five = c.at({5, 160});
    const double se = pooled(two.std_error, five.std_error);
    ok = ok && two.mean_fidelity - five.mean_fidelity >= se;
    detail += fmt("Q=2 minus Q=5 at N=160: %.4f >= SE %.4f; sweep %.0f s <= 600 s", two.mean_fidelity - five.mean_fidelity,
                  se, secs);
    return {ok, detail};
}

Outcome rotation_range_trend() {
    const double small = kPi / 16, mid = kPi / 4, large = kPi;
    const Cells c = sweep_cells(base_config(SweepKind::Delta, {large, mid, small}, {160}));
    const SweepRecord &a = c.at({small, 160}), &b = c.at({mid, 160}), &d = c.at({large, 160});
    const double se_ab = pooled(a.std_error, b.std_error), se_bd = pooled(b.std_error, d.std_error);
    const bool ok = a.mean_fidelity > b.mean_fidelity - se_ab && b.mean_fidelity > d.mean_fidelity - se_bd;
    return {ok, fmt("pi/16 %.4f > pi/4 %.4f > pi %.4f (pooled SE %.4f", a.mean_fidelity, b.mean_fidelity,
                    d.mean_fidelity, se_ab) +
                    fmt(", %.4f)", se_bd)};
}

Outcome noise_trend() {
    const Cells c = sweep_cells(base_config(SweepKind::Noise, {1, 10, 25}, {160}));
    const SweepRecord &s1 = c.at({1, 160}), &s10 = c.at({10, 160}), &s25 = c.at({25, 160});
    const bool ok = s10.mean_fidelity <= s1.mean_fidelity + pooled(s1.std_error, s10.std_error) &&
                    s25.mean_fidelity <= s10.mean_fidelity + pooled(s10.std_error, s25.std_error);
    return {ok, fmt("x1 %.4f >= x10 %.4f >= x25 %.4f (SE %.4f)", s1.mean_fidelity, s10.mean_fidelity,
                    s25.mean_fidelity, pooled(s1.std_error, s10.std_error))};
}

std::string run_csv(const char *threads, const std::filesystem::path &path) {
    setenv("QMLM_THREADS", threads, 1);
    qmlm_config *cfg = nullptr;
    const char *text = "qubits = 2\nlayers = 2\ndelta = pi/4\np1 = 0.003\np2 = 0.03\n"
                       "dataset_sizes = [5, 12, 30]\ntrials = 60\nseed = 424242\n"
                       "sweep.kind = qubits\nsweep.values = [1, 2, 3]\n";
    if (qmlm_config_parse(text, &cfg) != QMLM_OK)
        throw std::runtime_error(qmlm_last_error());
    size_t rows = 0;
    const qmlm_status s = qmlm_sweep_write_csv(cfg, path.c_str(), &rows);
    qmlm_config_destroy(cfg);
    if (s != QMLM_OK)
        throw std::runtime_error(qmlm_last_error());
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "qmlm_acceptance_determinism";
    std::filesystem::create_directories(dir);
    const std::string one = run_csv("1", dir / "a.csv");
    const std::string again = run_csv("1", dir / "b.csv");
    const std::string four = run_csv("4", dir / "c.csv");
    const std::string three = run_csv("3", dir / "d.csv");
    unsetenv("QMLM_THREADS");
    std::filesystem::remove_all(dir);
    const bool ok = one == again && one == four && one == three && !one.empty();
    return {ok, fmt("9-row sweep, %g bytes; identical across repeat and QMLM_THREADS=1,3,4",
                    static_cast<double>(one.size()))};
}

} // namespace

int main() {
    criterion("label fidelity equals 2^-hamming for every 8-bit pair", label_identity);
    criterion("depolarized trace relation Tr(r1'r2') = aF + (1-a)/d", trace_relation);
    criterion("mixed-state fidelity reduces to |<a|b>|^2 on pure states", mixed_reduction);
    criterion("Moore-Penrose conditions on 50 random matrices", moore_penrose);
    criterion("classical MLM interpolates 20 random datasets", mlm_interpolation);
    criterion("zero-noise QMLM acts as a lookup table (N=20, Q=3)", zero_noise_lookup);
    criterion("maximal-noise degeneracy: all-ones Gram, every prediction index 0", maximal_noise);
    criterion("dataset-size and dimension trend (Q=2,5; noise x5; N=10,40,160; T=400)",
              dataset_size_and_dimension_trend);
    criterion("rotation-range trend (Q=3; delta=pi/16 > pi/4 > pi; N=160; T=400)", rotation_range_trend);
    criterion("noise trend (Q=3; scale 1,10,25; N=160; T=400)", noise_trend);
    criterion("byte-identical sweep CSVs across repeats and thread counts", determinism);
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
