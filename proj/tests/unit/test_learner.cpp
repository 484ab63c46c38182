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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include "qmlm/error.hpp"
#include "qmlm/fidelity.hpp"
#include "qmlm/learner.hpp"
#include "support.hpp"

using namespace qmlm;
using namespace qmlm::testing;

namespace {

Bits bits_of(std::size_t code, std::size_t len) {
    Bits b(len);
    for (std::size_t k = 0; k < len; ++k)
        b[k] = static_cast<std::uint8_t>((code >> (len - 1 - k)) & 1U);
    return b;
}

ComplexVector product_oracle(const Bits &bits) {
    ComplexVector zero(2), plus(2);
    zero << 1, 0;
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (auto b : bits)
        out = kron(out, b ? plus : zero);
    return out.col(0);
}

RealMatrix pinv_oracle(const RealMatrix &a) {
    return Eigen::CompleteOrthogonalDecomposition<RealMatrix>(a).pseudoInverse();
}

struct Sample {
    std::vector<DensityMatrix> inputs;
    std::vector<Statevector> outputs;
};

Sample noisy_sample(Gen &g, std::size_t n, int qubits, double p) {
    Sample s;
    for (std::size_t i = 0; i < n; ++i) {
        s.outputs.push_back(random_statevector(g, qubits));
        s.inputs.push_back(depolarize_global(DensityMatrix(s.outputs.back()), p));
    }
    return s;
}

std::size_t brute_argmax(const RealVector &f, const RealMatrix &b) {
    std::size_t best = 0;
    double best_value = -1e300;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
        double v = 0;
        for (Eigen::Index i = 0; i < b.rows(); ++i)
            v += f(i) * b(i, j);
        if (v > best_value) {
            best_value = v;
            best = static_cast<std::size_t>(j);
        }
    }
    return best;
}

} // namespace

TEST_CASE("encode_label fixed cases") {
    CHECK((encode_label(bits_from_string("0")).amplitudes() - product_oracle(bits_from_string("0"))).norm() == 0.0);
    const ComplexVector plus = encode_label(bits_from_string("1")).amplitudes();
    CHECK(std::abs(plus(0) - 1 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(plus(1) - 1 / std::sqrt(2.0)) <= 1e-15);
    const Bits b = bits_from_string("01101");
    CHECK((encode_label(b).amplitudes() - product_oracle(b)).norm() <= 1e-15);
    const ComplexVector zeros = encode_label(bits_from_string("000")).amplitudes();
    CHECK(std::abs(zeros(0) - 1.0) == 0.0);
    CHECK(zeros.tail(7).norm() == 0.0);
    try {
        encode_label({});
        FAIL("expected EmptyLabel");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::EmptyLabel);
    }
}

TEST_CASE("encode_label matches the product oracle for every 6-bit label") {
    for (std::size_t code = 0; code < 64; ++code) {
        const Bits b = bits_of(code, 6);
        CHECK((encode_label(b).amplitudes() - product_oracle(b)).norm() <= 1e-14);
    }
}

TEST_CASE("decode_label inverts encode_label") {
    CHECK(decode_label(Statevector::from_amplitudes(product_oracle(bits_from_string("01101")))) ==
          bits_from_string("01101"));
    CHECK(decode_label(Statevector(3)) == bits_from_string("000"));
    for (std::size_t code = 0; code < 64; ++code)
        CHECK(decode_label(encode_label(bits_of(code, 6))) == bits_of(code, 6));
    Gen g(71);
    try {
        decode_label(random_statevector(g, 3));
        FAIL("expected NotAnEncodedLabel");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::NotAnEncodedLabel);
    }
}

TEST_CASE("label_fidelity") {
    CHECK(label_fidelity(bits_from_string("0110"), bits_from_string("0110")) == 1.0);
    CHECK(label_fidelity(bits_from_string("0110"), bits_from_string("0111")) == 0.5);
    CHECK(label_fidelity(bits_from_string("01101"), bits_from_string("01000")) == 0.25);
    const double simulated =
        fidelity_pure(encode_label(bits_from_string("01101")), encode_label(bits_from_string("01000")));
    CHECK(std::abs(simulated - 0.25) <= 1e-15);
}

TEST_CASE("encoded label fidelity is two to the minus Hamming distance") {
    for (std::size_t len = 1; len <= 6; ++len) {
        const std::size_t count = std::size_t{1} << len;
        std::vector<Statevector> enc;
        for (std::size_t c = 0; c < count; ++c)
            enc.push_back(encode_label(bits_of(c, len)));
        for (std::size_t a = 0; a < count; ++a)
            for (std::size_t b = 0; b < count; ++b) {
                const double expect = std::ldexp(1.0, -static_cast<int>(hamming(bits_of(a, len), bits_of(b, len))));
                CHECK(std::abs(fidelity_pure(enc[a], enc[b]) - expect) <= 1e-12);
            }
    }
}

TEST_CASE("train_qmlm without noise learns the identity map") {
    Gen g(72);
    const Sample s = noisy_sample(g, 8, 3, 0.0);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    CHECK(max_abs(m.b() - RealMatrix::Identity(8, 8)) <= 1e-8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(predict_qmlm(m, s.inputs[i]).index == i);
}

TEST_CASE("train_qmlm on one instance") {
    Gen g(73);
    const Sample s = noisy_sample(g, 1, 2, 0.2);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    CHECK(std::abs(m.b()(0, 0) - 1.0) <= 1e-12);
    CHECK(predict_qmlm(m, random_density(g, 2)).index == 0);
}

TEST_CASE("train_qmlm agrees with an independent pseudoinverse") {
    Gen g(74);
    for (int trial = 0; trial < 10; ++trial) {
        const Sample s = noisy_sample(g, 4, 2, 0.3);
        const QmlmModel m = train_qmlm(s.inputs, s.outputs);
        const RealMatrix gx = gram_mixed(s.inputs).values();
        const RealMatrix gy = gram_pure(s.outputs).values();
        CHECK(max_abs(m.b() - pinv_oracle(gx) * gy) <= 1e-8);
        CHECK((gx * m.b() - gy).norm() <= (gx * pinv_oracle(gx) * gy - gy).norm() + 1e-10);
    }
}

TEST_CASE("train_qmlm validates its inputs") {
    Gen g(75);
    const Sample s = noisy_sample(g, 3, 2, 0.1);
    std::vector<Statevector> fewer(s.outputs.begin(), s.outputs.begin() + 2);
    try {
        train_qmlm(s.inputs, fewer);
        FAIL("expected CountMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == Errc::CountMismatch);
    }
    CHECK_THROWS_AS(train_qmlm({}, {}), Error);
    std::vector<DensityMatrix> mixed_dims = s.inputs;
    mixed_dims[1] = DensityMatrix(3);
    CHECK_THROWS_AS(train_qmlm(mixed_dims, s.outputs), Error);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    CHECK_THROWS_AS(predict_qmlm(m, DensityMatrix(3)), Error);
}

TEST_CASE("similarity is the test fidelity row times the coefficients") {
    Gen g(76);
    const Sample s = noisy_sample(g, 6, 2, 0.25);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix test = depolarize_global(DensityMatrix(random_statevector(g, 2)), 0.25);
        RealVector f(6);
        for (Eigen::Index i = 0; i < 6; ++i)
            f(i) = fidelity_mixed(s.inputs[static_cast<std::size_t>(i)], test);
        CHECK((fidelity_row(m, test) - f).norm() <= 1e-12);
        const RealVector sim = similarity(m, test);
        for (Eigen::Index j = 0; j < 6; ++j)
            CHECK(std::abs(sim(j) - f.dot(m.b().col(j))) <= 1e-12);
        CHECK(predict_qmlm(m, test).index == brute_argmax(f, m.b()));
    }
}

TEST_CASE("maximally mixed training inputs give an all-ones Gram matrix") {
    Gen g(77);
    Sample s = noisy_sample(g, 5, 2, 0.0);
    for (auto &rho : s.inputs)
        rho = DensityMatrix::maximally_mixed(2);
    CHECK(max_abs(gram_mixed(s.inputs).values() - RealMatrix::Ones(5, 5)) <= 1e-10);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    const DensityMatrix test = random_density(g, 2);
    const RealVector f = fidelity_row(m, test);
    CHECK((f.array() - f(0)).abs().maxCoeff() <= 1e-12);
    CHECK(predict_qmlm(m, test).index == brute_argmax(f, m.b()));
}

TEST_CASE("predictions are always training outputs") {
    Gen g(78);
    const Sample s = noisy_sample(g, 7, 2, 0.4);
    const QmlmModel m = train_qmlm(s.inputs, s.outputs);
    for (int trial = 0; trial < 20; ++trial) {
        const QmlmPrediction p = predict_qmlm(m, random_density(g, 2));
        REQUIRE(p.index < 7);
        CHECK(p.state.amplitudes() == s.outputs[p.index].amplitudes());
    }
}

TEST_CASE("relabeling the training set permutes the prediction") {
    Gen g(79);
    for (int trial = 0; trial < 5; ++trial) {
        const Sample s = noisy_sample(g, 6, 2, 0.2);
        std::vector<std::size_t> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), g);
        Sample t;
        for (std::size_t i : perm) {
            t.inputs.push_back(s.inputs[i]);
            t.outputs.push_back(s.outputs[i]);
        }
        const QmlmModel a = train_qmlm(s.inputs, s.outputs), b = train_qmlm(t.inputs, t.outputs);
        for (int k = 0; k < 5; ++k) {
            const DensityMatrix test = random_density(g, 2);
            CHECK(perm[predict_qmlm(b, test).index] == predict_qmlm(a, test).index);
        }
    }
}

TEST_CASE("label models") {
    Gen g(80);
    const DensityMatrix lone = random_density(g, 2);
    const QmlmModel single = train_qmlm_labels({lone}, {bits_from_string("101")});
    CHECK(predict_label_qmlm(single, random_density(g, 2)) == bits_from_string("101"));

    std::vector<DensityMatrix> inputs;
    std::vector<Bits> labels;
    for (std::size_t c = 0; c < 6; ++c) {
        inputs.emplace_back(random_statevector(g, 3));
        labels.push_back(bits_of(c + 1, 4));
    }
    const QmlmModel m = train_qmlm_labels(inputs, labels);
    for (std::size_t i = 0; i < inputs.size(); ++i)
        CHECK(predict_label_qmlm(m, inputs[i]) == labels[i]);

    std::vector<Statevector> encoded;
    for (const auto &l : labels)
        encoded.push_back(encode_label(l));
    const RealMatrix gy = gram_pure(encoded).values();
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j)
            CHECK(std::abs(gy(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                           label_fidelity(labels[i], labels[j])) <= 1e-12);

    const QmlmModel plain = train_qmlm(inputs, encoded);
    CHECK_THROWS_AS(predict_label_qmlm(plain, inputs[0]), Error);
}

TEST_CASE("orthogonal three-state toy instance matches brute force") {
    std::vector<DensityMatrix> inputs{DensityMatrix(Statevector::basis(2, 0)), DensityMatrix(Statevector::basis(2, 1)),
                                      DensityMatrix(Statevector::basis(2, 2))};
    const std::vector<Bits> labels{bits_from_string("100"), bits_from_string("110"), bits_from_string("011")};
    const QmlmModel m = train_qmlm_labels(inputs, labels);
    Gen g(81);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix test = random_density(g, 2);
        const RealVector f = fidelity_row(m, test);
        CHECK(predict_label_qmlm(m, test) == labels[brute_argmax(f, m.b())]);
    }
}

TEST_CASE("prediction_quality") {
    Gen g(82);
    const Statevector a = random_statevector(g, 3), b = random_statevector(g, 3);
    CHECK(prediction_quality(a, a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(prediction_quality(Statevector::basis(2, 1), Statevector::basis(2, 2)) == 0.0);
    const double overlap = std::norm(a.amplitudes().dot(b.amplitudes()));
    CHECK(std::abs(prediction_quality(a, b) - overlap) <= 1e-14);
}

TEST_CASE("model save and load round trip") {
    Gen g(83);
    const auto dir = std::filesystem::temp_directory_path() / "qmlm_learner_model";
    std::filesystem::remove_all(dir);
    const Sample s = noisy_sample(g, 5, 2, 0.2);
    QmlmModel m = train_qmlm(s.inputs, s.outputs);
    m.set_seed(99);
    save_qmlm_model(m, dir);
    const QmlmModel back = load_qmlm_model(dir);
    CHECK(back.size() == 5);
    CHECK(back.seed() == 99);
    CHECK(back.rcond() == m.rcond());
    CHECK(max_abs(back.b() - m.b()) == 0.0);
    for (int k = 0; k < 5; ++k) {
        const DensityMatrix test = random_density(g, 2);
        CHECK(predict_qmlm(back, test).index == predict_qmlm(m, test).index);
    }

    std::vector<DensityMatrix> inputs(s.inputs.begin(), s.inputs.begin() + 3);
    const QmlmModel labeled =
        train_qmlm_labels(inputs, {bits_from_string("01"), bits_from_string("10"), bits_from_string("11")});
    std::filesystem::remove_all(dir);
    save_qmlm_model(labeled, dir);
    const QmlmModel lb = load_qmlm_model(dir);
    REQUIRE(lb.train_labels().has_value());
    CHECK(lb.train_labels()->at(2) == bits_from_string("11"));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(load_qmlm_model(dir), Error);
}
