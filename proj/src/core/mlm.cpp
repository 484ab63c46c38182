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

#include "qmlm/mlm.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "qmlm/error.hpp"

namespace qmlm {

using detail::format_double;

std::string bits_to_string(const Bits &bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits)
        s.push_back(b ? '1' : '0');
    return s;
}

Bits bits_from_string(const std::string &text) {
    Bits bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            fail(Errc::Parse, "bit string '" + text + "' contains '" + std::string(1, c) + "'");
        bits.push_back(c == '1');
    }
    return bits;
}

std::size_t hamming(const Bits &a, const Bits &b) {
    if (a.size() != b.size())
        fail(Errc::LengthMismatch, "bit vectors of length " + std::to_string(a.size()) +
                                       " and " + std::to_string(b.size()));
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += (a[i] != 0) != (b[i] != 0);
    return d;
}

void LabeledDataset::validate() const {
    if (inputs.empty())
        fail(Errc::TooSmall, "dataset has no instances");
    if (inputs.size() != labels.size())
        fail(Errc::CountMismatch, std::to_string(inputs.size()) + " inputs but " +
                                      std::to_string(labels.size()) + " labels");
    for (const auto &x : inputs)
        if (x.size() != inputs.front().size())
            fail(Errc::DimensionMismatch, "input vectors have differing dimensions");
    bool any_multi = false;
    for (const auto &y : labels) {
        if (y.size() != labels.front().size())
            fail(Errc::LengthMismatch, "label vectors have differing lengths");
        std::size_t ones = 0;
        for (auto bit : y) {
            if (bit > 1)
                fail(Errc::InvalidArgument, "label entries must be 0 or 1");
            ones += bit;
        }
        any_multi = any_multi || ones > 1;
    }
    if (multi_label && !any_multi)
        fail(Errc::InvalidArgument, "multi-label dataset has no instance with more than one label");
}

RealMatrix distance_matrix(std::span<const RealVector> points, std::span<const RealVector> refs) {
    RealMatrix d(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(refs.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < refs.size(); ++j) {
            if (points[i].size() != refs[j].size())
                fail(Errc::DimensionMismatch, "point of dimension " +
                                                  std::to_string(points[i].size()) +
                                                  " vs reference of dimension " +
                                                  std::to_string(refs[j].size()));
            d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (points[i] - refs[j]).norm();
        }
    }
    return d;
}

MlmModel train_mlm(const LabeledDataset &data, double rcond) {
    return train_mlm(data, data.inputs, rcond);
}

MlmModel train_mlm(const LabeledDataset &data, std::span<const RealVector> refs, double rcond) {
    data.validate();
    if (refs.empty())
        fail(Errc::TooSmall, "no reference points");
    const RealMatrix dx = distance_matrix(data.inputs, refs);
    const auto n = static_cast<Eigen::Index>(data.size());
    RealMatrix dy(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            dy(i, j) = std::sqrt(static_cast<double>(
                hamming(data.labels[static_cast<std::size_t>(i)],
                        data.labels[static_cast<std::size_t>(j)])));
    return {std::vector<RealVector>(refs.begin(), refs.end()), data.labels,
            solve_linear_map(dx, dy, rcond)};
}

MlmPrediction predict_mlm(const MlmModel &model, const RealVector &x) {
    const RealVector query[] = {x};
    const RealMatrix estimated = distance_matrix(query, model.references) * model.b;
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < estimated.cols(); ++j)
        if (estimated(0, j) < estimated(0, best))
            best = j;
    const auto idx = static_cast<std::size_t>(best);
    return {idx, model.train_labels.at(idx)};
}

// ---- CSV -------------------------------------------------------------------

LabeledDataset read_dataset_csv(std::istream &in) {
    std::string line;
    if (!detail::next_line(in, line))
        fail(Errc::Parse, "dataset CSV is empty");
    const auto header = detail::split(line, ',');
    std::size_t m = 0, l = 0;
    for (const auto &col : header) {
        if (col.rfind("x_", 0) == 0 && l == 0)
            ++m;
        else if (col.rfind("y_", 0) == 0)
            ++l;
        else
            fail(Errc::Parse, "unexpected dataset column '" + col + "'");
    }
    if (m == 0 || l == 0)
        fail(Errc::Parse, "dataset header needs x_1..x_M followed by y_1..y_L");

    LabeledDataset data;
    std::size_t row = 1;
    while (detail::next_line(in, line)) {
        ++row;
        const auto fields = detail::split(line, ',');
        if (fields.size() != m + l)
            fail(Errc::Parse, "row " + std::to_string(row) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(m + l));
        RealVector x(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i)
            x(static_cast<Eigen::Index>(i)) = detail::parse_double(fields[i]);
        Bits y(l);
        for (std::size_t i = 0; i < l; ++i) {
            const long long v = detail::parse_int(fields[m + i]);
            if (v != 0 && v != 1)
                fail(Errc::Parse, "row " + std::to_string(row) + ": label entries must be 0 or 1");
            y[i] = static_cast<std::uint8_t>(v);
        }
        data.inputs.push_back(std::move(x));
        data.labels.push_back(std::move(y));
    }
    data.validate();
    return data;
}

void write_dataset_csv(std::ostream &out, const LabeledDataset &data) {
    data.validate();
    const auto m = data.inputs.front().size();
    const auto l = data.labels.front().size();
    for (Eigen::Index i = 0; i < m; ++i)
        out << (i ? "," : "") << "x_" << i + 1;
    for (std::size_t i = 0; i < l; ++i)
        out << ",y_" << i + 1;
    out << '\n';
    for (std::size_t r = 0; r < data.size(); ++r) {
        for (Eigen::Index i = 0; i < m; ++i)
            out << (i ? "," : "") << format_double(data.inputs[r](i), 17);
        for (auto bit : data.labels[r])
            out << ',' << int(bit);
        out << '\n';
    }
}

namespace {

void write_block(std::ostream &out, const char *name, const RealMatrix &m) {
    out << "# " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j), 17);
        out << '\n';
    }
}

RealMatrix read_block(std::istream &in, const std::string &name) {
    std::string line;
    if (!detail::next_line(in, line))
        fail(Errc::Parse, "missing '# " + name + "' block");
    std::istringstream head(line);
    std::string hash, tag;
    Eigen::Index rows = -1, cols = -1;
    if (!(head >> hash >> tag >> rows >> cols) || hash != "#" || tag != name || rows < 0 ||
        cols < 0)
        fail(Errc::Parse, "expected '# " + name + " rows cols', got '" + line + "'");
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!detail::next_line(in, line))
            fail(Errc::Parse, "block '" + name + "' is truncated");
        const auto fields = detail::split(line, ',');
        if (static_cast<Eigen::Index>(fields.size()) != cols)
            fail(Errc::Parse, "block '" + name + "' row has the wrong width");
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = detail::parse_double(fields[static_cast<std::size_t>(j)]);
    }
    return m;
}

} // namespace

void write_mlm_model(std::ostream &out, const MlmModel &model) {
    const auto k = static_cast<Eigen::Index>(model.references.size());
    const Eigen::Index m = k ? model.references.front().size() : 0;
    RealMatrix refs(k, m);
    for (Eigen::Index i = 0; i < k; ++i)
        refs.row(i) = model.references[static_cast<std::size_t>(i)].transpose();
    const auto n = static_cast<Eigen::Index>(model.train_labels.size());
    const Eigen::Index l = n ? static_cast<Eigen::Index>(model.train_labels.front().size()) : 0;
    RealMatrix labels(n, l);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < l; ++j)
            labels(i, j) = model.train_labels[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    write_block(out, "references", refs);
    write_block(out, "labels", labels);
    write_block(out, "b", model.b);
}

MlmModel read_mlm_model(std::istream &in) {
    const RealMatrix refs = read_block(in, "references");
    const RealMatrix labels = read_block(in, "labels");
    MlmModel model;
    model.b = read_block(in, "b");
    if (model.b.rows() != refs.rows() || model.b.cols() != labels.rows())
        fail(Errc::DimensionMismatch, "coefficient block does not match references and labels");
    for (Eigen::Index i = 0; i < refs.rows(); ++i)
        model.references.emplace_back(refs.row(i).transpose());
    for (Eigen::Index i = 0; i < labels.rows(); ++i) {
        Bits y(static_cast<std::size_t>(labels.cols()));
        for (Eigen::Index j = 0; j < labels.cols(); ++j)
            y[static_cast<std::size_t>(j)] = labels(i, j) != 0.0;
        model.train_labels.push_back(std::move(y));
    }
    return model;
}

} // namespace qmlm
