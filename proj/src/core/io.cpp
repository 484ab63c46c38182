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

#include "qmlm/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "csv.hpp"
#include "qmlm/error.hpp"

namespace qmlm {

using detail::format_double;

namespace {

std::vector<std::vector<double>> read_rows(std::istream &in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (detail::next_line(in, line)) {
        std::vector<double> row;
        for (const auto &field : detail::split(line, ','))
            row.push_back(detail::parse_double(field));
        if (!rows.empty() && row.size() != rows.front().size())
            fail(Errc::Parse, "ragged CSV: row " + std::to_string(rows.size() + 1) + " has " +
                                  std::to_string(row.size()) + " fields");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        fail(Errc::Parse, "CSV has no rows");
    return rows;
}

Statevector statevector_from_rows(const std::vector<std::vector<double>> &rows) {
    if (rows.front().size() != 2)
        fail(Errc::Parse, "statevector rows must be 're,im'");
    ComplexVector amps(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        amps(static_cast<Eigen::Index>(i)) = complex_t(rows[i][0], rows[i][1]);
    return Statevector::from_amplitudes(std::move(amps));
}

DensityMatrix density_from_rows(const std::vector<std::vector<double>> &rows) {
    const auto d = rows.size();
    if (rows.front().size() != 2 * d)
        fail(Errc::Parse, "density matrix rows must hold 2*d interleaved values");
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                complex_t(rows[i][2 * j], rows[i][2 * j + 1]);
    return DensityMatrix::from_matrix(std::move(m));
}

} // namespace

void write_real_matrix_csv(std::ostream &out, const RealMatrix &m, int significant_digits) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j), significant_digits);
        out << '\n';
    }
}

RealMatrix read_real_matrix_csv(std::istream &in) {
    const auto rows = read_rows(in);
    RealMatrix m(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

void write_gram_csv(std::ostream &out, const GramMatrix &g) {
    write_real_matrix_csv(out, g.values(), 17);
}

void write_statevector_csv(std::ostream &out, const Statevector &psi) {
    for (const complex_t &a : psi.amplitudes())
        out << format_double(a.real(), 17) << ',' << format_double(a.imag(), 17) << '\n';
}

Statevector read_statevector_csv(std::istream &in) { return statevector_from_rows(read_rows(in)); }

void write_density_csv(std::ostream &out, const DensityMatrix &rho) {
    const ComplexMatrix &m = rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << format_double(m(i, j).real(), 17) << ','
                << format_double(m(i, j).imag(), 17);
        out << '\n';
    }
}

DensityMatrix read_density_csv(std::istream &in) { return density_from_rows(read_rows(in)); }

AnyState read_state_csv(std::istream &in) {
    const auto rows = read_rows(in);
    // A 1-row file cannot be a valid state of either kind; the 2-column check
    // therefore never collides with a density matrix (which has 2d >= 4 columns).
    if (rows.front().size() == 2)
        return statevector_from_rows(rows);
    return density_from_rows(rows);
}

AnyState load_state_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::Io, "cannot open " + path.string());
    try {
        return read_state_csv(in);
    } catch (const Error &e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

std::vector<AnyState> load_state_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        fail(Errc::Io, dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        fail(Errc::Io, "no .csv state files in " + dir.string());
    std::vector<AnyState> states;
    for (const auto &f : files)
        states.push_back(load_state_file(f));
    return states;
}

GramMatrix gram_of(const std::vector<AnyState> &states, unsigned threads) {
    const bool all_pure = std::all_of(states.begin(), states.end(), [](const AnyState &s) {
        return std::holds_alternative<Statevector>(s);
    });
    if (all_pure) {
        std::vector<Statevector> pure;
        for (const auto &s : states)
            pure.push_back(std::get<Statevector>(s));
        return gram_pure(pure);
    }
    std::vector<DensityMatrix> mixed;
    for (const auto &s : states) {
        if (const auto *psi = std::get_if<Statevector>(&s))
            mixed.emplace_back(*psi);
        else
            mixed.push_back(std::get<DensityMatrix>(s));
    }
    return gram_mixed(mixed, threads);
}

} // namespace qmlm
