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

#pragma once

#include <stdexcept>
#include <string>

namespace qmlm {

enum class Errc {
    InvalidArgument,
    DimensionMismatch,
    LengthMismatch,
    CountMismatch,
    InvalidQubitIndex,
    ProbabilityOutOfRange,
    ThetaCountMismatch,
    EmptyLabel,
    NotAnEncodedLabel,
    TooSmall,
    NotHermitian,
    NotPSD,
    NoConvergence,
    Io,
    Parse,
};

const char *errc_name(Errc code) noexcept;

/// True for failures of the numerical kernels (as opposed to bad input).
constexpr bool is_numerical(Errc code) noexcept {
    return code == Errc::NotHermitian || code == Errc::NotPSD ||
           code == Errc::NoConvergence;
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string &what) {
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace qmlm
