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

#include "qmlm/error.hpp"

namespace qmlm {

const char *errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::InvalidQubitIndex: return "InvalidQubitIndex";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::ThetaCountMismatch: return "ThetaCountMismatch";
    case Errc::EmptyLabel: return "EmptyLabel";
    case Errc::NotAnEncodedLabel: return "NotAnEncodedLabel";
    case Errc::TooSmall: return "TooSmall";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::Io: return "Io";
    case Errc::Parse: return "Parse";
    }
    return "Unknown";
}

} // namespace qmlm
