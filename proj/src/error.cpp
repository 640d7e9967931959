// Copyright 2026 The Hyperbit Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hyperbit/error.hpp"

namespace hyperbit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::dimension_cap: return "DimensionCap";
    case ErrorKind::not_hermitian: return "NotHermitian";
    case ErrorKind::not_psd: return "NotPSD";
    case ErrorKind::not_unit_trace: return "NotUnitTrace";
    case ErrorKind::spectrum_out_of_range: return "SpectrumOutOfRange";
    case ErrorKind::not_projective: return "NotProjective";
    case ErrorKind::non_real_correlation: return "NonRealCorrelation";
    case ErrorKind::unknown_setting: return "UnknownSetting";
    case ErrorKind::biased_alice: return "BiasedAlice";
    case ErrorKind::zero_probability_branch: return "ZeroProbabilityBranch";
    case ErrorKind::non_psd_gram: return "NonPSDGram";
    case ErrorKind::norm_violation: return "NormViolation";
    case ErrorKind::expectation_out_of_range: return "ExpectationOutOfRange";
    case ErrorKind::degenerate_discard: return "DegenerateDiscard";
    case ErrorKind::invalid_flip_probability: return "InvalidFlipProbability";
    case ErrorKind::invalid_weights: return "InvalidWeights";
    case ErrorKind::empty_interval: return "EmptyInterval";
    case ErrorKind::rejection_budget_exceeded: return "RejectionBudgetExceeded";
    case ErrorKind::not_found: return "NotFound";
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace hyperbit
