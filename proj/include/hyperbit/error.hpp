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

#ifndef HYPERBIT_ERROR_HPP
#define HYPERBIT_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperbit {

enum class ErrorKind {
  dimension_mismatch,
  dimension_cap,
  not_hermitian,
  not_psd,
  not_unit_trace,
  spectrum_out_of_range,
  not_projective,
  non_real_correlation,
  unknown_setting,
  biased_alice,
  zero_probability_branch,
  non_psd_gram,
  norm_violation,
  expectation_out_of_range,
  degenerate_discard,
  invalid_flip_probability,
  invalid_weights,
  empty_interval,
  rejection_budget_exceeded,
  not_found,
  invalid_argument,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

/// All library failures. `value()` carries the offending number where one
/// exists (e.g. the out-of-range flip probability).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<double> value = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  std::optional<double> value_;
};

}  // namespace hyperbit

#endif  // HYPERBIT_ERROR_HPP
