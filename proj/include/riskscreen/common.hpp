// Copyright 2026 The riskscreen Authors.
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

#ifndef RISKSCREEN_COMMON_HPP_
#define RISKSCREEN_COMMON_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace riskscreen {

inline constexpr std::string_view kVersion = "0.1.0";

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Bad inputs, malformed files, out-of-range values. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-convergence, undefined statistics, broken numerical invariants.
// CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a, used for config hashes and output-directory comparison.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

// Shortest text form that round-trips a double exactly.
std::string format_double(double value);

std::string to_hex(std::uint64_t value);

// Runs fn(0..n-1) on up to n_threads workers. Exceptions from workers are
// rethrown on the caller. fn must write results into per-index slots so the
// outcome is independent of scheduling.
void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace riskscreen

#endif  // RISKSCREEN_COMMON_HPP_
