// Copyright 2026 The qbench Authors
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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qbench/circuit.hpp"

namespace qbench {

using Amplitude = std::complex<double>;

/// 256 MB of amplitudes; wider registers are refused.
inline constexpr int kMaxStatevectorQubits = 24;

class StateVector {
 public:
  /// |0...0> on `width` qubits.
  explicit StateVector(int width);

  int width() const { return width_; }
  std::size_t dimension() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  void apply(const Gate& g);
  void apply(const Circuit& c);

  double norm() const;
  std::vector<double> probabilities() const;

  /// <this|other>.
  Amplitude inner(const StateVector& other) const;

 private:
  void apply_1q(int q, const Amplitude (&m)[2][2]);

  int width_;
  std::vector<Amplitude> amps_;
};

/// Measured bitstrings (MSB first) and their shot counts.
struct CountsDistribution {
  std::map<std::string, std::int64_t> counts;
  std::int64_t shots = 0;

  std::string to_json() const;
  static CountsDistribution from_json(std::string_view text);

  friend bool operator==(const CountsDistribution&, const CountsDistribution&) = default;
};

/// Sparse outcome distribution over basis-state indices.
struct OutcomeTable {
  int width = 0;
  std::vector<std::pair<std::uint64_t, double>> entries;  // (index, probability)

  static OutcomeTable from_statevector(const StateVector& sv);
  static OutcomeTable delta(int width, std::uint64_t index);
};

struct NoNoise {};

/// Zero-order model: the whole circuit succeeds with probability f^n_2q,
/// otherwise the shot is a uniformly random bitstring.
struct GlobalDepolarizing {
  double f_2qg = 1.0;
};

/// After each two-qubit gate, with probability p, a uniformly random
/// non-identity two-qubit Pauli hits the pair.
struct PauliTrajectory {
  double p = 0.0;
};

using NoiseSpec = std::variant<NoNoise, GlobalDepolarizing, PauliTrajectory>;

void validate(const NoiseSpec& noise);
std::string describe(const NoiseSpec& noise);

StateVector run_statevector(const Circuit& c);

/// Multinomial sampling of |amplitude|^2.
CountsDistribution sample(const StateVector& sv, std::int64_t shots, std::uint64_t seed);
CountsDistribution sample(const OutcomeTable& table, std::int64_t shots, std::uint64_t seed);

/// Per-shot mixture of the ideal distribution and the uniform one;
/// `success_probability` is the weight of the ideal part.
CountsDistribution sample_depolarized(const OutcomeTable& ideal, double success_probability, std::int64_t shots,
                                      std::uint64_t seed);

CountsDistribution run_noisy(const Circuit& c, const NoiseSpec& noise, std::int64_t shots, std::uint64_t seed);

}  // namespace qbench
