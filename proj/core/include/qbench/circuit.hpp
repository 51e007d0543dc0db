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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbench {

enum class GateKind { X, H, P, RZ, RX, RY, CP, CX, ZZ, SWAP };

/// Number of qubits a gate kind acts on (1 or 2).
int arity(GateKind kind);
/// True for kinds that carry a rotation angle.
bool has_angle(GateKind kind);
std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

/// One gate application. For CX the first target is the control.
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 2> targets{0, 0};
  double theta = 0.0;

  int arity() const { return qbench::arity(kind); }
  std::span<const int> qubits() const { return {targets.data(), static_cast<std::size_t>(arity())}; }

  /// The gate that undoes this one.
  Gate inverse() const;

  static Gate x(int q) { return {GateKind::X, {q, q}, 0.0}; }
  static Gate h(int q) { return {GateKind::H, {q, q}, 0.0}; }
  static Gate p(int q, double theta) { return {GateKind::P, {q, q}, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, {q, q}, theta}; }
  static Gate rx(int q, double theta) { return {GateKind::RX, {q, q}, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, {q, q}, theta}; }
  static Gate cp(int a, int b, double theta) { return {GateKind::CP, {a, b}, theta}; }
  static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0}; }
  static Gate zz(int a, int b, double theta) { return {GateKind::ZZ, {a, b}, theta}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, 0.0}; }

  friend bool operator==(const Gate& a, const Gate& b);
};

/// Parameters of a generated benchmark, carried with the circuit.
struct BenchmarkMetadata {
  int qubits = 0;
  std::uint64_t input = 0;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const BenchmarkMetadata&, const BenchmarkMetadata&) = default;
};

struct GateCensus {
  std::int64_t n_1q = 0;
  std::int64_t n_2q = 0;
  std::int64_t total = 0;

  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

/// Ordered gate list over a fixed qubit register.
///
/// Gates are validated on insertion: arity must match the kind, indices must
/// be distinct and below the width, and angles must be finite. Violations
/// throw std::invalid_argument.
class Circuit {
 public:
  explicit Circuit(int width);

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  const std::optional<BenchmarkMetadata>& metadata() const { return metadata_; }
  void set_metadata(BenchmarkMetadata m) { metadata_ = m; }

  Circuit& add(const Gate& g);
  Circuit& append(const Circuit& other);

  /// Reversed gate order with each gate inverted. Metadata is dropped.
  Circuit inverse() const;

  std::string to_json() const;
  static Circuit from_json(std::string_view text);

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int width_;
  std::vector<Gate> gates_;
  std::optional<BenchmarkMetadata> metadata_;
};

inline constexpr int kMaxBenchmarkQubits = 28;

/// Segment boundaries of a generated benchmark, as gate index ranges
/// [begin, end) into Circuit::gates().
struct BenchmarkLayout {
  std::size_t prepare_end = 0;    // X gates loading the input
  std::size_t qft_end = 0;        // forward transform
  std::size_t increment_end = 0;  // phase rotations adding one
  std::size_t total = 0;          // inverse transform ends here
};

/// Forward QFT on `width` qubits: H / controlled-phase ladder, then the
/// terminal SWAP reversal. Qubit i carries weight 2^i.
Circuit qft_circuit(int width);

/// The benchmark program: load |n>, QFT, add one in Fourier space, inverse QFT.
/// Ideal measurement is (n + 1) mod 2^q.
Circuit build_qft_benchmark(int qubits, std::uint64_t input);
BenchmarkLayout benchmark_layout(int qubits, std::uint64_t input);

/// (n + 1) mod 2^q, printed most-significant bit first.
std::string ideal_output(int qubits, std::uint64_t input);

/// Renders a basis-state index as a q-character bitstring, MSB first.
std::string to_bitstring(std::uint64_t value, int width);
std::uint64_t from_bitstring(std::string_view bits);

GateCensus census(const Circuit& c);

/// Deterministic, portable draw of a benchmark input in [0, 2^q).
std::uint64_t random_input(int qubits, std::uint64_t seed);

}  // namespace qbench
