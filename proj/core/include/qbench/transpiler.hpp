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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qbench/circuit.hpp"

namespace qbench {

enum class CpStrategy {
  /// One ZZ interaction per controlled phase plus local Z rotations.
  DirectEntangler,
  /// Two CX per controlled phase; every single-qubit operation is emitted
  /// as a full Z-Y-Z Euler triple, trivial angles included.
  TwoCX,
};

struct GateSetProfile {
  std::string name;
  std::vector<GateKind> native_1q;
  GateKind native_2q = GateKind::ZZ;
  CpStrategy cp_strategy = CpStrategy::DirectEntangler;

  bool is_native(GateKind kind) const;
};

/// Validates the profile invariants; throws std::invalid_argument.
void validate(const GateSetProfile& profile);

/// "efficient": ZZ entangler with RX/RY/RZ.
GateSetProfile efficient_profile();
/// "redundant": CX entangler with RZ/RY.
GateSetProfile redundant_profile();
/// Looks up "efficient" or "redundant".
GateSetProfile profile_by_name(std::string_view name);

struct TranspileResult {
  Circuit circuit;
  GateCensus census;
  GateCensus source_census;
  /// source = exp(i * global_phase) * transpiled; discarded by equivalence checks.
  double global_phase = 0.0;
};

TranspileResult transpile(const Circuit& c, const GateSetProfile& profile);

inline constexpr int kMaxEquivalenceQubits = 10;

/// Minimum state overlap |<a|b>|^2 over the all-zeros input and eight
/// seeded random product-state inputs.
double verify_equivalence(const Circuit& a, const Circuit& b);

/// Inclusive: accept iff total <= limit.
bool check_gate_limit(const GateCensus& c, std::int64_t limit);

/// Midpoint between the largest transpiled benchmark total at `accept_qubits`
/// and the smallest at `reject_qubits`. Any benchmark input at the first
/// width passes and any input at the second fails.
std::int64_t gate_limit_between(const GateSetProfile& profile, int accept_qubits, int reject_qubits);

/// Default limit for the AWS IonQ Aria route: 16 qubits pass, 18 fail.
std::int64_t default_aws_gate_limit();

}  // namespace qbench
