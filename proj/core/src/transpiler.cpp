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

#include "qbench/transpiler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "qbench/random.hpp"
#include "qbench/simulator.hpp"

namespace qbench {

namespace {

using C = std::complex<double>;
using Mat4 = std::array<std::array<C, 4>, 4>;
constexpr double kPi = std::numbers::pi;

// Unitary of `gates` (acting on qubits a, b of the source) restricted to
// the two-qubit subspace, with a -> local 0 and b -> local 1.
Mat4 local_unitary(const std::vector<Gate>& gates, int a, int b) {
  auto remap = [&](int q) {
    if (q == a) return 0;
    if (q == b) return 1;
    throw std::logic_error("lowered gate touches a qubit outside its source gate");
  };
  Mat4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    StateVector sv(2);
    if (col & 1U) sv.apply(Gate::x(0));
    if (col & 2U) sv.apply(Gate::x(1));
    for (Gate g : gates) {
      g.targets[0] = remap(g.targets[0]);
      g.targets[1] = remap(g.targets[1]);
      sv.apply(g);
    }
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = sv[row];
  }
  return m;
}

// phi with source = exp(i*phi) * lowered.
double relative_phase(const Gate& source, const std::vector<Gate>& lowered) {
  const int a = source.targets[0];
  const int b = source.arity() == 2 ? source.targets[1] : (a == 0 ? 1 : 0);
  std::vector<Gate> lowered_local = lowered;
  if (source.arity() == 1) {
    // Place the single-qubit op next to a spectator so both sides share one frame.
    for (Gate& g : lowered_local) g.targets[1] = g.targets[0];
  }
  const Mat4 src = local_unitary({source}, a, b);
  const Mat4 low = local_unitary(lowered_local, a, b);
  C tr{0.0, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) tr += std::conj(low[i][j]) * src[i][j];
  }
  return std::arg(tr);
}

std::array<std::array<C, 2>, 2> single_qubit_matrix(const Gate& g) {
  const Mat4 m = local_unitary({Gate{g.kind, {0, 0}, g.theta}}, 0, 1);
  return {{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}};
}

// Emits U as RZ(lambda), RY(theta), RZ(phi) (U = e^{ia} RZ(phi) RY(theta) RZ(lambda)).
void emit_euler(const Gate& g, std::vector<Gate>& out) {
  const auto u = single_qubit_matrix(g);
  const C det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
  const C scale = std::polar(1.0, -std::arg(det) / 2.0);
  const C v00 = u[0][0] * scale;
  const C v10 = u[1][0] * scale;
  const double theta = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  const double sum = std::abs(v00) > 1e-12 ? -2.0 * std::arg(v00) : 0.0;
  const double diff = std::abs(v10) > 1e-12 ? 2.0 * std::arg(v10) : 0.0;
  const int q = g.targets[0];
  out.push_back(Gate::rz(q, (sum - diff) / 2.0));
  out.push_back(Gate::ry(q, theta));
  out.push_back(Gate::rz(q, (sum + diff) / 2.0));
}

std::vector<Gate> lower_direct(const Gate& g) {
  const int a = g.targets[0];
  const int b = g.targets[1];
  const double t = g.theta;
  switch (g.kind) {
    case GateKind::X:
      return {Gate::rx(a, kPi)};
    case GateKind::H:
      return {Gate::ry(a, kPi / 2), Gate::rx(a, kPi)};
    case GateKind::P:
      return {Gate::rz(a, t)};
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::ZZ:
      return {g};
    case GateKind::CP:
      // |11><11| = (1 - Z_a - Z_b + Z_a Z_b) / 4
      return {Gate::rz(a, t / 2), Gate::rz(b, t / 2), Gate::zz(a, b, -t / 2)};
    case GateKind::CX:
      // CZ conjugated by a quarter turn about Y on the target.
      return {Gate::ry(b, -kPi / 2), Gate::rz(a, kPi / 2), Gate::rz(b, kPi / 2), Gate::zz(a, b, -kPi / 2),
              Gate::ry(b, kPi / 2)};
    case GateKind::SWAP:
      return {Gate::zz(a, b, kPi / 2), Gate::rx(a, kPi / 2), Gate::ry(b, kPi / 2),
              Gate::zz(a, b, kPi / 2), Gate::ry(a, kPi / 2), Gate::rx(b, kPi / 2),
              Gate::zz(a, b, kPi / 2), Gate::rx(a, kPi / 2), Gate::ry(b, kPi / 2)};
  }
  throw std::invalid_argument("unknown gate kind");
}

std::vector<Gate> lower_two_cx(const Gate& g) {
  const int a = g.targets[0];
  const int b = g.targets[1];
  const double t = g.theta;
  std::vector<Gate> out;
  switch (g.kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::P:
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
      emit_euler(g, out);
      return out;
    case GateKind::CP:
      emit_euler(Gate::p(a, t / 2), out);
      out.push_back(Gate::cx(a, b));
      emit_euler(Gate::p(b, -t / 2), out);
      out.push_back(Gate::cx(a, b));
      emit_euler(Gate::p(b, t / 2), out);
      return out;
    case GateKind::CX:
      return {g};
    case GateKind::ZZ:
      out.push_back(Gate::cx(a, b));
      emit_euler(Gate::rz(b, t), out);
      out.push_back(Gate::cx(a, b));
      return out;
    case GateKind::SWAP:
      return {Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)};
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace

bool GateSetProfile::is_native(GateKind kind) const {
  return kind == native_2q || std::find(native_1q.begin(), native_1q.end(), kind) != native_1q.end();
}

void validate(const GateSetProfile& profile) {
  if (profile.native_2q != GateKind::ZZ && profile.native_2q != GateKind::CX) {
    throw std::invalid_argument("native two-qubit gate must be ZZ or CX");
  }
  const bool direct = profile.cp_strategy == CpStrategy::DirectEntangler;
  if (direct != (profile.native_2q == GateKind::ZZ)) {
    throw std::invalid_argument("DirectEntangler requires ZZ and TwoCX requires CX");
  }
  for (GateKind k : profile.native_1q) {
    if (arity(k) != 1) throw std::invalid_argument("native_1q lists a two-qubit kind");
  }
}

GateSetProfile efficient_profile() {
  return {"efficient", {GateKind::RX, GateKind::RY, GateKind::RZ}, GateKind::ZZ, CpStrategy::DirectEntangler};
}

GateSetProfile redundant_profile() {
  return {"redundant", {GateKind::RZ, GateKind::RY}, GateKind::CX, CpStrategy::TwoCX};
}

GateSetProfile profile_by_name(std::string_view name) {
  if (name == "efficient") return efficient_profile();
  if (name == "redundant") return redundant_profile();
  throw std::invalid_argument("unknown gate-set profile '" + std::string(name) + "'");
}

TranspileResult transpile(const Circuit& c, const GateSetProfile& profile) {
  validate(profile);
  Circuit out(c.width());
  double phase = 0.0;
  for (const Gate& g : c.gates()) {
    std::vector<Gate> lowered =
        profile.cp_strategy == CpStrategy::DirectEntangler ? lower_direct(g) : lower_two_cx(g);
    phase += relative_phase(g, lowered);
    for (const Gate& l : lowered) {
      if (!profile.is_native(l.kind)) throw std::logic_error("lowering produced a non-native gate");
      out.add(l);
    }
  }
  if (c.metadata()) out.set_metadata(*c.metadata());
  const double wrapped = std::remainder(phase, 2.0 * kPi);
  TranspileResult r{std::move(out), {}, census(c), wrapped};
  r.census = census(r.circuit);
  return r;
}

double verify_equivalence(const Circuit& a, const Circuit& b) {
  if (a.width() != b.width()) throw std::invalid_argument("equivalence check needs equal widths");
  if (a.width() > kMaxEquivalenceQubits) {
    throw std::invalid_argument("equivalence oracle limited to " + std::to_string(kMaxEquivalenceQubits) + " qubits");
  }
  const int w = a.width();
  double worst = 1.0;
  SplitMix64 rng(0xE9B1A7ULL);
  for (int trial = 0; trial < 9; ++trial) {
    Circuit prep(w);
    if (trial > 0) {
      for (int q = 0; q < w; ++q) {
        prep.add(Gate::ry(q, kPi * rng.uniform()));
        prep.add(Gate::rz(q, 2.0 * kPi * rng.uniform()));
      }
    }
    StateVector sa = run_statevector(prep);
    StateVector sb = sa;
    sa.apply(a);
    sb.apply(b);
    worst = std::min(worst, std::norm(sa.inner(sb)));
  }
  return worst;
}

bool check_gate_limit(const GateCensus& c, std::int64_t limit) { return c.total <= limit; }

std::int64_t gate_limit_between(const GateSetProfile& profile, int accept_qubits, int reject_qubits) {
  if (accept_qubits >= reject_qubits) throw std::invalid_argument("accept width must be below reject width");
  const std::uint64_t all_ones = (std::uint64_t{1} << accept_qubits) - 1;
  const auto largest = transpile(build_qft_benchmark(accept_qubits, all_ones), profile).census.total;
  const auto smallest = transpile(build_qft_benchmark(reject_qubits, 0), profile).census.total;
  if (largest >= smallest) throw std::logic_error("gate totals do not separate the two widths");
  return (largest + smallest) / 2;
}

std::int64_t default_aws_gate_limit() {
  static const std::int64_t limit = gate_limit_between(redundant_profile(), 16, 18);
  return limit;
}

}  // namespace qbench
