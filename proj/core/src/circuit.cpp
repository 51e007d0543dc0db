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

#include "qbench/circuit.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qbench/random.hpp"

namespace qbench {

namespace {

constexpr std::array<std::string_view, 10> kGateNames = {"x", "h", "p", "rz", "rx", "ry", "cp", "cx", "zz", "swap"};

void check_width(int qubits) {
  if (qubits < 1 || qubits > kMaxBenchmarkQubits) {
    throw std::invalid_argument("benchmark width must be in [1, " + std::to_string(kMaxBenchmarkQubits) +
                                "], got " + std::to_string(qubits));
  }
}

void check_input(int qubits, std::uint64_t input) {
  if (input >= (std::uint64_t{1} << qubits)) {
    throw std::invalid_argument("benchmark input " + std::to_string(input) + " out of range for " +
                                std::to_string(qubits) + " qubits");
  }
}

}  // namespace

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::CP:
    case GateKind::CX:
    case GateKind::ZZ:
    case GateKind::SWAP:
      return 2;
    default:
      return 1;
  }
}

bool has_angle(GateKind kind) {
  switch (kind) {
    case GateKind::P:
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::CP:
    case GateKind::ZZ:
      return true;
    default:
      return false;
  }
}

std::string_view gate_name(GateKind kind) { return kGateNames[static_cast<std::size_t>(kind)]; }

GateKind gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGateNames.size(); ++i) {
    if (kGateNames[i] == name) return static_cast<GateKind>(i);
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (has_angle(kind)) g.theta = -theta;
  return g;
}

bool operator==(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || a.theta != b.theta) return false;
  for (int i = 0; i < a.arity(); ++i) {
    if (a.targets[i] != b.targets[i]) return false;
  }
  return true;
}

Circuit::Circuit(int width) : width_(width) {
  if (width < 1) throw std::invalid_argument("circuit width must be positive");
}

Circuit& Circuit::add(const Gate& g) {
  for (int q : g.qubits()) {
    if (q < 0 || q >= width_) {
      throw std::invalid_argument("gate " + std::string(gate_name(g.kind)) + " targets qubit " + std::to_string(q) +
                                  " outside width " + std::to_string(width_));
    }
  }
  if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
    throw std::invalid_argument("two-qubit gate " + std::string(gate_name(g.kind)) + " needs distinct qubits");
  }
  if (!std::isfinite(g.theta)) throw std::invalid_argument("gate angle must be finite");
  Gate stored = g;
  if (stored.arity() == 1) stored.targets[1] = stored.targets[0];
  if (!has_angle(stored.kind)) stored.theta = 0.0;
  gates_.push_back(stored);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.width_ > width_) throw std::invalid_argument("appended circuit is wider than target");
  for (const Gate& g : other.gates_) add(g);
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit out(width_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

std::string Circuit::to_json() const {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : gates_) {
    nlohmann::json j;
    j["kind"] = gate_name(g.kind);
    j["targets"] = std::vector<int>(g.qubits().begin(), g.qubits().end());
    if (has_angle(g.kind)) j["theta"] = g.theta;
    gates.push_back(std::move(j));
  }
  nlohmann::json meta = nlohmann::json::object();
  if (metadata_) {
    meta["qubits"] = metadata_->qubits;
    meta["input"] = metadata_->input;
    if (metadata_->seed) meta["seed"] = *metadata_->seed;
  }
  nlohmann::json doc;
  doc["width"] = width_;
  doc["gates"] = std::move(gates);
  doc["metadata"] = std::move(meta);
  return doc.dump();
}

Circuit Circuit::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    Circuit c(doc.at("width").get<int>());
    for (const auto& j : doc.at("gates")) {
      Gate g;
      g.kind = gate_kind_from_name(j.at("kind").get<std::string>());
      const auto targets = j.at("targets").get<std::vector<int>>();
      if (static_cast<int>(targets.size()) != arity(g.kind)) {
        throw std::invalid_argument("gate " + std::string(gate_name(g.kind)) + " has wrong number of targets");
      }
      g.targets = {targets[0], targets.back()};
      if (has_angle(g.kind)) g.theta = j.at("theta").get<double>();
      c.add(g);
    }
    if (auto it = doc.find("metadata"); it != doc.end() && it->contains("qubits")) {
      BenchmarkMetadata m;
      m.qubits = it->at("qubits").get<int>();
      m.input = it->at("input").get<std::uint64_t>();
      if (it->contains("seed")) m.seed = it->at("seed").get<std::uint64_t>();
      c.set_metadata(m);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit JSON: ") + e.what());
  }
}

Circuit qft_circuit(int width) {
  Circuit c(width);
  for (int j = width - 1; j >= 0; --j) {
    c.add(Gate::h(j));
    for (int k = j - 1; k >= 0; --k) {
      c.add(Gate::cp(j, k, std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k))));
    }
  }
  for (int i = 0; i < width / 2; ++i) c.add(Gate::swap(i, width - 1 - i));
  return c;
}

BenchmarkLayout benchmark_layout(int qubits, std::uint64_t input) {
  check_width(qubits);
  check_input(qubits, input);
  const auto q = static_cast<std::size_t>(qubits);
  const std::size_t qft = q + q * (q - 1) / 2 + q / 2;
  BenchmarkLayout l;
  l.prepare_end = static_cast<std::size_t>(std::popcount(input));
  l.qft_end = l.prepare_end + qft;
  l.increment_end = l.qft_end + q;
  l.total = l.increment_end + qft;
  return l;
}

Circuit build_qft_benchmark(int qubits, std::uint64_t input) {
  check_width(qubits);
  check_input(qubits, input);
  Circuit c(qubits);
  for (int i = 0; i < qubits; ++i) {
    if ((input >> i) & 1U) c.add(Gate::x(i));
  }
  const Circuit qft = qft_circuit(qubits);
  c.append(qft);
  // Multiplying |k> by exp(2*pi*i*k/2^q) turns QFT|n> into QFT|n+1>.
  const double denom = std::ldexp(1.0, qubits);
  for (int i = 0; i < qubits; ++i) {
    c.add(Gate::p(i, 2.0 * std::numbers::pi * std::ldexp(1.0, i) / denom));
  }
  c.append(qft.inverse());
  c.set_metadata({qubits, input, std::nullopt});
  return c;
}

std::string to_bitstring(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1U) s[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return s;
}

std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) throw std::invalid_argument("bitstring length must be in [1, 64]");
  std::uint64_t v = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring contains non-binary character");
    v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return v;
}

std::string ideal_output(int qubits, std::uint64_t input) {
  if (qubits < 1 || qubits > 63) throw std::invalid_argument("width out of range");
  check_input(qubits, input);
  const std::uint64_t mask = (std::uint64_t{1} << qubits) - 1;
  return to_bitstring((input + 1) & mask, qubits);
}

GateCensus census(const Circuit& c) {
  GateCensus out;
  for (const Gate& g : c.gates()) {
    if (g.arity() == 1) {
      ++out.n_1q;
    } else {
      ++out.n_2q;
    }
  }
  out.total = out.n_1q + out.n_2q;
  return out;
}

std::uint64_t random_input(int qubits, std::uint64_t seed) {
  if (qubits < 1 || qubits > 63) throw std::invalid_argument("width out of range");
  SplitMix64 rng(derive_seed({0x51F7ULL, static_cast<std::uint64_t>(qubits), seed}));
  return rng.below(std::uint64_t{1} << qubits);
}

}  // namespace qbench
