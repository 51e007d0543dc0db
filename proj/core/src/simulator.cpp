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

#include "qbench/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qbench/random.hpp"

namespace qbench {

namespace {

using C = Amplitude;
constexpr C kI{0.0, 1.0};

std::size_t bit(int q) { return std::size_t{1} << q; }

// Draws `shots` indices from a cumulative table.
class CdfSampler {
 public:
  explicit CdfSampler(const OutcomeTable& table) : table_(table) {
    cdf_.reserve(table.entries.size());
    double acc = 0.0;
    for (const auto& [index, p] : table.entries) {
      acc += p;
      cdf_.push_back(acc);
    }
    total_ = acc;
    if (!(total_ > 0.0)) throw std::invalid_argument("outcome table has no probability mass");
  }

  std::uint64_t draw(SplitMix64& rng) const {
    const double u = rng.uniform() * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return table_.entries[static_cast<std::size_t>(it - cdf_.begin())].first;
  }

 private:
  const OutcomeTable& table_;
  std::vector<double> cdf_;
  double total_ = 0.0;
};

void check_shots(std::int64_t shots) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
}

void apply_pauli(StateVector& sv, int q, int which) {
  switch (which) {
    case 1:
      sv.apply(Gate::x(q));
      break;
    case 2:  // Y = iXZ
      sv.apply(Gate::rz(q, std::numbers::pi));
      sv.apply(Gate::x(q));
      break;
    case 3:
      sv.apply(Gate::rz(q, std::numbers::pi));
      break;
    default:
      break;
  }
}

}  // namespace

StateVector::StateVector(int width) : width_(width) {
  if (width < 1 || width > kMaxStatevectorQubits) {
    throw std::invalid_argument("statevector width must be in [1, " + std::to_string(kMaxStatevectorQubits) +
                                "], got " + std::to_string(width));
  }
  amps_.assign(bit(width), C{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::apply_1q(int q, const C (&m)[2][2]) {
  const std::size_t stride = bit(q);
  const std::size_t n = amps_.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const C a0 = amps_[i];
      const C a1 = amps_[i + stride];
      amps_[i] = m[0][0] * a0 + m[0][1] * a1;
      amps_[i + stride] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

void StateVector::apply(const Gate& g) {
  for (int q : g.qubits()) {
    if (q < 0 || q >= width_) throw std::invalid_argument("gate target outside statevector width");
  }
  const double t = g.theta;
  const std::size_t n = amps_.size();
  switch (g.kind) {
    case GateKind::X: {
      const std::size_t m = bit(g.targets[0]);
      for (std::size_t i = 0; i < n; ++i) {
        if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
      }
      return;
    }
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      const C m[2][2] = {{r, r}, {r, -r}};
      apply_1q(g.targets[0], m);
      return;
    }
    case GateKind::P: {
      const std::size_t m = bit(g.targets[0]);
      const C ph = std::polar(1.0, t);
      for (std::size_t i = 0; i < n; ++i) {
        if (i & m) amps_[i] *= ph;
      }
      return;
    }
    case GateKind::RZ: {
      const std::size_t m = bit(g.targets[0]);
      const C lo = std::polar(1.0, -t / 2);
      const C hi = std::polar(1.0, t / 2);
      for (std::size_t i = 0; i < n; ++i) amps_[i] *= (i & m) ? hi : lo;
      return;
    }
    case GateKind::RX: {
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      const C m[2][2] = {{c, -kI * s}, {-kI * s, c}};
      apply_1q(g.targets[0], m);
      return;
    }
    case GateKind::RY: {
      const double c = std::cos(t / 2), s = std::sin(t / 2);
      const C m[2][2] = {{c, -s}, {s, c}};
      apply_1q(g.targets[0], m);
      return;
    }
    case GateKind::CP: {
      const std::size_t m = bit(g.targets[0]) | bit(g.targets[1]);
      const C ph = std::polar(1.0, t);
      for (std::size_t i = 0; i < n; ++i) {
        if ((i & m) == m) amps_[i] *= ph;
      }
      return;
    }
    case GateKind::CX: {
      const std::size_t c = bit(g.targets[0]);
      const std::size_t x = bit(g.targets[1]);
      for (std::size_t i = 0; i < n; ++i) {
        if ((i & c) && !(i & x)) std::swap(amps_[i], amps_[i | x]);
      }
      return;
    }
    case GateKind::ZZ: {
      const std::size_t a = bit(g.targets[0]);
      const std::size_t b = bit(g.targets[1]);
      const C same = std::polar(1.0, -t / 2);
      const C diff = std::polar(1.0, t / 2);
      for (std::size_t i = 0; i < n; ++i) amps_[i] *= (((i & a) != 0) == ((i & b) != 0)) ? same : diff;
      return;
    }
    case GateKind::SWAP: {
      const std::size_t a = bit(g.targets[0]);
      const std::size_t b = bit(g.targets[1]);
      for (std::size_t i = 0; i < n; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i & ~a) | b]);
      }
      return;
    }
  }
  throw std::invalid_argument("unknown gate kind");
}

void StateVector::apply(const Circuit& c) {
  if (c.width() > width_) throw std::invalid_argument("circuit wider than statevector");
  for (const Gate& g : c.gates()) apply(g);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const C& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const C& a) { return std::norm(a); });
  return p;
}

Amplitude StateVector::inner(const StateVector& other) const {
  if (other.width_ != width_) throw std::invalid_argument("inner product of different widths");
  C s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

std::string CountsDistribution::to_json() const {
  nlohmann::json j;
  j["counts"] = counts;
  j["shots"] = shots;
  return j.dump();
}

CountsDistribution CountsDistribution::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    CountsDistribution d;
    d.counts = j.at("counts").get<std::map<std::string, std::int64_t>>();
    d.shots = j.at("shots").get<std::int64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed counts JSON: ") + e.what());
  }
}

OutcomeTable OutcomeTable::from_statevector(const StateVector& sv) {
  OutcomeTable t;
  t.width = sv.width();
  const auto probs = sv.probabilities();
  t.entries.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) t.entries.emplace_back(i, probs[i]);
  }
  return t;
}

OutcomeTable OutcomeTable::delta(int width, std::uint64_t index) {
  OutcomeTable t;
  t.width = width;
  t.entries.emplace_back(index, 1.0);
  return t;
}

void validate(const NoiseSpec& noise) {
  if (const auto* g = std::get_if<GlobalDepolarizing>(&noise)) {
    if (!(g->f_2qg > 0.0 && g->f_2qg <= 1.0)) throw std::invalid_argument("f_2qg must be in (0, 1]");
  } else if (const auto* p = std::get_if<PauliTrajectory>(&noise)) {
    if (!(p->p >= 0.0 && p->p < 1.0)) throw std::invalid_argument("trajectory error probability must be in [0, 1)");
  }
}

std::string describe(const NoiseSpec& noise) {
  std::ostringstream os;
  if (const auto* g = std::get_if<GlobalDepolarizing>(&noise)) {
    os << "depolarizing " << g->f_2qg;
  } else if (const auto* p = std::get_if<PauliTrajectory>(&noise)) {
    os << "trajectory " << p->p;
  } else {
    os << "none";
  }
  return os.str();
}

StateVector run_statevector(const Circuit& c) {
  StateVector sv(c.width());
  sv.apply(c);
  return sv;
}

CountsDistribution sample(const OutcomeTable& table, std::int64_t shots, std::uint64_t seed) {
  check_shots(shots);
  CdfSampler sampler(table);
  SplitMix64 rng(seed);
  std::map<std::uint64_t, std::int64_t> hits;
  for (std::int64_t s = 0; s < shots; ++s) ++hits[sampler.draw(rng)];
  CountsDistribution out;
  out.shots = shots;
  for (const auto& [k, v] : hits) out.counts[to_bitstring(k, table.width)] = v;
  return out;
}

CountsDistribution sample(const StateVector& sv, std::int64_t shots, std::uint64_t seed) {
  return sample(OutcomeTable::from_statevector(sv), shots, seed);
}

CountsDistribution sample_depolarized(const OutcomeTable& ideal, double success_probability, std::int64_t shots,
                                      std::uint64_t seed) {
  check_shots(shots);
  if (!(success_probability >= 0.0 && success_probability <= 1.0)) {
    throw std::invalid_argument("success probability must be in [0, 1]");
  }
  CdfSampler sampler(ideal);
  SplitMix64 rng(seed);
  const std::uint64_t dim = std::uint64_t{1} << ideal.width;
  std::map<std::uint64_t, std::int64_t> hits;
  for (std::int64_t s = 0; s < shots; ++s) {
    if (rng.uniform() < success_probability) {
      ++hits[sampler.draw(rng)];
    } else {
      ++hits[rng.below(dim)];
    }
  }
  CountsDistribution out;
  out.shots = shots;
  for (const auto& [k, v] : hits) out.counts[to_bitstring(k, ideal.width)] = v;
  return out;
}

CountsDistribution run_noisy(const Circuit& c, const NoiseSpec& noise, std::int64_t shots, std::uint64_t seed) {
  validate(noise);
  check_shots(shots);
  const StateVector ideal_sv = run_statevector(c);
  const OutcomeTable ideal = OutcomeTable::from_statevector(ideal_sv);

  if (std::holds_alternative<NoNoise>(noise)) return sample(ideal, shots, seed);

  if (const auto* g = std::get_if<GlobalDepolarizing>(&noise)) {
    const double f = std::pow(g->f_2qg, static_cast<double>(census(c).n_2q));
    return sample_depolarized(ideal, f, shots, seed);
  }

  const double p = std::get<PauliTrajectory>(noise).p;
  if (p == 0.0) return sample(ideal, shots, seed);

  std::vector<std::size_t> two_qubit_sites;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    if (c.gates()[i].arity() == 2) two_qubit_sites.push_back(i);
  }

  CdfSampler ideal_sampler(ideal);
  std::map<std::uint64_t, std::int64_t> hits;
  std::vector<std::pair<std::size_t, int>> faults;  // (gate index, pauli pair 1..15)
  for (std::int64_t s = 0; s < shots; ++s) {
    SplitMix64 rng(derive_seed({seed, static_cast<std::uint64_t>(s)}));
    faults.clear();
    for (std::size_t site : two_qubit_sites) {
      if (rng.uniform() < p) faults.emplace_back(site, static_cast<int>(1 + rng.below(15)));
    }
    if (faults.empty()) {
      ++hits[ideal_sampler.draw(rng)];
      continue;
    }
    StateVector sv(c.width());
    std::size_t next_fault = 0;
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
      const Gate& g = c.gates()[i];
      sv.apply(g);
      while (next_fault < faults.size() && faults[next_fault].first == i) {
        const int which = faults[next_fault].second;
        apply_pauli(sv, g.targets[0], which / 4);
        apply_pauli(sv, g.targets[1], which % 4);
        ++next_fault;
      }
    }
    const OutcomeTable shot_table = OutcomeTable::from_statevector(sv);
    ++hits[CdfSampler(shot_table).draw(rng)];
  }
  CountsDistribution out;
  out.shots = shots;
  for (const auto& [k, v] : hits) out.counts[to_bitstring(k, c.width())] = v;
  return out;
}

}  // namespace qbench
