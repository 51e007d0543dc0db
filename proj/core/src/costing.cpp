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

#include "qbench/costing.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace qbench {

namespace {

__extension__ typedef __int128 Wide;

// Rounds num/den half-up (away from zero on ties); den > 0.
std::int64_t div_round_half_up(Wide num, Wide den) {
  const bool negative = num < 0;
  if (negative) num = -num;
  Wide q = (2 * num + den) / (2 * den);
  if (q > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("money overflow");
  return static_cast<std::int64_t>(negative ? -q : q);
}

// Parses an optionally signed decimal into (value * 10^scale); throws when
// more than `scale` fractional digits are present.
Wide parse_scaled(std::string_view text, int scale, const char* what) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  Wide whole = 0;
  Wide frac = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (char ch : s) {
    if (ch == ',' && !seen_dot) continue;
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(text) + "'");
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(text) + "'");
    }
    any_digit = true;
    if (seen_dot) {
      if (++frac_digits > scale) {
        throw std::invalid_argument(std::string("too many decimals in ") + what + " '" + std::string(text) + "'");
      }
      frac = frac * 10 + (ch - '0');
    } else {
      whole = whole * 10 + (ch - '0');
      if (whole > Wide{1} << 80) throw std::overflow_error(std::string(what) + " too large");
    }
  }
  if (!any_digit) throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(text) + "'");
  for (int i = frac_digits; i < scale; ++i) frac *= 10;
  Wide pow10 = 1;
  for (int i = 0; i < scale; ++i) pow10 *= 10;
  const Wide v = whole * pow10 + frac;
  return negative ? -v : v;
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Money Money::parse(std::string_view text) {
  const Wide v = parse_scaled(text, 6, "money amount");
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("money overflow");
  }
  return Money(static_cast<std::int64_t>(v));
}

std::int64_t Money::rounded_cents() const { return div_round_half_up(micros_, 10'000); }

std::string Money::to_string() const {
  const std::int64_t cents = rounded_cents();
  const std::int64_t mag = std::llabs(cents);
  std::string frac = std::to_string(mag % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (cents < 0 ? "-" : "") + std::to_string(mag / 100) + "." + frac;
}

HqcCredits HqcCredits::parse(std::string_view text) {
  const Wide tenthousandths = parse_scaled(text, 4, "credit count");
  // 1/5000 = 2/10000
  if (tenthousandths % 2 != 0) throw std::invalid_argument("credit count is not a multiple of 1/5000");
  return HqcCredits(static_cast<std::int64_t>(tenthousandths / 2));
}

std::string HqcCredits::to_string() const {
  const std::int64_t tenths = div_round_half_up(Wide{numerator_} * 10, kDenominator);
  const std::int64_t mag = std::llabs(tenths);
  return (tenths < 0 ? "-" : "") + std::to_string(mag / 10) + "." + std::to_string(mag % 10);
}

void validate(const CostModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AzureIonQPricing>) {
          require(m.per_1q_gate.micros() >= 0 && m.per_2q_gate.micros() >= 0 && m.min_plain.micros() >= 0 &&
                      m.min_mitigated.micros() >= 0,
                  "Azure IonQ prices must be non-negative");
        } else if constexpr (std::is_same_v<T, QuantinuumHqcPricing>) {
          require(m.usd_per_hqc.micros() >= 0, "HQC rate must be non-negative");
        } else if constexpr (std::is_same_v<T, AwsPerShotPricing>) {
          require(m.per_task.micros() >= 0 && m.per_shot.micros() >= 0, "AWS prices must be non-negative");
        }
      },
      model);
}

Money cost_azure_ionq(const GateCensus& census, std::int64_t shots, bool error_mitigation,
                      const AzureIonQPricing& model) {
  require(shots >= 1, "shots must be >= 1");
  const Wide per_shot = Wide{census.n_1q} * model.per_1q_gate.micros() + Wide{census.n_2q} * model.per_2q_gate.micros();
  const Wide raw = per_shot * shots;
  if (raw > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("money overflow");
  const Money total = Money::from_micros(static_cast<std::int64_t>(raw));
  const Money floor = error_mitigation ? model.min_mitigated : model.min_plain;
  return total < floor ? floor : total;
}

HqcCredits hqc(const GateCensus& census, std::int64_t shots, std::int64_t prep_measure_ops) {
  require(shots >= 1, "shots must be >= 1");
  require(prep_measure_ops >= 0, "state preparation / measurement count must be >= 0");
  const Wide variable = Wide{shots} * (census.n_1q + census.n_2q + 5 * Wide{prep_measure_ops});
  const Wide numerator = 5 * Wide{HqcCredits::kDenominator} + variable;
  if (numerator > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("credit overflow");
  return HqcCredits::from_fraction(static_cast<std::int64_t>(numerator));
}

Money cost_quantinuum(const HqcCredits& credits, const QuantinuumHqcPricing& model) {
  require(credits.numerator() >= 0, "credits must be >= 0");
  return Money::from_micros(
      div_round_half_up(Wide{credits.numerator()} * model.usd_per_hqc.micros(), HqcCredits::kDenominator));
}

Money cost_aws(std::int64_t tasks, std::int64_t shots, const AwsPerShotPricing& model) {
  require(tasks >= 1, "tasks must be >= 1");
  require(shots >= 1, "shots must be >= 1");
  return model.per_task * tasks + model.per_shot * shots;
}

Money job_cost(const CostModel& model, const GateCensus& census, std::int64_t shots, int width,
               bool error_mitigation) {
  return std::visit(
      [&](const auto& m) -> Money {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AzureIonQPricing>) {
          return cost_azure_ionq(census, shots, error_mitigation, m);
        } else if constexpr (std::is_same_v<T, QuantinuumHqcPricing>) {
          return cost_quantinuum(hqc(census, shots, width), m);
        } else if constexpr (std::is_same_v<T, AwsPerShotPricing>) {
          return cost_aws(1, shots, m);
        } else {
          return Money{};
        }
      },
      model);
}

namespace prices {

AzureIonQPricing azure_ionq_aria() {
  return {Money::parse("0.00022"), Money::parse("0.000975"), Money::parse("12.42"), Money::parse("97.50")};
}

// $166,500 / 17,000 credits and $18,500 / 170,000 credits, at four decimals.
QuantinuumHqcPricing quantinuum_hardware() { return {Money::parse("9.7941"), false}; }
QuantinuumHqcPricing quantinuum_emulator() { return {Money::parse("0.1088"), true}; }

AwsPerShotPricing aws_ionq_aria() { return {Money::parse("0.30"), Money::parse("0.03")}; }
AwsPerShotPricing aws_ionq_forte() { return {Money::parse("0.30"), Money::parse("0.08")}; }
AwsPerShotPricing aws_iqm_garnet() { return {Money::parse("0.30"), Money::parse("0.00145")}; }

}  // namespace prices

}  // namespace qbench
