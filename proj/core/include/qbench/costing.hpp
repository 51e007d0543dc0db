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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "qbench/circuit.hpp"

namespace qbench {

/// US dollars as an exact count of micro-dollars. Rounding happens only
/// when rendering (half-up to cents).
class Money {
 public:
  constexpr Money() = default;
  static constexpr Money from_micros(std::int64_t micros) { return Money(micros); }
  static constexpr Money from_cents(std::int64_t cents) { return Money(cents * 10'000); }
  /// Parses "12.42", "$0.00022", "-3". At most six fractional digits.
  static Money parse(std::string_view text);

  constexpr std::int64_t micros() const { return micros_; }
  /// Cents after half-up rounding (away from zero for negatives).
  std::int64_t rounded_cents() const;
  /// "1234.57" (no currency sign).
  std::string to_string() const;
  double to_double() const { return static_cast<double>(micros_) / 1e6; }

  constexpr Money& operator+=(Money o) {
    micros_ += o.micros_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    micros_ -= o.micros_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return a += b; }
  friend constexpr Money operator-(Money a, Money b) { return a -= b; }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money(a.micros_ * k); }
  friend constexpr auto operator<=>(const Money&, const Money&) = default;

 private:
  constexpr explicit Money(std::int64_t micros) : micros_(micros) {}
  std::int64_t micros_ = 0;
};

/// Gate-priced billing with a per-circuit floor (IonQ through Azure).
struct AzureIonQPricing {
  Money per_1q_gate;
  Money per_2q_gate;
  Money min_plain;
  Money min_mitigated;
};

/// Subscription credits converted at a fixed dollar rate per credit.
struct QuantinuumHqcPricing {
  Money usd_per_hqc;
  bool is_emulator = false;
};

/// Per-task plus per-shot billing (AWS Braket on-demand).
struct AwsPerShotPricing {
  Money per_task;
  Money per_shot;
};

/// No charge (e.g. free vendor simulators).
struct FreePricing {};

using CostModel = std::variant<AzureIonQPricing, QuantinuumHqcPricing, AwsPerShotPricing, FreePricing>;

void validate(const CostModel& model);

/// Exact HQC count in units of 1/5000 credit.
class HqcCredits {
 public:
  static constexpr std::int64_t kDenominator = 5000;

  constexpr HqcCredits() = default;
  static constexpr HqcCredits from_fraction(std::int64_t numerator) { return HqcCredits(numerator); }
  /// Parses a decimal credit count such as "233.8".
  static HqcCredits parse(std::string_view text);

  constexpr std::int64_t numerator() const { return numerator_; }
  double value() const { return static_cast<double>(numerator_) / kDenominator; }
  /// One decimal place, half-up.
  std::string to_string() const;

  friend constexpr auto operator<=>(const HqcCredits&, const HqcCredits&) = default;

 private:
  constexpr explicit HqcCredits(std::int64_t n) : numerator_(n) {}
  std::int64_t numerator_ = 0;
};

/// max((n_1q * p1 + n_2q * p2) * shots, floor); the floor depends on mitigation.
Money cost_azure_ionq(const GateCensus& census, std::int64_t shots, bool error_mitigation,
                      const AzureIonQPricing& model);

/// 5 + C * (n_1q + n_2q + 5N) / 5000.
HqcCredits hqc(const GateCensus& census, std::int64_t shots, std::int64_t prep_measure_ops);

/// credits * rate, rounded half-up to the micro-dollar.
Money cost_quantinuum(const HqcCredits& credits, const QuantinuumHqcPricing& model);

/// tasks * per_task + shots * per_shot.
Money cost_aws(std::int64_t tasks, std::int64_t shots, const AwsPerShotPricing& model);

/// Price of one executed job. For HQC billing N is taken as the circuit width.
Money job_cost(const CostModel& model, const GateCensus& census, std::int64_t shots, int width,
               bool error_mitigation = false);

/// Published list prices.
namespace prices {
AzureIonQPricing azure_ionq_aria();
QuantinuumHqcPricing quantinuum_hardware();
QuantinuumHqcPricing quantinuum_emulator();
AwsPerShotPricing aws_ionq_aria();
AwsPerShotPricing aws_ionq_forte();
AwsPerShotPricing aws_iqm_garnet();
}  // namespace prices

}  // namespace qbench
