/*
  Copyright 2026 The sensorco Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SENSORCO_MONEY_HPP
#define SENSORCO_MONEY_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace sensorco {

/// Exact amount in USD cents.
struct Money {
  std::int64_t cents = 0;

  constexpr Money() = default;
  constexpr explicit Money(std::int64_t c) : cents(c) {}

  static constexpr Money from_dollars(std::int64_t dollars) { return Money{dollars * 100}; }

  /// Round a real cent amount half away from zero.
  static Money round(double cents_real) {
    return Money{static_cast<std::int64_t>(std::llround(cents_real))};
  }
  static Money truncate(double cents_real) {
    return Money{static_cast<std::int64_t>(std::trunc(cents_real))};
  }
  /// Floor, tolerant of binary representation error (0.29 * 100 -> 29).
  static Money floor(double cents_real) {
    return Money{static_cast<std::int64_t>(std::floor(cents_real + 1e-6))};
  }

  constexpr double as_real() const { return static_cast<double>(cents); }
  constexpr double dollars() const { return static_cast<double>(cents) / 100.0; }

  constexpr Money operator-() const { return Money{-cents}; }
  constexpr Money& operator+=(Money o) { cents += o.cents; return *this; }
  constexpr Money& operator-=(Money o) { cents -= o.cents; return *this; }
  friend constexpr Money operator+(Money a, Money b) { return Money{a.cents + b.cents}; }
  friend constexpr Money operator-(Money a, Money b) { return Money{a.cents - b.cents}; }
  friend constexpr Money operator*(Money a, std::int64_t k) { return Money{a.cents * k}; }
  friend constexpr Money operator*(std::int64_t k, Money a) { return Money{a.cents * k}; }
  friend constexpr auto operator<=>(Money, Money) = default;

  /// "$1,234.56" without separators: "$1234.56", "-$5.00".
  std::string str() const {
    std::int64_t a = cents < 0 ? -cents : cents;
    std::string frac = std::to_string(a % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return (cents < 0 ? "-$" : "$") + std::to_string(a / 100) + "." + frac;
  }
};

constexpr Money operator""_usd(unsigned long long dollars) {
  return Money{static_cast<std::int64_t>(dollars) * 100};
}
constexpr Money operator""_cents(unsigned long long c) {
  return Money{static_cast<std::int64_t>(c)};
}

} // namespace sensorco

#endif
