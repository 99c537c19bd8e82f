// Copyright 2026 The softcover Authors
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

#ifndef SOFTCOVER_TYPES_HPP
#define SOFTCOVER_TYPES_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/errors.hpp"

namespace softcover {

using BigInt = boost::multiprecision::cpp_int;
using Symbol = std::uint32_t;

/// Empirical distribution of a sequence over an alphabet of the given size, exact.
inline std::vector<Rational> empirical_distribution(std::span<const Symbol> x, std::size_t alphabet) {
  if (x.empty()) throw ValidationError("empirical_distribution: empty sequence");
  std::vector<std::int64_t> counts(alphabet, 0);
  for (Symbol s : x) {
    if (s >= alphabet) throw ValidationError("empirical_distribution: symbol outside alphabet");
    ++counts[s];
  }
  std::vector<Rational> out;
  out.reserve(alphabet);
  const auto n = static_cast<std::int64_t>(x.size());
  for (std::int64_t c : counts) out.emplace_back(c, n);
  return out;
}

/// Rounds a floating prior to rationals (denominator <= 1e6, tolerance 1e-9).
inline std::vector<Rational> rationalize(std::span<const double> p) {
  std::vector<Rational> out;
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto q = approximate_rational(p[x]);
    if (!q) {
      std::ostringstream os;
      os << "prior entry for letter " << x << " (" << p[x] << ") is not a rational with denominator <= "
         << kMaxPriorDenominator;
      throw ValidationError(os.str());
    }
    out.push_back(*q);
  }
  return out;
}

/// Letter counts n p(x); rejects compositions that are not integral.
inline std::vector<std::int64_t> composition_counts(std::span<const Rational> p, std::int64_t n) {
  if (n < 1) throw ValidationError("composition: n must be positive");
  std::vector<std::int64_t> counts;
  Rational total(0);
  for (std::size_t x = 0; x < p.size(); ++x) {
    const Rational c = p[x] * Rational(n);
    if (c.denominator() != 1 || c < Rational(0)) {
      std::ostringstream os;
      os << "composition: n * p(" << x << ") = " << n << " * " << p[x].numerator() << "/" << p[x].denominator()
         << " is not a non-negative integer";
      throw ValidationError(os.str());
    }
    counts.push_back(c.numerator());
    total += p[x];
  }
  if (total != Rational(1)) throw ValidationError("composition: prior does not sum to 1");
  return counts;
}

inline bool composition_is_integral(std::span<const Rational> p, std::int64_t n) {
  for (const Rational& q : p)
    if ((q * Rational(n)).denominator() != 1) return false;
  return true;
}

/// |T_p^n| = n! / prod_x (n p(x))!.
inline BigInt type_class_size(std::span<const Rational> p, std::int64_t n) {
  const auto counts = composition_counts(p, n);
  BigInt out = 1;
  std::int64_t placed = 0;
  // Build the multinomial as a product of binomials, each exact.
  for (std::int64_t c : counts) {
    for (std::int64_t k = 1; k <= c; ++k) {
      out *= placed + k;
      out /= k;
    }
    placed += c;
  }
  return out;
}

inline BigInt type_class_size(std::span<const double> p, std::int64_t n) {
  const auto q = rationalize(p);
  return type_class_size(q, n);
}

struct TypeClassProbability {
  double exact = 0.0;      // p^{(x)n}(T_p^n)
  double log_exact = 0.0;  // natural log of exact, accurate when exact underflows
  double stirling_lo = 0.0;
  double stirling_hi = 0.0;
};

/// Exact probability of the type class and the Stirling-type bracket
/// e^{-xi |supp| / (12 ln 2)} (2 pi n)^{-(|supp|-1)/2} sqrt(prod 1/p(x)) at xi = 1 and xi = 0.
inline TypeClassProbability type_class_probability(std::span<const Rational> p, std::int64_t n) {
  const auto counts = composition_counts(p, n);
  const BigInt size = type_class_size(p, n);
  double log_size = 0.0;
  if (size < BigInt(1) << 1000) {
    log_size = std::log(size.convert_to<double>());
  } else {
    log_size = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::int64_t c : counts) log_size -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  double log_prob = log_size;
  double support = 0.0;
  double log_inv_prod = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (counts[x] == 0) continue;
    const double px = to_double(p[x]);
    log_prob += static_cast<double>(counts[x]) * std::log(px);
    support += 1.0;
    log_inv_prod -= std::log(px);
  }
  const double log_hi = -(support - 1.0) / 2.0 * std::log(2.0 * std::numbers::pi * static_cast<double>(n)) +
                        0.5 * log_inv_prod;
  const double log_lo = log_hi - support / (12.0 * std::numbers::ln2);
  return {std::exp(log_prob), log_prob, std::exp(log_lo), std::exp(log_hi)};
}

inline TypeClassProbability type_class_probability(std::span<const double> p, std::int64_t n) {
  const auto q = rationalize(p);
  return type_class_probability(q, n);
}

/// K_p = |supp|/(12 ln 2) + (|supp|-1)/2 ln(2 pi) + (1/2) sum_x ln p(x) + ln 4.
inline double type_constant_k(std::span<const double> p) {
  double support = 0.0, half_log = 0.0;
  for (double v : p)
    if (v > 0.0) {
      support += 1.0;
      half_log += 0.5 * std::log(v);
    }
  return support / (12.0 * std::numbers::ln2) + (support - 1.0) / 2.0 * std::log(2.0 * std::numbers::pi) +
         half_log + std::log(4.0);
}

}  // namespace softcover

#endif  // SOFTCOVER_TYPES_HPP
