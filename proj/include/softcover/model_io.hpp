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

#ifndef SOFTCOVER_MODEL_IO_HPP
#define SOFTCOVER_MODEL_IO_HPP

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"

namespace softcover {

inline constexpr double kModelPriorTolerance = 1e-9;

struct ModelFile {
  CqSource source;
  nlohmann::json metadata;
};

namespace detail {

inline std::optional<Rational> parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used != s.size()) return std::nullopt;
      return Rational(v);
    }
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    const long long a = std::stoll(num, &used);
    if (used != num.size()) return std::nullopt;
    const long long b = std::stoll(den, &used);
    if (used != den.size() || b <= 0) return std::nullopt;
    return Rational(a, b);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline Matrix parse_matrix(const nlohmann::json& j, std::size_t letter) {
  const auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "model: state " << letter << ": " << why;
    throw ValidationError(os.str());
  };
  if (!j.is_array() || j.empty()) fail("expected a non-empty array of rows");
  const auto d = static_cast<Eigen::Index>(j.size());
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) fail("matrix is not square");
    for (Eigen::Index c = 0; c < d; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        fail("entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

}  // namespace detail

/// Parses a model document:
///   {"alphabet": [...], "prior": ["1/2", 0.5, ...],
///    "states": [[[[re, im], ...], ...], ...], "metadata": {...}}
/// Priors given as fractions are exact. Decimal priors must sum to 1 within
/// 1e-9; they are kept exact when every entry has a rational form with
/// denominator <= 1e6 and those forms sum to 1, and renormalized otherwise.
inline ModelFile parse_model(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("model: top level must be an object");
  if (!doc.contains("prior") || !doc["prior"].is_array() || doc["prior"].empty())
    throw ValidationError("model: missing non-empty 'prior' array");
  if (!doc.contains("states") || !doc["states"].is_array()) throw ValidationError("model: missing 'states' array");
  const auto& jp = doc["prior"];
  const auto& js = doc["states"];
  if (jp.size() != js.size()) {
    std::ostringstream os;
    os << "model: " << jp.size() << " prior entries but " << js.size() << " states";
    throw ValidationError(os.str());
  }

  std::vector<std::string> labels;
  if (doc.contains("alphabet")) {
    if (!doc["alphabet"].is_array() || doc["alphabet"].size() != jp.size())
      throw ValidationError("model: 'alphabet' must list one label per letter");
    for (const auto& l : doc["alphabet"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }

  std::vector<double> prior;
  std::vector<Rational> exact;
  bool all_exact = true;
  for (std::size_t x = 0; x < jp.size(); ++x) {
    const auto& e = jp[x];
    std::optional<Rational> q;
    double v = 0.0;
    if (e.is_string()) {
      q = detail::parse_fraction(e.get<std::string>());
      if (!q) throw ValidationError("model: prior entry " + std::to_string(x) + " ('" + e.get<std::string>() +
                                    "') is not a fraction a/b");
      v = to_double(*q);
    } else if (e.is_number()) {
      v = e.get<double>();
      q = approximate_rational(v);
    } else {
      throw ValidationError("model: prior entry " + std::to_string(x) + " must be a number or a fraction string");
    }
    if (!(v >= 0.0)) throw ValidationError("model: prior entry " + std::to_string(x) + " is negative");
    prior.push_back(v);
    if (q) exact.push_back(*q);
    else all_exact = false;
  }
  double total = 0.0;
  for (double v : prior) total += v;
  if (std::abs(total - 1.0) > kModelPriorTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "model: prior sums to " << total << ", not 1 within " << kModelPriorTolerance;
    throw ValidationError(os.str());
  }

  std::vector<DensityOperator> states;
  for (std::size_t x = 0; x < js.size(); ++x) {
    try {
      states.emplace_back(detail::parse_matrix(js[x], x));
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      if (what.rfind("model:", 0) == 0) throw;
      throw ValidationError("model: state " + std::to_string(x) + ": " + what);
    }
  }

  Rational exact_total(0);
  for (const auto& q : exact) exact_total += q;
  ModelFile out{all_exact && exact_total == Rational(1)
                    ? CqSource(exact, std::move(states), labels)
                    : CqSource([&] {
                        for (double& v : prior) v /= total;
                        return prior;
                      }(),
                               std::move(states), labels),
                doc.value("metadata", nlohmann::json::object())};
  return out;
}

inline ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("model: cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("model: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_model(doc);
}

inline nlohmann::json model_to_json(const CqSource& cq) {
  nlohmann::json doc;
  nlohmann::json prior = nlohmann::json::array();
  if (cq.exact_prior()) {
    for (const auto& q : *cq.exact_prior())
      prior.push_back(std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()));
  } else {
    for (double v : cq.prior()) prior.push_back(v);
  }
  doc["prior"] = prior;
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : cq.states()) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < s.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < s.dim(); ++c) row.push_back({s.matrix()(r, c).real(), s.matrix()(r, c).imag()});
      rows.push_back(row);
    }
    states.push_back(rows);
  }
  doc["states"] = states;
  if (!cq.labels().empty()) doc["alphabet"] = cq.labels();
  return doc;
}

}  // namespace softcover

#endif  // SOFTCOVER_MODEL_IO_HPP
