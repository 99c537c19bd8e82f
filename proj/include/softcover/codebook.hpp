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

#ifndef SOFTCOVER_CODEBOOK_HPP
#define SOFTCOVER_CODEBOOK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "softcover/cq_source.hpp"
#include "softcover/errors.hpp"
#include "softcover/linalg.hpp"
#include "softcover/parallel.hpp"
#include "softcover/rng.hpp"
#include "softcover/types.hpp"

namespace softcover {

enum class CodebookKind { iid, constant_composition };

inline const char* to_string(CodebookKind k) { return k == CodebookKind::iid ? "iid" : "cc"; }

inline CodebookKind parse_codebook_kind(std::string_view s) {
  if (s == "iid") return CodebookKind::iid;
  if (s == "cc" || s == "constant_composition") return CodebookKind::constant_composition;
  throw ValidationError("unknown codebook kind '" + std::string(s) + "' (expected iid or cc)");
}

using Sequence = std::vector<Symbol>;

struct Codebook {
  std::vector<Sequence> codewords;
  CodebookKind kind = CodebookKind::iid;
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;  // index of this codebook within a seeded stream
  std::int64_t n = 0;
  std::size_t m = 0;
};

inline constexpr Eigen::Index kMaxInducedDim = 4096;
inline constexpr double kMaxExactCodebooks = 1e7;

namespace detail {

inline void require_block(std::int64_t n, std::size_t m, const char* who) {
  if (n < 1) throw ValidationError(std::string(who) + ": n must be positive");
  if (m < 1) throw ValidationError(std::string(who) + ": M must be positive");
}

// Streams of the counter-based generator.
inline constexpr std::uint32_t kIidStream = 0;
inline constexpr std::uint32_t kShuffleStream = 1;

inline Eigen::Index block_dimension(Eigen::Index d, std::int64_t n, const char* who) {
  double dim = 1.0;
  for (std::int64_t i = 0; i < n; ++i) dim *= static_cast<double>(d);
  if (dim > static_cast<double>(kMaxInducedDim)) {
    std::ostringstream os;
    os << who << ": output dimension d^n = " << d << "^" << n << " = " << dim << " exceeds " << kMaxInducedDim
       << "; one dense state would need " << dim * dim * 16.0 / (1 << 20) << " MiB";
    throw ValidationError(os.str());
  }
  return static_cast<Eigen::Index>(dim);
}

// Canonical member of the type class: letters in increasing order.
inline Sequence canonical_sequence(std::span<const std::int64_t> counts) {
  Sequence s;
  for (std::size_t x = 0; x < counts.size(); ++x) s.insert(s.end(), static_cast<std::size_t>(counts[x]), Symbol(x));
  return s;
}

}  // namespace detail

/// Codebook of M codewords with letters i.i.d. from p, by inverse CDF on the
/// draw indexed (seed; sample, codeword, position).
inline Codebook sample_iid_codebook(std::span<const double> p, std::int64_t n, std::size_t m, std::uint64_t seed,
                                    std::uint64_t sample = 0) {
  detail::require_block(n, m, "sample_iid_codebook");
  if (p.empty()) throw ValidationError("sample_iid_codebook: empty prior");
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  std::size_t last = p.size() - 1;
  while (last > 0 && p[last] <= 0.0) --last;
  const CounterRng rng(seed);
  Codebook cb{{}, CodebookKind::iid, seed, sample, n, m};
  cb.codewords.assign(m, Sequence(static_cast<std::size_t>(n)));
  for (std::size_t c = 0; c < m; ++c)
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = rng.uniform({sample, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(i),
                                    detail::kIidStream}) * cdf.back();
      std::size_t x = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      x = std::min(x, last);
      cb.codewords[c][static_cast<std::size_t>(i)] = static_cast<Symbol>(x);
    }
  return cb;
}

/// Codebook of M codewords drawn uniformly from the type class T_p^n: a
/// Fisher-Yates shuffle of the canonical sequence per codeword.
inline Codebook sample_cc_codebook(std::span<const Rational> p, std::int64_t n, std::size_t m, std::uint64_t seed,
                                   std::uint64_t sample = 0) {
  detail::require_block(n, m, "sample_cc_codebook");
  const auto counts = composition_counts(p, n);
  const Sequence canonical = detail::canonical_sequence(counts);
  const CounterRng rng(seed);
  Codebook cb{{}, CodebookKind::constant_composition, seed, sample, n, m};
  cb.codewords.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    Sequence s = canonical;
    for (std::size_t i = s.size() - 1; i > 0; --i) {
      const auto j = rng.below({sample, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(i),
                                detail::kShuffleStream},
                               i + 1);
      std::swap(s[i], s[j]);
    }
    cb.codewords.push_back(std::move(s));
  }
  return cb;
}

/// rho_{x_1} (x) ... (x) rho_{x_n}.
inline Matrix product_state(const CqSource& cq, std::span<const Symbol> x) {
  detail::block_dimension(cq.output_dim(), static_cast<std::int64_t>(x.size()), "product_state");
  Matrix out = Matrix::Identity(1, 1);
  for (Symbol s : x) {
    if (s >= cq.alphabet_size()) throw ValidationError("product_state: symbol outside alphabet");
    out = kron(out, cq.state(s).matrix());
  }
  return out;
}

/// (1/M) sum_m rho_{x(m)}.
inline DensityOperator induced_state(const Codebook& cb, const CqSource& cq) {
  if (cb.codewords.empty()) throw ValidationError("induced_state: empty codebook");
  const Eigen::Index dim = detail::block_dimension(cq.output_dim(), cb.n, "induced_state");
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& w : cb.codewords) sum += product_state(cq, w);
  return DensityOperator(sum / static_cast<double>(cb.codewords.size()));
}

/// All codewords a codebook of the given kind can contain, with their
/// probabilities: every sequence under p^{(x)n} (zero-probability ones
/// dropped), or the type class under the uniform law.
struct CodewordTable {
  std::vector<Sequence> sequences;
  std::vector<double> probabilities;
  double support_size = 0.0;  // |X|^n or |T_p^n|, before dropping
};

inline CodewordTable codeword_table(const CqSource& cq, CodebookKind kind, std::int64_t n) {
  CodewordTable t;
  if (kind == CodebookKind::iid) {
    const std::size_t k = cq.alphabet_size();
    t.support_size = std::pow(static_cast<double>(k), static_cast<double>(n));
    if (t.support_size > kMaxExactCodebooks) throw ValidationError("codeword_table: |X|^n exceeds 1e7");
    Sequence s(static_cast<std::size_t>(n), 0);
    while (true) {
      double prob = 1.0;
      for (Symbol x : s) prob *= cq.prior(x);
      if (prob > 0.0) {
        t.sequences.push_back(s);
        t.probabilities.push_back(prob);
      }
      std::int64_t i = n - 1;
      while (i >= 0 && s[static_cast<std::size_t>(i)] + 1 == k) s[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++s[static_cast<std::size_t>(i)];
    }
  } else {
    const auto prior = cq.rational_prior();
    const BigInt size = type_class_size(prior, n);
    if (size > BigInt(static_cast<std::int64_t>(kMaxExactCodebooks)))
      throw ValidationError("codeword_table: type class larger than 1e7");
    t.support_size = size.convert_to<double>();
    Sequence s = detail::canonical_sequence(composition_counts(prior, n));
    do {
      t.sequences.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    t.probabilities.assign(t.sequences.size(), 1.0 / static_cast<double>(t.sequences.size()));
  }
  return t;
}

/// rho_B^{(x)n}.
inline Matrix iid_reference_state(const CqSource& cq, std::int64_t n) {
  detail::block_dimension(cq.output_dim(), n, "iid_reference_state");
  return kron_power(cq.marginal().matrix(), static_cast<int>(n));
}

/// Average of rho_{x^n} over the type class T_p^n.
inline Matrix cc_reference_state(const CqSource& cq, std::int64_t n) {
  const Eigen::Index dim = detail::block_dimension(cq.output_dim(), n, "cc_reference_state");
  const CodewordTable t = codeword_table(cq, CodebookKind::constant_composition, n);
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& s : t.sequences) sum += product_state(cq, s);
  return sum / static_cast<double>(t.sequences.size());
}

inline Matrix reference_state(const CqSource& cq, CodebookKind kind, std::int64_t n) {
  return kind == CodebookKind::iid ? iid_reference_state(cq, n) : cc_reference_state(cq, n);
}

struct ExpectationEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::int64_t samples = 0;  // codebooks evaluated (enumerated or sampled)
  bool exact = false;
};

namespace detail {

inline double half_trace_norm(const Matrix& h) { return 0.5 * eigvalsh(h).cwiseAbs().sum(); }

}  // namespace detail

/// E_C (1/2)||rho^C - rho_ref||_1 by enumerating every ordered codebook.
/// Ordered tuples that are permutations of each other induce the same state,
/// so each multiset of codewords is evaluated once and weighted by its
/// multinomial count.
inline ExpectationEstimate exact_expected_td(const CqSource& cq, CodebookKind kind, std::int64_t n, std::size_t m) {
  detail::require_block(n, m, "exact_expected_td");
  const Eigen::Index dim = detail::block_dimension(cq.output_dim(), n, "exact_expected_td");
  const CodewordTable table = codeword_table(cq, kind, n);
  const double ordered = std::pow(table.support_size, static_cast<double>(m));
  if (ordered > kMaxExactCodebooks) {
    std::ostringstream os;
    os << "exact_expected_td: " << ordered << " codebooks exceed the enumeration limit of " << kMaxExactCodebooks
       << "; use mc_expected_td";
    throw ValidationError(os.str());
  }
  const Matrix ref = reference_state(cq, kind, n);
  const std::size_t k = table.sequences.size();
  std::vector<Matrix> states;
  states.reserve(k);
  for (const auto& s : table.sequences) states.push_back(product_state(cq, s) / static_cast<double>(m));

  std::vector<double> log_factorial(m + 1, 0.0);
  for (std::size_t i = 1; i <= m; ++i) log_factorial[i] = log_factorial[i - 1] + std::log(static_cast<double>(i));

  std::vector<double> partial(k, 0.0);
  std::vector<std::int64_t> visited(k, 0);
  parallel_for(k, [&](std::size_t first) {
    std::vector<std::size_t> idx(m, first);
    std::vector<Matrix> sums(m, Matrix::Zero(dim, dim));
    std::vector<double> contributions;
    // Depth-first over non-decreasing tuples idx[0] = first <= idx[1] <= ...
    auto leaf = [&]() {
      double log_w = log_factorial[m];
      std::size_t run = 1;
      for (std::size_t j = 0; j < m; ++j) {
        log_w += std::log(table.probabilities[idx[j]]);
        if (j + 1 < m && idx[j + 1] == idx[j]) {
          ++run;
        } else {
          log_w -= log_factorial[run];
          run = 1;
        }
      }
      contributions.push_back(std::exp(log_w) * detail::half_trace_norm(sums[m - 1] - ref));
    };
    sums[0] = states[first];
    if (m == 1) {
      leaf();
    } else {
      std::size_t depth = 1;
      idx[1] = first;
      while (true) {
        sums[depth] = sums[depth - 1] + states[idx[depth]];
        if (depth + 1 == m) {
          leaf();
          // advance the deepest position, backtracking past exhausted ones
          while (depth >= 1 && idx[depth] + 1 == k) --depth;
          if (depth == 0) break;
          ++idx[depth];
          for (std::size_t j = depth + 1; j < m; ++j) idx[j] = idx[depth];
          // recompute sums from `depth` on the next pass
        } else {
          ++depth;
          idx[depth] = idx[depth - 1];
        }
      }
    }
    partial[first] = pairwise_sum(contributions);
    visited[first] = static_cast<std::int64_t>(contributions.size());
  });
  ExpectationEstimate est;
  est.mean = pairwise_sum(partial);
  est.samples = std::accumulate(visited.begin(), visited.end(), std::int64_t{0});
  est.exact = true;
  return est;
}

/// Monte Carlo estimate over `samples` independently drawn codebooks. Codebook
/// s is drawn from the counter stream (seed; s, ...), so the estimate does not
/// depend on the number of worker threads.
inline ExpectationEstimate mc_expected_td(const CqSource& cq, CodebookKind kind, std::int64_t n, std::size_t m,
                                          std::int64_t samples, std::uint64_t seed) {
  detail::require_block(n, m, "mc_expected_td");
  if (samples < 2) throw ValidationError("mc_expected_td: samples must be at least 2");
  const Eigen::Index dim = detail::block_dimension(cq.output_dim(), n, "mc_expected_td");
  const Matrix ref = reference_state(cq, kind, n);
  std::vector<Rational> prior;
  if (kind == CodebookKind::constant_composition) {
    prior = cq.rational_prior();
    (void)composition_counts(prior, n);
  }

  // Cache product states by sequence code when the table is small.
  const std::size_t alphabet = cq.alphabet_size();
  const double codes = std::pow(static_cast<double>(alphabet), static_cast<double>(n));
  const bool cached = codes * static_cast<double>(dim * dim) <= static_cast<double>(1 << 22);
  std::vector<std::optional<Matrix>> cache(cached ? static_cast<std::size_t>(codes) : 0);
  if (cached) {
    Sequence s(static_cast<std::size_t>(n), 0);
    for (std::size_t code = 0; code < cache.size(); ++code) {
      std::size_t v = code;
      for (std::int64_t i = n - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = static_cast<Symbol>(v % alphabet);
        v /= alphabet;
      }
      cache[code] = product_state(cq, s);
    }
  }
  auto draw = [&](std::size_t s) {
    return kind == CodebookKind::iid ? sample_iid_codebook(cq.prior(), n, m, seed, s)
                                     : sample_cc_codebook(prior, n, m, seed, s);
  };

  std::vector<double> values(static_cast<std::size_t>(samples));
  if (cached) {
    // The induced state depends only on the multiset of codewords, so each
    // distinct multiset is evaluated once, summing in sorted code order.
    using Key = std::vector<std::size_t>;
    std::vector<Key> keys(values.size());
    parallel_for(values.size(), [&](std::size_t s) {
      const Codebook cb = draw(s);
      Key key;
      key.reserve(m);
      for (const auto& w : cb.codewords) {
        std::size_t code = 0;
        for (Symbol x : w) code = code * alphabet + x;
        key.push_back(code);
      }
      std::sort(key.begin(), key.end());
      keys[s] = std::move(key);
    });
    std::map<Key, std::size_t> slot;
    std::vector<const Key*> distinct;
    for (const auto& k : keys)
      if (slot.emplace(k, distinct.size()).second) distinct.push_back(&k);
    std::vector<double> td(distinct.size());
    parallel_for(distinct.size(), [&](std::size_t i) {
      Matrix sum = Matrix::Zero(dim, dim);
      for (std::size_t code : *distinct[i]) sum += *cache[code];
      td[i] = detail::half_trace_norm(sum / static_cast<double>(m) - ref);
    });
    for (std::size_t s = 0; s < values.size(); ++s) values[s] = td[slot.at(keys[s])];
  } else {
    parallel_for(values.size(), [&](std::size_t s) {
      const Codebook cb = draw(s);
      Matrix sum = Matrix::Zero(dim, dim);
      for (const auto& w : cb.codewords) sum += product_state(cq, w);
      values[s] = detail::half_trace_norm(sum / static_cast<double>(m) - ref);
    });
  }
  const double count = static_cast<double>(samples);
  const double mean = pairwise_sum(values) / count;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  const double sd = std::sqrt(pairwise_sum(sq) / (count - 1.0));
  return {mean, 1.96 * sd / std::sqrt(count), samples, false};
}

}  // namespace softcover

#endif  // SOFTCOVER_CODEBOOK_HPP
