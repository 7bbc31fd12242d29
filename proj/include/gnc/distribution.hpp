#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "gnc/group.hpp"

namespace gnc {

using Symbol = std::uint32_t;
using SymbolTuple = std::vector<Symbol>;

/// A joint distribution over tuples with exact probabilities
/// counts[i] / denominator. Support is kept sorted; counts are positive.
struct ExactDistribution {
  std::vector<SymbolTuple> support;
  std::vector<std::uint64_t> counts;
  std::uint64_t denominator = 1;

  /// Builds from a tally; zero entries are dropped.
  static ExactDistribution from_tally(const std::map<SymbolTuple, std::uint64_t>& tally, std::uint64_t denominator) {
    ExactDistribution d;
    d.denominator = denominator;
    for (const auto& [t, c] : tally) {
      if (c == 0) continue;
      d.support.push_back(t);
      d.counts.push_back(c);
    }
    return d;
  }

  bool counts_sum_to_denominator() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s == denominator;
  }

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

/// Shannon entropy in bits.
inline double entropy_bits(const ExactDistribution& d) {
  double h = 0.0;
  const double den = static_cast<double>(d.denominator);
  for (auto c : d.counts) {
    const double p = static_cast<double>(c) / den;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;
}

/// True iff all nonzero probabilities are equal (exact integer comparison).
inline bool is_quasi_uniform(const ExactDistribution& d) {
  for (auto c : d.counts) {
    if (c != d.counts.front()) return false;
  }
  return true;
}

/// Marginal onto the given tuple positions.
inline ExactDistribution marginal(const ExactDistribution& d, std::span<const std::size_t> positions) {
  std::map<SymbolTuple, std::uint64_t> tally;
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    SymbolTuple t;
    t.reserve(positions.size());
    for (auto p : positions) t.push_back(d.support[i][p]);
    tally[t] += d.counts[i];
  }
  return ExactDistribution::from_tally(tally, d.denominator);
}

/// Same probabilities after relabeling each coordinate through `relabel[k]`
/// (a map from d's symbols to symbols), compared as exact rationals.
inline bool equal_under_relabeling(const ExactDistribution& a, const ExactDistribution& b,
                                   const std::vector<std::map<Symbol, Symbol>>& relabel) {
  if (a.support.size() != b.support.size()) return false;
  std::map<SymbolTuple, std::uint64_t> mapped;
  for (std::size_t i = 0; i < a.support.size(); ++i) {
    SymbolTuple t(a.support[i].size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      auto it = relabel[k].find(a.support[i][k]);
      if (it == relabel[k].end()) return false;
      t[k] = it->second;
    }
    mapped[t] += a.counts[i];
  }
  if (mapped.size() != b.support.size()) return false;
  for (std::size_t i = 0; i < b.support.size(); ++i) {
    auto it = mapped.find(b.support[i]);
    if (it == mapped.end()) return false;
    if (it->second * b.denominator != b.counts[i] * a.denominator) return false;
  }
  return true;
}

}  // namespace gnc
