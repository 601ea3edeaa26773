#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ftype/words.hpp"

namespace ftype {

using Rng = std::mt19937_64;

/// Deterministic generator for a (seed, stream, attempt) triple, so retries
/// and independent sub-constructions never share a stream.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0,
                    std::uint64_t attempt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(attempt)};
  return Rng(seq);
}

/// Uniform random reduced word with 1..max_syllables syllables over the
/// generators [first, last). Infinite-order powers are drawn from
/// +-1..+-max_power.
inline Word random_word(Alphabet const& A, std::size_t first, std::size_t last,
                        std::size_t max_syllables, Rng& rng,
                        long max_power = 2) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_syllables);
  std::uniform_int_distribution<std::size_t> gen_dist(first, last - 1);
  std::size_t const                          len = len_dist(rng);
  std::vector<std::pair<std::size_t, long>>  raw;
  for (std::size_t i = 0; i < len; ++i) {
    std::size_t g = gen_dist(rng);
    if (!raw.empty() && last - first > 1) {
      while (g == raw.back().first) {
        g = gen_dist(rng);
      }
    }
    long const e = A.exponent(g);
    long       k = 0;
    if (e == 0) {
      std::uniform_int_distribution<long> pd(1, max_power);
      k = pd(rng) * (std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
    } else {
      k = std::uniform_int_distribution<long>(1, e - 1)(rng);
    }
    raw.emplace_back(g, k);
  }
  return A.normalize(raw);
}

}  // namespace ftype
