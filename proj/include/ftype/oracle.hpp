#pragma once

// Brute-force enumeration oracles for the word decision procedures. These
// only use normalize / multiply / invert / power, never the procedures they
// check.

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "ftype/words.hpp"

namespace ftype::oracle {

/// Every reduced word over generators [first, last) with at most
/// `max_syllables` syllables, including the identity. Infinite-order powers
/// range over +-1..+-max_power.
inline std::vector<Word> enumerate_words(Alphabet const& A,
                                         std::size_t     max_syllables,
                                         long max_power, std::size_t first,
                                         std::size_t last) {
  std::vector<Syllable> choices;
  for (std::size_t g = first; g < last; ++g) {
    long const e = A.exponent(g);
    if (e == 0) {
      for (long k = 1; k <= max_power; ++k) {
        choices.push_back({g, k});
        choices.push_back({g, -k});
      }
    } else {
      for (long k = 1; k < e; ++k) {
        choices.push_back({g, k});
      }
    }
  }
  std::vector<Word>     out;
  std::vector<Syllable> current;
  std::function<void()> rec = [&] {
    out.emplace_back(current);
    if (current.size() == max_syllables) {
      return;
    }
    for (auto const& s : choices) {
      if (!current.empty() && current.back().generator == s.generator) {
        continue;
      }
      current.push_back(s);
      rec();
      current.pop_back();
    }
  };
  rec();
  return out;
}

inline std::vector<Word> enumerate_words(Alphabet const& A,
                                         std::size_t     max_syllables,
                                         long            max_power) {
  return enumerate_words(A, max_syllables, max_power, 0, A.size());
}

inline bool is_cyclically_reduced(Word const& w) {
  return w.size() <= 1 || w.front().generator != w.back().generator;
}

/// Membership in { u^k : u in roots, 2 <= k <= max_k }.
class PowerOracle {
 public:
  PowerOracle(Alphabet const& A, std::vector<Word> const& roots, long max_k) {
    for (auto const& u : roots) {
      if (u.empty()) {
        continue;
      }
      Word acc = u;
      for (long k = 2; k <= max_k; ++k) {
        acc = A.multiply(acc, u);
        powers_.insert(acc);
      }
    }
  }

  bool is_proper_power(Word const& w) const { return powers_.count(w) > 0; }

 private:
  std::set<Word> powers_;
};

/// Decides "w = X Y with X^2 = Y^2 = 1" by trying every involution X in a
/// candidate list: X w X = w^{-1}.
class InvolutionOracle {
 public:
  InvolutionOracle(Alphabet const& A, std::vector<Word> const& candidates)
      : A_(A) {
    for (auto const& x : candidates) {
      if (x.empty()) {
        continue;
      }
      Word const sq = A.multiply(x, x);
      if (sq.empty()) {
        involutions_.push_back(x);
      }
    }
  }

  std::optional<Word> find(Word const& w) const {
    Word const target = A_.invert(w);
    for (auto const& x : involutions_) {
      if (A_.product({x, w, x}) == target) {
        return x;
      }
    }
    return std::nullopt;
  }

  std::vector<Word> const& involutions() const noexcept { return involutions_; }

 private:
  Alphabet          A_;
  std::vector<Word> involutions_;
};

/// Some g in candidates with g w2 g^{-1} = w1.
inline std::optional<Word> find_conjugator(Alphabet const& A, Word const& w1,
                                           Word const&              w2,
                                           std::vector<Word> const& candidates) {
  for (auto const& g : candidates) {
    if (A.conjugate(g, w2) == w1) {
      return g;
    }
  }
  return std::nullopt;
}

}  // namespace ftype::oracle
