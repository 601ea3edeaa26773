#pragma once

// Alternating normal form and the word problem in G = G1 *_A G2, where
// A = <U^{-1}> = <V> is infinite cyclic.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ftype/presentation.hpp"
#include "ftype/words.hpp"

namespace ftype {

struct Block {
  Side factor;
  Word content;

  bool operator==(Block const&) const = default;
};

/// Element = blocks[0] * ... * blocks[last] * V^amalgam_tail.
///
/// A nonzero tail only appears with no blocks: the element then lies in A.
/// `rounds` counts the rewriting rounds spent by normal_form.
struct AlternatingForm {
  std::vector<Block> blocks;
  long               amalgam_tail = 0;
  std::size_t        rounds       = 0;

  bool is_identity() const noexcept {
    return blocks.empty() && amalgam_tail == 0;
  }
};

/// k with w = (U^{-1})^k (left) or w = V^k (right), if w lies in A.
inline std::optional<long> amalgam_power_of(Word const&                w,
                                            Side                       side,
                                            AmalgamDecomposition const& D) {
  auto const [first, last] = D.range(side);
  for (auto const& s : w) {
    if (s.generator < first || s.generator >= last) {
      throw std::invalid_argument("amalgam_power_of: word uses generators of "
                                  "the other factor");
    }
  }
  // Lengths of powers of a cyclically reduced word are additive, so the
  // exponent is pinned down by |w| / |gen| up to sign.
  return D.alphabet.power_exponent(w, D.amalgam_generator(side));
}

/// Maximal single-factor blocks of w, without any rewriting.
inline std::vector<Block> split_blocks(Word const&                 w,
                                       AmalgamDecomposition const& D) {
  std::vector<Block> blocks;
  std::size_t        i = 0;
  while (i < w.size()) {
    Side const  side = D.side_of(w[i].generator);
    std::size_t j    = i;
    while (j < w.size() && D.side_of(w[j].generator) == side) {
      ++j;
    }
    blocks.push_back({side, w.slice(i, j - i)});
    i = j;
  }
  return blocks;
}

/// Rewrite w into alternating form: while some block lies in A, move it to
/// the other factor and merge it with its neighbours. Every round removes at
/// least one block.
inline AlternatingForm normal_form(Word const& w, AmalgamDecomposition const& D) {
  auto const&     A = D.alphabet;
  AlternatingForm form;
  form.blocks = split_blocks(A.multiply(w, Word()), D);

  while (form.blocks.size() >= 2) {
    std::optional<std::pair<std::size_t, long>> hit;
    for (std::size_t i = 0; i < form.blocks.size() && !hit; ++i) {
      if (auto k = amalgam_power_of(form.blocks[i].content,
                                    form.blocks[i].factor, D)) {
        hit = {i, *k};
      }
    }
    if (!hit) {
      break;
    }
    auto const [i, k] = *hit;
    Side const other  = form.blocks[i].factor == Side::Left ? Side::Right
                                                            : Side::Left;
    Word merged = A.power(D.amalgam_generator(other), k);
    std::size_t lo = i;
    std::size_t hi = i + 1;
    if (i > 0) {
      merged = A.multiply(form.blocks[i - 1].content, merged);
      lo     = i - 1;
    }
    if (i + 1 < form.blocks.size()) {
      merged = A.multiply(merged, form.blocks[i + 1].content);
      hi     = i + 2;
    }
    form.blocks.erase(form.blocks.begin() + static_cast<long>(lo),
                      form.blocks.begin() + static_cast<long>(hi));
    form.blocks.insert(form.blocks.begin() + static_cast<long>(lo),
                       Block{other, std::move(merged)});
    ++form.rounds;
  }

  if (form.blocks.size() == 1) {
    auto const& b = form.blocks.front();
    if (auto k = amalgam_power_of(b.content, b.factor, D)) {
      // (U^{-1})^k = V^k, so either side gives tail k.
      form.amalgam_tail = *k;
      form.blocks.clear();
    }
  }
  return form;
}

inline bool is_trivial(Word const& w, AmalgamDecomposition const& D) {
  return normal_form(w, D).is_identity();
}

/// The pairs (c_i, d_i) of R = c_1 d_1 ... c_k d_k when the alternating form
/// of R starts in G1, ends in G2 and has no block in A.
inline std::optional<std::vector<std::pair<Word, Word>>>
reduced_relator_form(Word const& R, AmalgamDecomposition const& D) {
  auto const form = normal_form(R, D);
  auto const& b   = form.blocks;
  if (b.size() < 2 || b.size() % 2 != 0 || b.front().factor != Side::Left
      || b.back().factor != Side::Right) {
    return std::nullopt;
  }
  std::vector<std::pair<Word, Word>> pairs;
  for (std::size_t i = 0; i < b.size(); i += 2) {
    pairs.emplace_back(b[i].content, b[i + 1].content);
  }
  return pairs;
}

/// Product of the blocks of a form, including the tail.
inline Word to_word(AlternatingForm const& form, AmalgamDecomposition const& D) {
  Word out;
  for (auto const& b : form.blocks) {
    out = D.alphabet.multiply(out, b.content);
  }
  return D.alphabet.multiply(out,
                             D.alphabet.power(D.right_generator,
                                              form.amalgam_tail));
}

}  // namespace ftype
