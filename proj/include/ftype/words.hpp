#pragma once

// Word algebra in a free product of cyclic groups
//
//     < a_1, ..., a_q | a_i^{e_i} = 1 >,   e_i = 0 (infinite) or e_i >= 2.
//
// Words are stored in syllable normal form: a list of (generator, power)
// pairs where adjacent generators differ and powers of finite-order
// generators are canonical residues in (0, e_i). Two words are equal as
// group elements iff their normal forms are structurally equal.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftype/error.hpp"

namespace ftype {

struct Syllable {
  std::size_t generator = 0;
  long        power     = 0;

  auto operator<=>(Syllable const&) const = default;
};

/// A reduced word. Construct through Alphabet (normalize, parse, generator);
/// the raw constructor is unchecked and every Alphabet operation re-checks
/// its inputs.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables)
      : syllables_(std::move(syllables)) {}

  std::size_t size() const noexcept { return syllables_.size(); }
  bool        empty() const noexcept { return syllables_.empty(); }

  Syllable const& operator[](std::size_t i) const { return syllables_[i]; }
  Syllable const& front() const { return syllables_.front(); }
  Syllable const& back() const { return syllables_.back(); }

  auto begin() const noexcept { return syllables_.begin(); }
  auto end() const noexcept { return syllables_.end(); }

  std::vector<Syllable> const& syllables() const noexcept { return syllables_; }

  /// Syllables [first, first + count) as a new word.
  Word slice(std::size_t first, std::size_t count) const {
    return Word(std::vector<Syllable>(syllables_.begin() + first,
                                      syllables_.begin() + first + count));
  }

  bool operator==(Word const&) const = default;
  auto operator<=>(Word const&) const = default;

 private:
  std::vector<Syllable> syllables_;
};

/// Order of a group element: Finite(k) with k >= 1, or Infinite.
class Order {
 public:
  static Order finite(long k) { return Order(k); }
  static Order infinite() { return Order(0); }

  bool is_finite() const noexcept { return value_ > 0; }
  bool is_infinite() const noexcept { return value_ == 0; }
  long value() const {
    if (!is_finite()) {
      throw std::logic_error("Order::value: infinite order");
    }
    return value_;
  }

  bool operator==(Order const&) const = default;

 private:
  explicit Order(long v) : value_(v) {}
  long value_;
};

/// w = conjugator * core * conjugator^{-1}
struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = root^exponent with exponent >= 2
struct ProperPower {
  Word root;
  long exponent = 0;
};

/// w = first * second with first^2 = second^2 = 1
struct InvolutionPair {
  Word first;
  Word second;
};

namespace detail {
  inline long mod_floor(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
  }

  inline bool is_generator_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  }

  inline bool is_generator_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  }
}  // namespace detail

/// One token of word text: `name` or `name^k`, with its 1-based column.
struct WordToken {
  std::string name;
  long        power  = 1;
  std::size_t column = 1;
};

/// Tokenize word text. `column_offset` is added to reported columns so that
/// callers embedding a word in a larger line get accurate positions. The lone
/// token `1` denotes the identity and yields no tokens.
inline std::vector<WordToken> tokenize_word(std::string_view text,
                                            std::size_t      line          = 0,
                                            std::size_t      column_offset = 0) {
  std::vector<WordToken> out;
  std::size_t            i = 0;
  auto                   fail = [&](std::string const& msg, std::size_t at) {
    throw ParseError(msg, line, column_offset + at + 1);
  };
  bool saw_identity = false;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t const start = i;
    if (text[i] == '1'
        && (i + 1 == text.size()
            || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      saw_identity = true;
      ++i;
      continue;
    }
    if (!detail::is_generator_start(text[i])) {
      fail(std::string("expected a generator name, found '") + text[i] + "'",
           i);
    }
    while (i < text.size() && detail::is_generator_char(text[i])) {
      ++i;
    }
    WordToken tok;
    tok.name   = std::string(text.substr(start, i - start));
    tok.column = column_offset + start + 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t const num_start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        ++i;
      }
      std::size_t const digits_start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
      if (digits_start == i) {
        fail("expected an integer exponent after '^'", num_start);
      }
      try {
        tok.power = std::stol(std::string(text.substr(num_start, i - num_start)));
      } catch (std::out_of_range const&) {
        fail("exponent out of range", num_start);
      }
      if (tok.power == 0) {
        fail("exponent must be nonzero", num_start);
      }
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      fail(std::string("unexpected character '") + text[i] + "'", i);
    }
    out.push_back(std::move(tok));
  }
  if (saw_identity && !out.empty()) {
    throw ParseError("'1' (identity) cannot be combined with other terms",
                     line,
                     column_offset + 1);
  }
  return out;
}

/// Generators with names and cyclic orders, and every operation on words
/// over them.
class Alphabet {
 public:
  Alphabet() = default;

  Alphabet(std::vector<std::string> names, std::vector<long> exponents)
      : names_(std::move(names)), exponents_(std::move(exponents)) {
    if (names_.size() != exponents_.size()) {
      throw std::invalid_argument(
          "Alphabet: names and exponents differ in length");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty() || !detail::is_generator_start(names_[i][0])
          || !std::all_of(names_[i].begin(), names_[i].end(),
                          detail::is_generator_char)) {
        throw std::invalid_argument("Alphabet: invalid generator name '"
                                    + names_[i] + "'");
      }
      if (exponents_[i] != 0 && exponents_[i] < 2) {
        throw std::invalid_argument("Alphabet: exponent of '" + names_[i]
                                    + "' must be 0 or >= 2");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[j] == names_[i]) {
          throw std::invalid_argument("Alphabet: duplicate generator '"
                                      + names_[i] + "'");
        }
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::string const& name(std::size_t g) const { return names_.at(g); }
  long exponent(std::size_t g) const { return exponents_.at(g); }
  std::vector<std::string> const& names() const noexcept { return names_; }
  std::vector<long> const& exponents() const noexcept { return exponents_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  bool operator==(Alphabet const&) const = default;

  ////////////////////////////////////////////////////////////////////////
  // Normal forms and group operations
  ////////////////////////////////////////////////////////////////////////

  /// Reduce a raw list of (generator, power) pairs to normal form.
  Word normalize(std::span<std::pair<std::size_t, long> const> raw) const {
    std::vector<Syllable> stack;
    for (auto const& [g, k] : raw) {
      check_generator(g);
      push(stack, g, k);
    }
    return Word(std::move(stack));
  }

  Word normalize(
      std::initializer_list<std::pair<std::size_t, long>> raw) const {
    return normalize(std::span(raw.begin(), raw.size()));
  }

  Word generator(std::size_t g, long power = 1) const {
    return normalize({{g, power}});
  }

  Word identity() const { return Word(); }

  /// True iff w is a reduced word over this alphabet.
  bool is_normal(Word const& w) const {
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto const& s = w[i];
      if (s.generator >= size() || s.power == 0) {
        return false;
      }
      long const e = exponents_[s.generator];
      if (e != 0 && (s.power < 0 || s.power >= e)) {
        return false;
      }
      if (i > 0 && w[i - 1].generator == s.generator) {
        return false;
      }
    }
    return true;
  }

  Word multiply(Word const& u, Word const& v) const {
    require_normal(u);
    require_normal(v);
    std::vector<Syllable> stack(u.begin(), u.end());
    for (auto const& s : v) {
      push(stack, s.generator, s.power);
    }
    return Word(std::move(stack));
  }

  Word product(std::initializer_list<Word> words) const {
    Word acc;
    for (auto const& w : words) {
      acc = multiply(acc, w);
    }
    return acc;
  }

  Word invert(Word const& w) const {
    require_normal(w);
    std::vector<Syllable> out;
    out.reserve(w.size());
    for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it) {
      out.push_back({it->generator, canonical(it->generator, -it->power)});
    }
    return Word(std::move(out));
  }

  /// w^k for any integer k.
  Word power(Word const& w, long k) const {
    Word base = k < 0 ? invert(w) : w;
    long n    = k < 0 ? -k : k;
    Word acc;
    while (n > 0) {
      if (n & 1) {
        acc = multiply(acc, base);
      }
      n >>= 1;
      if (n > 0) {
        base = multiply(base, base);
      }
    }
    return acc;
  }

  Word conjugate(Word const& g, Word const& w) const {
    return product({g, w, invert(g)});
  }

  ////////////////////////////////////////////////////////////////////////
  // Decision procedures
  ////////////////////////////////////////////////////////////////////////

  CyclicReduction cyclically_reduce(Word const& w) const {
    require_normal(w);
    std::vector<Syllable> core(w.begin(), w.end());
    std::size_t           lo = 0;  // core is core[lo, hi)
    std::size_t           hi = core.size();
    std::vector<Syllable> conj;
    while (hi - lo >= 2 && core[lo].generator == core[hi - 1].generator) {
      Syllable const first = core[lo];
      Syllable const last  = core[hi - 1];
      long const     merged = canonical(first.generator, first.power + last.power);
      if (merged == 0) {
        push(conj, first.generator, first.power);
        ++lo;
        --hi;
      } else {
        // last * (first ... last) * last^{-1} = (last first) ...
        push(conj, last.generator, -last.power);
        core[lo] = {first.generator, merged};
        --hi;
        break;
      }
    }
    return {Word(std::vector<Syllable>(core.begin() + lo, core.begin() + hi)),
            Word(std::move(conj))};
  }

  Order order_of(Word const& w) const {
    auto const core = cyclically_reduce(w).core;
    if (core.empty()) {
      return Order::finite(1);
    }
    if (core.size() == 1) {
      long const e = exponents_[core[0].generator];
      if (e == 0) {
        return Order::infinite();
      }
      return Order::finite(e / std::gcd(e, core[0].power));
    }
    return Order::infinite();
  }

  /// Decompose w = root^k with k >= 2 maximal, if possible.
  ///
  /// For a finite-order syllable a^m the search runs over k in [2, e + 1],
  /// which covers every residue of k mod e; the largest such k is returned
  /// with the smallest root exponent.
  std::optional<ProperPower> is_proper_power(Word const& w) const {
    if (w.empty()) {
      throw std::invalid_argument("is_proper_power: empty word");
    }
    auto const [core, conj] = cyclically_reduce(w);
    auto rebase = [&](Word const& root, long k) {
      return ProperPower{conjugate(conj, root), k};
    };
    if (core.size() >= 2) {
      std::size_t const len = core.size();
      for (std::size_t period = 1; period < len; ++period) {
        if (len % period != 0) {
          continue;
        }
        bool periodic = true;
        for (std::size_t i = period; i < len && periodic; ++i) {
          periodic = core[i] == core[i - period];
        }
        if (periodic) {
          return rebase(core.slice(0, period), static_cast<long>(len / period));
        }
      }
      return std::nullopt;
    }
    auto const [g, m] = core[0];
    long const e      = exponents_[g];
    if (e == 0) {
      if (m >= 2 || m <= -2) {
        return rebase(generator(g, m > 0 ? 1 : -1), m > 0 ? m : -m);
      }
      return std::nullopt;
    }
    for (long k = e + 1; k >= 2; --k) {
      for (long t = 1; t < e; ++t) {
        if (detail::mod_floor(t * k - m, e) == 0) {
          return rebase(generator(g, t), k);
        }
      }
    }
    return std::nullopt;
  }

  /// k with w = base^k. `base` must be cyclically reduced of infinite order,
  /// so that |base^k| = |k| |base| whenever |base| >= 2.
  std::optional<long> power_exponent(Word const& w, Word const& base) const {
    require_normal(w);
    require_normal(base);
    if (base.empty() || cyclically_reduce(base).core != base
        || !order_of(base).is_infinite()) {
      throw std::invalid_argument(
          "power_exponent: base must be cyclically reduced of infinite order");
    }
    if (w.empty()) {
      return 0;
    }
    if (base.size() == 1) {
      if (w.size() != 1 || w[0].generator != base[0].generator
          || w[0].power % base[0].power != 0) {
        return std::nullopt;
      }
      return w[0].power / base[0].power;
    }
    if (w.size() % base.size() != 0) {
      return std::nullopt;
    }
    long const k = static_cast<long>(w.size() / base.size());
    if (power(base, k) == w) {
      return k;
    }
    if (power(base, -k) == w) {
      return -k;
    }
    return std::nullopt;
  }

  bool is_involution(Word const& w) const {
    return order_of(w) == Order::finite(2);
  }

  /// A conjugator g with g * w2 * g^{-1} = w1, if w1 and w2 are conjugate.
  std::optional<Word> are_conjugate(Word const& w1, Word const& w2) const {
    auto const [c1, r1] = cyclically_reduce(w1);
    auto const [c2, r2] = cyclically_reduce(w2);
    if (c1.size() != c2.size()) {
      return std::nullopt;
    }
    std::optional<Word> rotation;  // P with P^{-1} c2 P = c1
    if (c1.size() <= 1) {
      if (c1 == c2) {
        rotation = Word();
      }
    } else {
      std::size_t const len = c1.size();
      for (std::size_t j = 0; j < len && !rotation; ++j) {
        bool match = true;
        for (std::size_t i = 0; i < len && match; ++i) {
          match = c1[i] == c2[(i + j) % len];
        }
        if (match) {
          rotation = c2.slice(0, j);
        }
      }
    }
    if (!rotation) {
      return std::nullopt;
    }
    // w1 = r1 P^{-1} r2^{-1} * w2 * r2 P r1^{-1}
    return product({r1, invert(*rotation), invert(r2)});
  }

  /// Involutions X, Y with w = X * Y, if they exist. Requires infinite order.
  ///
  /// Such X are exactly the involutions conjugating w to w^{-1}; these form
  /// the coset g0 * <r> with g0 any such conjugator and r the primitive root
  /// of w. The coset is scanned for |k| <= |g0| + 2.
  std::optional<InvolutionPair>
  is_product_of_two_involutions(Word const& w) const {
    if (!order_of(w).is_infinite()) {
      throw std::invalid_argument(
          "is_product_of_two_involutions: word has finite order");
    }
    Word const w_inv = invert(w);
    auto const g0    = are_conjugate(w_inv, w);
    if (!g0) {
      return std::nullopt;
    }
    auto const pp   = is_proper_power(w);
    Word const root = pp ? pp->root : w;
    long const bound = static_cast<long>(g0->size()) + 2;
    for (long step = 0; step <= 2 * bound; ++step) {
      long const k = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
      Word const x = multiply(*g0, power(root, k));
      if (is_involution(x)) {
        return InvolutionPair{x, multiply(x, w)};
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  Word parse(std::string_view text, std::size_t line = 0,
             std::size_t column_offset = 0) const {
    std::vector<std::pair<std::size_t, long>> raw;
    for (auto const& tok : tokenize_word(text, line, column_offset)) {
      auto idx = index_of(tok.name);
      if (!idx) {
        throw ParseError("unknown generator '" + tok.name + "'", line,
                         tok.column);
      }
      raw.emplace_back(*idx, tok.power);
    }
    return normalize(raw);
  }

  /// `a b^-2 a` style text; the identity prints as `1`. Finite-order powers
  /// print as their canonical residue.
  std::string format(Word const& w) const {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : w) {
      if (!out.empty()) {
        out += ' ';
      }
      out += name(s.generator);
      if (s.power != 1) {
        out += '^' + std::to_string(s.power);
      }
    }
    return out;
  }

 private:
  void check_generator(std::size_t g) const {
    if (g >= size()) {
      throw std::invalid_argument("unknown generator index "
                                  + std::to_string(g));
    }
  }

  void require_normal(Word const& w) const {
    if (!is_normal(w)) {
      throw std::invalid_argument(
          "word is not a reduced word over this alphabet");
    }
  }

  long canonical(std::size_t g, long k) const {
    long const e = exponents_[g];
    return e == 0 ? k : detail::mod_floor(k, e);
  }

  void push(std::vector<Syllable>& stack, std::size_t g, long k) const {
    k = canonical(g, k);
    if (k == 0) {
      return;
    }
    if (!stack.empty() && stack.back().generator == g) {
      long const merged = canonical(g, stack.back().power + k);
      if (merged == 0) {
        stack.pop_back();
      } else {
        stack.back().power = merged;
      }
      return;
    }
    stack.push_back({g, k});
  }

  std::vector<std::string> names_;
  std::vector<long>        exponents_;
};

}  // namespace ftype
