#pragma once

// F-type presentations
//
//     G = < a_1..a_n | a_i^{e_i} = 1, U(a_1..a_p) V(a_{p+1}..a_n) = 1 >
//
// and their decomposition as G1 *_A G2 with A = <U^{-1}> = <V>.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftype/error.hpp"
#include "ftype/words.hpp"

namespace ftype {

enum class Side { Left, Right };

inline char const* to_string(Side s) {
  return s == Side::Left ? "left" : "right";
}

/// `p` counts the generators of the left factor: G1 = <a_1..a_p>.
struct FTypePresentation {
  Alphabet    alphabet;
  std::size_t p = 1;
  Word        U;
  Word        V;

  std::size_t n() const noexcept { return alphabet.size(); }

  Side side_of(std::size_t g) const noexcept {
    return g < p ? Side::Left : Side::Right;
  }

  bool operator==(FTypePresentation const&) const = default;
};

enum class Severity { Warning, Error };

inline char const* to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

struct Finding {
  Severity    severity;
  std::string code;
  std::string message;
};

/// G = H1 * H2 when UV omits generators: H1 is the free product of cyclics on
/// the omitted generators, H2 the F-type presentation on the rest.
struct FreeProductSplit {
  Alphabet          omitted;
  FTypePresentation rest;
};

struct ValidationReport {
  bool                            ok = true;
  std::vector<Finding>            findings;
  std::vector<std::size_t>        omitted_generators;
  std::optional<FreeProductSplit> split;

  bool has(std::string_view code) const {
    for (auto const& f : findings) {
      if (f.code == code) {
        return true;
      }
    }
    return false;
  }
};

struct AmalgamDecomposition {
  Alphabet    alphabet;
  std::size_t p = 1;
  Word        left_generator;   // U^{-1}, in G1
  Word        right_generator;  // V, in G2

  Side side_of(std::size_t g) const noexcept {
    return g < p ? Side::Left : Side::Right;
  }

  /// Generator indices [first, last) of a factor.
  std::pair<std::size_t, std::size_t> range(Side s) const noexcept {
    return s == Side::Left ? std::pair{std::size_t{0}, p}
                           : std::pair{p, alphabet.size()};
  }

  Word const& amalgam_generator(Side s) const noexcept {
    return s == Side::Left ? left_generator : right_generator;
  }
};

namespace detail {
  inline std::string_view trim(std::string_view s) {
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  }

  inline bool uses_only(Word const& w, std::size_t first, std::size_t last) {
    for (auto const& s : w) {
      if (s.generator < first || s.generator >= last) {
        return false;
      }
    }
    return true;
  }
}  // namespace detail

/// Parse the line-oriented presentation format:
///
///     gens: a1 a2 a3 a4
///     exps: 2 2 2 3        # 0 = infinite order
///     p: 2
///     U: a1 a2
///     V: a3 a4
inline FTypePresentation parse_presentation(std::string_view text) {
  struct Field {
    std::string_view value;
    std::size_t      line   = 0;
    std::size_t      column = 0;  // of the first value character
    bool             present = false;
  };
  Field gens, exps, p_field, u_field, v_field;

  std::size_t line_no = 0;
  std::size_t pos     = 0;
  while (pos <= text.size()) {
    auto const eol = text.find('\n', pos);
    auto       raw = text.substr(pos, eol == std::string_view::npos
                                          ? std::string_view::npos
                                          : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto const hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    if (detail::trim(raw).empty()) {
      continue;
    }
    auto const colon = raw.find(':');
    if (colon == std::string_view::npos) {
      auto const first = raw.find_first_not_of(" \t");
      throw ParseError("expected 'key: value'", line_no, first + 1);
    }
    auto const key = detail::trim(raw.substr(0, colon));
    Field*     field = nullptr;
    if (key == "gens") {
      field = &gens;
    } else if (key == "exps") {
      field = &exps;
    } else if (key == "p") {
      field = &p_field;
    } else if (key == "U") {
      field = &u_field;
    } else if (key == "V") {
      field = &v_field;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no,
                       raw.find_first_not_of(" \t") + 1);
    }
    if (field->present) {
      throw ParseError("duplicate key '" + std::string(key) + "'", line_no,
                       raw.find_first_not_of(" \t") + 1);
    }
    field->present = true;
    field->value   = raw.substr(colon + 1);
    field->line    = line_no;
    field->column  = colon + 1;  // offset: value char i is at column+i+1
  }

  auto require = [](Field const& f, char const* name) {
    if (!f.present) {
      throw ParseError(std::string("missing key '") + name + "'", 0, 1);
    }
  };
  require(gens, "gens");
  require(exps, "exps");
  require(p_field, "p");
  require(u_field, "U");
  require(v_field, "V");

  // Whitespace-separated tokens of a field value, with columns.
  auto split = [](Field const& f) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t                                      i = 0;
    while (i < f.value.size()) {
      if (f.value[i] == ' ' || f.value[i] == '\t' || f.value[i] == '\r') {
        ++i;
        continue;
      }
      auto const start = i;
      while (i < f.value.size() && f.value[i] != ' ' && f.value[i] != '\t'
             && f.value[i] != '\r') {
        ++i;
      }
      out.emplace_back(std::string(f.value.substr(start, i - start)),
                       f.column + start + 1);
    }
    return out;
  };

  std::vector<std::string> names;
  for (auto const& [tok, col] : split(gens)) {
    if (!detail::is_generator_start(tok[0])
        || !std::all_of(tok.begin(), tok.end(), detail::is_generator_char)) {
      throw ParseError("invalid generator name '" + tok + "'", gens.line, col);
    }
    for (auto const& prev : names) {
      if (prev == tok) {
        throw ParseError("duplicate generator '" + tok + "'", gens.line, col);
      }
    }
    names.push_back(tok);
  }
  if (names.size() < 2) {
    throw ParseError("an F-type presentation needs at least 2 generators",
                     gens.line, gens.column + 1);
  }

  auto parse_int = [](std::string const& tok, std::size_t line,
                      std::size_t col) -> long {
    std::size_t used = 0;
    long        v    = 0;
    try {
      v = std::stol(tok, &used);
    } catch (std::exception const&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) {
      throw ParseError("expected an integer, found '" + tok + "'", line, col);
    }
    return v;
  };

  std::vector<long> exponents;
  for (auto const& [tok, col] : split(exps)) {
    long const e = parse_int(tok, exps.line, col);
    if (e != 0 && e < 2) {
      throw ParseError("exponent must be 0 (infinite) or >= 2, found " + tok,
                       exps.line, col);
    }
    exponents.push_back(e);
  }
  if (exponents.size() != names.size()) {
    throw ParseError("expected " + std::to_string(names.size())
                         + " exponents, found "
                         + std::to_string(exponents.size()),
                     exps.line, exps.column + 1);
  }

  auto const p_tokens = split(p_field);
  if (p_tokens.size() != 1) {
    throw ParseError("expected a single integer", p_field.line,
                     p_field.column + 1);
  }
  long const p = parse_int(p_tokens[0].first, p_field.line, p_tokens[0].second);
  if (p < 1 || p > static_cast<long>(names.size()) - 1) {
    throw ParseError("p must satisfy 1 <= p <= n-1", p_field.line,
                     p_tokens[0].second);
  }

  FTypePresentation out;
  out.alphabet = Alphabet(std::move(names), std::move(exponents));
  out.p        = static_cast<std::size_t>(p);

  auto parse_side = [&](Field const& f, char const* label, std::size_t first,
                        std::size_t last) {
    for (auto const& tok : tokenize_word(f.value, f.line, f.column)) {
      auto const idx = out.alphabet.index_of(tok.name);
      if (!idx) {
        throw ParseError("unknown generator '" + tok.name + "'", f.line,
                         tok.column);
      }
      if (*idx < first || *idx >= last) {
        throw ParseError(std::string(label) + " may only use generators "
                             + out.alphabet.name(first) + ".."
                             + out.alphabet.name(last - 1) + ", found '"
                             + tok.name + "'",
                         f.line, tok.column);
      }
    }
    return out.alphabet.parse(f.value, f.line, f.column);
  };
  out.U = parse_side(u_field, "U", 0, out.p);
  out.V = parse_side(v_field, "V", out.p, out.n());
  return out;
}

/// Inverse of parse_presentation, up to comments and whitespace.
inline std::string format_presentation(FTypePresentation const& P) {
  std::ostringstream os;
  os << "gens:";
  for (auto const& name : P.alphabet.names()) {
    os << ' ' << name;
  }
  os << "\nexps:";
  for (auto e : P.alphabet.exponents()) {
    os << ' ' << e;
  }
  os << "\np: " << P.p << '\n';
  os << "U: " << P.alphabet.format(P.U) << '\n';
  os << "V: " << P.alphabet.format(P.V) << '\n';
  return os.str();
}

inline std::vector<std::size_t> omitted_generators(FTypePresentation const& P) {
  std::vector<bool> used(P.n(), false);
  for (auto const& s : P.U) {
    used[s.generator] = true;
  }
  for (auto const& s : P.V) {
    used[s.generator] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < P.n(); ++g) {
    if (!used[g]) {
      out.push_back(g);
    }
  }
  return out;
}

inline ValidationReport validate(FTypePresentation const& P) {
  ValidationReport report;
  auto const&      A = P.alphabet;
  auto error = [&](std::string code, std::string message) {
    report.findings.push_back({Severity::Error, std::move(code),
                               std::move(message)});
    report.ok = false;
  };

  if (P.n() < 2 || P.p < 1 || P.p >= P.n()) {
    error("BAD_SPLIT_INDEX", "need n >= 2 and 1 <= p <= n-1");
    return report;
  }
  if (!A.is_normal(P.U) || !detail::uses_only(P.U, 0, P.p)) {
    error("U_WRONG_FACTOR", "U must be a reduced word in a_1..a_p");
    return report;
  }
  if (!A.is_normal(P.V) || !detail::uses_only(P.V, P.p, P.n())) {
    error("V_WRONG_FACTOR", "V must be a reduced word in a_{p+1}..a_n");
    return report;
  }

  auto check_word = [&](Word const& w, char const* label) {
    std::string const l(label);
    if (A.order_of(w).is_finite()) {
      error(l + "_FINITE_ORDER",
            l + " = " + A.format(w) + " has finite order "
                + std::to_string(A.order_of(w).value())
                + "; it must have infinite order");
    }
    if (A.cyclically_reduce(w).core != w) {
      error(l + "_NOT_CYCLICALLY_REDUCED",
            l + " = " + A.format(w) + " is not cyclically reduced");
    }
  };
  check_word(P.U, "U");
  check_word(P.V, "V");

  auto check_single = [&](Word const& w, std::size_t g, char const* label,
                          char const* code) {
    bool const ok = w.size() == 1 && w[0].generator == g && A.exponent(g) == 0
                    && (w[0].power >= 2 || w[0].power <= -2);
    if (!ok) {
      error(code, std::string("a single-generator factor requires ") + label
                      + " = " + A.name(g) + "^m with |m| >= 2");
    }
  };
  if (P.p == 1) {
    check_single(P.U, 0, "U", "P_EQUALS_1_RESTRICTION");
  }
  if (P.p == P.n() - 1) {
    check_single(P.V, P.n() - 1, "V", "P_EQUALS_N_MINUS_1_RESTRICTION");
  }

  report.omitted_generators = omitted_generators(P);
  if (!report.omitted_generators.empty()) {
    std::string names;
    for (auto g : report.omitted_generators) {
      names += (names.empty() ? "" : " ") + A.name(g);
    }
    report.findings.push_back(
        {Severity::Warning, "GENERATOR_OMITTED",
         "UV omits " + names + "; G splits as a free product H1 * H2"});

    std::vector<std::string> om_names, rest_names;
    std::vector<long>        om_exps, rest_exps;
    std::vector<std::size_t> remap(P.n(), 0);
    std::size_t              rest_p = 0;
    std::size_t              next   = 0;
    std::size_t              k      = 0;
    for (std::size_t g = 0; g < P.n(); ++g) {
      if (k < report.omitted_generators.size()
          && report.omitted_generators[k] == g) {
        om_names.push_back(A.name(g));
        om_exps.push_back(A.exponent(g));
        ++k;
        continue;
      }
      remap[g] = next++;
      rest_names.push_back(A.name(g));
      rest_exps.push_back(A.exponent(g));
      if (g < P.p) {
        ++rest_p;
      }
    }
    auto reindex = [&](Word const& w) {
      std::vector<Syllable> s;
      for (auto const& x : w) {
        s.push_back({remap[x.generator], x.power});
      }
      return Word(std::move(s));
    };
    FTypePresentation rest;
    rest.alphabet = Alphabet(rest_names, rest_exps);
    rest.p        = rest_p;
    rest.U        = reindex(P.U);
    rest.V        = reindex(P.V);
    report.split  = FreeProductSplit{Alphabet(om_names, om_exps), rest};
  }
  return report;
}

inline AmalgamDecomposition decompose(FTypePresentation const& P) {
  auto const report = validate(P);
  if (!report.ok) {
    throw std::invalid_argument("decompose: invalid presentation: "
                                + report.findings.front().message);
  }
  return {P.alphabet, P.p, P.alphabet.invert(P.U), P.V};
}

/// Valid, no omitted generator, n >= 4, 2 <= p <= n-2, and neither U nor V a
/// proper power in its factor.
inline bool is_special(FTypePresentation const& P) {
  auto const report = validate(P);
  if (!report.ok || !report.omitted_generators.empty()) {
    return false;
  }
  if (P.n() < 4 || P.p < 2 || P.p > P.n() - 2) {
    return false;
  }
  return !P.alphabet.is_proper_power(P.U) && !P.alphabet.is_proper_power(P.V);
}

/// Throws unless P is valid and UV involves every generator.
inline void require_full(FTypePresentation const& P, char const* who) {
  auto const report = validate(P);
  if (!report.ok) {
    throw std::invalid_argument(std::string(who) + ": invalid presentation: "
                                + report.findings.front().message);
  }
  if (!report.omitted_generators.empty()) {
    throw std::invalid_argument(std::string(who)
                                + ": UV omits a generator; analyse the split "
                                  "presentation instead");
  }
}

}  // namespace ftype
