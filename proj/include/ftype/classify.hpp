#pragma once

// Invariants and classification of F-type groups: rational Euler
// characteristic, deficiency of finite-index subgroups, Tits alternative
// pattern, hyperbolicity, malnormality of the amalgamated subgroup and the
// numeric conditions for one-relator quotients G / N(R^m).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "ftype/presentation.hpp"
#include "ftype/words.hpp"

namespace ftype {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(Rational const& q) {
  if (q.denominator() == 1) {
    return std::to_string(q.numerator());
  }
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

////////////////////////////////////////////////////////////////////////////
// Euler characteristic and deficiency
////////////////////////////////////////////////////////////////////////////

/// chi(G) = 2 + sum alpha_i, alpha_i = -1 (e_i = 0) or -1 + 1/e_i.
inline Rational euler_characteristic(FTypePresentation const& P) {
  Rational chi(2);
  for (long e : P.alphabet.exponents()) {
    chi += e == 0 ? Rational(-1) : Rational(-1) + Rational(1, e);
  }
  return chi;
}

/// chi(H) = |G:H| chi(G).
inline Rational riemann_hurwitz(Rational const& chi, std::int64_t index) {
  if (index < 1) {
    throw std::invalid_argument("riemann_hurwitz: index must be >= 1");
  }
  return chi * index;
}

struct DeficiencyReport {
  Rational deficiency;
  /// d >= 2: some finite-index subgroup maps onto a free group of rank 2.
  bool maps_onto_free_rank2 = false;
  /// Some e_i = 0 was read as 1/e_i = 0; the closed form is only derived for
  /// all e_i >= 2.
  bool extends_hypothesis = false;
};

/// d = 1 + j (n - 2 - sum 1/e_i), with 1/e_i read as 0 when e_i = 0.
inline DeficiencyReport deficiency(FTypePresentation const& P, std::int64_t j) {
  if (j < 1) {
    throw std::invalid_argument("deficiency: index must be >= 1");
  }
  Rational inv_sum(0);
  bool     extended = false;
  for (long e : P.alphabet.exponents()) {
    if (e == 0) {
      extended = true;
    } else {
      inv_sum += Rational(1, e);
    }
  }
  Rational const n(static_cast<std::int64_t>(P.n()));
  Rational const d = Rational(1) + Rational(j) * (n - 2 - inv_sum);
  return {d, d >= Rational(2), extended};
}

////////////////////////////////////////////////////////////////////////////
// Tits alternative
////////////////////////////////////////////////////////////////////////////

enum class SolvablePattern { H1, H2, H3 };

inline char const* to_string(SolvablePattern p) {
  switch (p) {
    case SolvablePattern::H1:
      return "H1";
    case SolvablePattern::H2:
      return "H2";
    case SolvablePattern::H3:
      return "H3";
  }
  return "?";
}

/// Either Solvable(pattern) or ContainsFreeRank2.
struct TitsClass {
  std::optional<SolvablePattern> solvable;

  bool contains_free_rank2() const noexcept { return !solvable.has_value(); }
  bool operator==(TitsClass const&) const = default;
};

inline std::string to_string(TitsClass const& t) {
  return t.solvable ? std::string("Solvable(") + to_string(*t.solvable) + ")"
                    : std::string("ContainsFreeRank2");
}

/// Match the three solvable presentations
///
///     H1 = < a, b | a^2 b^2 >
///     H2 = < a, b, c | a^2 = b^2 = a b c^2 = 1 >
///     H3 = < a, b, c, d | a^2 = b^2 = c^2 = d^2 = a b c d = 1 >
///
/// syntactically, up to relabelling inside a factor, swapping the factors and
/// inverting U and V. Everything else contains a free subgroup of rank 2.
inline TitsClass tits_classify(FTypePresentation const& P) {
  require_full(P, "tits_classify");
  auto const& A = P.alphabet;

  // Factor [first, last) is one infinite generator and w = x^{+-2}.
  auto square_of_infinite = [&](Word const& w, std::size_t first,
                                std::size_t last) {
    return last - first == 1 && A.exponent(first) == 0 && w.size() == 1
           && (w[0].power == 2 || w[0].power == -2);
  };
  // Factor is two involutions and w is their product.
  auto two_involutions = [&](Word const& w, std::size_t first,
                             std::size_t last) {
    return last - first == 2 && A.exponent(first) == 2
           && A.exponent(first + 1) == 2 && w.size() == 2;
  };

  std::size_t const n = P.n();
  std::size_t const p = P.p;
  if (n == 2 && square_of_infinite(P.U, 0, 1) && square_of_infinite(P.V, 1, 2)) {
    return {SolvablePattern::H1};
  }
  if (n == 3
      && ((two_involutions(P.U, 0, p) && square_of_infinite(P.V, p, n))
          || (square_of_infinite(P.U, 0, p) && two_involutions(P.V, p, n)))) {
    return {SolvablePattern::H2};
  }
  if (n == 4 && two_involutions(P.U, 0, p) && two_involutions(P.V, p, n)) {
    return {SolvablePattern::H3};
  }
  return {};
}

////////////////////////////////////////////////////////////////////////////
// Hyperbolicity and malnormality
////////////////////////////////////////////////////////////////////////////

/// Why a word fails "neither a proper power nor a product of two elements of
/// order 2".
using Obstruction = std::variant<ProperPower, InvolutionPair>;

inline std::optional<Obstruction> obstruction_of(Alphabet const& A,
                                                 Word const&     w) {
  if (auto pp = A.is_proper_power(w)) {
    return Obstruction{*pp};
  }
  if (auto inv = A.is_product_of_two_involutions(w)) {
    return Obstruction{*inv};
  }
  return std::nullopt;
}

struct HyperbolicityVerdict {
  bool                       hyperbolic = false;
  std::optional<Obstruction> obstruction_U;
  std::optional<Obstruction> obstruction_V;
  std::vector<std::string>   notes;
};

/// Hyperbolic iff at least one of U, V is neither a proper power nor a
/// product of two involutions.
inline HyperbolicityVerdict hyperbolicity(FTypePresentation const& P) {
  require_full(P, "hyperbolicity");
  HyperbolicityVerdict v;
  v.obstruction_U = obstruction_of(P.alphabet, P.U);
  v.obstruction_V = obstruction_of(P.alphabet, P.V);
  v.hyperbolic    = !v.obstruction_U || !v.obstruction_V;
  if (v.hyperbolic) {
    v.notes.push_back("hyperbolic; equivalently G has a faithful "
                      "representation in PSL(2,R)");
  } else {
    v.notes.push_back("not hyperbolic; non-positive combinatorial curvature, "
                      "so G satisfies a quadratic isoperimetric inequality");
    v.notes.push_back("no faithful representation in PSL(2,R)");
  }
  return v;
}

struct MalnormalityReport {
  bool                       criterion_holds = false;
  std::optional<Obstruction> witness_U;
  std::optional<Obstruction> witness_V;
  std::vector<std::string>   consequences;
};

/// Sufficient criterion for <U> = <V> to be malnormal in G: neither U nor V
/// is a proper power or conjugate to x y with x, y of order 2.
inline MalnormalityReport malnormal_amalgam(FTypePresentation const& P) {
  auto const report = validate(P);
  if (!report.ok) {
    throw std::invalid_argument("malnormal_amalgam: invalid presentation");
  }
  MalnormalityReport m;
  m.witness_U       = obstruction_of(P.alphabet, P.U);
  m.witness_V       = obstruction_of(P.alphabet, P.V);
  m.criterion_holds = !m.witness_U && !m.witness_V;
  if (m.criterion_holds) {
    m.consequences.push_back("<U> = <V> is malnormal in G");
    m.consequences.push_back(
        "any two-generator subgroup of G is a free product of cyclics, and "
        "rank(G) >= 3");
  }
  return m;
}

////////////////////////////////////////////////////////////////////////////
// One-relator quotients H = G / N(R^m)
////////////////////////////////////////////////////////////////////////////

struct QuotientConditions {
  std::int64_t m = 2;
  /// sum alpha_i + 1/m with alpha_i = 0 (e_i = 0) or 1/e_i.
  Rational quantity;
  /// quantity >= 2: a finite-index subgroup of H maps onto Z (H infinite).
  bool condition_i = false;
  /// quantity < n - 2: a finite-index subgroup maps onto F_2 (SQ-universal).
  bool condition_ii = false;
  /// n >= 5, or n = 4 with some e_i != 2: H has a free subgroup of rank 2.
  bool free_subgroup = false;
  /// m >= 8: H is virtually torsion-free.
  bool virtually_torsion_free = false;
};

inline QuotientConditions quotient_conditions(FTypePresentation const& P,
                                              std::int64_t             m) {
  if (!is_special(P)) {
    throw std::invalid_argument("quotient_conditions: presentation is not "
                                "special");
  }
  if (m < 2) {
    throw std::invalid_argument("quotient_conditions: m must be >= 2");
  }
  QuotientConditions q;
  q.m = m;
  Rational sum(0);
  bool     some_not_two = false;
  for (long e : P.alphabet.exponents()) {
    if (e != 0) {
      sum += Rational(1, e);
    }
    some_not_two = some_not_two || e != 2;
  }
  auto const n = static_cast<std::int64_t>(P.n());
  q.quantity   = sum + Rational(1, m);
  // Both inequalities exactly as stated, including the direction of (i).
  q.condition_i            = q.quantity >= Rational(2);
  q.condition_ii           = q.quantity < Rational(n - 2);
  q.free_subgroup          = n >= 5 || (n == 4 && some_not_two);
  q.virtually_torsion_free = m >= 8;
  return q;
}

}  // namespace ftype
