#pragma once

// Sweeps comparing the decision procedures with brute-force oracles, and the
// symbolic word problem with a numeric representation.

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "ftype/amalgam.hpp"
#include "ftype/oracle.hpp"
#include "ftype/presentation.hpp"
#include "ftype/psl2.hpp"
#include "ftype/random.hpp"
#include "ftype/represent.hpp"
#include "ftype/words.hpp"

namespace ftype {

struct SweepResult {
  std::string              name;
  std::size_t              checked = 0;
  std::vector<std::string> mismatches;

  bool ok() const noexcept { return mismatches.empty(); }
};

namespace detail {

  inline void record(SweepResult& r, std::string message) {
    // Keep reports short; the count is what matters.
    if (r.mismatches.size() < 20) {
      r.mismatches.push_back(std::move(message));
    } else if (r.mismatches.size() == 20) {
      r.mismatches.push_back("...");
    }
  }

  inline std::string sci(double x) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << x;
    return out.str();
  }

  inline std::vector<Word> cyclically_reduced_words(Alphabet const& A,
                                                    std::size_t     max_len,
                                                    long max_power) {
    std::vector<Word> out;
    for (auto& w : oracle::enumerate_words(A, max_len, max_power)) {
      if (!w.empty() && oracle::is_cyclically_reduced(w)) {
        out.push_back(std::move(w));
      }
    }
    return out;
  }

}  // namespace detail

/// is_proper_power against { u^k : |u| <= max_len, 2 <= k <= max_k } on
/// every cyclically reduced word with at most max_len syllables.
inline SweepResult sweep_proper_powers(Alphabet const& A, std::size_t max_len,
                                       long max_k = 6, long max_power = 2) {
  SweepResult r{"proper_power", 0, {}};
  oracle::PowerOracle const brute(
      A, oracle::enumerate_words(A, max_len, max_power), max_k);
  for (auto const& w : detail::cyclically_reduced_words(A, max_len, max_power)) {
    ++r.checked;
    auto const fast = A.is_proper_power(w);
    if (fast.has_value() != brute.is_proper_power(w)) {
      detail::record(r, A.format(w) + ": procedure says "
                            + (fast ? "power" : "not a power"));
      continue;
    }
    if (fast && A.power(fast->root, fast->exponent) != w) {
      detail::record(r, A.format(w) + ": returned root does not reproduce w");
    }
  }
  return r;
}

/// is_product_of_two_involutions against every involution g x g^{-1} with
/// |g| <= conjugator_len, on every cyclically reduced infinite-order word with
/// at most max_len syllables.
inline SweepResult sweep_involution_products(Alphabet const& A,
                                             std::size_t     max_len,
                                             std::size_t     conjugator_len = 3,
                                             long            max_power      = 2) {
  SweepResult       r{"involution_product", 0, {}};
  std::vector<Word> candidates;
  for (std::size_t g = 0; g < A.size(); ++g) {
    if (A.exponent(g) % 2 != 0 || A.exponent(g) == 0) {
      continue;
    }
    Word const x = A.generator(g, A.exponent(g) / 2);
    for (auto const& c : oracle::enumerate_words(A, conjugator_len, max_power)) {
      candidates.push_back(A.conjugate(c, x));
    }
  }
  oracle::InvolutionOracle const brute(A, candidates);
  for (auto const& w : detail::cyclically_reduced_words(A, max_len, max_power)) {
    if (A.order_of(w).is_finite()) {
      continue;
    }
    ++r.checked;
    auto const fast = A.is_product_of_two_involutions(w);
    if (fast.has_value() != brute.find(w).has_value()) {
      detail::record(r, A.format(w) + ": procedure says "
                            + (fast ? "product" : "not a product"));
      continue;
    }
    if (fast
        && (!A.is_involution(fast->first) || !A.is_involution(fast->second)
            || A.multiply(fast->first, fast->second) != w)) {
      detail::record(r, A.format(w) + ": returned pair is not a witness");
    }
  }
  return r;
}

/// Random words of syllable length <= max_len: half uniform, half of the form
/// x (UV)^{+-1} x^{-1} (trivial in G). is_trivial must match rho(w) = +-I
/// within `trivial_tol`, and nontrivial words must stay `separation` away.
inline SweepResult sweep_word_problem(FTypePresentation const& P,
                                      Representation const&    rho,
                                      std::size_t count, std::uint64_t seed,
                                      std::size_t max_len      = 12,
                                      double      trivial_tol  = 1e-8,
                                      double      separation   = 1e-4) {
  SweepResult r{"word_problem", 0, {}};
  auto const& A  = P.alphabet;
  auto const  D  = decompose(P);
  Word const  UV = A.multiply(P.U, P.V);
  Rng         rng = make_rng(seed, 0x3d);
  std::size_t trivial_seen = 0;
  while (r.checked < count) {
    Word w;
    if (r.checked % 2 == 0) {
      w = random_word(A, 0, A.size(), max_len, rng);
    } else {
      std::size_t const room = (max_len - std::min(max_len, UV.size())) / 2;
      Word const x = room == 0 ? Word() : random_word(A, 0, A.size(), room, rng);
      Word const r_ = std::bernoulli_distribution(0.5)(rng) ? UV : A.invert(UV);
      w = A.conjugate(x, r_);
      if (w.size() > max_len) {
        continue;
      }
    }
    ++r.checked;
    bool const   trivial = is_trivial(w, D);
    double const dist    = distance_to_identity(rho.image(w));
    trivial_seen += trivial ? 1 : 0;
    if (trivial && dist > trivial_tol) {
      detail::record(r, A.format(w) + ": trivial but |rho(w) -+ I| = "
                            + detail::sci(dist));
    } else if (!trivial && dist <= separation) {
      detail::record(r, A.format(w) + ": nontrivial but |rho(w) -+ I| = "
                            + detail::sci(dist));
    }
  }
  if (trivial_seen == 0) {
    detail::record(r, "no trivial word was generated");
  }
  return r;
}

}  // namespace ftype
