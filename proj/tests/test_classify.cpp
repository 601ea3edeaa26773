#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "ftype/classify.hpp"
#include "ftype/oracle.hpp"
#include "ftype/presentation.hpp"
#include "ftype/random.hpp"

using namespace ftype;

namespace {

FTypePresentation pres(std::string const& text) { return parse_presentation(text); }

FTypePresentation const H1 =
    pres("gens: a b\nexps: 0 0\np: 1\nU: a^2\nV: b^2\n");
FTypePresentation const H2 =
    pres("gens: a b c\nexps: 2 2 0\np: 2\nU: a b\nV: c^2\n");
FTypePresentation const H3 =
    pres("gens: a b c d\nexps: 2 2 2 2\np: 2\nU: a b\nV: c d\n");
FTypePresentation const trefoil =
    pres("gens: a b\nexps: 0 0\np: 1\nU: a^2\nV: b^3\n");
FTypePresentation const remark =
    pres("gens: a1 a2 a3 a4\nexps: 2 2 2 3\np: 2\nU: a1 a2\nV: a3 a4\n");
FTypePresentation const special2323 =
    pres("gens: a b c d\nexps: 2 3 2 3\np: 2\nU: a b\nV: c d\n");

FTypePresentation all_exps(std::size_t n, long e, std::size_t p = 2) {
  std::string gens, exps, u, v;
  for (std::size_t i = 0; i < n; ++i) {
    std::string const g = "x" + std::to_string(i);
    gens += g + " ";
    exps += std::to_string(e) + " ";
    (i < p ? u : v) += g + " ";
  }
  return pres("gens: " + gens + "\nexps: " + exps + "\np: " + std::to_string(p)
              + "\nU: " + u + "\nV: " + v + "\n");
}

}  // namespace

TEST_CASE("Euler characteristic", "[classify]") {
  CHECK(euler_characteristic(H1) == Rational(0));
  CHECK(euler_characteristic(H2) == Rational(0));
  CHECK(euler_characteristic(H3) == Rational(0));
  CHECK(euler_characteristic(trefoil) == Rational(0));
  auto const P = pres("gens: a b c\nexps: 2 3 7\np: 2\nU: a b\nV: c\n");
  CHECK(euler_characteristic(P) == Rational(-1, 42));
  CHECK(to_string(Rational(-1, 42)) == "-1/42");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("Riemann-Hurwitz", "[classify]") {
  CHECK(riemann_hurwitz(Rational(-1, 42), 84) == Rational(-2));
  CHECK(riemann_hurwitz(Rational(0), 17) == Rational(0));
  CHECK(riemann_hurwitz(Rational(-1, 2), 3) == Rational(-3, 2));
  CHECK_THROWS_AS(riemann_hurwitz(Rational(1), 0), std::invalid_argument);
}

TEST_CASE("Riemann-Hurwitz is linear in the index", "[classify][property]") {
  std::mt19937_64                      rng(3);
  std::uniform_int_distribution<long>  num(-200, 200);
  std::uniform_int_distribution<long>  den(1, 100);
  std::uniform_int_distribution<long>  idx(1, 1000);
  for (int i = 0; i < 100; ++i) {
    Rational const chi(num(rng), den(rng));
    long const     j = idx(rng);
    long const     k = idx(rng);
    CHECK(riemann_hurwitz(chi, 1) == chi);
    CHECK(riemann_hurwitz(chi, j + k)
          == riemann_hurwitz(chi, j) + riemann_hurwitz(chi, k));
    CHECK(riemann_hurwitz(riemann_hurwitz(chi, j), k)
          == riemann_hurwitz(chi, j * k));
  }
}

TEST_CASE("deficiency", "[classify]") {
  auto const five = deficiency(all_exps(5, 2), 2);
  CHECK(five.deficiency == Rational(2));
  CHECK(five.maps_onto_free_rank2);
  CHECK_FALSE(five.extends_hypothesis);

  auto const four = deficiency(all_exps(4, 2), 1);
  CHECK(four.deficiency == Rational(1));
  CHECK_FALSE(four.maps_onto_free_rank2);

  auto const r = deficiency(remark, 6);
  CHECK(r.deficiency == Rational(2));
  CHECK(r.maps_onto_free_rank2);

  auto const t = deficiency(trefoil, 1);
  CHECK(t.deficiency == Rational(1));
  CHECK(t.extends_hypothesis);
  CHECK_THROWS_AS(deficiency(trefoil, 0), std::invalid_argument);
}

TEST_CASE("Tits alternative", "[classify]") {
  CHECK(tits_classify(H1).solvable == SolvablePattern::H1);
  CHECK(tits_classify(H2).solvable == SolvablePattern::H2);
  CHECK(tits_classify(H3).solvable == SolvablePattern::H3);
  CHECK(to_string(tits_classify(H3)) == "Solvable(H3)");
  CHECK(tits_classify(trefoil).contains_free_rank2());
  CHECK(tits_classify(remark).contains_free_rank2());
  auto const squared =
      pres("gens: a b c d\nexps: 2 2 2 2\np: 2\nU: a b a b\nV: c d\n");
  CHECK(tits_classify(squared).contains_free_rank2());

  // Symmetric variants: inverted words, swapped factors, relabelling.
  CHECK(tits_classify(pres("gens: a b\nexps: 0 0\np: 1\nU: a^-2\nV: b^-2\n"))
            .solvable
        == SolvablePattern::H1);
  CHECK(tits_classify(pres("gens: c a b\nexps: 0 2 2\np: 1\nU: c^2\nV: b a\n"))
            .solvable
        == SolvablePattern::H2);
  CHECK(tits_classify(pres("gens: a b c d\nexps: 2 2 2 2\np: 2\nU: b a\nV: d c\n"))
            .solvable
        == SolvablePattern::H3);
}

TEST_CASE("hyperbolicity", "[classify]") {
  auto const t = hyperbolicity(trefoil);
  CHECK_FALSE(t.hyperbolic);
  REQUIRE(t.obstruction_U);
  REQUIRE(t.obstruction_V);
  auto const& pu = std::get<ProperPower>(*t.obstruction_U);
  auto const& pv = std::get<ProperPower>(*t.obstruction_V);
  CHECK(trefoil.alphabet.format(pu.root) == "a");
  CHECK(pu.exponent == 2);
  CHECK(trefoil.alphabet.format(pv.root) == "b");
  CHECK(pv.exponent == 3);

  auto const r = hyperbolicity(remark);
  CHECK(r.hyperbolic);
  REQUIRE(r.obstruction_U);
  CHECK(std::holds_alternative<InvolutionPair>(*r.obstruction_U));
  CHECK_FALSE(r.obstruction_V);

  CHECK_FALSE(hyperbolicity(H1).hyperbolic);
  CHECK(hyperbolicity(special2323).hyperbolic);
}

TEST_CASE("solvable patterns are never hyperbolic", "[classify][property]") {
  std::mt19937_64 rng(17);
  for (auto const* base : {&H1, &H2, &H3}) {
    CHECK_FALSE(hyperbolicity(*base).hyperbolic);
    for (int i = 0; i < 100; ++i) {
      // Rename generators at random; the verdicts must not change.
      auto names = base->alphabet.names();
      for (auto& nm : names) {
        nm = "g" + std::to_string(rng() % 1000) + nm;
      }
      FTypePresentation P = *base;
      P.alphabet          = Alphabet(names, base->alphabet.exponents());
      CHECK(tits_classify(P) == tits_classify(*base));
      CHECK_FALSE(hyperbolicity(P).hyperbolic);
    }
  }
}

TEST_CASE("hyperbolicity is invariant under swapping the factors",
          "[classify][property]") {
  auto const A = Alphabet({"a", "b", "c", "d", "e"}, {2, 0, 3, 2, 2});
  Rng        rng = make_rng(23);
  int        compared = 0;
  for (int i = 0; i < 3000 && compared < 100; ++i) {
    FTypePresentation P{A, 2, random_word(A, 0, 2, 4, rng),
                        random_word(A, 2, 5, 4, rng)};
    auto const v = validate(P);
    if (!v.ok || !v.omitted_generators.empty()) {
      continue;
    }
    // Swap: right factor first, V becomes the left word.
    std::vector<std::string> names;
    std::vector<long>        exps;
    for (std::size_t g : {2, 3, 4, 0, 1}) {
      names.push_back(A.name(g));
      exps.push_back(A.exponent(g));
    }
    Alphabet const B(names, exps);
    auto remap = [&](Word const& w) {
      std::vector<std::pair<std::size_t, long>> raw;
      for (auto const& s : w) {
        raw.emplace_back(s.generator >= 2 ? s.generator - 2 : s.generator + 3,
                         s.power);
      }
      return B.normalize(raw);
    };
    FTypePresentation const Q{B, 3, remap(P.V), remap(P.U)};
    REQUIRE(validate(Q).ok);
    CHECK(hyperbolicity(P).hyperbolic == hyperbolicity(Q).hyperbolic);
    CHECK(malnormal_amalgam(P).criterion_holds
          == malnormal_amalgam(Q).criterion_holds);
    ++compared;
  }
  CHECK(compared >= 50);
}

TEST_CASE("obstructions agree with brute force on the remark group",
          "[classify][oracle]") {
  auto const& A     = remark.alphabet;
  auto const  words = oracle::enumerate_words(A, 5, 1);
  oracle::InvolutionOracle const inv(A, words);
  CHECK(inv.find(remark.U).has_value());
  CHECK_FALSE(inv.find(remark.V).has_value());
  oracle::PowerOracle const pw(A, words, 6);
  CHECK_FALSE(pw.is_proper_power(remark.U));
  CHECK_FALSE(pw.is_proper_power(remark.V));
}

TEST_CASE("malnormality criterion", "[classify]") {
  auto const s = malnormal_amalgam(special2323);
  CHECK(s.criterion_holds);
  CHECK(s.consequences.size() == 2);
  CHECK_FALSE(s.witness_U);

  auto const h = malnormal_amalgam(H3);
  CHECK_FALSE(h.criterion_holds);
  REQUIRE(h.witness_U);
  CHECK(std::holds_alternative<InvolutionPair>(*h.witness_U));

  auto const t = malnormal_amalgam(trefoil);
  CHECK_FALSE(t.criterion_holds);
  CHECK(std::holds_alternative<ProperPower>(*t.witness_U));
  CHECK(std::holds_alternative<ProperPower>(*t.witness_V));
}

TEST_CASE("quotient conditions", "[classify]") {
  auto const q = quotient_conditions(special2323, 3);
  CHECK(q.quantity == Rational(2));
  CHECK(q.condition_i);
  CHECK_FALSE(q.condition_ii);
  CHECK(q.free_subgroup);
  CHECK_FALSE(q.virtually_torsion_free);

  // n = 5, all e_i = 2, split 2 | 3.
  auto const P5 = pres(
      "gens: a b c d e\nexps: 2 2 2 2 2\np: 2\nU: a b\nV: c d e\n");
  auto const q5 = quotient_conditions(P5, 2);
  CHECK(q5.quantity == Rational(3));
  CHECK(q5.condition_i);
  CHECK_FALSE(q5.condition_ii);
  CHECK(q5.free_subgroup);

  auto const P6 = pres(
      "gens: a b c d e f\nexps: 0 0 0 0 0 0\np: 3\nU: a b c\nV: d e f\n");
  auto const q6 = quotient_conditions(P6, 2);
  CHECK(q6.quantity == Rational(1, 2));
  CHECK_FALSE(q6.condition_i);
  CHECK(q6.condition_ii);

  CHECK(quotient_conditions(special2323, 8).virtually_torsion_free);
  CHECK_FALSE(quotient_conditions(H3, 2).free_subgroup);
  CHECK_THROWS_AS(quotient_conditions(trefoil, 3), std::invalid_argument);
  CHECK_THROWS_AS(quotient_conditions(special2323, 1), std::invalid_argument);
}
