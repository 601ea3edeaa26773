// The trefoil group < a, b | a^2 b^3 >: invariants, the word problem, and an
// essential (not faithful) representation.

#include <iostream>

#include "ftype/amalgam.hpp"
#include "ftype/classify.hpp"
#include "ftype/presentation.hpp"
#include "ftype/represent.hpp"

int main() {
  using namespace ftype;
  auto const P = parse_presentation("gens: a b\nexps: 0 0\np: 1\nU: a^2\nV: b^3\n");
  auto const& A = P.alphabet;
  auto const  D = decompose(P);

  std::cout << "chi = " << to_string(euler_characteristic(P)) << '\n'
            << "tits: " << to_string(tits_classify(P)) << '\n'
            << "hyperbolic: " << std::boolalpha << hyperbolicity(P).hyperbolic
            << '\n';

  for (char const* text : {"a^2 b^3", "b a^2 b^-1 a^-2", "a b a^-1 b^-1"}) {
    Word const w = A.parse(text);
    std::cout << text << " trivial: " << is_trivial(w, D) << '\n';
  }

  auto const rep = essential_rep(P, 1);
  std::cout << "representation class: " << to_string(rep.faithfulness)
            << ", residual " << rep.certificate.max_relation_residual() << '\n';
}
