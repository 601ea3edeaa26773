// For G = < a, b, c, d | a^2 = b^3 = c^2 = d^3 = abcd = 1 > and R = a c, build
// representations of G / N(R^m) where rho(R) has order exactly m.

#include <iostream>

#include "ftype/presentation.hpp"
#include "ftype/represent.hpp"

int main() {
  using namespace ftype;
  auto const P =
      parse_presentation("gens: a b c d\nexps: 2 3 2 3\np: 2\nU: a b\nV: c d\n");
  Word const R = P.alphabet.parse("a c");
  for (long m : {2, 3, 5, 8}) {
    auto const q = quotient_rep(P, R, m, 0);
    std::cout << "m = " << m << ": t0 = " << q.t0
              << ", |tr rho(R) - 2cos(pi/m)| = " << q.trace_residual
              << ", |rho(R)^m -+ I| = " << q.order.power_residual
              << ", lower-power margin = " << q.order.lower_margin << '\n';
  }
}
