#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ftype/psl2.hpp"

using namespace ftype;
using Catch::Approx;

namespace {

ProjectiveMatrix random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  return ProjectiveMatrix(Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)),
                          Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)));
}

}  // namespace

TEST_CASE("basic matrix algebra", "[psl2]") {
  CHECK(ProjectiveMatrix().trace() == Complex(2.0));
  Complex const s(1.5, 0.25);
  auto const    D = ProjectiveMatrix::diagonal(s);
  CHECK(std::abs(D.trace() - (s + 1.0 / s)) < 1e-15);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto const A = random_matrix(rng);
    CHECK(det_residual(A) <= 1e-12);
    CHECK(distance_to_identity(A.inverse() * A) <= 1e-12);
    CHECK(det_residual(A * A * A) <= 1e-12);
  }
  CHECK_THROWS_AS(ProjectiveMatrix(1.0, 2.0, 2.0, 4.0), std::domain_error);
}

TEST_CASE("projective equality ignores the sign", "[psl2]") {
  ProjectiveMatrix const A(2.0, 1.0, 1.0, 1.0);
  ProjectiveMatrix const B(-2.0, -1.0, -1.0, -1.0);
  CHECK(distance_mod_sign(A, B) < 1e-15);
  CHECK(is_identity(ProjectiveMatrix(-1.0, 0.0, 0.0, -1.0), 1e-15));
}

TEST_CASE("powers", "[psl2]") {
  std::mt19937_64 rng(2);
  auto const      A = random_matrix(rng);
  CHECK(max_abs_diff(A.pow(3).matrix(), (A * A * A).matrix()) < 1e-12);
  CHECK(distance_to_identity(A.pow(-2) * A.pow(2)) < 1e-12);
  CHECK(is_identity(A.pow(0), 0));
}

TEST_CASE("commutator traces", "[psl2]") {
  auto const D1 = ProjectiveMatrix::diagonal(2.0);
  auto const D2 = ProjectiveMatrix::diagonal(Complex(0.3, 1.1));
  CHECK(std::abs(commutator_trace(D1, D2) - 2.0) < 1e-14);

  // Both upper triangular: they fix infinity, so the pair is reducible.
  ProjectiveMatrix const N(1.0, 1.0, 0.0, 1.0);
  CHECK(std::abs(commutator_trace(D1, N) - 2.0) < 1e-14);
  CHECK_FALSE(is_irreducible_pair(D1, N, 1e-9));

  // tr[diag(s,1/s), B] = 2 - bc (s - 1/s)^2 with B = ((1,1),(1,2)).
  ProjectiveMatrix const B(1.0, 1.0, 1.0, 2.0);
  Complex const          expected = 2.0 - 1.0 * 1.0 * std::pow(2.0 - 0.5, 2);
  CHECK(std::abs(commutator_trace(D1, B) - expected) < 1e-13);
  CHECK(std::abs(expected - Complex(-0.25)) < 1e-15);
  CHECK(is_irreducible_pair(D1, B, 1e-9));

  ProjectiveMatrix const N2(1.0, 3.0, 0.0, 1.0);
  CHECK_FALSE(is_irreducible_pair(N, N2, 1e-9));
  CHECK_THROWS_AS(is_irreducible_pair(N, N2, 0.0), std::invalid_argument);
}

TEST_CASE("commutator trace matches the closed form", "[psl2][property]") {
  std::mt19937_64                        rng(4);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    Complex const s(u(rng) + 2.5, u(rng));
    auto const    B        = random_matrix(rng);
    Complex const b        = B(0, 1);
    Complex const c        = B(1, 0);
    Complex const expected = 2.0 - b * c * std::pow(s - 1.0 / s, 2);
    auto const    got = commutator_trace(ProjectiveMatrix::diagonal(s), B);
    CHECK(std::abs(got - expected) <= 1e-9 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("exact orders", "[psl2]") {
  auto const R3 = ProjectiveMatrix::diagonal(std::polar(1.0, std::numbers::pi / 3));
  CHECK(std::abs(R3.trace() - 1.0) < 1e-15);
  CHECK(has_order(R3, 3, 1e-9));
  CHECK_FALSE(has_order(ProjectiveMatrix(), 3, 1e-9));
  auto const R4 = ProjectiveMatrix::diagonal(std::polar(1.0, std::numbers::pi / 4));
  CHECK_FALSE(has_order(R4, 2, 1e-9));
  CHECK(has_order(R4, 4, 1e-9));
  CHECK_THROWS_AS(has_order(R4, 1, 1e-9), std::invalid_argument);
  CHECK(elliptic_trace(2) == Approx(0.0).margin(1e-15));
  CHECK(elliptic_trace(3) == Approx(1.0));
}

TEST_CASE("exact order implies an elliptic trace", "[psl2][property]") {
  std::mt19937_64 rng(8);
  for (long m = 2; m <= 9; ++m) {
    for (long q = 1; q < 2 * m; ++q) {
      auto const R = ProjectiveMatrix::diagonal(
                         std::polar(1.0, std::numbers::pi * q / m))
                         .conjugated_by(random_matrix(rng));
      if (std::gcd(q, m) != 1) {
        continue;
      }
      REQUIRE(has_order(R, m, 1e-8));
      double const tr = std::abs(R.trace().real());
      CHECK(std::abs(tr - std::abs(2.0 * std::cos(std::numbers::pi * q / m)))
            < 1e-8);
    }
  }
}

TEST_CASE("diagonalization", "[psl2]") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto const A = random_matrix(rng);
    auto const d = diagonalize(A);
    auto const back =
        ProjectiveMatrix::diagonal(d.eigenvalue).conjugated_by(d.basis);
    CHECK(distance_mod_sign(back, A) < 1e-9);
  }
  CHECK_THROWS_AS(diagonalize(ProjectiveMatrix(1.0, 1.0, 0.0, 1.0)),
                  std::domain_error);
}
