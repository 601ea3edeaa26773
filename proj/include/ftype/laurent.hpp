#pragma once

// Laurent polynomials in t with complex coefficients, 2x2 matrices over them,
// and root finding for f(t) = target.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ftype/psl2.hpp"

namespace ftype {

class LaurentPolynomial {
 public:
  /// Coefficients with magnitude at or below this are dropped.
  static constexpr double drop_threshold = 1e-14;

  LaurentPolynomial() = default;

  LaurentPolynomial(Complex c) {  // NOLINT(google-explicit-constructor)
    set(0, c);
  }
  LaurentPolynomial(double c)  // NOLINT(google-explicit-constructor)
      : LaurentPolynomial(Complex(c)) {}

  static LaurentPolynomial monomial(int exponent, Complex c = 1.0) {
    LaurentPolynomial p;
    p.set(exponent, c);
    return p;
  }

  /// t + t^{-1} style construction from (exponent, coefficient) pairs.
  static LaurentPolynomial
  from_terms(std::initializer_list<std::pair<int, Complex>> terms) {
    LaurentPolynomial p;
    for (auto const& [e, c] : terms) {
      p.set(e, p.coefficient(e) + c);
    }
    return p;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept {
    return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
  }

  /// Largest and smallest exponents with a stored coefficient.
  int max_exponent() const {
    require_nonzero();
    return coeffs_.rbegin()->first;
  }
  int min_exponent() const {
    require_nonzero();
    return coeffs_.begin()->first;
  }

  Complex coefficient(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Complex(0.0) : it->second;
  }

  std::map<int, Complex> const& terms() const noexcept { return coeffs_; }

  Complex evaluate(Complex t) const {
    if (t == Complex(0.0) && !coeffs_.empty() && coeffs_.begin()->first < 0) {
      throw std::domain_error("LaurentPolynomial::evaluate: t = 0 with "
                              "negative exponents");
    }
    Complex acc(0.0);
    for (auto const& [e, c] : coeffs_) {
      acc += c * std::pow(t, e);
    }
    return acc;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial const& a,
                                     LaurentPolynomial const& b) {
    LaurentPolynomial out = a;
    for (auto const& [e, c] : b.coeffs_) {
      out.set(e, out.coefficient(e) + c);
    }
    return out;
  }

  friend LaurentPolynomial operator-(LaurentPolynomial const& a,
                                     LaurentPolynomial const& b) {
    LaurentPolynomial out = a;
    for (auto const& [e, c] : b.coeffs_) {
      out.set(e, out.coefficient(e) - c);
    }
    return out;
  }

  friend LaurentPolynomial operator*(LaurentPolynomial const& a,
                                     LaurentPolynomial const& b) {
    std::map<int, Complex> acc;
    for (auto const& [ea, ca] : a.coeffs_) {
      for (auto const& [eb, cb] : b.coeffs_) {
        acc[ea + eb] += ca * cb;
      }
    }
    LaurentPolynomial out;
    for (auto const& [e, c] : acc) {
      out.set(e, c);
    }
    return out;
  }

  bool operator==(LaurentPolynomial const&) const = default;

 private:
  void set(int e, Complex c) {
    if (std::abs(c) <= drop_threshold) {
      coeffs_.erase(e);
    } else {
      coeffs_[e] = c;
    }
  }

  void require_nonzero() const {
    if (coeffs_.empty()) {
      throw std::domain_error("LaurentPolynomial: zero polynomial has no "
                              "degree");
    }
  }

  std::map<int, Complex> coeffs_;
};

/// Row-major 2x2 matrix of Laurent polynomials.
struct LaurentMatrix {
  LaurentPolynomial a, b, c, d;

  static LaurentMatrix constant(ProjectiveMatrix const& m) {
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  static LaurentMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

  /// diag(t, t^{-1})
  static LaurentMatrix diagonal_twist() {
    return {LaurentPolynomial::monomial(1), 0.0, 0.0,
            LaurentPolynomial::monomial(-1)};
  }
  static LaurentMatrix diagonal_twist_inverse() {
    return {LaurentPolynomial::monomial(-1), 0.0, 0.0,
            LaurentPolynomial::monomial(1)};
  }

  /// ((1, t), (0, 1))
  static LaurentMatrix parabolic_twist() {
    return {1.0, LaurentPolynomial::monomial(1), 0.0, 1.0};
  }
  static LaurentMatrix parabolic_twist_inverse() {
    return {1.0, LaurentPolynomial::monomial(1, -1.0), 0.0, 1.0};
  }

  friend LaurentMatrix operator+(LaurentMatrix const& x, LaurentMatrix const& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }

  friend LaurentMatrix operator*(LaurentMatrix const& x, LaurentMatrix const& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  LaurentPolynomial trace() const { return a + d; }

  Mat2 evaluate(Complex t) const {
    Mat2 m;
    m << a.evaluate(t), b.evaluate(t), c.evaluate(t), d.evaluate(t);
    return m;
  }

  bool operator==(LaurentMatrix const&) const = default;
};

struct Root {
  Complex t;
  double  residual = 0;  // |f(t) - target|
};

namespace detail {
  // Ascending coefficients of t^{-lo} (f - target); lo = min exponent.
  inline std::vector<Complex> shifted_coefficients(LaurentPolynomial const& g,
                                                   int&                     lo) {
    lo         = g.min_exponent();
    int const hi = g.max_exponent();
    std::vector<Complex> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (auto const& [e, v] : g.terms()) {
      c[static_cast<std::size_t>(e - lo)] = v;
    }
    return c;
  }

  inline void horner(std::vector<Complex> const& c, Complex t, Complex& value,
                     Complex& derivative) {
    value      = 0.0;
    derivative = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      derivative = derivative * t + value;
      value      = value * t + *it;
    }
  }
}  // namespace detail

/// All nonzero t with f(t) = target.
///
/// t^{-lo} (f - target) is an ordinary polynomial with nonzero constant term;
/// its roots are the eigenvalues of the companion matrix, each followed by a
/// Newton polish step (repeated, up to 8 steps, while the residual exceeds
/// tol / 100). The number of roots equals the degree of that polynomial, counted
/// with multiplicity.
inline std::vector<Root> solve_on_target(LaurentPolynomial const& f,
                                         Complex target, double tol = 1e-8) {
  if (f.is_constant()) {
    throw std::domain_error("solve_on_target: constant Laurent polynomial");
  }
  LaurentPolynomial const g = f - LaurentPolynomial(target);
  int                     lo = 0;
  auto const              c  = detail::shifted_coefficients(g, lo);
  auto const              degree = static_cast<Eigen::Index>(c.size() - 1);

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  Complex const    lead      = c.back();
  for (Eigen::Index i = 0; i < degree; ++i) {
    companion(0, i) = -c[static_cast<std::size_t>(degree - 1 - i)] / lead;
    if (i + 1 < degree) {
      companion(i + 1, i) = 1.0;
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("solve_on_target: eigenvalue solver failed");
  }

  std::vector<Root> roots;
  for (Eigen::Index i = 0; i < degree; ++i) {
    Complex t = solver.eigenvalues()(i);
    for (int step = 0; step < 8; ++step) {
      Complex p, dp;
      detail::horner(c, t, p, dp);
      if (std::abs(dp) > 0) {
        Complex const next = t - p / dp;
        if (std::isfinite(next.real()) && std::isfinite(next.imag())
            && next != Complex(0.0)) {
          t = next;
        }
      }
      if (std::abs(g.evaluate(t)) <= tol * 1e-2) {
        break;
      }
    }
    roots.push_back({t, std::abs(f.evaluate(t) - target)});
  }
  return roots;
}

}  // namespace ftype
