#pragma once

// Projective 2x2 complex matrices: SL(2,C) lifts compared modulo +-I.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ftype {

using Complex = std::complex<double>;
using Mat2    = Eigen::Matrix2cd;

/// Unit-determinant lift of an element of PSL(2,C). Constructors renormalize
/// by a square root of the determinant; products and inverses of unit lifts
/// are kept as computed.
class ProjectiveMatrix {
 public:
  ProjectiveMatrix() : m_(Mat2::Identity()) {}

  explicit ProjectiveMatrix(Mat2 const& m) : m_(m) { renormalize(); }

  ProjectiveMatrix(Complex a, Complex b, Complex c, Complex d) {
    m_ << a, b, c, d;
    renormalize();
  }

  static ProjectiveMatrix identity() { return {}; }

  static ProjectiveMatrix diagonal(Complex s) {
    return {s, 0.0, 0.0, 1.0 / s};
  }

  Mat2 const& matrix() const noexcept { return m_; }
  Complex     operator()(int i, int j) const { return m_(i, j); }

  Complex trace() const { return m_.trace(); }
  Complex det() const { return m_.determinant(); }

  ProjectiveMatrix inverse() const {
    Mat2 inv;
    inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
    return ProjectiveMatrix(inv, Raw{});
  }

  friend ProjectiveMatrix operator*(ProjectiveMatrix const& a,
                                    ProjectiveMatrix const& b) {
    return ProjectiveMatrix(a.m_ * b.m_, Raw{});
  }

  ProjectiveMatrix pow(long k) const {
    ProjectiveMatrix base = k < 0 ? inverse() : *this;
    long             n    = k < 0 ? -k : k;
    ProjectiveMatrix acc;
    while (n > 0) {
      if (n & 1) {
        acc = acc * base;
      }
      n >>= 1;
      if (n > 0) {
        base = base * base;
      }
    }
    return acc;
  }

  /// g * this * g^{-1}
  ProjectiveMatrix conjugated_by(ProjectiveMatrix const& g) const {
    return g * *this * g.inverse();
  }

 private:
  struct Raw {};
  ProjectiveMatrix(Mat2 const& m, Raw) : m_(m) {}

  void renormalize() {
    Complex const d     = m_.determinant();
    double const  scale = std::max(1.0, m_.cwiseAbs2().sum());
    if (!std::isfinite(std::abs(d)) || std::abs(d) <= 1e-14 * scale) {
      throw std::domain_error("ProjectiveMatrix: singular matrix");
    }
    m_ /= std::sqrt(d);
  }

  Mat2 m_;
};

/// Entrywise max distance between two lifts.
inline double max_abs_diff(Mat2 const& a, Mat2 const& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// min over signs of the max-entry distance between A and +-B.
inline double distance_mod_sign(ProjectiveMatrix const& a,
                                ProjectiveMatrix const& b) {
  return std::min(max_abs_diff(a.matrix(), b.matrix()),
                  max_abs_diff(a.matrix(), -b.matrix()));
}

inline double distance_to_identity(ProjectiveMatrix const& m) {
  return distance_mod_sign(m, ProjectiveMatrix::identity());
}

inline bool is_identity(ProjectiveMatrix const& m, double tol) {
  return distance_to_identity(m) <= tol;
}

inline double det_residual(ProjectiveMatrix const& m) {
  return std::abs(m.det() - 1.0);
}

/// tr(A B A^{-1} B^{-1}); independent of the chosen lifts.
inline Complex commutator_trace(ProjectiveMatrix const& a,
                                ProjectiveMatrix const& b) {
  return (a * b * a.inverse() * b.inverse()).trace();
}

/// |tr[A,B] - 2|: zero iff A and B share a fixed point on the Riemann sphere.
inline double irreducibility_margin(ProjectiveMatrix const& a,
                                    ProjectiveMatrix const& b) {
  return std::abs(commutator_trace(a, b) - 2.0);
}

inline bool is_irreducible_pair(ProjectiveMatrix const& a,
                                ProjectiveMatrix const& b, double tol) {
  if (!(tol > 0)) {
    throw std::invalid_argument("is_irreducible_pair: tol must be positive");
  }
  return irreducibility_margin(a, b) > tol;
}

/// Residual of M^m against +-I and the smallest distance of M^j from +-I for
/// 1 <= j < m.
struct OrderCheck {
  double power_residual = 0;
  double lower_margin   = 0;

  bool passes(double tol) const {
    return power_residual <= tol && lower_margin > tol;
  }
};

inline OrderCheck order_check(ProjectiveMatrix const& m, long order) {
  if (order < 1) {
    throw std::invalid_argument("order_check: order must be >= 1");
  }
  OrderCheck       out;
  out.lower_margin = std::numeric_limits<double>::infinity();
  ProjectiveMatrix acc;
  for (long j = 1; j < order; ++j) {
    acc              = acc * m;
    out.lower_margin = std::min(out.lower_margin, distance_to_identity(acc));
  }
  out.power_residual = distance_to_identity(acc * m);
  return out;
}

/// M has exact order m in PSL(2,C): M^m = +-I and no smaller power is.
inline bool has_order(ProjectiveMatrix const& m, long order, double tol) {
  if (order < 2) {
    throw std::invalid_argument("has_order: m must be >= 2");
  }
  return order_check(m, order).passes(tol);
}

/// 2 cos(pi / m), the trace of a rotation of order m.
inline double elliptic_trace(long m) {
  return 2.0 * std::cos(std::numbers::pi / static_cast<double>(m));
}

/// A = P diag(lambda, 1/lambda) P^{-1}, eigenvector columns of P in that
/// order. Requires tr(A)^2 != 4.
struct Diagonalization {
  Complex          eigenvalue;
  ProjectiveMatrix basis;
};

inline Diagonalization diagonalize(ProjectiveMatrix const& a) {
  Complex const tr   = a.trace();
  Complex const disc = std::sqrt(tr * tr - 4.0);
  if (std::abs(disc) < 1e-9) {
    throw std::domain_error("diagonalize: parabolic or +-I matrix");
  }
  Complex const lambda = (tr + disc) / 2.0;
  Complex const mu     = (tr - disc) / 2.0;
  auto const&   m      = a.matrix();
  // An eigenvector for eigenvalue x: a nonzero column of (A - x I)^adj.
  auto eigvec = [&](Complex x) {
    Eigen::Vector2cd v1(m(0, 1), x - m(0, 0));
    Eigen::Vector2cd v2(x - m(1, 1), m(1, 0));
    Eigen::Vector2cd v = v1.norm() >= v2.norm() ? v1 : v2;
    return Eigen::Vector2cd(v / v.norm());
  };
  Mat2 p;
  p.col(0) = eigvec(lambda);
  p.col(1) = eigvec(mu);
  return {lambda, ProjectiveMatrix(p)};
}

}  // namespace ftype
