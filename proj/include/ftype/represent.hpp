#pragma once

// Representations of F-type groups into PSL(2,C).
//
// essential_rep builds rho: G -> PSL(2,C) whose restrictions to G1 and G2 are
// generic (hence faithful) representations of the free products of cyclics,
// glued so that rho(U^{-1}) = rho(V) = diag(s, 1/s). quotient_rep twists the
// G2 part by T = diag(t, 1/t) and solves trace(rho(R)) = 2 cos(pi/m), giving a
// representation of G / N(R^m) in which rho(R) has exact order m.
//
// Genericity is emulated by seeded random draws; every claim is backed by a
// residual or margin recorded in the certificate.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftype/amalgam.hpp"
#include "ftype/error.hpp"
#include "ftype/laurent.hpp"
#include "ftype/presentation.hpp"
#include "ftype/psl2.hpp"
#include "ftype/random.hpp"
#include "ftype/words.hpp"

namespace ftype {

struct Tolerances {
  double residual         = 1e-9;  // relation residuals of a construction
  double margin           = 1e-6;  // irreducibility / non-identity margins
  int    factor_retries   = 32;
  int    quotient_retries = 8;
};

enum class FaithfulnessClass { Faithful, EssentialOnly };

inline char const* to_string(FaithfulnessClass c) {
  return c == FaithfulnessClass::Faithful ? "Faithful" : "EssentialOnly";
}

struct RelationResidual {
  std::string relation;
  double      residual = 0;
};

struct PairMargin {
  std::size_t first  = 0;
  std::size_t second = 0;
  double      margin = 0;
};

struct Certificate {
  std::vector<RelationResidual> relation_residuals;
  /// |tr[rho(a_i), rho(a_j)] - 2| for generators in the same factor.
  std::vector<PairMargin> pair_margins;
  /// Distance of rho(V) from diagonal form, and of rho(U^{-1}) from rho(V).
  double boundary_residual = 0;
  /// min |tr[rho(g), rho(U)] - 2| over sampled g in G1 off the centralizer of
  /// U (resp. G2 and V); infinity when nothing was sampled.
  double sampled_boundary_margin = std::numeric_limits<double>::infinity();
  /// Largest |tr[rho(g), rho(h)] - 2| over sampled pairs; the image looks
  /// elementary when this stays below the margin tolerance.
  double max_sampled_commutator = 0;
  bool   elementary             = false;
  bool   passed                 = false;
  int    retries                = 0;
  std::vector<std::string> notes;

  double max_relation_residual() const {
    double r = 0;
    for (auto const& x : relation_residuals) {
      r = std::max(r, x.residual);
    }
    return r;
  }

  double min_pair_margin() const {
    double r = std::numeric_limits<double>::infinity();
    for (auto const& x : pair_margins) {
      r = std::min(r, x.margin);
    }
    return r;
  }
};

/// Assignment of matrices to (some of) the generators of an alphabet.
struct Representation {
  Alphabet                                     alphabet;
  std::vector<std::optional<ProjectiveMatrix>> images;
  std::uint64_t                                seed = 0;
  FaithfulnessClass faithfulness = FaithfulnessClass::EssentialOnly;
  /// Root t of the trace-matching twist used by align_boundary, if any.
  std::optional<Complex> twist;
  Certificate            certificate;

  Representation() = default;
  explicit Representation(Alphabet a)
      : alphabet(std::move(a)), images(alphabet.size()) {}

  bool assigned(std::size_t g) const { return images.at(g).has_value(); }

  ProjectiveMatrix const& generator_image(std::size_t g) const {
    if (!assigned(g)) {
      throw std::invalid_argument("Representation: generator '"
                                  + alphabet.name(g) + "' has no image");
    }
    return *images[g];
  }

  ProjectiveMatrix image(Word const& w) const {
    ProjectiveMatrix acc;
    for (auto const& s : w) {
      acc = acc * generator_image(s.generator).pow(s.power);
    }
    return acc;
  }
};

////////////////////////////////////////////////////////////////////////////
// Quotient errors
////////////////////////////////////////////////////////////////////////////

enum class QuotientErrorCode {
  NotSpecial,
  RelatorInAmalgam,
  NotReducedForm,
  CiInU,
  DiInV,
  CiInU1,
  DiInV1,
  NumericFailure,
};

inline char const* to_string(QuotientErrorCode c) {
  switch (c) {
    case QuotientErrorCode::NotSpecial:
      return "NotSpecial";
    case QuotientErrorCode::RelatorInAmalgam:
      return "RelatorInAmalgam";
    case QuotientErrorCode::NotReducedForm:
      return "NotReducedForm";
    case QuotientErrorCode::CiInU:
      return "CiInU";
    case QuotientErrorCode::DiInV:
      return "DiInV";
    case QuotientErrorCode::CiInU1:
      return "CiInU1";
    case QuotientErrorCode::DiInV1:
      return "DiInV1";
    case QuotientErrorCode::NumericFailure:
      return "NumericFailure";
  }
  return "?";
}

class QuotientError : public std::runtime_error {
 public:
  QuotientError(QuotientErrorCode code, std::string const& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  QuotientErrorCode code() const noexcept { return code_; }

 private:
  QuotientErrorCode code_;
};

////////////////////////////////////////////////////////////////////////////
// Building blocks
////////////////////////////////////////////////////////////////////////////

namespace detail {

  inline Complex random_unit_circle(Rng& rng) {
    std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, arg(rng));
  }

  /// Random SL(2,C) matrix with condition number at most 2. For a unit
  /// determinant the squared Frobenius norm is k + 1/k, k the condition
  /// number, so bounding it keeps products of images well scaled.
  inline ProjectiveMatrix random_sl2(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (;;) {
      Mat2 m;
      m << Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng)),
          Complex(nd(rng), nd(rng)), Complex(nd(rng), nd(rng));
      if (std::abs(m.determinant()) < 0.2) {
        continue;
      }
      ProjectiveMatrix p(m);
      if (p.matrix().squaredNorm() <= 2.0 + 1.0 / 2.0) {
        return p;
      }
    }
  }

  /// Elliptic of exact order e >= 2 (trace 2 cos(pi/e)) or, for e = 0, a
  /// loxodromic with |trace| in [2.5, 3], conjugated by a random matrix.
  inline ProjectiveMatrix random_generator_image(long e, Rng& rng) {
    Complex lambda;
    if (e >= 2) {
      lambda = std::polar(1.0, std::numbers::pi / static_cast<double>(e));
    } else {
      std::uniform_real_distribution<double> mod(2.5, 3.0);
      Complex const tau = mod(rng) * random_unit_circle(rng);
      lambda            = (tau + std::sqrt(tau * tau - 4.0)) / 2.0;
    }
    return ProjectiveMatrix::diagonal(lambda).conjugated_by(random_sl2(rng));
  }

  inline void record_pairs(Representation const& rep, std::size_t first,
                           std::size_t last, Certificate& cert) {
    for (std::size_t i = first; i < last; ++i) {
      for (std::size_t j = i + 1; j < last; ++j) {
        if (rep.assigned(i) && rep.assigned(j)) {
          cert.pair_margins.push_back(
              {i, j,
               irreducibility_margin(*rep.images[i], *rep.images[j])});
        }
      }
    }
  }

  inline void record_torsion(Representation const& rep, Certificate& cert) {
    auto const& A = rep.alphabet;
    for (std::size_t g = 0; g < A.size(); ++g) {
      if (!rep.assigned(g) || A.exponent(g) == 0) {
        continue;
      }
      cert.relation_residuals.push_back(
          {A.name(g) + "^" + std::to_string(A.exponent(g)),
           distance_to_identity(rep.images[g]->pow(A.exponent(g)))});
    }
  }

  /// Primitive root of a cyclically reduced word of infinite order.
  inline Word primitive_root(Alphabet const& A, Word const& w) {
    auto const pp = A.is_proper_power(w);
    return pp ? pp->root : w;
  }

  /// min |tr[rho(g), rho(w)] - 2| over random g in [first, last) outside the
  /// centralizer <root(w)>.
  inline double sample_boundary_margin(Representation const& rep,
                                       Word const& w, std::size_t first,
                                       std::size_t last, Rng& rng,
                                       int samples = 24) {
    auto const&      A    = rep.alphabet;
    Word const       root = primitive_root(A, w);
    ProjectiveMatrix img  = rep.image(w);
    double           best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      Word const g = random_word(A, first, last, 6, rng);
      if (A.power_exponent(g, root)) {
        continue;
      }
      best = std::min(best, irreducibility_margin(rep.image(g), img));
    }
    return best;
  }

}  // namespace detail

/// Generic representation of the free product of cyclics on generators
/// [first, last): order-e generators map to elliptics of exact order e,
/// infinite generators to loxodromics. Retries with fresh draws until every
/// generator pair is irreducible and every image has the right order.
inline Representation rep_factor(Alphabet const& A, std::size_t first,
                                 std::size_t last, std::uint64_t seed,
                                 Tolerances const& tol = {}) {
  if (first >= last || last > A.size()) {
    throw std::invalid_argument("rep_factor: empty generator range");
  }
  for (int attempt = 0; attempt < tol.factor_retries; ++attempt) {
    Rng            rng = make_rng(seed, 1 + first, static_cast<std::uint64_t>(attempt));
    Representation rep(A);
    rep.seed = seed;
    for (std::size_t g = first; g < last; ++g) {
      rep.images[g] = detail::random_generator_image(A.exponent(g), rng);
    }
    Certificate cert;
    cert.retries = attempt;
    detail::record_torsion(rep, cert);
    detail::record_pairs(rep, first, last, cert);
    bool ok = cert.max_relation_residual() <= tol.residual
              && cert.min_pair_margin() > tol.margin;
    for (std::size_t g = first; g < last && ok; ++g) {
      long const e = A.exponent(g);
      ok = distance_to_identity(*rep.images[g]) > tol.margin
           && (e == 0 || has_order(*rep.images[g], e, tol.residual));
    }
    if (ok) {
      cert.passed      = true;
      rep.certificate  = std::move(cert);
      return rep;
    }
  }
  throw NumericFailure("rep_factor: no generic draw after "
                       + std::to_string(tol.factor_retries) + " attempts");
}

namespace detail {

  inline Representation conjugate_images(Representation rep,
                                         ProjectiveMatrix const& g,
                                         std::size_t first, std::size_t last) {
    ProjectiveMatrix const g_inv = g.inverse();
    for (std::size_t i = first; i < last; ++i) {
      if (rep.assigned(i)) {
        rep.images[i] = g * *rep.images[i] * g_inv;
      }
    }
    return rep;
  }

  /// Conjugate by diag(r, 1/r), r > 0, minimizing the summed squared norms
  /// of the generator images. Diagonal boundaries stay diagonal.
  inline Representation balance(Representation rep) {
    double upper = 0.0;
    double lower = 0.0;
    for (auto const& img : rep.images) {
      if (img) {
        upper += std::norm((*img)(0, 1));
        lower += std::norm((*img)(1, 0));
      }
    }
    if (upper <= 0.0 || lower <= 0.0) {
      return rep;
    }
    double const r = std::pow(lower / upper, 0.125);
    return conjugate_images(std::move(rep), ProjectiveMatrix::diagonal(r), 0,
                            rep.alphabet.size());
  }

  /// Trace of rho(w) as a Laurent polynomial in t when the image of
  /// `twisted` is replaced by T rho(twisted) T^{-1}, T = diag(t, 1/t).
  inline LaurentPolynomial twisted_trace(Representation const& rep,
                                         Word const& w, std::size_t twisted) {
    LaurentMatrix acc = LaurentMatrix::identity();
    for (auto const& s : w) {
      auto const m = LaurentMatrix::constant(
          rep.generator_image(s.generator).pow(s.power));
      if (s.generator == twisted) {
        acc = acc * LaurentMatrix::diagonal_twist() * m
              * LaurentMatrix::diagonal_twist_inverse();
      } else {
        acc = acc * m;
      }
    }
    return acc.trace();
  }

}  // namespace detail

/// Glue two factor representations along the amalgamated subgroup.
///
/// rep1 is conjugated so that rep1(U^{-1}) = diag(s, 1/s). rep2 is retuned so
/// that tr rep2(V) = s + 1/s (for a multi-generator factor, by twisting the
/// first generator of V by T(t) and solving the trace polynomial; for a
/// single generator b with V = b^m, by setting rep2(b) = diag(s^{1/m}, ...)),
/// then conjugated so that rep2(V) = diag(s, 1/s).
inline Representation align_boundary(Representation const& rep1, Word const& U,
                                     Representation const& rep2, Word const& V,
                                     std::size_t p, Tolerances const& tol = {}) {
  auto const&       A = rep1.alphabet;
  std::size_t const n = A.size();
  if (!A.order_of(U).is_infinite() || !A.order_of(V).is_infinite()) {
    throw std::invalid_argument("align_boundary: U and V need infinite order");
  }

  ProjectiveMatrix const left_boundary = rep1.image(A.invert(U));
  Complex const          tr1           = left_boundary.trace();
  if (std::abs(tr1 * tr1 - 4.0) <= tol.margin) {
    throw NumericFailure("align_boundary: rho(U) is parabolic or +-I");
  }
  auto const     d1 = diagonalize(left_boundary);
  Complex const  s  = d1.eigenvalue;
  Representation left =
      detail::conjugate_images(rep1, d1.basis.inverse(), 0, p);

  Representation       right = rep2;
  std::optional<Complex> twist;
  if (n - p == 1) {
    if (V.size() != 1) {
      throw std::invalid_argument("align_boundary: malformed V");
    }
    double const m = static_cast<double>(V[0].power);
    right.images[p] = ProjectiveMatrix::diagonal(std::pow(s, 1.0 / m));
  } else {
    std::size_t const twisted = V[0].generator;
    LaurentPolynomial const f = detail::twisted_trace(rep2, V, twisted);
    if (f.is_constant()) {
      throw NumericFailure("align_boundary: trace-matching polynomial is "
                           "constant");
    }
    std::optional<std::pair<double, Representation>> best;
    for (auto const& root : solve_on_target(f, s + 1.0 / s)) {
      if (root.residual > 1e-8 || std::abs(root.t) < 1e-3
          || std::abs(root.t) > 1e3) {
        continue;
      }
      Representation candidate = rep2;
      auto const     T = ProjectiveMatrix::diagonal(root.t);
      candidate.images[twisted] = candidate.images[twisted]->conjugated_by(T);
      Certificate c;
      detail::record_pairs(candidate, p, n, c);
      double const score =
          std::min(c.min_pair_margin(),
                   std::min(std::abs(root.t), 1.0 / std::abs(root.t)));
      if (!best || score > best->first) {
        best  = {score, std::move(candidate)};
        twist = root.t;
      }
    }
    if (!best) {
      throw NumericFailure("align_boundary: no usable trace-matching root");
    }
    auto const d2 = diagonalize(best->second.image(V));
    Mat2       basis = d2.basis.matrix();
    if (std::abs(d2.eigenvalue - s) > std::abs(d2.eigenvalue - 1.0 / s)) {
      basis.col(0).swap(basis.col(1));
    }
    right = detail::conjugate_images(best->second,
                                     ProjectiveMatrix(basis).inverse(), p, n);
  }

  Representation out(A);
  out.seed  = rep1.seed;
  out.twist = twist;
  for (std::size_t g = 0; g < n; ++g) {
    out.images[g] = g < p ? left.images[g] : right.images[g];
  }
  out = detail::balance(std::move(out));
  double const residual = distance_to_identity(out.image(U) * out.image(V));
  if (!(residual <= tol.residual)) {
    throw NumericFailure("align_boundary: relation residual "
                         + std::to_string(residual));
  }
  return out;
}

/// Aggregate every check the constructions rely on.
inline Certificate verify_representation(Representation const&    rep,
                                         FTypePresentation const& P,
                                         Tolerances const&        tol = {}) {
  Certificate cert;
  auto const& A = P.alphabet;
  detail::record_torsion(rep, cert);
  ProjectiveMatrix const rho_u = rep.image(P.U);
  ProjectiveMatrix const rho_v = rep.image(P.V);
  cert.relation_residuals.push_back(
      {"UV", distance_to_identity(rho_u * rho_v)});
  detail::record_pairs(rep, 0, P.p, cert);
  detail::record_pairs(rep, P.p, P.n(), cert);

  auto const& v = rho_v.matrix();
  cert.boundary_residual =
      std::max({std::abs(v(0, 1)), std::abs(v(1, 0)),
                distance_mod_sign(rep.image(A.invert(P.U)), rho_v)});

  Rng rng = make_rng(rep.seed, 0x5eed);
  cert.sampled_boundary_margin =
      std::min(detail::sample_boundary_margin(rep, P.U, 0, P.p, rng),
               detail::sample_boundary_margin(rep, P.V, P.p, P.n(), rng));

  for (int i = 0; i < 50; ++i) {
    Word const g = random_word(A, 0, A.size(), 6, rng);
    Word const h = random_word(A, 0, A.size(), 6, rng);
    cert.max_sampled_commutator =
        std::max(cert.max_sampled_commutator,
                 irreducibility_margin(rep.image(g), rep.image(h)));
  }
  cert.elementary = cert.max_sampled_commutator <= tol.margin;

  cert.passed = cert.max_relation_residual() <= tol.residual
                && cert.min_pair_margin() >= tol.margin
                && cert.sampled_boundary_margin >= tol.margin;
  cert.notes.push_back("irreducibility against rho(U), rho(V) is checked on "
                       "sampled elements only");
  if (cert.elementary) {
    cert.notes.push_back("sampled image looks elementary: all sampled "
                         "commutators have trace 2");
  }
  return cert;
}

/// rho: G -> PSL(2,C) with rho|G1 and rho|G2 generic and
/// rho(U^{-1}) = rho(V) diagonal. Faithful when neither U nor V is a proper
/// power; otherwise only essential.
inline Representation essential_rep(FTypePresentation const& P,
                                    std::uint64_t seed, Tolerances const& tol = {}) {
  require_full(P, "essential_rep");
  auto const& A            = P.alphabet;
  bool const  u_power      = A.is_proper_power(P.U).has_value();
  bool const  v_power      = A.is_proper_power(P.V).has_value();
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < tol.factor_retries; ++attempt) {
    std::uint64_t const sub = seed * 1000003ULL + static_cast<std::uint64_t>(attempt);
    try {
      auto const rep1 = rep_factor(A, 0, P.p, sub, tol);
      auto const rep2 = rep_factor(A, P.p, P.n(), sub, tol);
      Representation rep = align_boundary(rep1, P.U, rep2, P.V, P.p, tol);
      rep.seed           = seed;
      rep.faithfulness   = (u_power || v_power) ? FaithfulnessClass::EssentialOnly
                                                : FaithfulnessClass::Faithful;
      rep.certificate         = verify_representation(rep, P, tol);
      rep.certificate.retries = attempt;
      if (u_power && v_power) {
        rep.certificate.notes.push_back(
            "U and V are both proper powers: G has no faithful representation "
            "in PSL(2,C); rho(U_1) and rho(V_1) commute but U_1 and V_1 do "
            "not");
      } else if (u_power || v_power) {
        rep.certificate.notes.push_back(
            "a proper power among U, V: the representation is essential, "
            "not claimed faithful");
      }
      if (rep.certificate.passed) {
        return rep;
      }
      last_failure = "verification failed";
    } catch (NumericFailure const& e) {
      last_failure = e.what();
    } catch (std::domain_error const& e) {
      last_failure = e.what();
    }
  }
  throw NumericFailure("essential_rep: " + last_failure + " after "
                       + std::to_string(tol.factor_retries) + " attempts");
}

////////////////////////////////////////////////////////////////////////////
// One-relator quotients
////////////////////////////////////////////////////////////////////////////

enum class BoundaryFamily { Diagonal, Parabolic };

/// f(t) = tr(phi(c_1) T phi(d_1) T^{-1} ... phi(c_k) T phi(d_k) T^{-1}) with
/// T = diag(t, 1/t) (Diagonal) or ((1, t), (0, 1)) (Parabolic). `boundary`
/// is the image of the amalgamated generator and must have the family's
/// shape, so that T commutes with it.
inline LaurentPolynomial
trace_polynomial(Representation const& phi, ProjectiveMatrix const& boundary,
                 std::span<std::pair<Word, Word> const> pairs,
                 BoundaryFamily                         family) {
  if (pairs.empty()) {
    throw std::invalid_argument("trace_polynomial: no (c_i, d_i) pairs");
  }
  auto const& b = boundary.matrix();
  if (family == BoundaryFamily::Diagonal) {
    if (std::abs(b(0, 1)) > 1e-9 || std::abs(b(1, 0)) > 1e-9) {
      throw std::invalid_argument("trace_polynomial: boundary is not diagonal");
    }
  } else if (distance_mod_sign(boundary, ProjectiveMatrix(1.0, 1.0, 0.0, 1.0))
             > 1e-9) {
    throw std::invalid_argument(
        "trace_polynomial: boundary is not ((1, 1), (0, 1))");
  }
  LaurentMatrix const T     = family == BoundaryFamily::Diagonal
                                  ? LaurentMatrix::diagonal_twist()
                                  : LaurentMatrix::parabolic_twist();
  LaurentMatrix const T_inv = family == BoundaryFamily::Diagonal
                                  ? LaurentMatrix::diagonal_twist_inverse()
                                  : LaurentMatrix::parabolic_twist_inverse();
  LaurentMatrix acc = LaurentMatrix::identity();
  for (auto const& [c, d] : pairs) {
    acc = acc * LaurentMatrix::constant(phi.image(c)) * T
          * LaurentMatrix::constant(phi.image(d)) * T_inv;
  }
  return acc.trace();
}

struct QuotientCertificate {
  Representation                     representation;
  Word                               relator;
  long                               m = 2;
  std::vector<std::pair<Word, Word>> pairs;
  LaurentPolynomial                  trace_polynomial;
  Complex                            t0;
  double                             trace_residual = 0;
  OrderCheck                         order;
  bool                               order_ok = false;
  /// Relators R whose pieces avoid <U_1>, <V_1> for a proper-power U or V.
  bool power_route = false;
  int  attempts    = 0;
};

/// Representation of H = G / N(R^m) in which rho(R) has exact order m and
/// rho restricted to each factor is faithful.
inline QuotientCertificate quotient_rep(FTypePresentation const& P,
                                        Word const& R, long m,
                                        std::uint64_t     seed,
                                        Tolerances const& tol = {}) {
  if (m < 2) {
    throw std::invalid_argument("quotient_rep: m must be >= 2");
  }
  auto const& A      = P.alphabet;
  auto const  report = validate(P);
  if (!report.ok || !report.omitted_generators.empty() || P.n() < 4
      || P.p < 2 || P.p > P.n() - 2) {
    throw QuotientError(QuotientErrorCode::NotSpecial,
                        "need a valid presentation involving every generator "
                        "with n >= 4 and 2 <= p <= n-2");
  }
  auto const U_pow = A.is_proper_power(P.U);
  auto const V_pow = A.is_proper_power(P.V);

  auto const D  = decompose(P);
  Word const Rn = A.multiply(R, Word());
  if (normal_form(Rn, D).blocks.empty()) {
    throw QuotientError(QuotientErrorCode::RelatorInAmalgam,
                        "R lies in A = <U> = <V>");
  }
  auto const pairs = reduced_relator_form(Rn, D);
  if (!pairs) {
    throw QuotientError(QuotientErrorCode::NotReducedForm,
                        "the normal form of R must read c_1 d_1 ... c_k d_k "
                        "with c_i in G1, d_i in G2; conjugate R into that "
                        "shape");
  }
  QuotientCertificate cert;
  for (std::size_t i = 0; i < pairs->size(); ++i) {
    auto const& [c, d] = (*pairs)[i];
    std::string const idx = std::to_string(i + 1);
    if (A.power_exponent(c, D.left_generator)) {
      throw QuotientError(QuotientErrorCode::CiInU,
                          "c_" + idx + " = " + A.format(c) + " lies in <U>");
    }
    if (A.power_exponent(d, D.right_generator)) {
      throw QuotientError(QuotientErrorCode::DiInV,
                          "d_" + idx + " = " + A.format(d) + " lies in <V>");
    }
    if (U_pow && A.power_exponent(c, U_pow->root)) {
      throw QuotientError(QuotientErrorCode::CiInU1,
                          "c_" + idx + " = " + A.format(c)
                              + " lies in <U_1>, U = U_1^"
                              + std::to_string(U_pow->exponent));
    }
    if (V_pow && A.power_exponent(d, V_pow->root)) {
      throw QuotientError(QuotientErrorCode::DiInV1,
                          "d_" + idx + " = " + A.format(d)
                              + " lies in <V_1>, V = V_1^"
                              + std::to_string(V_pow->exponent));
    }
  }
  cert.pairs = *pairs;
  cert.relator     = Rn;
  cert.m           = m;
  cert.power_route = U_pow.has_value() || V_pow.has_value();
  int const    k       = static_cast<int>(cert.pairs.size());
  double const target  = elliptic_trace(m);
  double const trace_tol = 1e-8;

  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < tol.quotient_retries; ++attempt) {
    Representation phi;
    try {
      phi = essential_rep(P, seed + static_cast<std::uint64_t>(attempt) * 7919ULL,
                          tol);
    } catch (NumericFailure const& e) {
      last_failure = e.what();
      continue;
    }
    LaurentPolynomial const f =
        trace_polynomial(phi, phi.image(P.V), cert.pairs, BoundaryFamily::Diagonal);
    if (std::abs(f.coefficient(2 * k)) <= 1e-10
        || std::abs(f.coefficient(-2 * k)) <= 1e-10) {
      last_failure = "trace polynomial lost its extreme coefficients";
      continue;
    }

    struct Candidate {
      double         score;
      Complex        t0;
      Representation rho;
      double         trace_residual;
      OrderCheck     order;
    };
    std::optional<Candidate> best;
    for (auto const& root : solve_on_target(f, target, trace_tol)) {
      if (root.residual > trace_tol || root.t == Complex(0.0)) {
        continue;
      }
      Representation rho = detail::conjugate_images(
          phi, ProjectiveMatrix::diagonal(root.t), P.p, P.n());
      rho.twist = phi.twist;
      ProjectiveMatrix const rho_r = rho.image(Rn);
      double const trace_residual  = std::abs(rho_r.trace() - target);
      OrderCheck const order       = order_check(rho_r, m);
      Certificate      c;
      detail::record_torsion(rho, c);
      c.relation_residuals.push_back(
          {"UV", distance_to_identity(rho.image(P.U) * rho.image(P.V))});
      detail::record_pairs(rho, 0, P.p, c);
      detail::record_pairs(rho, P.p, P.n(), c);
      bool const ok = trace_residual <= trace_tol
                      && order.power_residual <= trace_tol
                      && order.lower_margin >= 1e-4
                      && c.max_relation_residual() <= tol.residual
                      && c.min_pair_margin() >= tol.margin;
      if (!ok) {
        continue;
      }
      double const score =
          std::min({order.lower_margin, c.min_pair_margin(),
                    std::abs(root.t), 1.0 / std::abs(root.t)});
      if (!best || score > best->score) {
        best = Candidate{score, root.t, std::move(rho), trace_residual, order};
      }
    }
    if (!best) {
      last_failure = "no root of the trace polynomial passed verification";
      continue;
    }
    cert.representation   = std::move(best->rho);
    cert.representation.certificate =
        verify_representation(cert.representation, P, tol);
    cert.representation.certificate.retries = attempt;
    cert.trace_polynomial = f;
    cert.t0               = best->t0;
    cert.trace_residual   = best->trace_residual;
    cert.order            = best->order;
    cert.order_ok         = has_order(cert.representation.image(Rn), m, trace_tol)
                    && cert.order.lower_margin >= 1e-4;
    cert.attempts = attempt + 1;
    return cert;
  }
  throw QuotientError(QuotientErrorCode::NumericFailure,
                      last_failure + " after "
                          + std::to_string(tol.quotient_retries) + " attempts");
}

}  // namespace ftype
