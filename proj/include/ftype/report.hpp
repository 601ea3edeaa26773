#pragma once

// Analysis aggregation and JSON serialization (schema 1).

#include <complex>
#include <limits>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftype/amalgam.hpp"
#include "ftype/classify.hpp"
#include "ftype/presentation.hpp"
#include "ftype/psl2.hpp"
#include "ftype/represent.hpp"
#include "ftype/words.hpp"

namespace ftype {

inline constexpr int json_schema_version = 1;

struct StatedFact {
  std::string statement;
  std::string status = "reported, not computed";
};

/// Theorems about every group of F-type, listed for context only.
inline std::vector<StatedFact> stated_facts() {
  return {
      {"Groups of F-type are coherent: finitely generated subgroups are "
       "finitely presented."},
      {"A group of F-type is conjugacy separable and, hence, residually "
       "finite and Hopfian"},
      {"Groups of F-type are subgroup separable (LERF)."},
      {"Groups of F-type have a solvable generalized word problem, so a "
       "solvable word problem."},
      {"Groups of F-type have virtual cohomological dimension at most 2."},
  };
}

struct DecompositionSummary {
  std::vector<std::string> left_generators;
  std::vector<std::string> right_generators;
  std::string              left_amalgam;   // U^{-1}
  std::string              right_amalgam;  // V
};

struct AnalysisReport {
  FTypePresentation                   presentation;
  ValidationReport                    validation;
  std::optional<DecompositionSummary> decomposition;
  std::optional<Rational>             chi;
  std::optional<TitsClass>            tits;
  std::optional<HyperbolicityVerdict> hyperbolicity;
  std::optional<bool>                 special;
  std::optional<MalnormalityReport>   malnormality;
  std::vector<StatedFact>             facts;
};

/// Every analysis that applies. Analyses needing the full (non-omitting)
/// form stay empty otherwise.
inline AnalysisReport analyze(FTypePresentation const& P) {
  AnalysisReport r;
  r.presentation = P;
  r.validation   = validate(P);
  if (!r.validation.ok) {
    return r;
  }
  auto const& A = P.alphabet;
  auto const  D = decompose(P);
  DecompositionSummary d;
  for (std::size_t g = 0; g < P.n(); ++g) {
    (g < P.p ? d.left_generators : d.right_generators).push_back(A.name(g));
  }
  d.left_amalgam  = A.format(D.left_generator);
  d.right_amalgam = A.format(D.right_generator);
  r.decomposition = std::move(d);
  r.chi           = euler_characteristic(P);
  r.malnormality  = malnormal_amalgam(P);
  if (!r.validation.omitted_generators.empty()) {
    return r;
  }
  r.tits          = tits_classify(P);
  r.hyperbolicity = hyperbolicity(P);
  r.special       = is_special(P);
  r.facts         = stated_facts();
  return r;
}

////////////////////////////////////////////////////////////////////////////
// JSON
////////////////////////////////////////////////////////////////////////////

using Json = nlohmann::ordered_json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(ProjectiveMatrix const& m) {
  Json entries = Json::array();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      entries.push_back(to_json(m(i, j)));
    }
  }
  return {{"entries", entries}, {"det_residual", det_residual(m)}};
}

inline Json to_json(FTypePresentation const& P) {
  auto const& A = P.alphabet;
  return {{"gens", A.names()},
          {"exps", A.exponents()},
          {"p", P.p},
          {"U", A.format(P.U)},
          {"V", A.format(P.V)}};
}

inline Json to_json(ValidationReport const& v, Alphabet const& A) {
  Json findings = Json::array();
  for (auto const& f : v.findings) {
    findings.push_back({{"severity", to_string(f.severity)},
                        {"code", f.code},
                        {"message", f.message}});
  }
  Json omitted = Json::array();
  for (auto g : v.omitted_generators) {
    omitted.push_back(A.name(g));
  }
  Json split = nullptr;
  if (v.split) {
    split = {{"H1", {{"gens", v.split->omitted.names()},
                     {"exps", v.split->omitted.exponents()}}},
             {"H2", to_json(v.split->rest)}};
  }
  return {{"ok", v.ok},
          {"findings", findings},
          {"omitted_generators", omitted},
          {"split", split}};
}

inline Json to_json(std::optional<Obstruction> const& o, Alphabet const& A) {
  if (!o) {
    return nullptr;
  }
  if (auto const* pp = std::get_if<ProperPower>(&*o)) {
    return {{"kind", "ProperPower"},
            {"root", A.format(pp->root)},
            {"exponent", pp->exponent}};
  }
  auto const& ip = std::get<InvolutionPair>(*o);
  return {{"kind", "InvolutionPair"},
          {"first", A.format(ip.first)},
          {"second", A.format(ip.second)}};
}

inline Json to_json(AnalysisReport const& r) {
  auto const& A = r.presentation.alphabet;
  Json        j;
  j["schema"]       = json_schema_version;
  j["presentation"] = to_json(r.presentation);
  j["validation"]   = to_json(r.validation, A);
  if (r.decomposition) {
    j["decomposition"] = {{"G1", r.decomposition->left_generators},
                          {"G2", r.decomposition->right_generators},
                          {"amalgam_in_G1", r.decomposition->left_amalgam},
                          {"amalgam_in_G2", r.decomposition->right_amalgam}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["chi"]  = r.chi ? Json(to_string(*r.chi)) : Json(nullptr);
  j["tits"] = r.tits ? Json(to_string(*r.tits)) : Json(nullptr);
  if (r.hyperbolicity) {
    j["hyperbolicity"] = {{"hyperbolic", r.hyperbolicity->hyperbolic},
                          {"obstruction_U",
                           to_json(r.hyperbolicity->obstruction_U, A)},
                          {"obstruction_V",
                           to_json(r.hyperbolicity->obstruction_V, A)},
                          {"notes", r.hyperbolicity->notes}};
  } else {
    j["hyperbolicity"] = nullptr;
  }
  j["special"] = r.special ? Json(*r.special) : Json(nullptr);
  if (r.malnormality) {
    j["malnormal"] = {{"criterion_holds", r.malnormality->criterion_holds},
                      {"witness_U", to_json(r.malnormality->witness_U, A)},
                      {"witness_V", to_json(r.malnormality->witness_V, A)},
                      {"consequences", r.malnormality->consequences}};
  } else {
    j["malnormal"] = nullptr;
  }
  Json facts = Json::array();
  for (auto const& f : r.facts) {
    facts.push_back({{"statement", f.statement}, {"status", f.status}});
  }
  j["stated_facts"] = facts;
  return j;
}

inline Json to_json(Certificate const& c, Alphabet const& A) {
  Json residuals = Json::object();
  for (auto const& r : c.relation_residuals) {
    residuals[r.relation] = r.residual;
  }
  residuals["boundary"] = c.boundary_residual;
  Json margins          = Json::object();
  for (auto const& m : c.pair_margins) {
    margins[A.name(m.first) + "," + A.name(m.second)] = m.margin;
  }
  Json sampled = Json(nullptr);
  if (c.sampled_boundary_margin != std::numeric_limits<double>::infinity()) {
    sampled = c.sampled_boundary_margin;
  }
  return {{"residuals", residuals},
          {"margins", margins},
          {"sampled_boundary_margin", sampled},
          {"max_sampled_commutator", c.max_sampled_commutator},
          {"elementary", c.elementary},
          {"passed", c.passed},
          {"retries", c.retries},
          {"notes", c.notes}};
}

inline Json to_json(Representation const& rep) {
  auto const& A        = rep.alphabet;
  Json        matrices = Json::object();
  for (std::size_t g = 0; g < A.size(); ++g) {
    matrices[A.name(g)] =
        rep.assigned(g) ? to_json(*rep.images[g]) : Json(nullptr);
  }
  Json j;
  j["schema"]   = json_schema_version;
  j["class"]    = to_string(rep.faithfulness);
  j["matrices"] = matrices;
  Json cert     = to_json(rep.certificate, A);
  for (auto& [key, value] : cert.items()) {
    j[key] = value;
  }
  j["seed"] = rep.seed;
  j["t0"]   = rep.twist ? to_json(*rep.twist) : Json(nullptr);
  return j;
}

inline Json to_json(LaurentPolynomial const& f) {
  Json terms = Json::array();
  for (auto const& [e, c] : f.terms()) {
    terms.push_back({{"exponent", e}, {"coefficient", to_json(c)}});
  }
  return terms;
}

inline Json to_json(QuotientCertificate const& q) {
  auto const& A = q.representation.alphabet;
  Json        j = to_json(q.representation);
  // The quotient twist replaces the alignment twist in "t0".
  j["t0"]       = to_json(q.t0);
  Json pairs    = Json::array();
  for (auto const& [c, d] : q.pairs) {
    pairs.push_back({{"c", A.format(c)}, {"d", A.format(d)}});
  }
  j["quotient"] = {
      {"relator", A.format(q.relator)},
      {"m", q.m},
      {"pairs", pairs},
      {"trace_target", elliptic_trace(q.m)},
      {"trace", to_json(q.representation.image(q.relator).trace())},
      {"trace_residual", q.trace_residual},
      {"trace_polynomial", to_json(q.trace_polynomial)},
      {"order", {{"power_residual", q.order.power_residual},
                 {"lower_margin", q.order.lower_margin},
                 {"exact_order", q.order_ok}}},
      {"power_route", q.power_route},
      {"attempts", q.attempts}};
  return j;
}

inline Json to_json(AlternatingForm const& form, Alphabet const& A) {
  Json blocks = Json::array();
  for (auto const& b : form.blocks) {
    blocks.push_back({{"factor", b.factor == Side::Left ? "G1" : "G2"},
                      {"content", A.format(b.content)}});
  }
  return {{"blocks", blocks},
          {"amalgam_tail", form.amalgam_tail},
          {"rounds", form.rounds}};
}

}  // namespace ftype
