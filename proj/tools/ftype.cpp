// Command-line front end.
//
//   ftype analyze  FILE [--json]
//   ftype rep      FILE [--seed N] [--tol X] [--margin X] [--json]
//   ftype quotient FILE --relator W -m M [--seed N] [--json]
//   ftype word     FILE --word W [--json]
//   ftype selftest FILE [--max-len L] [--json]
//
// Exit codes: 0 ok, 1 validation error, 2 numeric failure, 3 parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ftype/amalgam.hpp"
#include "ftype/classify.hpp"
#include "ftype/error.hpp"
#include "ftype/presentation.hpp"
#include "ftype/report.hpp"
#include "ftype/represent.hpp"
#include "ftype/selftest.hpp"

namespace {

enum Exit : int { Ok = 0, Validation = 1, Numeric = 2, Parse = 3 };

struct Options {
  std::string   file;
  bool          json    = false;
  std::uint64_t seed    = 0;
  double        tol     = 1e-9;
  double        margin  = 1e-6;
  std::string   relator;
  long          m       = 2;
  std::string   word;
  std::size_t   max_len = 5;
};

ftype::FTypePresentation load(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ftype::ParseError("cannot read '" + path + "'", 1, 1);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ftype::parse_presentation(text.str());
}

void emit(ftype::Json const& j) { std::cout << j.dump(2) << '\n'; }

void print_findings(ftype::ValidationReport const& v) {
  for (auto const& f : v.findings) {
    std::cout << to_string(f.severity) << " " << f.code << ": " << f.message
              << '\n';
  }
}

ftype::Tolerances tolerances(Options const& o) {
  ftype::Tolerances t;
  t.residual = o.tol;
  t.margin   = o.margin;
  return t;
}

int cmd_analyze(Options const& o) {
  auto const P = load(o.file);
  auto const r = ftype::analyze(P);
  if (o.json) {
    emit(to_json(r));
  } else {
    std::cout << ftype::format_presentation(P);
    print_findings(r.validation);
    if (r.chi) {
      std::cout << "chi: " << ftype::to_string(*r.chi) << '\n';
    }
    if (r.tits) {
      std::cout << "tits: " << ftype::to_string(*r.tits) << '\n';
    }
    if (r.hyperbolicity) {
      std::cout << "hyperbolic: " << std::boolalpha
                << r.hyperbolicity->hyperbolic << '\n';
    }
    if (r.special) {
      std::cout << "special: " << std::boolalpha << *r.special << '\n';
    }
    if (r.malnormality) {
      std::cout << "malnormal criterion: " << std::boolalpha
                << r.malnormality->criterion_holds << '\n';
    }
    for (auto const& f : r.facts) {
      std::cout << "fact (" << f.status << "): " << f.statement << '\n';
    }
  }
  return r.validation.ok ? Ok : Validation;
}

int require_valid(ftype::FTypePresentation const& P, bool json) {
  auto const v = ftype::validate(P);
  if (v.ok && v.omitted_generators.empty()) {
    return Ok;
  }
  if (json) {
    emit({{"schema", ftype::json_schema_version},
          {"validation", to_json(v, P.alphabet)}});
  } else {
    print_findings(v);
    if (v.ok) {
      std::cerr << "error: UV omits a generator; use the split presentation\n";
    }
  }
  return Validation;
}

int cmd_rep(Options const& o) {
  auto const P = load(o.file);
  if (int rc = require_valid(P, o.json); rc != Ok) {
    return rc;
  }
  auto const rep = ftype::essential_rep(P, o.seed, tolerances(o));
  if (o.json) {
    emit(to_json(rep));
  } else {
    std::cout << "class: " << to_string(rep.faithfulness) << '\n'
              << "max relation residual: "
              << rep.certificate.max_relation_residual() << '\n'
              << "min pair margin: " << rep.certificate.min_pair_margin()
              << '\n';
    for (std::size_t g = 0; g < P.n(); ++g) {
      std::cout << P.alphabet.name(g) << " = " << rep.images[g]->matrix()
                      .format(Eigen::IOFormat(6, 0, ", ", "; ", "", "", "[",
                                              "]"))
                << '\n';
    }
    for (auto const& n : rep.certificate.notes) {
      std::cout << "note: " << n << '\n';
    }
  }
  return Ok;
}

int cmd_quotient(Options const& o) {
  auto const P = load(o.file);
  if (int rc = require_valid(P, o.json); rc != Ok) {
    return rc;
  }
  auto const R = P.alphabet.parse(o.relator);
  auto const q = ftype::quotient_rep(P, R, o.m, o.seed, tolerances(o));
  if (o.json) {
    emit(to_json(q));
  } else {
    std::cout << "relator: " << P.alphabet.format(q.relator) << ", m = " << q.m
              << '\n'
              << "t0: " << q.t0 << '\n'
              << "trace residual: " << q.trace_residual << '\n'
              << "power residual: " << q.order.power_residual << '\n'
              << "lower-power margin: " << q.order.lower_margin << '\n'
              << "exact order: " << std::boolalpha << q.order_ok << '\n';
  }
  return q.order_ok ? Ok : Numeric;
}

int cmd_word(Options const& o) {
  auto const  P = load(o.file);
  auto const& A = P.alphabet;
  if (int rc = require_valid(P, o.json); rc != Ok) {
    return rc;
  }
  auto const w    = A.parse(o.word);
  auto const D    = ftype::decompose(P);
  auto const form = ftype::normal_form(w, D);
  bool const triv = form.is_identity();
  if (o.json) {
    emit({{"schema", ftype::json_schema_version},
          {"word", A.format(w)},
          {"normal_form", to_json(form, A)},
          {"trivial", triv},
          {"in_amalgam", form.blocks.empty()}});
  } else {
    std::cout << "word: " << A.format(w) << '\n'
              << "normal form: " << A.format(ftype::to_word(form, D)) << '\n'
              << "trivial: " << std::boolalpha << triv << '\n';
  }
  return Ok;
}

int cmd_selftest(Options const& o) {
  auto const P = load(o.file);
  if (int rc = require_valid(P, o.json); rc != Ok) {
    return rc;
  }
  auto const& A = P.alphabet;
  std::vector<ftype::SweepResult> results;
  results.push_back(ftype::sweep_proper_powers(A, o.max_len));
  results.push_back(ftype::sweep_involution_products(A, o.max_len));
  std::string rep_note;
  try {
    auto const rep = ftype::essential_rep(P, o.seed);
    if (rep.faithfulness == ftype::FaithfulnessClass::Faithful) {
      results.push_back(ftype::sweep_word_problem(P, rep, 500, o.seed));
    } else {
      rep_note = "word-problem sweep skipped: representation not faithful";
    }
  } catch (ftype::NumericFailure const& e) {
    rep_note = std::string("word-problem sweep skipped: ") + e.what();
  }
  bool ok = true;
  ftype::Json sweeps = ftype::Json::array();
  for (auto const& r : results) {
    ok = ok && r.ok();
    sweeps.push_back({{"name", r.name},
                      {"checked", r.checked},
                      {"mismatches", r.mismatches}});
  }
  if (o.json) {
    emit({{"schema", ftype::json_schema_version},
          {"sweeps", sweeps},
          {"note", rep_note.empty() ? ftype::Json(nullptr) : ftype::Json(rep_note)},
          {"ok", ok}});
  } else {
    for (auto const& r : results) {
      std::cout << r.name << ": " << r.checked << " checked, "
                << r.mismatches.size() << " mismatches\n";
      for (auto const& m : r.mismatches) {
        std::cout << "  " << m << '\n';
      }
    }
    if (!rep_note.empty()) {
      std::cout << rep_note << '\n';
    }
  }
  return ok ? Ok : Validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups of F-type: analysis, representations, word problem"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "classify a presentation");
  analyze->add_option("file", o.file, "presentation file")->required();
  analyze->add_flag("--json", o.json, "JSON output");

  auto* rep = app.add_subcommand("rep", "essential representation into PSL(2,C)");
  rep->add_option("file", o.file, "presentation file")->required();
  rep->add_option("--seed", o.seed, "random seed");
  rep->add_option("--tol", o.tol, "relation residual tolerance");
  rep->add_option("--margin", o.margin, "irreducibility margin");
  rep->add_flag("--json", o.json, "JSON output");

  auto* quotient = app.add_subcommand(
      "quotient", "representation of G / N(R^m) with rho(R) of order m");
  quotient->add_option("file", o.file, "presentation file")->required();
  quotient->add_option("--relator,-r", o.relator, "relator R")->required();
  quotient->add_option("-m", o.m, "order m >= 2")->required();
  quotient->add_option("--seed", o.seed, "random seed");
  quotient->add_option("--tol", o.tol, "relation residual tolerance");
  quotient->add_option("--margin", o.margin, "irreducibility margin");
  quotient->add_flag("--json", o.json, "JSON output");

  auto* word = app.add_subcommand("word", "amalgam normal form of a word");
  word->add_option("file", o.file, "presentation file")->required();
  word->add_option("--word,-w", o.word, "word")->required();
  word->add_flag("--json", o.json, "JSON output");

  auto* selftest = app.add_subcommand("selftest", "brute-force oracle sweeps");
  selftest->add_option("file", o.file, "presentation file")->required();
  selftest->add_option("--max-len", o.max_len, "maximum syllable length");
  selftest->add_option("--seed", o.seed, "random seed");
  selftest->add_flag("--json", o.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return Parse;
  }

  try {
    if (*analyze) {
      return cmd_analyze(o);
    }
    if (*rep) {
      return cmd_rep(o);
    }
    if (*quotient) {
      return cmd_quotient(o);
    }
    if (*word) {
      return cmd_word(o);
    }
    return cmd_selftest(o);
  } catch (ftype::ParseError const& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return Parse;
  } catch (ftype::QuotientError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ftype::QuotientErrorCode::NumericFailure ? Numeric
                                                                : Validation;
  } catch (ftype::NumericFailure const& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return Numeric;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Validation;
  } catch (std::exception const& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return Numeric;
  }
}
