#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ftype/report.hpp"

using namespace ftype;
namespace fs = std::filesystem;

namespace {

std::string slurp(fs::path const& p) {
  std::ifstream      in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

FTypePresentation load(std::string const& name) {
  return parse_presentation(slurp(fs::path(FTYPE_CORPUS) / (name + ".ft")));
}

/// Same keys, same nesting, same value types; values themselves may differ.
bool same_shape(Json const& a, Json const& b) {
  if (a.type() != b.type()) {
    // Numbers may come out as integers or floats.
    return a.is_number() && b.is_number();
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      return false;
    }
    for (auto const& [k, v] : a.items()) {
      if (!b.contains(k) || !same_shape(v, b.at(k))) {
        return false;
      }
    }
  }
  return true;
}

void check_golden(std::string const& name, Json const& actual, bool exact) {
  fs::path const path = fs::path(FTYPE_GOLDEN) / (name + ".json");
  if (std::getenv("FTYPE_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << actual.dump(2) << '\n';
  }
  REQUIRE(fs::exists(path));
  Json const expected = Json::parse(slurp(path));
  INFO(name);
  if (exact) {
    CHECK(actual == expected);
  } else {
    CHECK(same_shape(actual, expected));
  }
}

}  // namespace

TEST_CASE("analysis reports match the golden files", "[report]") {
  for (char const* name : {"trefoil", "h1", "h2", "h3", "remark_group",
                           "special_2323", "surface2", "mixed5", "omitting"}) {
    check_golden("analyze_" + std::string(name), to_json(analyze(load(name))),
                 true);
  }
}

TEST_CASE("certificate JSON keeps a stable schema", "[report]") {
  auto const P = load("special_2323");
  check_golden("rep_special_2323", to_json(essential_rep(P, 0)), false);
  check_golden("quotient_special_2323",
               to_json(quotient_rep(P, P.alphabet.parse("a c"), 3, 0)), false);
}

TEST_CASE("analysis contents", "[report]") {
  auto const j = to_json(analyze(load("h1")));
  CHECK(j["schema"] == 1);
  CHECK(j["chi"] == "0");
  CHECK(j["tits"] == "Solvable(H1)");
  CHECK(j["hyperbolicity"]["hyperbolic"] == false);
  bool verbatim = false;
  for (auto const& f : j["stated_facts"]) {
    CHECK(f["status"] == "reported, not computed");
    verbatim = verbatim
               || f["statement"]
                      == "A group of F-type is conjugacy separable and, hence, "
                         "residually finite and Hopfian";
  }
  CHECK(verbatim);

  auto const om = to_json(analyze(load("omitting")));
  CHECK(om["stated_facts"].empty());
  CHECK(om["tits"].is_null());
  CHECK(om["validation"]["split"]["H1"]["gens"] == Json::array({"c"}));

  auto const bad = analyze(parse_presentation(
      "gens: a b c\nexps: 2 0 0\np: 2\nU: a\nV: c^2\n"));
  CHECK_FALSE(bad.validation.ok);
  CHECK(to_json(bad)["stated_facts"].empty());
  CHECK(to_json(bad)["chi"].is_null());
}

TEST_CASE("matrix serialization", "[report]") {
  auto const j = to_json(ProjectiveMatrix(2.0, 1.0, 1.0, 1.0));
  REQUIRE(j["entries"].size() == 4);
  CHECK(j["entries"][0] == Json::array({2.0, 0.0}));
  CHECK(j["entries"][2] == Json::array({1.0, 0.0}));
  CHECK(j["det_residual"].get<double>() < 1e-15);
}
