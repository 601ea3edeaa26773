#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int         code = -1;
  std::string out;
};

Run run(std::string const& args) {
  std::string const cmd = std::string(FTYPE_CLI) + " " + args + " 2>/dev/null";
  FILE*             pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run                  r;
  std::array<char, 4096> buf{};
  std::size_t          n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  int const status = pclose(pipe);
  r.code           = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(std::string const& name) {
  return (fs::path(FTYPE_CORPUS) / (name + ".ft")).string();
}

std::string temp_file(std::string const& name, std::string const& text) {
  fs::path const p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("analyze", "[cli]") {
  auto const h1 = run("analyze --json " + corpus("h1"));
  CHECK(h1.code == 0);
  auto const j = nlohmann::json::parse(h1.out);
  CHECK(j["schema"] == 1);
  CHECK(j["tits"] == "Solvable(H1)");
  CHECK(j["chi"] == "0");
  CHECK(j["hyperbolicity"]["hyperbolic"] == false);

  auto const tr = nlohmann::json::parse(run("analyze --json " + corpus("trefoil")).out);
  CHECK(tr["hyperbolicity"]["hyperbolic"] == false);
  CHECK(tr["hyperbolicity"]["obstruction_U"]["kind"] == "ProperPower");
  CHECK(tr["hyperbolicity"]["obstruction_V"]["kind"] == "ProperPower");

  auto const sp = nlohmann::json::parse(run("analyze --json " + corpus("special_2323")).out);
  CHECK(sp["hyperbolicity"]["hyperbolic"] == true);
  CHECK(sp["special"] == true);
  CHECK(sp["malnormal"]["criterion_holds"] == true);

  CHECK(run("analyze " + corpus("h3")).code == 0);
}

TEST_CASE("exit codes", "[cli]") {
  auto const invalid = temp_file(
      "ftype_invalid.ft", "gens: a b c\nexps: 2 0 0\np: 2\nU: a\nV: c^2\n");
  CHECK(run("analyze " + invalid).code == 1);
  auto const garbled = temp_file("ftype_garbled.ft", "gens a b\n");
  CHECK(run("analyze " + garbled).code == 3);
  CHECK(run("analyze /nonexistent/file.ft").code == 3);
  CHECK(run("word " + corpus("trefoil") + " --word 'a^0'").code == 3);
  CHECK(run("frobnicate").code == 3);
  CHECK(run("quotient " + corpus("special_2323") + " --relator 'a b' -m 3").code
        == 1);
  CHECK(run("quotient " + corpus("trefoil") + " --relator 'a b' -m 3").code == 1);
  CHECK(run("rep " + corpus("omitting")).code == 1);
  // An absurd margin makes every draw fail verification.
  CHECK(run("rep " + corpus("special_2323") + " --margin 1e6").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("word", "[cli]") {
  auto const r = run("word --json " + corpus("trefoil") + " --word 'a^2 b^3'");
  CHECK(r.code == 0);
  auto const j = nlohmann::json::parse(r.out);
  CHECK(j["trivial"] == true);
  auto const n = nlohmann::json::parse(
      run("word --json " + corpus("trefoil") + " --word 'a b'").out);
  CHECK(n["trivial"] == false);
  CHECK(n["normal_form"]["blocks"].size() == 2);
}

TEST_CASE("rep and quotient", "[cli]") {
  auto const r = run("rep --json --seed 4 " + corpus("special_2323"));
  CHECK(r.code == 0);
  auto const j = nlohmann::json::parse(r.out);
  CHECK(j["class"] == "Faithful");
  CHECK(j["seed"] == 4);
  CHECK(j["matrices"]["a"]["entries"].size() == 4);
  CHECK(j["residuals"]["UV"].get<double>() <= 1e-9);

  auto const q = run("quotient --json " + corpus("special_2323")
                     + " --relator 'a c' -m 3");
  CHECK(q.code == 0);
  auto const k = nlohmann::json::parse(q.out);
  CHECK(k["quotient"]["trace_residual"].get<double>() <= 1e-8);
  CHECK(k["quotient"]["order"]["exact_order"] == true);
  CHECK(k["t0"].size() == 2);

  // Same seed, same certificate.
  CHECK(run("rep --json --seed 4 " + corpus("special_2323")).out == r.out);
}

TEST_CASE("selftest", "[cli]") {
  auto const r = run("selftest --json --max-len 4 " + corpus("special_2323"));
  CHECK(r.code == 0);
  auto const j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["sweeps"].size() == 3);
  CHECK(run("selftest --max-len 4 " + corpus("trefoil")).code == 0);
}
