// End-to-end tests for the etaq binary: invoke the real executable (path in
// argv[1]) through a shell and check output text and exit codes against the
// library evaluated in-process.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

#include "etaq/eta.hpp"
#include "etaq/field.hpp"
#include "etaq/parse.hpp"
#include "etaq/poly.hpp"
#include "etaq/series.hpp"

namespace {

using namespace etaq;
using ojson = nlohmann::ordered_json;

std::string g_cli;

struct RunOut {
  int code = -1;
  std::string out;
};

RunOut run_shell(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  size_t nread;
  while ((nread = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, nread);
  const int st = pclose(p);
  RunOut r;
  if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
  r.out = std::move(out);
  return r;
}

// Combined stdout+stderr (diagnostics land on stderr).
RunOut run_cli(const std::string& args) {
  return run_shell(g_cli + " " + args + " 2>&1");
}

// stdout only, for schema and byte-identity checks.
RunOut run_cli_stdout(const std::string& args) {
  return run_shell(g_cli + " " + args + " 2>/dev/null");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    size_t j = text.find('\n', i);
    if (j == std::string::npos) j = text.size();
    out.push_back(text.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("pinned single values") {
  auto r = run_cli_stdout("eta --p 2 --H x --G 1 --k 1 --method direct");
  CHECK(r.code == 0);
  CHECK(r.out == "-1\n");

  r = run_cli_stdout("series --which delta --s 1 --G x --k 1 --p 2");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");

  r = run_cli_stdout("series --which sigma --s 2 --H x --p 2");
  CHECK(r.code == 0);
  CHECK(r.out == "-21/20\n");

  // tau at the removable point s = 1 on a prime power.
  r = run_cli_stdout("series --which tau --s 1 --H x^2 --k 2 --p 2");
  CHECK(r.code == 0);
  CHECK(r.out == "-2\n");
}

TEST_CASE("global flags work before and after the subcommand") {
  const auto a = run_cli_stdout("--p 3 eta --H x --G 0 --k 1");
  const auto b = run_cli_stdout("eta --p 3 --H x --G 0 --k 1");
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(a.out == "2\n");
  CHECK(a.out == b.out);
}

TEST_CASE("eta json output matches the library and round-trips") {
  const auto r =
      run_cli_stdout("eta --p 3 --H x^2+1 --G x --k 2 --method holder --format json");
  REQUIRE(r.code == 0);
  const ojson j = ojson::parse(r.out);
  CHECK(j.at("command") == "eta");
  CHECK(j.at("q") == 3);
  CHECK(j.at("k") == 2);
  CHECK(j.at("method") == "holder");

  Field f(FieldParams{3, 1, {}, 1, {}});
  PolyRing ring(f, Level::base);
  const Poly G = parse_poly(ring, j.at("G").get<std::string>());
  const Poly H = parse_poly(ring, j.at("H").get<std::string>());
  CHECK(G == parse_poly(ring, "x"));
  CHECK(H == parse_poly(ring, "x^2+1"));
  CHECK(j.at("value").get<long long>() == eta_holder(ring, G, H, 2));

  for (const char* method : {"direct", "kluyver"}) {
    const auto m = run_cli_stdout(std::string("eta --p 3 --H x^2+1 --G x --k 2 --method ") + method);
    CHECK(m.code == 0);
    CHECK(m.out == std::to_string(j.at("value").get<long long>()) + "\n");
  }
}

TEST_CASE("eta over the extension ring") {
  // phi over F_4: q - 1 = 3, reached through --n 2 with base-level text.
  auto r = run_cli_stdout("eta --p 2 --n 2 --H x --G 0 --k 1 --method direct");
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  // Extension-level coefficients parse and echo in round-trip form.
  r = run_cli_stdout(
      "eta --p 2 --n 2 --H x --G '[0,1]' --k 1 --method holder --format json");
  REQUIRE(r.code == 0);
  const ojson j = ojson::parse(r.out);
  CHECK(j.at("q") == 4);
  CHECK(j.at("G") == "[0,1]");
  CHECK(j.at("value") == -1);

  Field f(FieldParams{2, 1, {}, 2, {}});
  PolyRing ext(f, Level::ext);
  CHECK(parse_poly(ext, j.at("G").get<std::string>()) ==
        parse_poly(ext, "[0,1]"));
}

TEST_CASE("exit codes: pole, budget, parse, domain, usage") {
  auto r = run_cli("series --which zeta --s 1 --p 2");
  CHECK(r.code == 3);
  CHECK(r.out.find("pole") != std::string::npos);

  r = run_cli("series --which delta --s 2 --G 0 --k 1 --p 2");
  CHECK(r.code == 3);

  r = run_cli("eta --p 2 --H x^4+x+1 --G 1 --k 2 --method direct --budget 4");
  CHECK(r.code == 4);
  CHECK(r.out.find("budget") != std::string::npos);

  r = run_cli("eta --p 2 --H x^ --G 1");
  CHECK(r.code == 2);
  CHECK(r.out.find("position") != std::string::npos);

  r = run_cli("series --which zeta --s 2+ --p 2");
  CHECK(r.code == 2);

  r = run_cli("eta --p 2 --H 0 --G 1");
  CHECK(r.code == 2);
  CHECK(r.out.find("modulus") != std::string::npos);

  r = run_cli("eta --p 2 --H x --G 1 --method bogus");
  CHECK(r.code == 2);

  r = run_cli("verify --suite bogus --p 2");
  CHECK(r.code == 2);

  r = run_cli("");
  CHECK(r.code == 2);

  r = run_cli("--help");
  CHECK(r.code == 0);
}

TEST_CASE("coeffs csv schema matches the library") {
  const auto r = run_cli_stdout("coeffs --which A --G x^2 --k 1 --p 2 --format csv");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() >= 2);
  CHECK(ls[0] == "n,A_n");

  Field f(FieldParams{});
  PolyRing ring(f, Level::base);
  const auto want = a_coeffs(ring, parse_poly(ring, "x^2"), 1);
  REQUIRE(ls.size() == want.size() + 1);
  for (size_t n = 0; n < want.size(); ++n)
    CHECK(ls[n + 1] == std::to_string(n) + "," + std::to_string(want[n]));

  const auto b = run_cli_stdout("coeffs --which B --H x --k 2 --p 2 --format csv");
  REQUIRE(b.code == 0);
  const auto bl = lines_of(b.out);
  CHECK(bl[0] == "n,B_n");
  const auto bwant = b_coeffs(ring, parse_poly(ring, "x"), 2);
  REQUIRE(bl.size() == bwant.size() + 1);
  for (size_t n = 0; n < bwant.size(); ++n)
    CHECK(bl[n + 1] == std::to_string(n) + "," + std::to_string(bwant[n]));
}

TEST_CASE("meansquare csv emits the quadrature grid") {
  const auto r = run_cli_stdout(
      "meansquare --which delta --c 0 --T 1 --G x --k 1 --p 2 --format csv "
      "--step 0.5");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "t,integrand");
  // |delta_1(0, x)|^2 = |(1-q) (1 + q)|^2 = 9 at q = 2.
  CHECK(ls[3] == "0,9");
  // Symmetric integrand: |f(c+it)| = |f(c-it)| for real coefficients.
  CHECK(ls[1].substr(ls[1].find(',')) == ls[5].substr(ls[5].find(',')));

  const auto t = run_cli_stdout(
      "meansquare --which tau --c 2 --T 1 --H x --k 1 --p 2 --step 0.25");
  REQUIRE(t.code == 0);
  const auto tl = lines_of(t.out);
  REQUIRE(tl.size() == 4);
  CHECK(tl[0].rfind("numeric", 0) == 0);
  CHECK(tl[1].rfind("formula", 0) == 0);
  CHECK(tl[2].rfind("diagonal_limit", 0) == 0);
  CHECK(tl[3].rfind("step_refinement", 0) == 0);
}

TEST_CASE("verify json lines follow the documented schema") {
  const auto r = run_cli_stdout(
      "verify --suite holder --p 2 --max-deg 1 --k-max 1 --format json");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(!ls.empty());
  bool saw_summary = false, saw_trailer = false;
  for (const auto& line : ls) {
    const ojson j = ojson::parse(line);
    if (j.contains("suite")) {
      saw_trailer = true;
      CHECK(j.at("pass") == true);
      CHECK(j.at("failures") == 0);
    } else if (j.contains("instances")) {
      saw_summary = true;
      CHECK(j.contains("identity_id"));
      CHECK(j.contains("failures"));
      CHECK(j.at("pass").is_boolean());
    } else {
      // Per-instance report: the five-key schema.
      CHECK(j.contains("identity_id"));
      CHECK(j.contains("instance"));
      CHECK(j.contains("lhs"));
      CHECK(j.contains("rhs"));
      CHECK(j.at("pass").is_boolean());
    }
  }
  CHECK(saw_summary);
  CHECK(saw_trailer);
  // All identities hold, so the default emit mode has no report lines.
  CHECK(ojson::parse(ls[0]).contains("instances"));
}

TEST_CASE("verify emit full retains passing reports") {
  const auto r = run_cli_stdout(
      "verify --suite holder --p 2 --max-deg 1 --k-max 1 --format json "
      "--emit full");
  REQUIRE(r.code == 0);
  const auto ls = lines_of(r.out);
  const ojson first = ojson::parse(ls[0]);
  CHECK(first.contains("instance"));
  CHECK(first.at("pass") == true);
}

TEST_CASE("table csv") {
  const auto r =
      run_cli_stdout("table --H-degrees 1 --G-degrees 0:1 --k 1 --p 2 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "H\\G,0,1,x,x+1\n"
        "x,1,-1,1,-1\n"
        "x+1,1,-1,-1,1\n");

  // Extension-level headers contain commas and must be quoted.
  const auto e = run_cli_stdout(
      "table --H-degrees 1 --G-degrees 0 --k 1 --p 2 --n 2 --format csv");
  REQUIRE(e.code == 0);
  const auto ls = lines_of(e.out);
  CHECK(ls[0].find("\"[0,1]\"") != std::string::npos);
}

TEST_CASE("config file and environment variable set defaults, flags win") {
  const std::string path = "/tmp/etaq_cli_config_test.json";
  FILE* fp = std::fopen(path.c_str(), "w");
  REQUIRE(fp != nullptr);
  std::fputs("{\"p\": 3, \"format\": \"json\"}", fp);
  std::fclose(fp);

  auto r = run_cli_stdout("eta --H x --G 0 --k 1 --config " + path);
  CHECK(r.code == 0);
  CHECK(ojson::parse(r.out).at("value") == 2);

  r = run_shell("ETAQ_CONFIG=" + path + " " + g_cli +
                " eta --H x --G 0 --k 1 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(ojson::parse(r.out).at("value") == 2);

  // Explicit flags override the file.
  r = run_shell("ETAQ_CONFIG=" + path + " " + g_cli +
                " eta --H x --G 0 --k 1 --p 2 --format text 2>/dev/null");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");

  r = run_cli("eta --H x --G 0 --config /tmp/etaq_no_such_config.json");
  CHECK(r.code == 2);

  std::remove(path.c_str());
}

TEST_CASE("identical invocations are byte-identical") {
  for (const char* args :
       {"verify --suite reciprocity --p 2 --max-deg 2 --k-max 2 --format json "
        "--emit full",
        "meansquare --which delta --c 0 --T 2 --G x --k 1 --p 2 --format json",
        "table --H-degrees 1:2 --G-degrees 0:2 --k 2 --p 3 --format csv"}) {
    const auto a = run_cli_stdout(args);
    const auto b = run_cli_stdout(args);
    CHECK(a.code == 0);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("cli-printed polynomials re-parse to equal values") {
  Field f(FieldParams{2, 2, {}, 1, {}});  // F_4 as base level
  PolyRing ring(f, Level::base);
  for (const Poly& a : ring.all_by_max_degree(2)) {
    const std::string shown = ring.show(a);
    const auto r = run_cli_stdout("--p 2 --l 2 --format json eta --H x^2+1 --G '" +
                                  shown + "' --k 1");
    REQUIRE(r.code == 0);
    const Poly back =
        parse_poly(ring, ojson::parse(r.out).at("G").get<std::string>());
    CHECK(back == a);
  }
}

}  // TEST_SUITE

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: etaq_cli_tests <path-to-etaq> [doctest args]\n");
    return 64;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
