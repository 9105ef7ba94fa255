#include "etaq/parse.hpp"

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "etaq/errors.hpp"
#include "etaq/field.hpp"
#include "etaq/poly.hpp"

using namespace etaq;

namespace {

Field make_field(long long p, int l = 1, int n = 1) {
  FieldParams fp;
  fp.p = p;
  fp.l = l;
  fp.n = n;
  return Field(fp);
}

size_t error_pos(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.pos;
  }
  FAIL("expected a ParseError");
  return size_t(-1);
}

}  // namespace

TEST_SUITE("parse") {

TEST_CASE("canonical polynomial text round-trips") {
  struct Case {
    long long p;
    int l, n;
    Level lv;
  };
  const Case cases[] = {
      {2, 1, 1, Level::base},  // F2
      {3, 1, 1, Level::base},  // F3
      {5, 1, 1, Level::base},  // F5
      {2, 2, 1, Level::base},  // F4 as base (bracket coefficients)
      {2, 1, 2, Level::ext},   // F4 as extension of F2
      {3, 1, 2, Level::ext},   // F9 over F3
      {2, 2, 2, Level::ext},   // F16 over F4 (nested brackets)
  };
  for (const Case& cs : cases) {
    const Field f = make_field(cs.p, cs.l, cs.n);
    PolyRing r(f, cs.lv);
    CAPTURE(cs.p);
    CAPTURE(cs.l);
    CAPTURE(cs.n);
    for (const Poly& a : r.all_by_max_degree(2)) {
      const std::string text = r.show(a);
      CAPTURE(text);
      CHECK(parse_poly(r, text) == a);
    }
  }
}

TEST_CASE("hand-written polynomial variants") {
  const Field f = make_field(3);
  PolyRing r(f, Level::base);
  const Poly want = r.from_coeffs({1, 0, 1});  // x^2 + 1

  CHECK(parse_poly(r, "x^2+1") == want);
  CHECK(parse_poly(r, " x ^ 2 + 1 ") == want);
  CHECK(parse_poly(r, "1*x^2+1") == want);
  CHECK(parse_poly(r, "1 + x^2") == want);
  CHECK(parse_poly(r, "4*x^2+x+x+x+4") == want);  // coefficients reduce mod p
  CHECK(parse_poly(r, "0") == r.zero());
  CHECK(parse_poly(r, "x") == r.x());
  CHECK(parse_poly(r, "2x") == r.from_coeffs({0, 2}));
  CHECK(parse_poly(r, "x^2 - 1") == r.from_coeffs({2, 0, 1}));
  CHECK(parse_poly(r, "-x") == r.from_coeffs({0, 2}));
  CHECK(parse_poly(r, "x - x") == r.zero());
  CHECK(parse_poly(r, "x^2+x^2+x^2") == r.zero());
}

TEST_CASE("bracket coefficients parse at each tower level") {
  const Field f4 = make_field(2, 2);
  PolyRing rb(f4, Level::base);
  // Index 2 is the first true F4 element; its coordinates are (0,1).
  CHECK(parse_poly(rb, "[0,1]") == rb.constant(2));
  CHECK(parse_poly(rb, "[0,1]*x+1") == rb.from_coeffs({1, 2}));
  CHECK(parse_poly(rb, "[1]") == rb.one());  // short list pads with zeros

  const Field f9 = make_field(3, 1, 2);
  PolyRing re(f9, Level::ext);
  CHECK(parse_poly(re, "[0,1]") == re.constant(3));
  CHECK(parse_poly(re, "[2,1]*x^2") ==
        re.from_coeffs({0, 0, f9.from_element(FieldElement{Level::ext, {2, 1}})}));

  const Field f16 = make_field(2, 2, 2);
  PolyRing rt(f16, Level::ext);
  const int idx = f16.from_element(FieldElement{Level::ext, {2, 1}});
  CHECK(parse_poly(rt, "[[0,1],1]") == rt.constant(idx));
}

TEST_CASE("polynomial parse errors carry positions") {
  const Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Field f4 = make_field(2, 2);
  PolyRing r4(f4, Level::base);

  CHECK(error_pos([&] { parse_poly(r, ""); }) == 0);
  CHECK(error_pos([&] { parse_poly(r, "   "); }) == 3);
  CHECK(error_pos([&] { parse_poly(r, "x^"); }) == 2);
  CHECK(error_pos([&] { parse_poly(r, "x^9999"); }) == 2);
  CHECK(error_pos([&] { parse_poly(r, "x$"); }) == 1);
  CHECK(error_pos([&] { parse_poly(r, "2+*x"); }) == 2);
  CHECK(error_pos([&] { parse_poly(r, "2*"); }) == 2);
  CHECK(error_pos([&] { parse_poly(r, "y"); }) == 0);
  CHECK(error_pos([&] { parse_poly(r4, "[1"); }) == 2);
  CHECK(error_pos([&] { parse_poly(r4, "[1,0,1]"); }) > 0);
  CHECK_THROWS_AS(parse_poly(r, "[,]"), ParseError);

  // The thrown message names the position too.
  try {
    parse_poly(r, "x^");
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
}

TEST_CASE("complex literals") {
  const auto close = [](std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) < 1e-15;
  };
  CHECK(close(parse_complex("2"), {2, 0}));
  CHECK(close(parse_complex("-1.5"), {-1.5, 0}));
  CHECK(close(parse_complex("2.5+1.5i"), {2.5, 1.5}));
  CHECK(close(parse_complex("2-3i"), {2, -3}));
  CHECK(close(parse_complex("-1+0.3i"), {-1, 0.3}));
  CHECK(close(parse_complex("3i"), {0, 3}));
  CHECK(close(parse_complex("i"), {0, 1}));
  CHECK(close(parse_complex("-i"), {0, -1}));
  CHECK(close(parse_complex("1e-3+2.5i"), {1e-3, 2.5}));
  CHECK(close(parse_complex(" 2 - 3i "), {2, -3}));
  CHECK(close(parse_complex("3i+2"), {2, 3}));
  CHECK(close(parse_complex("2+I"), {2, 1}));

  CHECK(error_pos([&] { parse_complex(""); }) == 0);
  CHECK(error_pos([&] { parse_complex("abc"); }) == 0);
  CHECK_THROWS_AS(parse_complex("2+3"), ParseError);     // two real parts
  CHECK_THROWS_AS(parse_complex("2i+3i"), ParseError);   // two imaginary parts
  CHECK_THROWS_AS(parse_complex("2+3i junk"), ParseError);
  CHECK_THROWS_AS(parse_complex("2 3i"), ParseError);
  CHECK_THROWS_AS(parse_complex("inf"), ParseError);
  CHECK_THROWS_AS(parse_complex("nan+1i"), ParseError);
}

TEST_CASE("config JSON defaults and overrides") {
  const ConfigFile def = parse_config_json("{}");
  CHECK(def.p == 2);
  CHECK(def.l == 1);
  CHECK(def.n == 1);
  CHECK(def.modulus.empty());
  CHECK(def.budget_bits == 24);
  CHECK(def.format == "text");
  CHECK(def.step == doctest::Approx(1e-2));
  CHECK(def.seed == 12345);

  const ConfigFile cfg = parse_config_json(R"({
    "p": 3, "l": 1, "n": 2,
    "modulus": [],
    "ext_modulus": [[1], [0], [1]],
    "budget_bits": 20,
    "format": "json",
    "step": 0.005,
    "seed": 99
  })");
  CHECK(cfg.p == 3);
  CHECK(cfg.n == 2);
  CHECK(cfg.ext_modulus.size() == 3);
  CHECK(cfg.budget_bits == 20);
  CHECK(cfg.format == "json");
  CHECK(cfg.step == doctest::Approx(0.005));
  CHECK(cfg.seed == 99);
}

TEST_CASE("config JSON rejects malformed input") {
  CHECK_THROWS_AS(parse_config_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_config_json("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"mystery": 1})"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"p": "two"})"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"p": 1})"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"format": "yaml"})"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"step": 0})"), ParseError);
  CHECK_THROWS_AS(parse_config_json(R"({"budget_bits": 0})"), ParseError);
}

TEST_CASE("config files load from disk") {
  const std::string path = "/tmp/etaq_test_config.json";
  {
    std::ofstream out(path);
    out << R"({"p": 3, "format": "csv"})";
  }
  const ConfigFile cfg = load_config_file(path);
  CHECK(cfg.p == 3);
  CHECK(cfg.format == "csv");
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file(path), ParseError);
}

}  // TEST_SUITE
