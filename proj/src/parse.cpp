#include "etaq/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "etaq/errors.hpp"
#include "json.hpp"

namespace etaq {

namespace {

constexpr int kMaxExponent = 512;  // desk-scale cap on typed-in degrees

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }
};

[[noreturn]] void fail(size_t pos, const std::string& what) {
  throw ParseError(what + " (position " + std::to_string(pos) + ")", pos);
}

bool at_digit(const Cursor& c) {
  return !c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()));
}

long long parse_uint(Cursor& c, const std::string& what) {
  if (!at_digit(c)) fail(c.i, "expected " + what);
  long long v = 0;
  while (at_digit(c)) {
    v = v * 10 + (c.peek() - '0');
    if (v > 1'000'000'000) fail(c.i, what + " out of range");
    ++c.i;
  }
  return v;
}

// One coefficient at the given tower level: a bare integer names a prime
// subfield element (reduced mod p; subfield elements keep their index at
// every level), a bracket list gives coordinates over the level below.
int parse_coeff(Cursor& c, const Field& f, Level lv) {
  c.skip_ws();
  if (at_digit(c))
    return static_cast<int>(parse_uint(c, "coefficient") % f.p());
  if (c.eof() || c.peek() != '[') fail(c.i, "expected coefficient");
  const size_t open = c.i;
  ++c.i;  // '['
  const int dim = lv == Level::ext ? f.n() : f.l();
  if (dim < 1 || (lv == Level::ext && !f.has_ext()))
    fail(open, "coordinate list needs an extension level");
  std::vector<int> coords;
  while (true) {
    if (lv == Level::ext) {
      coords.push_back(parse_coeff(c, f, Level::base));
    } else {
      c.skip_ws();
      coords.push_back(
          static_cast<int>(parse_uint(c, "integer coordinate") % f.p()));
    }
    if (static_cast<int>(coords.size()) > dim)
      fail(c.i, "too many coordinates (level holds " + std::to_string(dim) +
                    ")");
    c.skip_ws();
    if (!c.eof() && c.peek() == ',') {
      ++c.i;
      continue;
    }
    if (!c.eof() && c.peek() == ']') {
      ++c.i;
      break;
    }
    fail(c.i, "expected ',' or ']' in coordinate list");
  }
  coords.resize(dim, 0);
  return f.from_element(FieldElement{lv, std::move(coords)});
}

// x, or x^e.
int parse_xpower(Cursor& c) {
  ++c.i;  // 'x'
  c.skip_ws();
  if (!c.eof() && c.peek() == '^') {
    ++c.i;
    c.skip_ws();
    const size_t at = c.i;
    const long long e = parse_uint(c, "exponent");
    if (e > kMaxExponent)
      fail(at, "exponent out of range (max " + std::to_string(kMaxExponent) +
                   ")");
    return static_cast<int>(e);
  }
  return 1;
}

}  // namespace

Poly parse_poly(const PolyRing& r, const std::string& text) {
  const Field& f = r.field();
  const Level lv = r.level();
  Cursor c{text};
  std::vector<int> acc;
  bool negate = false;

  c.skip_ws();
  if (c.eof()) fail(c.i, "empty polynomial text");
  if (c.peek() == '+' || c.peek() == '-') {
    negate = c.peek() == '-';
    ++c.i;
    c.skip_ws();
  }

  while (true) {
    int coeff = 1;
    int exp = 0;
    if (!c.eof() && (at_digit(c) || c.peek() == '[')) {
      coeff = parse_coeff(c, f, lv);
      c.skip_ws();
      if (!c.eof() && c.peek() == '*') {
        ++c.i;
        c.skip_ws();
        if (c.eof() || c.peek() != 'x') fail(c.i, "expected x after '*'");
        exp = parse_xpower(c);
      } else if (!c.eof() && c.peek() == 'x') {
        exp = parse_xpower(c);
      }
    } else if (!c.eof() && c.peek() == 'x') {
      exp = parse_xpower(c);
    } else {
      fail(c.i, "expected term");
    }

    if (static_cast<size_t>(exp) >= acc.size()) acc.resize(exp + 1, 0);
    const int signed_coeff = negate ? f.neg(lv, coeff) : coeff;
    acc[exp] = f.add(lv, acc[exp], signed_coeff);

    c.skip_ws();
    if (c.eof()) break;
    if (c.peek() == '+' || c.peek() == '-') {
      negate = c.peek() == '-';
      ++c.i;
      c.skip_ws();
      continue;
    }
    fail(c.i, "unexpected character '" + std::string(1, c.peek()) + "'");
  }

  return r.from_coeffs(std::move(acc));
}

std::complex<double> parse_complex(const std::string& text) {
  Cursor c{text};
  double re = 0.0, im = 0.0;
  bool have_re = false, have_im = false;

  const auto is_i = [&](size_t j) {
    return j < text.size() && (text[j] == 'i' || text[j] == 'I');
  };
  const auto component = [&](double mult) {
    c.skip_ws();
    const size_t start = c.i;
    // Bare or signed `i` stands for 1i.
    double sign = 1.0;
    size_t j = c.i;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) {
      if (text[j] == '-') sign = -1.0;
      ++j;
    }
    if (is_i(j)) {
      c.i = j + 1;
      if (have_im) fail(start, "duplicate imaginary part");
      im += mult * sign;
      have_im = true;
      return;
    }
    const char* begin = text.c_str() + c.i;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(c.i, "expected number");
    if (!std::isfinite(v)) fail(c.i, "non-finite value");
    c.i += static_cast<size_t>(end - begin);
    if (is_i(c.i)) {
      ++c.i;
      if (have_im) fail(start, "duplicate imaginary part");
      im += mult * v;
      have_im = true;
    } else {
      if (have_re) fail(start, "duplicate real part");
      re += mult * v;
      have_re = true;
    }
  };

  c.skip_ws();
  if (c.eof()) fail(c.i, "empty complex literal");
  component(1.0);
  c.skip_ws();
  if (!c.eof()) {
    if (c.peek() != '+' && c.peek() != '-')
      fail(c.i, "expected '+' or '-' between parts");
    const double mult = c.peek() == '-' ? -1.0 : 1.0;
    ++c.i;
    component(mult);
    c.skip_ws();
  }
  if (!c.eof()) fail(c.i, "trailing characters after complex literal");
  return {re, im};
}

ConfigFile parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const size_t pos = e.byte > 0 ? static_cast<size_t>(e.byte - 1) : 0;
    fail(pos, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(0, "config root must be a JSON object");

  ConfigFile cfg;
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "p") {
        cfg.p = val.get<long long>();
      } else if (key == "l") {
        cfg.l = val.get<int>();
      } else if (key == "modulus") {
        cfg.modulus = val.get<std::vector<int>>();
      } else if (key == "n") {
        cfg.n = val.get<int>();
      } else if (key == "ext_modulus") {
        cfg.ext_modulus = val.get<std::vector<std::vector<int>>>();
      } else if (key == "budget_bits") {
        cfg.budget_bits = val.get<int>();
      } else if (key == "format") {
        cfg.format = val.get<std::string>();
      } else if (key == "step") {
        cfg.step = val.get<double>();
      } else if (key == "seed") {
        cfg.seed = val.get<unsigned long long>();
      } else {
        fail(0, "unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception&) {
      fail(0, "config key '" + key + "' has the wrong type");
    }
  }

  if (cfg.p < 2) fail(0, "config p must be a prime >= 2");
  if (cfg.l < 1) fail(0, "config l must be >= 1");
  if (cfg.n < 1) fail(0, "config n must be >= 1");
  if (cfg.budget_bits < 1) fail(0, "config budget_bits must be >= 1");
  if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
    fail(0, "config format must be text, json, or csv");
  if (!(cfg.step > 0.0)) fail(0, "config step must be positive");
  return cfg;
}

ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(0, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

}  // namespace etaq
