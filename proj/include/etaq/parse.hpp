#pragma once

#include <complex>
#include <string>
#include <vector>

#include "etaq/poly.hpp"

namespace etaq {

// Parse polynomial text for the ring; inverse of PolyRing::show on canonical
// forms. Grammar: terms joined by '+' or '-'; a term is coeff, coeff '*' x
// power, coeff x power, or a bare x power; x powers are `x` or `x^e`.
// Coefficients are unsigned integers (reduced mod p) or bracketed coordinate
// lists for true extension elements ([a,...] with base-field entries, nested
// once more when the base field itself is not prime). Repeated exponents
// accumulate; whitespace between tokens is allowed. Throws ParseError with
// the offending character position.
Poly parse_poly(const PolyRing& r, const std::string& text);

// Complex scalar as `a+bi` with decimal literals: either part optional, the
// imaginary part marked by a trailing `i` (a bare or signed `i` means 1i).
// Throws ParseError with the offending character position.
std::complex<double> parse_complex(const std::string& text);

// Defaults loaded from a JSON config file: field parameters plus output and
// evaluation knobs. Every key optional; unknown keys rejected.
struct ConfigFile {
  long long p = 2;
  int l = 1;
  std::vector<int> modulus;  // base defining polynomial, low first; empty =
                             // first irreducible of degree l
  int n = 1;
  std::vector<std::vector<int>> ext_modulus;  // same convention, ext level
  int budget_bits = 24;      // direct-summation degree budget
  std::string format = "text";  // text | json | csv
  double step = 1e-2;        // quadrature step
  unsigned long long seed = 12345;
};

ConfigFile parse_config_json(const std::string& text);
ConfigFile load_config_file(const std::string& path);

}  // namespace etaq
