// Command-line front end: evaluate eta_k(G,H) by any of its three routes,
// evaluate the Dirichlet series built from it, emit coefficient and value
// tables, estimate mean squares, and run the identity suites.
//
// Exit codes: 0 success, 1 verify found a failing identity, 2 unusable input
// (flags, polynomial/complex/config text, domain violations), 3 evaluation at
// a pole, 4 direct-summation budget refusal.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "etaq/arith.hpp"
#include "etaq/errors.hpp"
#include "etaq/eta.hpp"
#include "etaq/field.hpp"
#include "etaq/identities.hpp"
#include "etaq/parse.hpp"
#include "etaq/poly.hpp"
#include "etaq/rational.hpp"
#include "etaq/series.hpp"

namespace {

using namespace etaq;
using ojson = nlohmann::ordered_json;

constexpr const char* kConfigEnvVar = "ETAQ_CONFIG";

std::string fmt_double(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.12g", v);
  return b;
}

std::string fmt_complex(std::complex<double> v) {
  char b[96];
  std::snprintf(b, sizeof b, "%.12g%+.12gi", v.real(), v.imag());
  return b;
}

// RFC-4180 quoting; needed because extension-level coefficients print as
// bracketed coordinate lists containing commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string ext_mod_to_text(const std::vector<std::vector<int>>& v) {
  if (v.empty()) return "";
  ojson j = ojson::array();
  for (const auto& entry : v) j.push_back(entry);
  return j.dump();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  size_t i = 0;
  for (;;) {
    const size_t comma = text.find(',', i);
    const size_t end = comma == std::string::npos ? text.size() : comma;
    const std::string tok = text.substr(i, end - i);
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != tok.size())
      throw ParseError("invalid integer '" + tok + "' in coefficient list (position " +
                           std::to_string(i) + ")",
                       i);
    out.push_back(v);
    if (comma == std::string::npos) break;
    i = comma + 1;
  }
  return out;
}

std::vector<std::vector<int>> parse_ext_mod_text(const std::string& text) {
  std::vector<std::vector<int>> out;
  if (text.empty()) return out;
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid extension modulus: ") + e.what(),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_array())
    throw ParseError("extension modulus must be a JSON array", 0);
  for (const auto& entry : j) {
    if (entry.is_number_integer()) {
      out.push_back({entry.get<int>()});
    } else if (entry.is_array()) {
      std::vector<int> coords;
      for (const auto& c : entry) {
        if (!c.is_number_integer())
          throw ParseError("extension modulus coordinates must be integers", 0);
        coords.push_back(c.get<int>());
      }
      out.push_back(std::move(coords));
    } else {
      throw ParseError("extension modulus entries must be integers or arrays",
                       0);
    }
  }
  return out;
}

// Inclusive degree range "d" or "lo:hi".
std::pair<int, int> parse_range(const std::string& text) {
  const auto geti = [&](const std::string& tok, size_t off) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0 || used != tok.size())
      throw ParseError("invalid degree '" + tok + "' (position " +
                           std::to_string(off) + ")",
                       off);
    return v;
  };
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = geti(text, 0);
    return {v, v};
  }
  const int lo = geti(text.substr(0, colon), 0);
  const int hi = geti(text.substr(colon + 1), colon + 1);
  if (lo > hi) throw DomainError("empty degree range '" + text + "'");
  return {lo, hi};
}

struct Globals {
  long long p = 2;
  int l = 1;
  std::string modulus;  // comma-separated, low degree first; empty = default
  int n = 1;
  std::string ext_modulus;  // JSON array text; empty = default
  int budget = 24;
  std::string format = "text";
  double step = 1e-2;
  unsigned long long seed = 12345;
  std::string config;
};

// The --config flag (or the environment fallback) must be applied before the
// real flag parse so explicit flags override file values.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(std::strlen("--config="));
  }
  if (const char* env = std::getenv(kConfigEnvVar)) return env;
  return "";
}

void print_json_line(const ojson& j) { std::printf("%s\n", j.dump().c_str()); }

int cmd_eta(const PolyRing& r, const Globals& g, const std::string& gtext,
            const std::string& htext, int k, const std::string& method) {
  const Poly G = parse_poly(r, gtext);
  const Poly H = parse_poly(r, htext);
  EtaMethod m = EtaMethod::holder;
  if (method == "direct") m = EtaMethod::direct;
  if (method == "kluyver") m = EtaMethod::kluyver;
  const long long v = eta(r, G, H, k, m, g.budget);
  if (g.format == "json") {
    ojson j;
    j["command"] = "eta";
    j["q"] = r.q();
    j["G"] = r.show(G);
    j["H"] = r.show(H);
    j["k"] = k;
    j["method"] = method;
    j["value"] = v;
    print_json_line(j);
  } else if (g.format == "csv") {
    std::printf("G,H,k,method,value\n%s,%s,%d,%s,%lld\n",
                csv_field(r.show(G)).c_str(), csv_field(r.show(H)).c_str(), k,
                method.c_str(), v);
  } else {
    std::printf("%lld\n", v);
  }
  return 0;
}

int cmd_series(const PolyRing& r, const Globals& g, const std::string& which,
               const std::string& stext, const std::string& gtext,
               const std::string& htext, int k, const std::string& method,
               int maxdeg) {
  const std::complex<double> s = parse_complex(stext);
  const SeriesMethod m =
      method == "closed" ? SeriesMethod::closed : SeriesMethod::truncated;
  // Integer s admits exact rational evaluation; everything else goes through
  // complex doubles.
  const bool integral = s.imag() == 0.0 && std::floor(s.real()) == s.real() &&
                        std::abs(s.real()) <= 1e6;
  const long long si = integral ? (long long)s.real() : 0;

  const auto need = [&](const std::string& text, const char* flag) {
    if (text.empty())
      throw DomainError("series --which " + which + " requires " + flag);
  };

  std::string value;
  bool exact = false;
  if (which == "zeta") {
    if (integral) {
      exact = true;
      value = (m == SeriesMethod::closed ? zeta_A_exact(r.q(), si)
                                         : zeta_A_partial_exact(r.q(), si, maxdeg))
                  .str();
    } else {
      value = fmt_complex(m == SeriesMethod::closed
                              ? zeta_A(r.q(), s)
                              : zeta_A_partial(r.q(), s, maxdeg));
    }
  } else if (which == "delta") {
    need(gtext, "--G");
    const Poly G = parse_poly(r, gtext);
    if (integral) {
      exact = true;
      value = delta_exact(r, G, k, si, m).str();
    } else {
      value = fmt_complex(delta(r, G, k, s, m));
    }
  } else if (which == "tau") {
    need(htext, "--H");
    const Poly H = parse_poly(r, htext);
    if (integral) {
      exact = true;
      value = tau_exact(r, H, k, si, m).str();
    } else {
      value = fmt_complex(tau(r, H, k, s, m));
    }
  } else {  // sigma
    need(htext, "--H");
    if (k != 1) throw DomainError("sigma is defined for k = 1 only");
    const Poly H = parse_poly(r, htext);
    if (integral) {
      exact = true;
      value = sigma_exact(r, H, si, m, maxdeg).str();
    } else {
      value = fmt_complex(sigma(r, H, s, m, maxdeg));
    }
  }

  if (g.format == "json") {
    ojson j;
    j["command"] = "series";
    j["which"] = which;
    j["s"] = stext;
    j["method"] = method;
    j["value"] = value;
    j["exact"] = exact;
    print_json_line(j);
  } else if (g.format == "csv") {
    std::printf("which,s,method,value\n%s,%s,%s,%s\n", which.c_str(),
                csv_field(stext).c_str(), method.c_str(),
                csv_field(value).c_str());
  } else {
    std::printf("%s\n", value.c_str());
  }
  return 0;
}

int cmd_coeffs(const PolyRing& r, const Globals& g, const std::string& which,
               const std::string& gtext, const std::string& htext, int k) {
  std::vector<long long> vals;
  if (which == "A") {
    if (gtext.empty()) throw DomainError("coeffs --which A requires --G");
    vals = a_coeffs(r, parse_poly(r, gtext), k);
  } else {
    if (htext.empty()) throw DomainError("coeffs --which B requires --H");
    vals = b_coeffs(r, parse_poly(r, htext), k);
  }
  const std::string col = which + "_n";
  if (g.format == "json") {
    ojson j;
    j["command"] = "coeffs";
    j["which"] = which;
    j["k"] = k;
    j["values"] = vals;
    print_json_line(j);
  } else if (g.format == "csv") {
    std::printf("n,%s\n", col.c_str());
    for (size_t n = 0; n < vals.size(); ++n)
      std::printf("%zu,%lld\n", n, vals[n]);
  } else {
    for (size_t n = 0; n < vals.size(); ++n)
      std::printf("%s(%zu) = %lld\n", which.c_str(), n, vals[n]);
  }
  return 0;
}

int cmd_meansquare(const PolyRing& r, const Globals& g,
                   const std::string& which, double c, double T,
                   const std::string& gtext, const std::string& htext, int k) {
  if (g.step <= 0) throw DomainError("step must be positive");
  const MeanSquareKind kind =
      which == "delta" ? MeanSquareKind::delta : MeanSquareKind::tau;
  Poly gh;
  if (kind == MeanSquareKind::delta) {
    if (gtext.empty()) throw DomainError("meansquare --which delta requires --G");
    gh = parse_poly(r, gtext);
  } else {
    if (htext.empty()) throw DomainError("meansquare --which tau requires --H");
    gh = parse_poly(r, htext);
  }

  if (g.format == "csv") {
    // Integrand samples on the quadrature grid, for plotting.
    std::printf("t,integrand\n");
    const long long nsteps = std::llround(2.0 * T / g.step);
    for (long long i = 0; i <= nsteps; ++i) {
      const double t = -T + (double)i * g.step;
      const std::complex<double> st(c, t);
      const std::complex<double> v =
          kind == MeanSquareKind::delta
              ? delta(r, gh, k, st, SeriesMethod::closed)
              : tau(r, gh, k, st, SeriesMethod::closed);
      std::printf("%.12g,%.12g\n", t, std::norm(v));
    }
    return 0;
  }

  const MeanSquareResult res = mean_square(r, kind, c, T, gh, k, g.step);
  if (g.format == "json") {
    ojson j;
    j["command"] = "meansquare";
    j["which"] = which;
    j["c"] = c;
    j["T"] = T;
    j["k"] = k;
    j["numeric"] = res.numeric;
    j["formula"] = res.formula;
    j["diagonal_limit"] = res.diagonal_limit;
    j["step_refinement"] = res.step_refinement;
    print_json_line(j);
  } else {
    std::printf("numeric         = %s\n", fmt_double(res.numeric).c_str());
    std::printf("formula         = %s\n", fmt_double(res.formula).c_str());
    std::printf("diagonal_limit  = %s\n",
                fmt_double(res.diagonal_limit).c_str());
    std::printf("step_refinement = %s\n",
                fmt_double(res.step_refinement).c_str());
  }
  return 0;
}

int cmd_verify(const Field& f, const Globals& g, const std::string& suite_text,
               int max_deg, int k_max, double rate, int sweep_budget,
               const std::string& emit) {
  SuiteOptions opt;
  opt.max_deg = max_deg;
  opt.k_max = k_max;
  opt.sample_rate = rate;
  opt.seed = g.seed;
  opt.keep_all = emit == "full";
  opt.direct_budget_bits = sweep_budget;
  const Suite suite = suite_from_name(suite_text);
  const SuiteResult res = run_suite(f, suite, opt);

  if (g.format == "json") {
    for (const IdentityReport& rep : res.reports) {
      ojson j;
      j["identity_id"] = rep.identity_id;
      j["instance"] = rep.instance;
      j["lhs"] = rep.lhs;
      j["rhs"] = rep.rhs;
      j["pass"] = rep.pass;
      if (!rep.note.empty()) j["note"] = rep.note;
      print_json_line(j);
    }
    for (const IdentitySummary& s : res.summaries) {
      ojson j;
      j["identity_id"] = s.identity_id;
      j["instances"] = s.instances;
      j["failures"] = s.failures;
      j["pass"] = s.pass;
      if (!s.note.empty()) j["note"] = s.note;
      print_json_line(j);
    }
    ojson j;
    j["suite"] = suite_name(suite);
    j["instances"] = res.instances;
    j["failures"] = res.failures;
    j["pass"] = res.pass;
    print_json_line(j);
  } else if (g.format == "csv") {
    std::printf("identity_id,instances,failures,pass\n");
    for (const IdentitySummary& s : res.summaries)
      std::printf("%s,%lld,%lld,%s\n", csv_field(s.identity_id).c_str(),
                  s.instances, s.failures, s.pass ? "true" : "false");
  } else {
    for (const IdentityReport& rep : res.reports) {
      std::printf("%s %s [%s] lhs=%s rhs=%s", rep.pass ? "ok  " : "FAIL",
                  rep.identity_id.c_str(), rep.instance.c_str(),
                  rep.lhs.c_str(), rep.rhs.c_str());
      if (!rep.note.empty()) std::printf(" (%s)", rep.note.c_str());
      std::printf("\n");
    }
    for (const IdentitySummary& s : res.summaries) {
      std::printf("%-36s %8lld instances %6lld failures %s", s.identity_id.c_str(),
                  s.instances, s.failures, s.pass ? "pass" : "FAIL");
      if (!s.note.empty()) std::printf(" (%s)", s.note.c_str());
      std::printf("\n");
    }
    std::printf("suite %s: %lld instances, %lld failures -> %s\n",
                suite_name(suite).c_str(), res.instances, res.failures,
                res.pass ? "PASS" : "FAIL");
  }
  return res.pass ? 0 : 1;
}

int cmd_table(const PolyRing& r, const Globals& g, const std::string& hdegs,
              const std::string& gdegs, int k) {
  const auto [hlo, hhi] = parse_range(hdegs);
  const auto [glo, ghi] = parse_range(gdegs);
  if (hlo < 0) throw DomainError("H degrees must be >= 0");
  if (glo < 0) throw DomainError("G degrees must be >= 0");

  // Columns: every G with glo <= deg G <= ghi, plus G = 0 when glo = 0, in
  // coefficient-rank order. Rows: monic H by (degree, rank).
  std::vector<Poly> cols;
  for (const Poly& a : r.all_by_max_degree(ghi)) {
    if (a.is_zero() ? glo == 0 : a.deg() >= glo) cols.push_back(a);
  }
  std::vector<Poly> rows;
  for (int d = hlo; d <= hhi; ++d)
    for (const Poly& h : r.monic_by_degree(d)) rows.push_back(h);

  if (cols.size() * rows.size() > (1u << 20))
    throw DomainError("table too large; narrow the degree ranges");

  std::vector<std::vector<long long>> values(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    values[i].reserve(cols.size());
    for (const Poly& G : cols) values[i].push_back(eta_holder(r, G, rows[i], k));
  }

  if (g.format == "json") {
    ojson j;
    j["command"] = "table";
    j["q"] = r.q();
    j["k"] = k;
    ojson gs = ojson::array();
    for (const Poly& G : cols) gs.push_back(r.show(G));
    j["G"] = std::move(gs);
    ojson jrows = ojson::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      ojson row;
      row["H"] = r.show(rows[i]);
      row["values"] = values[i];
      jrows.push_back(std::move(row));
    }
    j["rows"] = std::move(jrows);
    print_json_line(j);
  } else if (g.format == "csv") {
    std::printf("H\\G");
    for (const Poly& G : cols) std::printf(",%s", csv_field(r.show(G)).c_str());
    std::printf("\n");
    for (size_t i = 0; i < rows.size(); ++i) {
      std::printf("%s", csv_field(r.show(rows[i])).c_str());
      for (long long v : values[i]) std::printf(",%lld", v);
      std::printf("\n");
    }
  } else {
    std::vector<std::string> headers{"H\\G"};
    for (const Poly& G : cols) headers.push_back(r.show(G));
    std::vector<size_t> width(headers.size());
    for (size_t j = 0; j < headers.size(); ++j) width[j] = headers[j].size();
    std::vector<std::vector<std::string>> cells(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      cells[i].push_back(r.show(rows[i]));
      for (long long v : values[i]) cells[i].push_back(std::to_string(v));
      for (size_t j = 0; j < cells[i].size(); ++j)
        width[j] = std::max(width[j], cells[i][j].size());
    }
    const auto print_row = [&](const std::vector<std::string>& row) {
      for (size_t j = 0; j < row.size(); ++j)
        std::printf("%s%-*s", j ? "  " : "", (int)width[j], row[j].c_str());
      std::printf("\n");
    };
    print_row(headers);
    for (const auto& row : cells) print_row(row);
  }
  return 0;
}

int run(int argc, char** argv) {
  Globals g;
  const std::string cfg_path = find_config_path(argc, argv);
  if (!cfg_path.empty()) {
    const ConfigFile cfg = load_config_file(cfg_path);
    g.p = cfg.p;
    g.l = cfg.l;
    g.modulus = join_ints(cfg.modulus);
    g.n = cfg.n;
    g.ext_modulus = ext_mod_to_text(cfg.ext_modulus);
    g.budget = cfg.budget_bits;
    g.format = cfg.format;
    g.step = cfg.step;
    g.seed = cfg.seed;
  }

  CLI::App app{
      "Exact generalized Ramanujan sums eta_k(G,H) over F_q[x]: three "
      "evaluation routes, their Dirichlet series, value tables, mean-square "
      "estimates, and machine-checked identity suites.",
      "etaq"};
  app.require_subcommand(1);
  app.add_option("--p", g.p, "prime characteristic")->capture_default_str();
  app.add_option("--l", g.l, "base field degree over F_p (q = p^l)")
      ->capture_default_str();
  app.add_option("--modulus", g.modulus,
                 "base field defining polynomial over F_p, comma-separated "
                 "coefficients low degree first (default: first irreducible)");
  app.add_option("--n", g.n,
                 "extension degree over F_q; with n >= 2 the working ring is "
                 "F_{q^n}[x]")
      ->capture_default_str();
  app.add_option("--ext-modulus", g.ext_modulus,
                 "extension defining polynomial as a JSON array of "
                 "base-element coordinate vectors (default: first "
                 "irreducible)");
  app.add_option("--budget", g.budget,
                 "bit budget for direct summation: refuse when "
                 "k*deg(H)*log2(q) exceeds it")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--step", g.step, "quadrature step for meansquare")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for the verify cross-check subsample")
      ->capture_default_str();
  app.add_option("--config", g.config,
                 std::string("JSON file supplying defaults for these flags "
                             "(also read from $") +
                     kConfigEnvVar + ")");

  auto* eta_cmd =
      app.add_subcommand("eta", "evaluate eta_k(G,H) by one route");
  eta_cmd->fallthrough();
  std::string eta_g, eta_h, eta_method = "holder";
  int eta_k = 1;
  eta_cmd->add_option("--G", eta_g, "argument polynomial")->required();
  eta_cmd->add_option("--H", eta_h, "modulus polynomial")->required();
  eta_cmd->add_option("--k", eta_k, "power index")->capture_default_str();
  eta_cmd->add_option("--method", eta_method, "evaluation route")
      ->check(CLI::IsMember({"direct", "kluyver", "holder"}))
      ->capture_default_str();

  auto* series_cmd =
      app.add_subcommand("series", "evaluate a Dirichlet series at s");
  series_cmd->fallthrough();
  std::string se_which, se_s, se_g, se_h, se_method = "closed";
  int se_k = 1, se_maxdeg = 14;
  series_cmd->add_option("--which", se_which, "series family")
      ->check(CLI::IsMember({"delta", "tau", "sigma", "zeta"}))
      ->required();
  series_cmd->add_option("--s", se_s, "evaluation point, a+bi")->required();
  series_cmd->add_option("--G", se_g, "argument polynomial (delta)");
  series_cmd->add_option("--H", se_h, "modulus polynomial (tau, sigma)");
  series_cmd->add_option("--k", se_k, "power index")->capture_default_str();
  series_cmd->add_option("--method", se_method, "closed form or truncated sum")
      ->check(CLI::IsMember({"closed", "truncated"}))
      ->capture_default_str();
  series_cmd
      ->add_option("--max-deg", se_maxdeg,
                   "truncation degree for sigma and zeta")
      ->capture_default_str();

  auto* coeffs_cmd = app.add_subcommand(
      "coeffs", "emit the degree-indexed series coefficients");
  coeffs_cmd->fallthrough();
  std::string co_which, co_g, co_h;
  int co_k = 1;
  coeffs_cmd->add_option("--which", co_which, "A (delta) or B (tau)")
      ->check(CLI::IsMember({"A", "B"}))
      ->required();
  coeffs_cmd->add_option("--G", co_g, "argument polynomial (A)");
  coeffs_cmd->add_option("--H", co_h, "modulus polynomial (B)");
  coeffs_cmd->add_option("--k", co_k, "power index")->capture_default_str();

  auto* ms_cmd = app.add_subcommand(
      "meansquare", "mean square of delta or tau on the line Re s = c");
  ms_cmd->fallthrough();
  std::string ms_which, ms_g, ms_h;
  double ms_c = 0, ms_T = 0;
  int ms_k = 1;
  ms_cmd->add_option("--which", ms_which, "series family")
      ->check(CLI::IsMember({"delta", "tau"}))
      ->required();
  ms_cmd->add_option("--c", ms_c, "real part of the line")->required();
  ms_cmd->add_option("--T", ms_T, "integration half-length")->required();
  ms_cmd->add_option("--G", ms_g, "argument polynomial (delta)");
  ms_cmd->add_option("--H", ms_h, "modulus polynomial (tau)");
  ms_cmd->add_option("--k", ms_k, "power index")->capture_default_str();

  auto* verify_cmd =
      app.add_subcommand("verify", "run an identity suite; exit 1 on failure");
  verify_cmd->fallthrough();
  std::string ve_suite = "all", ve_emit = "failures";
  int ve_maxdeg = 2, ve_kmax = 2, ve_sweep_budget = 16;
  double ve_rate = 0.05;
  verify_cmd->add_option("--suite", ve_suite, "suite to run")
      ->check(CLI::IsMember({"holder", "reciprocity", "orthogonality",
                             "corollaries", "davenport-hasse", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--max-deg", ve_maxdeg, "sweep moduli through this degree")
      ->capture_default_str();
  verify_cmd->add_option("--k-max", ve_kmax, "sweep k through this value")
      ->capture_default_str();
  verify_cmd
      ->add_option("--sample-rate", ve_rate,
                   "share of closed-form values re-derived by direct summation")
      ->capture_default_str();
  verify_cmd
      ->add_option("--sweep-budget", ve_sweep_budget,
                   "bit budget for direct summation inside sweeps")
      ->capture_default_str();
  verify_cmd
      ->add_option("--emit", ve_emit,
                   "failures: per-instance reports only for failures; full: "
                   "keep passing reports too")
      ->check(CLI::IsMember({"failures", "full"}))
      ->capture_default_str();

  auto* table_cmd =
      app.add_subcommand("table", "tabulate eta_k(G,H) over degree ranges");
  table_cmd->fallthrough();
  std::string ta_h = "1:2", ta_g = "0:2";
  int ta_k = 1;
  table_cmd
      ->add_option("--H-degrees", ta_h, "monic moduli degree range, d or lo:hi")
      ->capture_default_str();
  table_cmd
      ->add_option("--G-degrees", ta_g,
                   "argument degree range, d or lo:hi; lo = 0 also includes "
                   "G = 0")
      ->capture_default_str();
  table_cmd->add_option("--k", ta_k, "power index")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  }

  FieldParams fp;
  fp.p = g.p;
  fp.l = g.l;
  fp.n = g.n;
  fp.modulus = parse_int_list(g.modulus);
  fp.ext_modulus = parse_ext_mod_text(g.ext_modulus);
  const Field field(fp);
  const PolyRing ring(field, field.has_ext() ? Level::ext : Level::base);

  if (eta_cmd->parsed())
    return cmd_eta(ring, g, eta_g, eta_h, eta_k, eta_method);
  if (series_cmd->parsed())
    return cmd_series(ring, g, se_which, se_s, se_g, se_h, se_k, se_method,
                      se_maxdeg);
  if (coeffs_cmd->parsed())
    return cmd_coeffs(ring, g, co_which, co_g, co_h, co_k);
  if (ms_cmd->parsed())
    return cmd_meansquare(ring, g, ms_which, ms_c, ms_T, ms_g, ms_h, ms_k);
  if (verify_cmd->parsed())
    return cmd_verify(field, g, ve_suite, ve_maxdeg, ve_kmax, ve_rate,
                      ve_sweep_budget, ve_emit);
  return cmd_table(ring, g, ta_h, ta_g, ta_k);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const PoleError& e) {
    std::fprintf(stderr, "pole error: %s\n", e.what());
    return 3;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
