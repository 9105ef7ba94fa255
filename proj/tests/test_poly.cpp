#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "etaq/errors.hpp"
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

Poly P(const PolyRing& r, std::vector<int> c) { return r.from_coeffs(std::move(c)); }

// Reference divisor test by scanning all monic candidates (no factorization).
std::vector<Poly> scan_divisors(const PolyRing& r, const Poly& h) {
  std::vector<Poly> out;
  for (int d = 0; d <= h.deg(); ++d)
    for (const Poly& c : r.monic_by_degree(d))
      if (r.divides(c, h)) out.push_back(c);
  return out;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("canonical form and accessors") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  CHECK(r.zero().is_zero());
  CHECK(r.zero().deg() == -1);
  CHECK(r.one().is_one());
  CHECK(r.x().deg() == 1);
  CHECK(r.constant(0) == r.zero());
  CHECK(r.constant(1) == r.one());
  CHECK(P(r, {1, 1, 0, 0}) == P(r, {1, 1}));  // trailing zeros trimmed
  CHECK(r.lead(r.zero()) == 0);
  CHECK(r.lead(P(r, {0, 1, 1})) == 1);
  CHECK(r.is_monic(P(r, {1, 1})));
  CHECK_FALSE(r.is_monic(r.zero()));
  CHECK_THROWS_AS(P(r, {2}), DomainError);  // coefficient out of range

  Field f3 = make_field(3);
  PolyRing r3(f3, Level::base);
  CHECK(r3.monic(P(r3, {1, 2})) == P(r3, {2, 1}));  // 2x+1 -> x+2
  CHECK(r3.monic(r3.zero()).is_zero());
}

TEST_CASE("ring arithmetic on pinned values") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x();
  CHECK(r.add(P(r, {1, 1}), P(r, {1, 0, 1})) == P(r, {0, 1, 1}));
  CHECK(r.mul(P(r, {1, 1}), P(r, {1, 1})) == P(r, {1, 0, 1}));  // (x+1)^2
  CHECK(r.pow(x, 3) == P(r, {0, 0, 0, 1}));
  CHECK(r.pow(x, 0).is_one());
  CHECK(r.mul(r.zero(), x).is_zero());
  CHECK(r.sub(x, x).is_zero());

  auto [q1, r1] = r.divmod(P(r, {0, 1, 1}), x);  // x^2+x = (x+1)*x + 0
  CHECK(q1 == P(r, {1, 1}));
  CHECK(r1.is_zero());
  auto [q2, r2] = r.divmod(P(r, {1, 1, 1}), P(r, {1, 1}));  // x^2+x+1 mod x+1
  CHECK(q2 == x);
  CHECK(r2.is_one());
  CHECK_THROWS_AS(r.divmod(x, r.zero()), DomainError);
  CHECK(r.quot_exact(P(r, {0, 1, 1}), x) == P(r, {1, 1}));
  CHECK_THROWS_AS(r.quot_exact(P(r, {1, 1, 1}), x), InternalError);
  CHECK(r.poly_arithmetic(P(r, {1, 1}), P(r, {1, 1}), PolyOp::mul) ==
        P(r, {1, 0, 1}));
}

TEST_CASE("division invariant holds exhaustively") {
  for (long long p : {2LL, 3LL}) {
    Field f = make_field(p);
    PolyRing r(f, Level::base);
    for (const Poly& a : r.all_by_max_degree(3)) {
      for (const Poly& b : r.all_by_max_degree(2)) {
        if (b.is_zero()) continue;
        auto [q, rem] = r.divmod(a, b);
        CHECK(r.add(r.mul(q, b), rem) == a);
        CHECK(rem.deg() < b.deg());
      }
    }
  }
}

TEST_CASE("gcd: pinned values and divisor-lattice property") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  CHECK(r.gcd(P(r, {0, 1, 1}), P(r, {1, 0, 1})) == P(r, {1, 1}));
  CHECK(r.gcd(P(r, {0, 1, 1}), r.zero()) == P(r, {0, 1, 1}));
  CHECK(r.gcd(r.zero(), r.zero()).is_zero());

  Field f3 = make_field(3);
  PolyRing r3(f3, Level::base);
  CHECK(r3.gcd(P(r3, {0, 2}), P(r3, {0, 0, 2})) == r3.x());  // result monic

  for (const Poly& a : r.all_by_max_degree(3)) {
    for (const Poly& b : r.all_by_max_degree(3)) {
      Poly g = r.gcd(a, b);
      if (a.is_zero() && b.is_zero()) {
        CHECK(g.is_zero());
        continue;
      }
      CHECK(r.is_monic(g));
      CHECK(r.divides(g, a));
      CHECK(r.divides(g, b));
      // Every common divisor divides g.
      for (int d = 0; d <= g.deg(); ++d)
        for (const Poly& c : r.monic_by_degree(d))
          if (r.divides(c, a) && r.divides(c, b)) CHECK(r.divides(c, g));
    }
  }
}

TEST_CASE("power gcd: pinned values") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x();
  CHECK(r.power_gcd(r.pow(x, 4), r.pow(x, 6), 2) == r.pow(x, 2));
  CHECK(r.power_gcd(r.pow(x, 4), r.pow(x, 6), 3) == x);
  CHECK(r.power_gcd(P(r, {1, 1}), x, 1).is_one());
  // (0, h^k)_k = h: the zero argument is divisible by everything.
  Poly h = P(r, {0, 1, 1});
  CHECK(r.power_gcd(r.zero(), r.pow(h, 2), 2) == h);
  CHECK(r.power_gcd(r.zero(), h, 1) == h);
  CHECK_THROWS_AS(r.power_gcd(r.zero(), r.zero(), 2), DomainError);
  CHECK_THROWS_AS(r.power_gcd(x, x, 0), DomainError);
}

TEST_CASE("power gcd maximality against divisor scan") {
  for (long long p : {2LL, 3LL}) {
    Field f = make_field(p);
    PolyRing r(f, Level::base);
    for (int k : {1, 2, 3}) {
      for (const Poly& a : r.all_by_max_degree(3)) {
        for (const Poly& b : r.all_by_max_degree(3)) {
          if (a.is_zero() && b.is_zero()) continue;
          Poly d = r.power_gcd(a, b, k);
          CHECK(r.is_monic(d));
          Poly dk = r.pow(d, k);
          CHECK(r.divides(dk, a));
          CHECK(r.divides(dk, b));
          // No monic of larger degree works.
          int bound = std::max(a.deg(), b.deg());
          for (int dd = d.deg() + 1; k * dd <= bound; ++dd)
            for (const Poly& c : r.monic_by_degree(dd)) {
              Poly ck = r.pow(c, k);
              CHECK_FALSE((r.divides(ck, a) && r.divides(ck, b)));
            }
        }
      }
    }
  }
}

TEST_CASE("irreducible counts match the zeta census") {
  // #monic irreducibles of degree n over F_q = (1/n) sum_{d|n} mu(d) q^{n/d}.
  Field f2 = make_field(2);
  PolyRing r2(f2, Level::base);
  CHECK(r2.irreducibles(1).size() == 2);
  CHECK(r2.irreducibles(2).size() == 1);
  CHECK(r2.irreducibles(3).size() == 2);
  CHECK(r2.irreducibles(4).size() == 3);
  CHECK(r2.irreducibles(2)[0] == P(r2, {1, 1, 1}));

  Field f3 = make_field(3);
  PolyRing r3(f3, Level::base);
  CHECK(r3.irreducibles(1).size() == 3);
  CHECK(r3.irreducibles(2).size() == 3);
  CHECK(r3.irreducibles(3).size() == 8);
  CHECK(r3.irreducibles(4).size() == 18);

  Field f4 = make_field(2, 2);
  PolyRing r4(f4, Level::base);
  CHECK(r4.irreducibles(1).size() == 4);
  CHECK(r4.irreducibles(2).size() == 6);

  CHECK(r2.is_irreducible(P(r2, {1, 1, 1})));
  CHECK_FALSE(r2.is_irreducible(P(r2, {1, 0, 1})));  // (x+1)^2
  CHECK_FALSE(r2.is_irreducible(r2.one()));
  CHECK_FALSE(r2.is_irreducible(r2.zero()));
  CHECK(r2.is_irreducible(P(r2, {1, 1, 0, 1})));
  CHECK(r3.is_irreducible(P(r3, {1, 0, 1})));  // x^2+1 over F_3
}

TEST_CASE("factorize: pinned shapes and reassembly sweep") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x(), xp1 = P(r, {1, 1});

  FactoredPoly a = r.factorize(P(r, {0, 1, 1}));  // x^2+x = x(x+1)
  REQUIRE(a.factors.size() == 2);
  CHECK(a.unit == 1);
  CHECK(a.factors[0] == std::pair{x, 1});
  CHECK(a.factors[1] == std::pair{xp1, 1});

  FactoredPoly b = r.factorize(P(r, {1, 0, 1}));  // (x+1)^2
  REQUIRE(b.factors.size() == 1);
  CHECK(b.factors[0] == std::pair{xp1, 2});

  FactoredPoly c = r.factorize(P(r, {1, 1, 1}));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].second == 1);

  CHECK(r.factorize(r.one()).factors.empty());
  CHECK_THROWS_AS(r.factorize(r.zero()), DomainError);

  Field f3 = make_field(3);
  PolyRing r3(f3, Level::base);
  FactoredPoly u = r3.factorize(P(r3, {0, 2, 2}));  // 2x(x+1)
  CHECK(u.unit == 2);
  REQUIRE(u.factors.size() == 2);

  for (long long p : {2LL, 3LL}) {
    Field ff = make_field(p);
    PolyRing rr(ff, Level::base);
    for (const Poly& h : rr.all_by_max_degree(4)) {
      if (h.is_zero()) continue;
      FactoredPoly fp = rr.factorize(h);
      Poly back = rr.constant(fp.unit);
      for (const auto& [prime, e] : fp.factors) {
        CHECK(rr.is_irreducible(prime));
        CHECK(rr.is_monic(prime));
        CHECK(e >= 1);
        back = rr.mul(back, rr.pow(prime, e));
      }
      CHECK(back == h);
      // Factors sorted and distinct.
      for (size_t i = 1; i < fp.factors.size(); ++i) {
        const Poly &first = fp.factors[i - 1].first, &second = fp.factors[i].first;
        CHECK((first.deg() < second.deg() ||
               (first.deg() == second.deg() &&
                rr.encode(first) < rr.encode(second))));
      }
      CHECK(rr.factorize(h).factors == fp.factors);  // cached copy agrees
    }
  }
}

TEST_CASE("monic divisors: pinned lists and scan equivalence") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x();
  CHECK(r.monic_divisors(r.pow(x, 2)) ==
        std::vector<Poly>{r.one(), x, r.pow(x, 2)});
  CHECK(r.monic_divisors(P(r, {0, 1, 1})) ==
        std::vector<Poly>{r.one(), x, P(r, {1, 1}), P(r, {0, 1, 1})});
  CHECK(r.monic_divisors(r.one()) == std::vector<Poly>{r.one()});
  CHECK_THROWS_AS(r.monic_divisors(r.zero()), DomainError);

  for (long long p : {2LL, 3LL}) {
    Field ff = make_field(p);
    PolyRing rr(ff, Level::base);
    int maxdeg = p == 2 ? 4 : 3;
    for (const Poly& h : rr.all_by_max_degree(maxdeg)) {
      if (h.is_zero()) continue;
      std::vector<Poly> divs = rr.monic_divisors(h);
      CHECK(divs == scan_divisors(rr, h));
      // Divisor count is multiplicative: prod (e_i + 1).
      size_t expect = 1;
      for (const auto& [prime, e] : rr.factorize(h).factors) {
        (void)prime;
        expect *= e + 1;
      }
      CHECK(divs.size() == expect);
    }
  }
}

TEST_CASE("squarefree split") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x(), xp1 = P(r, {1, 1});
  {
    auto [hbar, hstar] = r.squarefree_split(r.mul(r.pow(x, 2), xp1));
    CHECK(hbar == r.mul(x, xp1));
    CHECK(hstar == x);
  }
  {
    auto [hbar, hstar] = r.squarefree_split(r.pow(x, 4));
    CHECK(hbar == x);
    CHECK(hstar == r.pow(x, 3));
  }
  {
    auto [hbar, hstar] = r.squarefree_split(r.one());
    CHECK(hbar.is_one());
    CHECK(hstar.is_one());
  }
  CHECK_THROWS_AS(r.squarefree_split(r.zero()), DomainError);

  for (const Poly& h : r.all_by_max_degree(4)) {
    if (h.is_zero()) continue;
    auto [hbar, hstar] = r.squarefree_split(h);
    CHECK(r.mul(hbar, hstar) == r.monic(h));
    for (const auto& [prime, e] : r.factorize(hbar).factors) {
      (void)prime;
      CHECK(e == 1);  // radical is squarefree
    }
    for (const auto& [prime, e] : r.factorize(h).factors) {
      (void)e;
      CHECK(r.divides(prime, hbar));  // radical carries every prime
    }
  }
}

TEST_CASE("enumeration sizes and membership") {
  Field f3 = make_field(3);
  PolyRing r(f3, Level::base);
  CHECK(r.monic_by_degree(0) == std::vector<Poly>{r.one()});
  CHECK(r.monic_by_degree(2).size() == 9);
  for (const Poly& a : r.monic_by_degree(2)) {
    CHECK(a.deg() == 2);
    CHECK(r.is_monic(a));
  }
  CHECK(r.all_by_max_degree(2).size() == 27);
  std::set<uint64_t> seen;
  bool saw_zero = false, saw_nonmonic = false;
  for (const Poly& a : r.all_by_max_degree(2)) {
    CHECK(a.deg() <= 2);
    seen.insert(r.encode(a));
    saw_zero = saw_zero || a.is_zero();
    saw_nonmonic = saw_nonmonic || (!a.is_zero() && !r.is_monic(a));
  }
  CHECK(seen.size() == 27);  // all distinct
  CHECK(saw_zero);
  CHECK(saw_nonmonic);
}

TEST_CASE("residue systems") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  const Poly x = r.x();

  CHECK(r.residue_system(x, 1, ResidueKind::complete) ==
        std::vector<Poly>{r.zero(), r.one()});
  CHECK(r.residue_system(x, 1, ResidueKind::k_reduced) ==
        std::vector<Poly>{r.one()});
  // Residues mod x^2 that are 2-reduced: no square of a nonunit divides them.
  CHECK(r.residue_system(x, 2, ResidueKind::k_reduced) ==
        std::vector<Poly>{r.one(), x, P(r, {1, 1})});
  // Unit modulus: the single residue class, and it counts as reduced.
  CHECK(r.residue_system(r.one(), 3, ResidueKind::complete) ==
        std::vector<Poly>{r.zero()});
  CHECK(r.residue_system(r.one(), 3, ResidueKind::k_reduced) ==
        std::vector<Poly>{r.zero()});
  CHECK_THROWS_AS(r.residue_system(r.zero(), 1, ResidueKind::complete),
                  DomainError);
  CHECK_THROWS_AS(r.residue_system(x, 0, ResidueKind::complete), DomainError);

  for (long long p : {2LL, 3LL}) {
    Field ff = make_field(p);
    PolyRing rr(ff, Level::base);
    for (int deg = 1; deg <= 2; ++deg) {
      for (const Poly& h : rr.monic_by_degree(deg)) {
        for (int k : {1, 2}) {
          auto complete = rr.residue_system(h, k, ResidueKind::complete);
          uint64_t size = 1;
          for (int i = 0; i < k * deg; ++i) size *= uint64_t(p);
          CHECK(complete.size() == size);
          Poly hk = rr.pow(h, k);
          auto reduced = rr.residue_system(h, k, ResidueKind::k_reduced);
          std::set<uint64_t> redset;
          for (const Poly& a : reduced) redset.insert(rr.encode(a));
          for (const Poly& a : complete) {
            bool is_red = !a.is_zero() && rr.power_gcd(a, hk, k).is_one();
            CHECK(redset.count(rr.encode(a)) == (is_red ? 1u : 0u));
          }
        }
      }
    }
  }
}

TEST_CASE("divisor-residue pairs tile the complete system") {
  // (D, R) -> R * (H/D)^k over D | H, R k-reduced mod D hits every residue
  // class mod H^k exactly once.
  for (long long p : {2LL, 3LL}) {
    Field f = make_field(p);
    PolyRing r(f, Level::base);
    for (int deg = 0; deg <= 2; ++deg) {
      for (const Poly& h : r.monic_by_degree(deg)) {
        for (int k : {1, 2}) {
          if (p == 3 && k == 2 && deg == 2) continue;  // keep desk-scale
          Poly hk = r.pow(h, k);
          std::set<uint64_t> images;
          size_t pairs = 0;
          for (const Poly& d : r.monic_divisors(h)) {
            Poly cof = r.pow(r.quot_exact(h, d), k);
            for (const Poly& res :
                 r.residue_system(d, k, ResidueKind::k_reduced)) {
              images.insert(r.encode(r.mod(r.mul(res, cof), hk)));
              ++pairs;
            }
          }
          size_t total = r.residue_system(h, k, ResidueKind::complete).size();
          CHECK(pairs == total);
          CHECK(images.size() == total);
        }
      }
    }
  }
}

TEST_CASE("encode and decode round-trip") {
  for (long long p : {2LL, 3LL}) {
    Field f = make_field(p);
    PolyRing r(f, Level::base);
    std::set<uint64_t> ranks;
    for (const Poly& a : r.all_by_max_degree(4)) {
      uint64_t rank = r.encode(a);
      ranks.insert(rank);
      CHECK(r.decode(rank, 5) == a);
      CHECK(r.decode(rank, a.deg() + 1) == a);
    }
    CHECK(ranks.size() == size_t(p * p * p * p * p));
    CHECK(r.encode(r.zero()) == 0);
    CHECK(r.encode(r.one()) == 1);
    CHECK(r.encode(r.x()) == uint64_t(p));
    CHECK_THROWS_AS(r.decode(uint64_t(p) * p, 2), DomainError);
  }
}

TEST_CASE("extension lift and coefficientwise frobenius") {
  Field f = make_field(2, 1, 2);  // F_4 over F_2
  PolyRing base(f, Level::base), ext(f, Level::ext);

  Poly a = base.from_coeffs({1, 1});
  Poly lifted = lift_to_extension(base, ext, a);
  CHECK(lifted.level == Level::ext);
  CHECK(lifted.c == a.c);  // subfield indices are preserved
  CHECK(ext.show(lifted) == base.show(a));

  for (const Poly& A : ext.all_by_max_degree(2)) {
    // sigma^n = identity and sigma fixes exactly the lifted base polys.
    Poly sA = frobenius_poly(ext, A);
    Poly ssA = frobenius_poly(ext, sA);
    CHECK(ssA == A);
    bool in_base = true;
    for (int c : A.c) in_base = in_base && c < f.q();
    CHECK((sA == A) == in_base);
  }
  for (const Poly& A : ext.all_by_max_degree(1)) {
    for (const Poly& B : ext.all_by_max_degree(1)) {
      CHECK(frobenius_poly(ext, ext.mul(A, B)) ==
            ext.mul(frobenius_poly(ext, A), frobenius_poly(ext, B)));
      CHECK(frobenius_poly(ext, ext.add(A, B)) ==
            ext.add(frobenius_poly(ext, A), frobenius_poly(ext, B)));
    }
  }
  CHECK_THROWS_AS(lift_to_extension(base, ext, lifted), DomainError);
}

TEST_CASE("canonical rendering") {
  Field f = make_field(2);
  PolyRing r(f, Level::base);
  CHECK(r.show(r.zero()) == "0");
  CHECK(r.show(r.one()) == "1");
  CHECK(r.show(r.x()) == "x");
  CHECK(r.show(P(r, {1, 1, 1})) == "x^2+x+1");
  CHECK(r.show(P(r, {0, 0, 0, 1})) == "x^3");
  CHECK(r.show(P(r, {1, 0, 1})) == "x^2+1");

  Field f3 = make_field(3);
  PolyRing r3(f3, Level::base);
  CHECK(r3.show(P(r3, {1, 2})) == "2*x+1");

  Field f4 = make_field(2, 2);
  PolyRing r4(f4, Level::base);
  // omega has index 2 (coords [0,1]), 1+omega has index 3 (coords [1,1]).
  CHECK(r4.show(P(r4, {3, 2})) == "[0,1]*x+[1,1]");
  CHECK(r4.show(P(r4, {1, 1})) == "x+1");  // prime coefficients stay integers

  Field fe = make_field(2, 1, 2);  // F_4 over F_2 as an extension
  PolyRing re(fe, Level::ext);
  CHECK(re.show(re.from_coeffs({3, 2})) == "[0,1]*x+[1,1]");
  CHECK(re.show(re.from_coeffs({1, 1})) == "x+1");

  Field fc = make_field(2, 2, 2);  // F_16 over F_4: nested coordinate lists
  PolyRing rc(fc, Level::ext);
  // Element with ext coords (omega, 1): omega is base index 2 = [0,1].
  int idx = fc.from_element({Level::ext, {2, 1}});
  CHECK(rc.show(rc.from_coeffs({idx})) == "[[0,1],1]");
}

}  // TEST_SUITE
