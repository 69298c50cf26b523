#include "doctest.h"
#include "support.hpp"

#include "bqf/reduction.hpp"
#include "bqf/selmer.hpp"

#include <optional>

using namespace bqf;
using namespace bqf::testing;

namespace {

// square class of a nonzero p-adic number known modulo p^K: nullopt when undetermined
std::optional<bool> square_class(const Int& value_mod, long long p, int K) {
  Int pk = pow(Int(p), static_cast<unsigned>(K));
  Int v = mod(value_mod, pk);
  if (v.is_zero()) return std::nullopt;
  int e = valuation(v, Int(p));
  int need = p == 2 ? 3 : 1;
  if (K - e < need) return std::nullopt;
  if (e % 2) return false;
  Int u = v / pow(Int(p), static_cast<unsigned>(e));
  if (p == 2) return mod(u, Int(8)) == Int(1);
  // Euler's criterion by repeated multiplication
  Int r(1), b = mod(u, Int(p));
  for (long long i = 0; i < (p - 1) / 2; ++i) r = mod(r * b, Int(p));
  return r == Int(1);
}

// residue-class oracle over P^1(Z/p^K): true/false when every class is decided
std::optional<bool> soluble_by_residues(const QuarticForm& f, long long p, int K) {
  long long pk = 1;
  for (int i = 0; i < K; ++i) pk *= p;
  bool undecided = false;
  auto visit = [&](const Int& x, const Int& y) -> std::optional<bool> {
    auto c = square_class(f.eval(x, y), p, K);
    if (!c) undecided = true;
    return c;
  };
  for (long long x = 0; x < pk; ++x)
    if (auto c = visit(x, 1); c && *c) return true;
  for (long long y = 0; y < pk; y += p)
    if (auto c = visit(1, y); c && *c) return true;
  if (undecided) return std::nullopt;
  return false;
}

}  // namespace

TEST_CASE("curves") {
  CHECK_THROWS_AS(EllipticCurve(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(EllipticCurve(-3, 2), std::invalid_argument);   // 4A^3 + 27B^2 = 0
  CHECK_THROWS_AS(EllipticCurve(16, 64), std::invalid_argument);  // 2^4 | A, 2^6 | B
  CHECK_NOTHROW(EllipticCurve(16, 32));
  CHECK_NOTHROW(EllipticCurve(81, 0 + 1));
  EllipticCurve E(1, 1);
  CHECK(curve_invariants(E) == InvariantPair{-3, -27});
  CHECK(curve_height4(E) == Int(729));
  CHECK(E.rigid());
  CHECK(!EllipticCurve(0, 1).rigid());
  CHECK(!EllipticCurve(-1, 0).rigid());
  CHECK(has_rational_two_torsion(EllipticCurve(-1, 0)));
  CHECK(!has_rational_two_torsion(E));
  CHECK(!has_rational_two_torsion(EllipticCurve(0, 4)));
  auto cert = infinite_order_certificate(E);
  REQUIRE(cert);
  CHECK(cert->x == Int(0));
  CHECK(cert->x2 == Rational(Int(1), Int(4)));
  CHECK(!infinite_order_certificate(EllipticCurve(-43, 166)));  // torsion points only
}

TEST_CASE("real and p-adic solubility") {
  CHECK(real_soluble(Q(1, 0, 0, 0, 1)));
  CHECK(!real_soluble(Q(-1, 0, 0, 0, -1)));
  CHECK(real_soluble(Q(0, 1, 0, 1, 0)));
  CHECK(!qp_soluble(Q(5, 0, 0, 0, 5), 5));
  CHECK(qp_soluble(Q(3, 0, 0, 0, 4), 5));
  CHECK(qp_soluble(Q(0, 7, 3, 1, 49), 7));  // f(1,0) = 0

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> u(-12, 12);
  struct Case {
    long long p;
    int K;
  };
  int decided = 0, insoluble = 0;
  for (Case cs : {Case{2, 10}, Case{3, 6}, Case{5, 4}, Case{7, 3}}) {
    for (int i = 0; i < 150; ++i) {
      QuarticForm f = Q(u(rng), u(rng), u(rng), u(rng), u(rng));
      // bias toward bad reduction
      if (i % 3 == 0) f.a *= Int(cs.p), f.c *= Int(cs.p), f.e *= Int(cs.p);
      if (i % 5 == 0) f.b *= Int(cs.p * cs.p), f.d *= Int(cs.p);
      if (quartic_disc(f).is_zero()) continue;
      bool ours = qp_soluble(f, cs.p);
      auto oracle = soluble_by_residues(f, cs.p, cs.K);
      if (oracle) {
        ++decided;
        if (!*oracle) ++insoluble;
        std::string what = f.str() + " at " + std::to_string(cs.p);
        CHECK_MESSAGE(ours == *oracle, what);
      }
      // constant on GL2(Z)-orbits
      auto g = random_word(rng, 8);
      CHECK(qp_soluble(act_untwisted(g, f), cs.p) == ours);
    }
  }
  CHECK(decided > 300);
  CHECK(insoluble > 20);
}

TEST_CASE("large-prime residue search") {
  // p = 1000003 = 3 mod 4: x^4 + y^4 never vanishes mod p on primitive points,
  // so p (x^4 + y^4) has odd valuation everywhere
  long long p = 1000003;
  QuarticForm f = Q(p, 0, 0, 0, p);
  CHECK(!qp_soluble(f, p));
  QuarticForm g = Q(p * p, 0, 0, 0, p * p);
  CHECK(qp_soluble(g, p));
}

TEST_CASE("local solubility certificates") {
  auto c = locally_soluble(Q(-1, 0, 0, 0, -1));
  CHECK(!c.soluble);
  CHECK(c.failed_at == "inf");
  auto d = locally_soluble(Q(5, 0, 0, 0, 5));
  CHECK(!d.soluble);
  CHECK(d.failed_at == "2");  // 5(x^4 + y^4) is 5 mod 8 or has odd 2-adic valuation
  CHECK(!qp_soluble(Q(5, 0, 0, 0, 5), 2));
  // monic lifts always have the rational zero [1:0]
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-30, 30);
  for (int i = 0; i < 50; ++i) {
    QuarticForm f = Q(0, 1, u(rng), u(rng), u(rng));
    if (quartic_disc(f).is_zero()) continue;
    auto cert = locally_soluble(f);
    CHECK(cert.soluble);
    CHECK(cert.primes_checked.size() >= 2);
  }
  for (int i = 0; i < 60; ++i) {
    QuarticForm f = random_form(rng, 15);
    if (quartic_disc(f).is_zero()) continue;
    auto g = random_word(rng, 10);
    CHECK(locally_soluble(f).soluble == locally_soluble(act_untwisted(g, f)).soluble);
  }
}

TEST_CASE("minimisation") {
  auto m = minimize(Q(0, 25, 0, 25, 0));
  CHECK(quartic_invariants(m) == InvariantPair{-3, 0});
  QuarticForm already = Q(1, 0, 3, 2, 5);
  CHECK(minimize(already) == already);
  // blow a soluble minimal form up by an index-p sublattice and shrink it back
  std::mt19937_64 rng(11);
  int checked = 0;
  for (long long p : {5LL, 7LL, 11LL}) {
    for (int i = 0; i < 30; ++i) {
      QuarticForm g = random_form(rng, 6);
      if (quartic_disc(g).is_zero() || !locally_soluble(g).soluble) continue;
      auto base = quartic_invariants(minimize(g));
      QuarticForm f = substitute(UnimodularMap{Int(1), 0, 0, Int(p)}, g);  // (x, y) -> (x, p y)
      auto inv = quartic_invariants(f);
      auto gi = quartic_invariants(g);
      CHECK(inv.I == gi.I * pow(Int(p), 4u));
      CHECK(inv.J == gi.J * pow(Int(p), 6u));
      auto mf = quartic_invariants(minimize(f));
      CHECK(mf == base);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("fusion") {
  CHECK(q_fuse({Q(0, 1, 0, 1, 1)}) == std::vector<int>{0});
  CHECK(q_fuse({}).empty());
  // a form and its index-2 neighbour (divided by 4) are fused
  QuarticForm f = Q(4, 0, 8, 4, 20);
  auto g = substitute(UnimodularMap{Int(1), 0, 0, Int(2)}, f);  // (x, 2y)
  QuarticForm h{g.a / Int(4), g.b / Int(4), g.c / Int(4), g.d / Int(4), g.e / Int(4)};
  REQUIRE(quartic_invariants(h) == quartic_invariants(f));
  auto cf = canonical_form(f).form, ch = canonical_form(h).form;
  if (cf != ch) CHECK(q_fuse({cf, ch}) == std::vector<int>{0, 0});

  // fusion never mixes soluble and insoluble classes, and ignores representatives
  std::mt19937_64 rng(9);
  for (auto [A, B] : std::vector<std::pair<int, int>>{{-7, 6}, {1, 1}, {-2, 3}, {3, -7}, {-11, 14}}) {
    EllipticCurve E(A, B);
    auto inv = curve_invariants(E);
    auto forms = fiber_forms({Int(16) * inv.I, Int(64) * inv.J});
    auto label = q_fuse(forms);
    std::map<int, std::set<bool>> sol;
    for (std::size_t i = 0; i < forms.size(); ++i) sol[label[i]].insert(locally_soluble(forms[i]).soluble);
    for (const auto& [k, s] : sol) CHECK(s.size() == 1);
    std::vector<QuarticForm> moved;
    for (const auto& q : forms) moved.push_back(act_untwisted(random_word(rng, 9), q));
    CHECK(q_fuse(moved) == label);
  }
}

TEST_CASE("selmer sizes") {
  auto r = selmer_size(EllipticCurve(1, 1));
  CHECK(r.size >= 2);
  CHECK(r.power_of_two);
  CHECK(r.identity_found);
  CHECK(r.fiber == InvariantPair{-48, -1728});
  CHECK(selmer_size(EllipticCurve(-7, 6)).size == 4);     // full 2-torsion, rank 0
  CHECK(selmer_size(EllipticCurve(-43, 166)).size == 1);  // torsion Z/7, rank 0
  CHECK_THROWS_AS(selmer_size(EllipticCurve(0, 1)), std::invalid_argument);
  for (const auto& c : r.classes) CHECK(c.certificate.soluble);

  auto st = selmer_average({}, Int(10000));
  CHECK(st.curves > 100);
  CHECK(st.not_power_of_two == 0);
  CHECK(st.identity_missing == 0);
  CHECK(st.mean() >= 1.0);
  CHECK(st.excluded_nonrigid > 0);
  CHECK(st.excluded_torsion > 0);
}

TEST_CASE("families and local masses") {
  auto fam = CurveFamily::parse("4:1,1;3,3|3:0,1");
  REQUIRE(fam.constraints.size() == 2);
  CHECK(fam.contains(9, 1));
  CHECK(!fam.contains(5, 1));
  CHECK(!fam.contains(1, 1));  // 1 mod 3 fails the second block
  CHECK(CurveFamily::parse("all").contains(12, -5));
  CHECK_THROWS(CurveFamily::parse("4:1"));
  auto sub = selmer_average(CurveFamily::parse("2:1,1"), Int(3000));
  auto all = selmer_average({}, Int(3000));
  CHECK(sub.curves < all.curves);
  CHECK(local_mass(7).orbit_ratio == Rational(1));
  CHECK(local_mass(2).orbit_ratio == Rational(2));
  CHECK(local_mass(3).haar == Rational(8, 9));
  CHECK(mass_ratio_product(100) == Rational(2));
  CHECK(mass_ratio_product(100) + Rational(1) == Rational(3));
}
