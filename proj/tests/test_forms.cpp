#include "doctest.h"
#include "support.hpp"

using namespace bqf;
using namespace bqf::testing;

namespace {

// textbook discriminant of a quartic, written out monomial by monomial
Int classical_disc(const QuarticForm& f) {
  const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d, &e = f.e;
  return Int(256) * pow(a, 3) * pow(e, 3) - Int(192) * a * a * b * d * e * e - Int(128) * a * a * c * c * e * e +
         Int(144) * a * a * c * d * d * e - Int(27) * a * a * pow(d, 4) + Int(144) * a * b * b * c * e * e -
         Int(6) * a * b * b * d * d * e - Int(80) * a * b * c * c * d * e + Int(18) * a * b * c * pow(d, 3) +
         Int(16) * a * pow(c, 4) * e - Int(4) * a * pow(c, 3) * d * d - Int(27) * pow(b, 4) * e * e +
         Int(18) * pow(b, 3) * c * d * e - Int(4) * pow(b, 3) * pow(d, 3) - Int(4) * b * b * pow(c, 3) * e +
         b * b * c * c * d * d;
}

// independent expansion of f((x,y) g) by evaluating at 5 points and solving
QuarticForm act_by_interpolation(const UnimodularMap& g, const QuarticForm& f) {
  // f'(1,t) for t = 0..4 determines the coefficients (Vandermonde)
  std::array<Rational, 5> val;
  for (int t = 0; t < 5; ++t) val[t] = f.eval(g.p + Int(t) * g.r, g.q + Int(t) * g.s);
  // Newton divided differences then expand
  std::array<Rational, 5> dd = val;
  for (int k = 1; k < 5; ++k)
    for (int i = 4; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / Rational(k);
  std::array<Rational, 5> poly{};  // poly[j] = coefficient of t^j
  std::array<Rational, 5> basis{};
  basis[0] = 1;
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < 5; ++j) poly[j] += dd[k] * basis[j];
    // basis *= (t - k)
    std::array<Rational, 5> nb{};
    for (int j = 0; j < 5; ++j) {
      if (j + 1 < 5) nb[j + 1] += basis[j];
      nb[j] -= basis[j] * Rational(k);
    }
    basis = nb;
  }
  // t^j coefficient is the x^(4-j) y^j coefficient
  return {poly[0].num(), poly[1].num(), poly[2].num(), poly[3].num(), poly[4].num()};
}

}  // namespace

TEST_CASE("quartic invariants: worked examples") {
  CHECK(quartic_invariants(Q(0, 1, 0, 1, 0)) == InvariantPair{-3, 0});
  CHECK(quartic_invariants(Q(0, 1, 0, -1, 0)) == InvariantPair{3, 0});
  CHECK(quartic_invariants(Q(1, 0, 0, 0, 1)) == InvariantPair{12, 0});
  CHECK(quartic_invariants(Q(0, 0, 0, 0, 0)) == InvariantPair{0, 0});
  CHECK(quartic_disc(Q(0, 1, 0, -1, 0)) == Int(4));
  CHECK(quartic_disc(Q(0, 1, 0, 1, 0)) == Int(-4));
  CHECK(quartic_disc(Q(1, 0, 0, 0, 1)) == Int(256));
  CHECK(height(InvariantPair{0, 0}) == Int(0));
  CHECK(height(InvariantPair{3, 0}) == Int(108));
  CHECK(height(InvariantPair{-2, 7}) == Int(49));
}

TEST_CASE("discriminant agrees with the classical formula") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    auto f = random_form(rng, 9);
    CHECK(quartic_disc(f) == classical_disc(f));
  }
}

TEST_CASE("untwisted action") {
  auto f = Q(3, -1, 4, 1, -5);
  CHECK(act_untwisted(UnimodularMap{}, f) == f);
  CHECK(act_untwisted(M(0, 1, 1, 0), Q(1, 0, 0, 0, 2)) == Q(2, 0, 0, 0, 1));
  CHECK(quartic_invariants(act_untwisted(M(1, 0, 1, 1), Q(0, 1, 0, 0, 0))) == InvariantPair{0, 0});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    auto g = random_unimodular(rng, 4);
    auto h = random_form(rng, 6);
    auto gh = act_untwisted(g, h);
    CHECK(gh == act_by_interpolation(g, h));
    CHECK(quartic_invariants(gh) == quartic_invariants(h));
    // left action: (g1 g2).f = g1.(g2.f)
    auto g2 = random_unimodular(rng, 3);
    CHECK(act_untwisted(g * g2, h) == act_untwisted(g, act_untwisted(g2, h)));
  }
  CHECK_THROWS(act_untwisted(M(2, 0, 0, 1), f));
}

TEST_CASE("twisted action") {
  auto r = act_twisted(RationalMap{1, 0, 0, 2}, Q(4, 0, 0, 0, 1));
  CHECK(r.to_integral() == Q(1, 0, 0, 0, 4));
  CHECK(quartic_invariants(Q(1, 0, 0, 0, 4)).I == Int(48));
  CHECK(quartic_invariants(Q(4, 0, 0, 0, 1)).I == Int(48));
  auto f = Q(2, -3, 1, 7, -1);
  CHECK(act_twisted(RationalMap{}, f).to_integral() == f);
  CHECK(act_twisted(RationalMap{Rational(5, 3), 0, 0, Rational(5, 3)}, f).to_integral() == f);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> u(-7, 7);
  for (int i = 0; i < 300; ++i) {
    RationalMap g{Rational(u(rng), 1 + rng() % 4), Rational(u(rng), 1 + rng() % 3), Rational(u(rng), 1), Rational(u(rng), 2)};
    if (g.det().sign() == 0) continue;
    auto h = random_form(rng, 5);
    auto inv = quartic_invariants(act_twisted(g, h));
    auto base = quartic_invariants(h);
    CHECK(inv.I == Rational(base.I));
    CHECK(inv.J == Rational(base.J));
  }
}

TEST_CASE("cubic invariants and translation") {
  CHECK(cubic_invariants(CubicForm{1, 0, -1, 0}) == InvariantPair{3, 0});
  CHECK(cubic_invariants(CubicForm{1, 0, -4, 1}) == InvariantPair{12, -27});
  CHECK(cubic_invariants(CubicForm{2, 7, 0, 0}) == InvariantPair{49, -686});
  CHECK(translate_cubic(CubicForm{2, 7, 0, 0}, -1) == CubicForm{2, 1, -8, 5});
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> u(-20, 20);
  for (int i = 0; i < 300; ++i) {
    CubicForm g{1 + rng() % 5, u(rng), u(rng), u(rng)};
    CHECK(cubic_invariants(translate_cubic(g, u(rng))) == cubic_invariants(g));
  }
}

TEST_CASE("resolvent cubic") {
  CHECK(resolvent_cubic(Q(1, 0, 0, 0, 1)) == CubicForm{1, 0, -4, 0});
  CHECK(resolvent_cubic(Q(0, 1, 0, -1, 0)) == CubicForm{1, 0, -1, 0});
  CHECK(resolvent_cubic(Q(0, 1, 5, -2, 9)) == CubicForm{1, 5, -2, 9});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto f = random_form(rng, 12);
    auto g = resolvent_cubic(f);
    auto pq = cubic_invariants(g);
    CHECK(pq == quartic_invariants(f));
    CHECK(divides(Int(27), pq.disc_numerator()));
    CHECK(cubic_disc(g) == quartic_disc(f));
    CHECK(is_eligible(quartic_invariants(f)));
  }
}

TEST_CASE("eligibility") {
  CHECK(is_eligible({12, 0}));
  CHECK(is_eligible({1, 2}));
  CHECK_FALSE(is_eligible({2, 5}));
  int n = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 27; ++j) n += is_eligible_residue(i, j);
  CHECK(n == 9);
}

TEST_CASE("irreducibility") {
  CHECK_FALSE(is_irreducible_q(Q(1, 0, 0, 0, -1)));
  CHECK_FALSE(is_irreducible_q(Q(0, 1, 0, 1, 0)));
  CHECK(is_irreducible_q(Q(1, 0, 0, 0, 1)));
  CHECK(is_irreducible_q(Q(1, 0, 0, 0, 2)));
  CHECK(is_irreducible_q(Q(1, 0, -4, 0, 1)));  // splits only over Q(sqrt 2)
  CHECK_FALSE(is_irreducible_q(Q(1, 0, -3, 0, 1)));  // (x^2-xy-y^2)(x^2+xy-y^2)
  // products of random integral quadratics / linear forms are reducible
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(-6, 6);
  for (int i = 0; i < 400; ++i) {
    Int p = u(rng), q = u(rng), r = u(rng), s = u(rng), t = u(rng), w = u(rng);
    if (p.is_zero() || s.is_zero()) continue;
    QuarticForm f{p * s, p * t + q * s, p * w + q * t + r * s, q * w + r * t, r * w};
    if (quartic_disc(f).is_zero() || f.is_zero()) continue;
    CHECK_FALSE(is_irreducible_q(f));
  }
}

TEST_CASE("ternary pair embedding and rho") {
  auto w = phi_embed(Q(1, 0, 0, 0, 1));
  CHECK(pair_resolvent(w) == CubicForm{1, 0, -4, 0});
  auto z = phi_embed(Q(0, 0, 0, 0, 0));
  CHECK(z.B2 == Mat3{});
  auto id = rho(UnimodularMap{});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id[i][j] == Rational(i == j ? 1 : 0));
  auto r = rho(M(1, 0, 1, 1));
  Mat3Q expect = {{{1, 1, 1}, {0, 1, 2}, {0, 0, 1}}};
  CHECK(r == expect);
  auto sc = rho(RationalMap{7, 0, 0, 7});
  CHECK(sc == id);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto f = random_form(rng, 8);
    CHECK(pair_resolvent(phi_embed(f)) == resolvent_cubic(f));
  }
}

TEST_CASE("root types") {
  CHECK(root_type(Q(0, 1, 0, -1, 0)) == RootType::FourReal);
  CHECK(root_type(Q(0, 1, 0, 1, 0)) == RootType::TwoReal);
  CHECK(root_type(Q(1, 0, 0, 0, 1)) == RootType::NoneRealPositive);
  CHECK(root_type(Q(-1, 0, 0, 0, -1)) == RootType::NoneRealNegative);
  CHECK_THROWS(root_type(Q(1, 0, -2, 0, 1)));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    auto f = random_form(rng, 10);
    Int dn = quartic_invariants(f).disc_numerator();
    if (dn.is_zero()) continue;
    auto t = root_type(f);
    CHECK((t == RootType::TwoReal) == (dn.sign() < 0));
    // numeric root count cross-check
    if (!f.a.is_zero()) {
      auto z = quartic_roots(f);
      int nreal = 0;
      for (auto& x : z) nreal += std::fabs(x.imag()) < 1e-9L * (1 + std::abs(x));
      int expect = t == RootType::FourReal ? 4 : t == RootType::TwoReal ? 2 : 0;
      CHECK(nreal == expect);
    }
  }
}

TEST_CASE("integers widen past 127 bits") {
  Int big = pow(Int(10), 30);
  Int sq = big * big;  // 1e60
  CHECK_FALSE(sq.is_small());
  CHECK(sq / big == big);
  CHECK(sq.str() == "1" + std::string(60, '0'));
  CHECK((sq - sq * Int(1) + Int(5)) == Int(5));
  CHECK((sq - Int(1) + Int(1)).is_small() == false);
  CHECK(Int::parse("-123456789012345678901234567890123456789012") * Int(0) == Int(0));
  Int r;
  CHECK(is_square(sq, &r));
  CHECK(r == big);
  // invariants of a form with huge coefficients match a rational recomputation
  QuarticForm f{pow(Int(3), 40), -pow(Int(2), 50), Int(7), pow(Int(5), 30), Int(-1)};
  auto p = quartic_invariants(f);
  auto pq = quartic_invariants(QuarticFormQ::from(f));
  CHECK(Rational(p.I) == pq.I);
  CHECK(Rational(p.J) == pq.J);
  CHECK(p.disc() * Int(27) == p.disc_numerator());
}

TEST_CASE("factorization") {
  auto fs = factorize(Int(2 * 2 * 3 * 1000003LL));
  REQUIRE(fs.size() == 3);
  CHECK(fs[0] == std::pair<Int, int>{2, 2});
  CHECK(fs[2] == std::pair<Int, int>{1000003, 1});
  Int n = Int(1000000007LL) * Int(998244353LL) * Int(1000000009LL);
  auto g = factorize(n);
  REQUIRE(g.size() == 3);
  CHECK(g[0].first == Int(998244353LL));
}

TEST_CASE("rho is a determinant-one homomorphism fixing A, and phi is equivariant") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-6, 6);
  auto rnd = [&] {
    for (;;) {
      RationalMap g{Rational(u(rng), 1 + rng() % 3), Rational(u(rng), 1), Rational(u(rng), 1 + rng() % 2), Rational(u(rng), 1)};
      if (g.det().sign() != 0) return g;
    }
  };
  for (int i = 0; i < 300; ++i) {
    auto g1 = rnd(), g2 = rnd();
    CHECK(mat3_det(rho(g1)) == Rational(1));
    CHECK(rho_preserves_a(g1));
    CHECK(rho(g1 * g2) == mat3_mul(rho(g1), rho(g2)));
    auto f = random_form(rng, 7);
    CHECK(phi_equivariant(g1, f));
    CHECK(phi_equivariant(RationalMap::from(random_word(rng, 6)), f));
  }
}
