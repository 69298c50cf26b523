#include "doctest.h"
#include "support.hpp"

#include "bqf/local_arith.hpp"

using namespace bqf;
using namespace bqf::testing;

namespace {

CubicForm C(long long a, long long b, long long c, long long d) { return {a, b, c, d}; }

// independent oracle: count roots of a cubic mod p by direct evaluation in P^1
int roots_in_p1(const CubicForm& g, long long p) {
  int n = 0;
  for (long long x = 0; x < p; ++x)
    if (divides(Int(p), g.eval(x, 1))) ++n;
  if (divides(Int(p), g.a)) ++n;
  return n;
}

}  // namespace

TEST_CASE("cubic splitting types") {
  CHECK(splitting_type_cubic(C(1, 0, -1, 0), 5) == CubicSplit::S111);
  CHECK(splitting_type_cubic(C(1, 0, -1, 0), 2) == CubicSplit::S1_21);
  CHECK(splitting_type_cubic(C(1, 0, 1, 1), 2) == CubicSplit::S3);
  CHECK(splitting_type_cubic(C(0, 0, 0, 1), 3) == CubicSplit::S1_3);  // triple root at infinity
  CHECK_THROWS(splitting_type_cubic(C(3, 6, 9, 12), 3));
  for (auto s : kCubicSplits) CHECK(parse_cubic_split(split_name(s)) == s);
  // distinct-root count agrees with the symbol
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> u(-20, 20);
  for (long long p : {2, 3, 5, 7, 11}) {
    for (int i = 0; i < 300; ++i) {
      CubicForm g{u(rng), u(rng), u(rng), u(rng)};
      if (divides(Int(p), g.a) && divides(Int(p), g.b) && divides(Int(p), g.c) && divides(Int(p), g.d)) continue;
      int expect = 0;
      switch (splitting_type_cubic(g, p)) {
        case CubicSplit::S111: expect = 3; break;
        case CubicSplit::S12: case CubicSplit::S1_3: expect = 1; break;
        case CubicSplit::S3: expect = 0; break;
        case CubicSplit::S1_21: expect = 2; break;
      }
      CHECK(roots_in_p1(g, p) == expect);
      // ramification iff p | disc
      bool ram = splitting_type_cubic(g, p) == CubicSplit::S1_21 || splitting_type_cubic(g, p) == CubicSplit::S1_3;
      CHECK(ram == divides(Int(p), cubic_disc(g)));
    }
  }
}

TEST_CASE("quartic splitting types") {
  CHECK(splitting_type_quartic(Q(1, 0, 0, 0, 1), 5) == QuarticSplit::S22);
  CHECK(splitting_type_quartic(Q(0, 1, 0, -1, 0), 5) == QuarticSplit::S1111);
  CHECK(splitting_type_quartic(Q(0, 1, 0, 1, 0), 3) == QuarticSplit::S112);
  CHECK(splitting_type_quartic(Q(1, 0, 0, 0, 1), 3) == QuarticSplit::S22);  // (x^2+x+2)(x^2+2x+2)
  CHECK(splitting_type_quartic(Q(1, 0, 2, 0, 1), 3) == QuarticSplit::S2_2);  // (x^2+1)^2
  CHECK(splitting_type_quartic(Q(1, 0, 0, 0, 2), 5) == QuarticSplit::S4);
  CHECK(splitting_type_quartic(Q(1, 0, 0, 0, 0), 7) == QuarticSplit::S1_4);
  CHECK(splitting_type_quartic(Q(0, 1, 0, 0, 0), 7) == QuarticSplit::S1_31);
  CHECK(splitting_type_quartic(Q(0, 0, 1, 0, 0), 7) == QuarticSplit::S1_21_2);
  CHECK(splitting_type_quartic(Q(0, 0, 1, 0, 1), 3) == QuarticSplit::S1_22);
  CHECK(splitting_type_quartic(Q(0, 0, 1, 0, -1), 3) == QuarticSplit::S1_211);
  CHECK(splitting_type_quartic(Q(1, 0, 0, 1, 0), 2) == QuarticSplit::S112);  // x(x+y)(x^2+xy+y^2)
  CHECK(splitting_type_quartic(Q(0, 1, 0, 1, 1), 2) == QuarticSplit::S13);   // y(x^3+xy^2+y^3)
  CHECK_THROWS(splitting_type_quartic(Q(5, 5, 0, 10, 5), 5));
  for (auto s : kQuarticSplits) CHECK(parse_quartic_split(split_name(s)) == s);
  // symbol is invariant under GL2(Z)
  std::mt19937_64 rng(22);
  for (int i = 0; i < 400; ++i) {
    auto f = random_form(rng, 12);
    long long p = std::array<long long, 4>{2, 3, 5, 7}[rng() % 4];
    bool zero = true;
    for (auto& c : f.coeffs()) zero = zero && divides(Int(p), c);
    if (zero) continue;
    CHECK(splitting_type_quartic(f, p) == splitting_type_quartic(act_untwisted(random_unimodular(rng, 4), f), p));
  }
}

TEST_CASE("split map") {
  CHECK(split_map_R(QuarticSplit::S22) == CubicSplit::S111);
  CHECK(split_map_R(QuarticSplit::S13) == CubicSplit::S3);
  CHECK_FALSE(split_map_R(QuarticSplit::S1_4).has_value());
  CHECK_FALSE(split_map_R(QuarticSplit::S2_2).has_value());
  CHECK_FALSE(split_map_R(QuarticSplit::S1_21_2).has_value());
  // resolvent of an unramified quartic has the mapped symbol
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    auto f = random_form(rng, 15);
    for (long long p : {3, 5, 7}) {
      auto disc = quartic_disc(f);
      if (disc.is_zero() || divides(Int(p), disc)) continue;
      auto t = splitting_type_quartic(f, p);
      CHECK(split_map_R(t) == splitting_type_cubic(resolvent_cubic(f), p));
    }
  }
}

TEST_CASE("maximality") {
  CHECK_FALSE(is_maximal_cubic(C(1, 0, -1, 0), 2));
  for (long long p : {2, 3, 5, 7, 23, 29}) CHECK(is_maximal_cubic(C(1, 0, -1, 1), p));
  CHECK(is_maximal_cubic_everywhere(C(1, 0, -1, 1)));
  CHECK_FALSE(is_maximal_cubic_everywhere(C(1, 0, -1, 0)));
  CHECK_FALSE(is_maximal_cubic(C(2, 4, 6, 8), 2));
  CHECK_FALSE(is_maximal_cubic(C(0, 0, 1, 1), 2));   // p^2 | g(1,0), double root at infinity
  CHECK(is_maximal_cubic(C(2, 0, 1, 1), 2));         // g(1,0) = 2 only
  CHECK_FALSE(is_maximal_cubic(C(1, 0, 0, 8), 2));   // triple root 0, p^2 | 8
  CHECK(is_maximal_cubic(C(1, 0, 0, 2), 2));         // Eisenstein
  CHECK_FALSE(is_strongly_maximal_quartic(Q(0, 1, 0, -1, 0), 2));
  CHECK(is_strongly_maximal_quartic(Q(0, 1, 0, -1, 0), 3));
  // big prime path agrees with the small one
  CHECK_FALSE(is_maximal_cubic(C(1, 0, 0, 1000003LL * 1000003LL), 1000003));
  CHECK(is_maximal_cubic(C(1, 0, 0, 1000003), 1000003));
  CHECK_FALSE(is_maximal_cubic(C(1, -2, 1, 1000003LL * 1000003LL), 1000003));  // x(x-1)^2 + p^2
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> u(-40, 40);
  for (int i = 0; i < 1000; ++i) {
    CubicForm g{u(rng), u(rng), u(rng), u(rng)};
    auto disc = cubic_disc(g);
    if (disc.is_zero()) continue;
    for (long long p : {2, 3, 5, 7}) {
      if (!divides(Int(p), disc)) CHECK(is_maximal_cubic(g, p));
      // independent of the chosen lift: shift by p^2 in any coefficient
      CubicForm h = g;
      h.c += Int(p * p) * Int(u(rng));
      h.d += Int(p * p) * Int(u(rng));
      CHECK(is_maximal_cubic(h, p) == is_maximal_cubic(g, p));
    }
  }
  // strong maximality is constant on orbits
  for (int i = 0; i < 500; ++i) {
    auto f = random_form(rng, 10);
    if (quartic_disc(f).is_zero()) continue;
    auto h = act_untwisted(random_unimodular(rng, 3), f);
    for (long long p : {2, 3, 5}) CHECK(is_strongly_maximal_quartic(f, p) == is_strongly_maximal_quartic(h, p));
  }
  // overramified forms are never strongly maximal
  for (int i = 0; i < 3000; ++i) {
    auto f = random_form(rng, 10);
    if (quartic_disc(f).is_zero()) continue;
    for (long long p : {2, 3}) {
      bool zero = true;
      for (auto& c : f.coeffs()) zero = zero && divides(Int(p), c);
      if (zero) continue;
      auto t = splitting_type_quartic(f, p);
      if (t == QuarticSplit::S1_4 || t == QuarticSplit::S2_2 || t == QuarticSplit::S1_21_2)
        CHECK_FALSE(is_strongly_maximal_quartic(f, p));
    }
  }
}

TEST_CASE("monic cubic reconstruction") {
  CHECK(monic_cubic_for({7, 7}) == C(1, 1, -2, -1));
  CHECK(monic_cubic_for({3, -27}) == C(1, 0, -1, 1));
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> u(-50, 50);
  for (int i = 0; i < 500; ++i) {
    CubicForm g{1, u(rng), u(rng), u(rng)};
    auto inv = cubic_invariants(g);
    auto m = monic_cubic_for(inv);
    CHECK(cubic_invariants(m) == inv);
    CHECK(abs(m.b) <= Int(1));
  }
}

TEST_CASE("densities by exhaustion") {
  auto mon5 = density_census(Family::MonicCubic, 5);
  CHECK(mon5.split[0] == Rational(2, 25));
  CHECK(density(Family::MonicCubic, 2, std::nullopt, true) == Rational(3, 4));
  CHECK(density(Family::Quartic, 3, std::nullopt, true) == Rational(64, 81));
  CHECK(density(Family::GeneralCubic, 2, std::nullopt, true) == Rational(21, 32));
  CHECK_THROWS_AS(density_census(Family::MonicCubic, 17), std::length_error);
  CHECK_THROWS_AS(density_census(Family::Quartic, 7), std::length_error);
  CHECK_THROWS_AS(density(Family::TernaryPair, 2, 0, true), std::length_error);

  for (long long p : {2, 3, 5, 7, 11}) {
    auto t = density_formula_table(p);
    auto c = density_census(Family::MonicCubic, p);
    Rational sum;
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(c.split[k] == t.monic_split[k].value);
      CHECK(c.split_max[k] == t.monic_split_max[k].value);
      sum += c.split[k];
    }
    CHECK(sum == Rational(1));
    CHECK(c.maximal == t.monic_maximal);
  }
  for (long long p : {2, 3}) {
    auto t = density_formula_table(p);
    auto c = density_census(Family::Quartic, p);
    Rational sum;
    for (std::size_t k = 0; k < 11; ++k) {
      CHECK(c.split_max[k] == t.quartic_split_max[k].value);
      sum += c.split[k];
    }
    CHECK(sum == Rational(1) - c.zero_mod_p);
    CHECK(c.zero_mod_p == Rational(1, p * p * p * p * p));
    CHECK(c.maximal == t.quartic_strongly_maximal);
  }
  for (long long p : {2, 3, 5}) {
    auto t = density_formula_table(p);
    auto c = density_census(Family::GeneralCubic, p);
    CHECK(c.maximal == t.general_maximal);
    // enumeration-level Table 4 left column
    for (std::size_t k = 0; k < 5; ++k) CHECK(c.split_max[k] / c.maximal == t.general_ratios[k].left);
  }
}

TEST_CASE("closed-form tables") {
  auto t5 = density_formula_table(5);
  CHECK(t5.monic_ratios[0].left == Rational(1, 12));
  CHECK(t5.monic_ratios[0].right_sum == Rational(1, 12));
  auto t7 = density_formula_table(7);
  CHECK(t7.general_ratios[4].left == Rational(1, 57));
  CHECK(t7.general_ratios[4].right_sum == Rational(1, 57));
  auto t2 = density_formula_table(2);
  Rational s;
  for (auto& r : t2.quartic_split_max) s += r.value;
  CHECK(s == Rational(9, 16));
  CHECK(t2.pair_strongly_maximal == Rational(441, 1024));
  for (long long p : primes_up_to(100)) {
    auto t = density_formula_table(p);
    CHECK(t.all_hold());
    Rational m, q;
    for (auto& r : t.monic_split_max) m += r.value;
    for (auto& r : t.quartic_split_max) q += r.value;
    CHECK(m == t.monic_maximal);
    CHECK(q == t.quartic_strongly_maximal);
  }
}
