#include "doctest.h"
#include "support.hpp"

#include "bqf/enumeration.hpp"
#include "bqf/local_arith.hpp"
#include "bqf/reduction.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

using namespace bqf;
using namespace bqf::testing;

namespace {

// raw scan of every (I, J) with H < X straight from the residue rule
std::map<int, long long> raw_census(long long X) {
  std::map<int, long long> out;  // sign of 4I^3 - J^2
  for (long long I = -200; I <= 200; ++I) {
    if (4 * std::abs(I) * I * I >= 4 * X) continue;
    for (long long J = -2000; J <= 2000; ++J) {
      if (J * J >= 4 * X) continue;
      if (!is_eligible({I, J})) continue;
      long long n = 4 * I * I * I - J * J;
      ++out[n > 0 ? 1 : n < 0 ? -1 : 0];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("eligible pairs") {
  CHECK(eligible_residue_cells() == 9);
  auto pos = eligible_pairs(30, DiscSign::Positive), neg = eligible_pairs(30, DiscSign::Negative);
  REQUIRE(pos.size() == 1);
  CHECK(pos[0] == InvariantPair{3, 0});
  CHECK(neg == std::vector<InvariantPair>{{-3, 0}, {-2, -7}, {-2, 7}});

  for (long long X : {30LL, 1000LL, 30000LL}) {
    auto raw = raw_census(X);
    CHECK(eligible_pair_count(X, DiscSign::Positive) == raw[1]);
    CHECK(eligible_pair_count(X, DiscSign::Negative) == raw[-1]);
    CHECK(eligible_degenerate_count(X) == raw[0]);
    CHECK(static_cast<long long>(eligible_pairs(X, DiscSign::Positive).size()) == raw[1]);
  }
  // leading-order growth sanity at moderate X
  double X = 1e7, x56 = std::pow(X, 5.0 / 6);
  CHECK(eligible_pair_count(Int(10000000), DiscSign::Positive) / x56 == doctest::Approx(8.0 / 135).epsilon(0.05));
  CHECK(eligible_pair_count(Int(10000000), DiscSign::Negative) / x56 == doctest::Approx(32.0 / 135).epsilon(0.05));
}

TEST_CASE("monic cubic classes reproduce their invariants") {
  std::set<InvariantPair> seen;
  for (auto s : {DiscSign::Positive, DiscSign::Negative})
    for (const auto& m : monic_cubic_classes(20000, s)) {
      CHECK(m.form.a == Int(1));
      CHECK(abs(m.form.b) <= Int(1));
      QuarticForm lift{0, 1, m.form.b, m.form.c, m.form.d};
      CHECK(quartic_invariants(lift) == m.inv);
      CHECK(m.irreducible == !cubic_has_rational_root(m.form));
      CHECK(seen.insert(m.inv).second);
      CHECK(monic_cubic_for(m.inv) == m.form);
    }
  CHECK(static_cast<long long>(seen.size()) ==
        eligible_pair_count(20000, DiscSign::Positive) + eligible_pair_count(20000, DiscSign::Negative));
}

TEST_CASE("single-class fibers") {
  for (InvariantPair p : {InvariantPair{3, -27}, InvariantPair{7, 7}}) {
    auto cls = classes_with_invariants(p);
    REQUIRE(cls.size() == 1);
    CHECK(cls[0].reducible);
    CHECK(has_rational_linear_factor(cls[0].form));
  }
  CHECK_THROWS_AS(classes_with_invariants({1, 0}), std::invalid_argument);   // ineligible
  CHECK_THROWS_AS(classes_with_invariants({9, 54}), std::invalid_argument);  // 4I^3 = J^2
}

TEST_CASE("class lists against the box oracle") {
  auto part = brute_force_orbits(3, true);
  REQUIRE(part.stable);
  // oracle orbits per fiber, named by the canonical form of one member
  std::map<InvariantPair, std::set<QuarticForm>> oracle;
  for (std::size_t i = 0; i < part.forms.size(); ++i)
    if (part.label[i] == static_cast<int>(i)) {
      const auto& f = part.forms[i];
      oracle[quartic_invariants(f)].insert(canonical_form(f).form);
    }
  int fibers = 0;
  for (auto s : {DiscSign::Positive, DiscSign::Negative})
    for (const auto& inv : eligible_pairs(300, s)) {
      auto cls = classes_with_invariants(inv);
      std::set<QuarticForm> ours;
      bool in_box = true;
      for (const auto& q : cls) {
        ours.insert(q.form);
        for (const auto& c : q.form.coeffs()) in_box = in_box && abs(c) <= Int(3);
      }
      // every orbit met by the box appears in our list
      for (const auto& f : oracle[inv]) {
        std::string what = inv.str() + " misses " + f.str();
        CHECK_MESSAGE(ours.count(f), what);
      }
      // and when our representatives all fit the box the lists coincide
      if (in_box) {
        CHECK(ours == oracle[inv]);
        ++fibers;
      }
    }
  CHECK(fibers >= 4);
}

TEST_CASE("class list properties") {
  std::mt19937_64 rng(5);
  auto pairs = eligible_pairs(20000, DiscSign::Negative);
  auto pos = eligible_pairs(20000, DiscSign::Positive);
  pairs.insert(pairs.end(), pos.begin(), pos.end());
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(40);
  for (const auto& inv : pairs) {
    auto cls = classes_with_invariants(inv);
    REQUIRE(!cls.empty());
    int reducible_with_linear = 0;
    for (const auto& q : cls) {
      CHECK(quartic_invariants(q.form) == inv);
      CHECK(canonical_form(q.form).form == q.form);
      if (q.reducible && has_rational_linear_factor(q.form)) ++reducible_with_linear;
      // a random GL2(Z) image canonicalises back into the list
      auto g = random_word(rng, 12);
      CHECK(canonical_form(act_untwisted(g, q.form)).form == q.form);
    }
    CHECK(reducible_with_linear >= 1);  // the monic lift
    // a larger search region finds nothing new
    BoxConstants big;
    big.scale = 2.0;
    CHECK(classes_with_invariants(inv, big).size() == cls.size());
  }
}

TEST_CASE("cache round trip and corruption") {
  std::map<InvariantPair, std::vector<QuarticForm>> recs;
  recs[{3, 0}] = {Q(0, -1, 0, 1, 0)};
  recs[{-2, 7}] = {Q(-1, -2, -2, -1, 0)};
  recs[{Int::parse("123456789012345678901234567"), Int(-5)}] = {Q(1, 2, 3, 4, 5), Q(-1, 0, 0, 0, 7)};
  BoxConstants box;
  auto text = cache_serialize(box, recs);
  CHECK(text.rfind("bqf-cache 1\n", 0) == 0);
  CHECK(cache_parse(text, box) == recs);
  // flip one digit in the body
  auto bad = text;
  auto pos = bad.rfind("1,2,3,4,5");
  REQUIRE(pos != std::string::npos);
  bad[pos] = '9';
  CHECK_THROWS_AS(cache_parse(bad, box), std::runtime_error);
  // different box constants are rejected
  BoxConstants other;
  other.samples = 360;
  CHECK_THROWS_AS(cache_parse(text, other), std::runtime_error);

  auto dir = std::filesystem::temp_directory_path() / "bqf-cache-test";
  std::filesystem::remove_all(dir);
  CountOptions cold;
  ClassCache cache(dir.string());
  cold.cache = &cache;
  auto a = count_quartic_classes(3000, cold);
  cache.save();
  ClassCache warm_cache(dir.string());
  warm_cache.load();
  CHECK(warm_cache.size() == cache.size());
  CountOptions warm;
  warm.cache = &warm_cache;
  auto b = count_quartic_classes(3000, warm);
  CHECK(a.by_type == b.by_type);
  CHECK(a.all_classes == b.all_classes);
  CHECK(!warm_cache.dirty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("class counts: threads, weights, filters") {
  CountOptions one, four;
  four.threads = 4;
  auto a = count_quartic_classes(5000, one), b = count_quartic_classes(5000, four);
  CHECK(a.by_type == b.by_type);
  CHECK(a.reducible == b.reducible);
  CHECK(a.total == a.by_type[0] + a.by_type[1] + a.by_type[2] + a.by_type[3]);
  CHECK(a.all_classes == a.total + a.reducible);
  // every fiber carries a reducible class
  CHECK(a.reducible >= a.fibers);
  // positive-definite and negative-definite classes pair up under f -> -f
  CHECK(a.by_type[2] == a.by_type[3]);
  // weights never exceed plain counts
  CHECK(a.weighted_total <= Rational(a.total));
  CountOptions sm;
  sm.filter = ClassFilter::StronglyMaximal;
  auto c = count_quartic_classes(5000, sm);
  for (int k = 0; k < 4; ++k) CHECK(c.by_type[k] <= a.by_type[k]);
  CountOptions only1;
  only1.root_type = RootType::TwoReal;
  CHECK(count_quartic_classes(5000, only1).total == a.by_type[1]);
  CHECK(count_quartic_classes(1).total == 0);
}

TEST_CASE("n-monogenized counts") {
  CHECK_THROWS_AS(n_monogenized_cubic_count(1000, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(n_monogenized_cubic_count(1000, 0.3), std::invalid_argument);
  // only n = 1 survives for small delta: the monic count
  auto one = n_monogenized_cubic_count(20000, 0.01);
  REQUIRE(one.max_n == 1);
  long long pos = 0, neg = 0;
  for (auto s : {DiscSign::Positive, DiscSign::Negative})
    for (const auto& m : monic_cubic_classes(20000, s))
      if (m.irreducible) ++(s == DiscSign::Positive ? pos : neg);
  CHECK(one.positive == pos);
  CHECK(one.negative == neg);

  // independent scan for a small case
  long long X = 3000;
  auto r = n_monogenized_cubic_count(X, 0.25);
  long long P = 0, N = 0;
  for (long long n = 1; n * n * n * n < X; ++n) {
    double pmax = std::cbrt(static_cast<double>(n * n * X)) + 1, qmax = 2 * n * std::sqrt(static_cast<double>(X)) + 1;
    for (long long b = 0; b < 3 * n; ++b)
      for (long long c = static_cast<long long>(std::floor((b * b - pmax) / (3 * n))) - 1;
           c <= static_cast<long long>(std::ceil((b * b + pmax) / (3 * n))) + 1; ++c) {
        double q0 = -2.0 * b * b * b + 9.0 * n * b * c;
        for (long long d = static_cast<long long>(std::floor((q0 - qmax) / (27.0 * n * n))) - 1;
             d <= static_cast<long long>(std::ceil((q0 + qmax) / (27.0 * n * n))) + 1; ++d) {
          Int Pm = abs(Int(b * b - 3 * n * c));
          Int Qm = Int(-2 * b * b * b + 9 * n * b * c) - Int(27 * n * n) * Int(d);
          // max(|P|^3, Q^2/4) < n^2 X, written without fractions
          if (!(Pm * Pm * Pm < Int(n * n * X) && Qm * Qm < Int(4 * n * n * X))) continue;
          CubicForm g{n, b, c, d};
          if (cubic_has_rational_root(g)) continue;
          Int D = cubic_disc(g);
          if (D.sign() > 0) ++P;
          else if (D.sign() < 0) ++N;
        }
      }
  }
  CHECK(r.positive == P);
  CHECK(r.negative == N);
}

TEST_CASE("congruence counting") {
  auto all = congruence_count(20000, {});
  CHECK(all.passing == all.total);
  auto even_c = congruence_count(20000, {{2, 2, 0}});
  auto odd_c = congruence_count(20000, {{2, 2, 1}});
  CHECK(even_c.total == all.total);
  CHECK(even_c.passing + odd_c.passing == all.total);
  auto pred = congruence_count(20000, {}, [](const CubicForm& g) { return is_maximal_cubic_everywhere(g); });
  CHECK(pred.passing <= pred.total);
  CHECK(pred.passing > 0);
}

TEST_CASE("decay diagnostics") {
  auto rows = decay_diagnostics({Int(1000), Int(4000)});
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.monic_reducible >= 0);
    CHECK(r.monic_reducible <= 1);
    CHECK(r.quartic_linear > 0);
    REQUIRE(r.monic_all > 0);
    CHECK(r.monic_reducible == doctest::Approx(static_cast<double>(r.monic_reducible_count) / r.monic_all));
    CHECK(r.quartic_reducible_count + r.quartic_linear_count <= r.quartic_all);
    CHECK(r.big_stabilizer_count <= r.irreducible);
  }
  CHECK(rows[1].monic_all >= rows[0].monic_all);
  CHECK(rows[1].quartic_all >= rows[0].quartic_all);
}
