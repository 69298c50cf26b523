#pragma once
// shared helpers for the unit tests
#include "bqf/forms.hpp"

#include <random>

namespace bqf::testing {

inline QuarticForm Q(long long a, long long b, long long c, long long d, long long e) { return {a, b, c, d, e}; }
inline UnimodularMap M(long long p, long long q, long long r, long long s) { return {p, q, r, s}; }

inline QuarticForm random_form(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  return Q(u(rng), u(rng), u(rng), u(rng), u(rng));
}

// random word in the standard generators (swap, shear, sign flip)
inline UnimodularMap random_word(std::mt19937_64& rng, int len) {
  static const UnimodularMap gens[] = {M(0, 1, 1, 0), M(1, 0, 1, 1), M(1, 0, -1, 1), M(-1, 0, 0, 1)};
  UnimodularMap g;
  for (int i = 0; i < len; ++i) g = g * gens[rng() % 4];
  return g;
}

inline UnimodularMap random_unimodular(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  for (;;) {
    UnimodularMap g = M(u(rng), u(rng), u(rng), u(rng));
    if (g.valid()) return g;
  }
}

}  // namespace bqf::testing
