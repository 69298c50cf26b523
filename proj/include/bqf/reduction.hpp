#pragma once
// Orbit representatives: translation-reduced cubics, GL2(Z)-canonical quartics
// via a covariant point in the upper half plane, and a brute-force orbit oracle.

#include "bqf/forms.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace bqf {

using Complex = std::complex<long double>;

CubicForm reduce_monic_cubic(const CubicForm& g);  // r in {-1,0,1}
CubicForm reduce_cubic_n(const CubicForm& g);      // b in [0, 3a)

// Point of the upper half plane attached to the root configuration of a real
// quartic (leading coefficient nonzero); nreal is its number of real roots.
// Covariant: w(g.f) = U * w(f) with U = (g^-1)^T acting by Moebius maps
// (orientation reversing ones followed by complex conjugation).
Complex covariant_point(const std::array<long double, 5>& c, int nreal);
Complex covariant_point(const QuarticForm& f);  // a != 0, disc != 0

// standard matrix action on the upper half plane
Complex moebius(const UnimodularMap& u, Complex z);
// form-action matrix whose covariant point moves by u
UnimodularMap form_map_for(const UnimodularMap& u);

struct Canonical {
  QuarticForm form;     // lexicographically least reduced orbit member
  UnimodularMap witness;  // witness . input == form
  int stabilizer = 0;     // |Stab_GL2(Z)|, filled on request
};

// canonical representative of the GL2(Z)-orbit of any form with disc != 0
Canonical canonical_form(const QuarticForm& f, bool with_stabilizer = false);
// same, but rejects forms reducible over Q
Canonical reduce_quartic(const QuarticForm& f);

std::optional<UnimodularMap> equivalent_quartics(const QuarticForm& f1, const QuarticForm& f2);
// cross-validation: breadth-first search over generator words of length <= max_len,
// pruned at max|coefficient| <= coeff_bound
std::optional<UnimodularMap> equivalent_quartics_bfs(const QuarticForm& f1, const QuarticForm& f2, int max_len,
                                                     const Int& coeff_bound);

int stabilizer_order_z(const QuarticForm& f);

struct OrbitPartition {
  std::vector<QuarticForm> forms;  // all box forms in scope, lexicographic order
  std::vector<int> label;          // label[i] = index (into forms) of the least orbit member
  int orbit_count = 0;
  bool stable = true;  // partition unchanged when the pruning factor doubles
};

// partition of {|coeffs| <= box, disc != 0 (and irreducible unless include_reducible)}
// into GL2(Z)-orbits by closure under swap, shear and sign generators, keeping
// intermediate forms with max|coeff| <= factor * box
OrbitPartition brute_force_orbits(int box, bool include_reducible = false, int factor = 16, bool check_doubling = true);

}  // namespace bqf
