#pragma once
// 2-Selmer groups of y^2 = x^3 + A x + B through locally soluble integral
// quartic forms with invariants (16 I(E), 64 J(E)), fused up to PGL2(Q).

#include "bqf/enumeration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bqf {

struct EllipticCurve {
  Int A, B;
  // throws std::invalid_argument unless minimal (no p with p^4 | A and p^6 | B) and 4A^3 + 27B^2 != 0
  EllipticCurve(Int a, Int b);
  Int disc() const { return Int(4) * A * A * A + Int(27) * B * B; }
  bool rigid() const { return !A.is_zero() && !B.is_zero(); }
  std::string str() const { return A.str() + "," + B.str(); }
};
bool is_minimal_model(const Int& A, const Int& B);

InvariantPair curve_invariants(const EllipticCurve& E);  // (-3A, -27B)
// 4 H'(E) = max(4|I|^3, J^2)
Int curve_height4(const EllipticCurve& E);
bool has_rational_two_torsion(const EllipticCurve& E);
// small point of infinite order, certified by a non-integral x-coordinate of 2P
struct PointCertificate {
  Int x, y;           // P
  Rational x2;        // x(2P)
};
std::optional<PointCertificate> infinite_order_certificate(const EllipticCurve& E, long long search_bound = 200);

bool real_soluble(const QuarticForm& f);
// z^2 = f(x,y) has a nontrivial Q_p point; throws std::runtime_error if the
// residue search is still undecided at depth 2 v_p(disc) + 6
bool qp_soluble(const QuarticForm& f, long long p);

struct LocalCertificate {
  bool soluble = true;
  std::string failed_at;                 // "", "inf" or the prime
  std::vector<long long> primes_checked;  // 2, 3 and every p | disc
};
LocalCertificate locally_soluble(const QuarticForm& f);

// equivalent integral form with invariants divided by p^4, p^6 as long as one of
// the three reduction hypotheses holds (p >= 5; p = 3 with 3^5 | I, 3^9 | J;
// p = 2 with 2^6 | I, 2^9 | J, 2^10 | 8I + J) and the form is Q_p-soluble
QuarticForm minimize(const QuarticForm& f);

// partition of same-invariant classes under PGL2(Q), via sublattice moves of
// index p and p^2 at p in {2,3} and every p with p^2 | disc; label[i] = least index in block
std::vector<int> q_fuse(const std::vector<QuarticForm>& classes);

struct SelmerClass {
  QuarticForm representative;
  std::vector<QuarticForm> members;  // GL2(Z)-classes fused into it
  LocalCertificate certificate;
  bool identity = false;  // contains a form with a rational linear factor
};
struct SelmerReport {
  EllipticCurve curve;
  InvariantPair fiber;  // (16 I, 64 J)
  std::vector<SelmerClass> classes;
  int insoluble_classes = 0;  // GL2(Z)-classes in the fiber failing local solubility
  int size = 0;
  bool power_of_two = false;
  bool identity_found = false;
};
// rigid curves only (std::invalid_argument otherwise)
SelmerReport selmer_size(const EllipticCurve& E, const BoxConstants& box = {});

struct ResidueConstraint {
  long long modulus = 1;
  std::vector<std::pair<long long, long long>> allowed;  // residues of (A, B)
};
struct CurveFamily {
  std::vector<ResidueConstraint> constraints;  // empty: all curves
  bool contains(const Int& A, const Int& B) const;
  // "all" or "m:a,b;a,b|m2:..." (one block per modulus)
  static CurveFamily parse(const std::string& spec);
};

struct SelmerStats {
  Int X;
  long long curves = 0;  // rigid, no rational 2-torsion, in family
  long long total_size = 0;
  long long excluded_nonrigid = 0;
  long long excluded_torsion = 0;
  long long not_power_of_two = 0;
  long long identity_missing = 0;
  std::map<int, long long> size_histogram;
  double mean() const { return curves ? static_cast<double>(total_size) / static_cast<double>(curves) : 0.0; }
};
// minimal curves with H'(E) < X in the family
SelmerStats selmer_average(const CurveFamily& fam, const Int& X, int threads = 1, const BoxConstants& box = {});

// local bookkeeping of the mass ratio M_p(V,F)/M_p(U_1,F)
struct LocalMass {
  long long p = 0;
  Rational orbit_ratio;  // #E(Q_p)/2E(Q_p) / #E[2](Q_p): 2 at p = 2, else 1
  Rational haar;         // 1 - p^-2
  Rational abs_factor;   // |2^10 / 3^3|_p
};
LocalMass local_mass(long long p);
// product of orbit ratios over p <= pmax (the Euler factors cancel against zeta(2))
Rational mass_ratio_product(long long pmax);

}  // namespace bqf
