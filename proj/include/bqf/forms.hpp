#pragma once
// Binary quartic / cubic forms, their invariants and the GL2 actions on them.

#include "bqf/rational.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bqf {

// a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4
struct QuarticForm {
  Int a, b, c, d, e;
  std::array<Int, 5> coeffs() const { return {a, b, c, d, e}; }
  static QuarticForm from(const std::array<Int, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() && e.is_zero(); }
  Int eval(const Int& x, const Int& y) const;
  std::string str() const;  // "a,b,c,d,e"
  friend bool operator==(const QuarticForm&, const QuarticForm&) = default;
  friend auto operator<=>(const QuarticForm&, const QuarticForm&) = default;
};

// a x^3 + b x^2 y + c x y^2 + d y^3; a is the tracked leading coefficient n
struct CubicForm {
  Int a, b, c, d;
  Int eval(const Int& x, const Int& y) const;
  std::string str() const;
  friend bool operator==(const CubicForm&, const CubicForm&) = default;
  friend auto operator<=>(const CubicForm&, const CubicForm&) = default;
};

struct InvariantPair {
  Int I, J;
  Int disc_numerator() const { return Int(4) * I * I * I - J * J; }
  Int disc() const;  // (4I^3 - J^2)/27, asserted exact
  Int h4() const;    // max(4|I|^3, J^2) = 4 H
  // H < X  <=>  H4 < 4X
  bool height_below(const Int& X) const { return h4() < Int(4) * X; }
  std::string str() const { return I.str() + " " + J.str(); }
  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
  friend auto operator<=>(const InvariantPair&, const InvariantPair&) = default;
};

// [[p, q], [r, s]] acting on row vectors: (x, y) -> (p x + r y, q x + s y)
struct UnimodularMap {
  Int p = 1, q = 0, r = 0, s = 1;
  Int det() const { return p * s - q * r; }
  bool valid() const { return abs(det()) == Int(1); }
  UnimodularMap inverse() const;  // requires det = +-1
  UnimodularMap operator-() const { return {-p, -q, -r, -s}; }
  friend UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y);
  std::string str() const;
  friend bool operator==(const UnimodularMap&, const UnimodularMap&) = default;
};

struct RationalMap {
  Rational p = 1, q = 0, r = 0, s = 1;
  Rational det() const { return p * s - q * r; }
  static RationalMap from(const UnimodularMap& g) { return {g.p, g.q, g.r, g.s}; }
  friend RationalMap operator*(const RationalMap& x, const RationalMap& y);
};

// quartic with rational coefficients (result of the twisted action)
struct QuarticFormQ {
  std::array<Rational, 5> c;
  static QuarticFormQ from(const QuarticForm& f) { return {{f.a, f.b, f.c, f.d, f.e}}; }
  bool is_integral() const;
  QuarticForm to_integral() const;  // throws if not integral
  friend bool operator==(const QuarticFormQ&, const QuarticFormQ&) = default;
};

struct InvariantPairQ {
  Rational I, J;
  friend bool operator==(const InvariantPairQ&, const InvariantPairQ&) = default;
};

using Mat3 = std::array<std::array<Int, 3>, 3>;
using Mat3Q = std::array<std::array<Rational, 3>, 3>;

// pair of ternary quadratic forms, stored doubled: A2 = 2A, B2 = 2B
struct TernaryQuadraticPair {
  Mat3 A2, B2;
  friend bool operator==(const TernaryQuadraticPair&, const TernaryQuadraticPair&) = default;
};

enum class RootType { FourReal, TwoReal, NoneRealPositive, NoneRealNegative };
const char* root_type_name(RootType t);  // "0", "1", "2+", "2-"
std::optional<RootType> parse_root_type(std::string_view s);

// --- invariants ---------------------------------------------------------
InvariantPair quartic_invariants(const QuarticForm& f);
InvariantPairQ quartic_invariants(const QuarticFormQ& f);
Int quartic_disc(const QuarticForm& f);
Int height(const InvariantPair& p);  // H4 representation
InvariantPair cubic_invariants(const CubicForm& g);  // (P, Q)
Int cubic_disc(const CubicForm& g);  // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd

// --- actions ------------------------------------------------------------
QuarticForm act_untwisted(const UnimodularMap& g, const QuarticForm& f);
// f((x,y) g) for any integer matrix, no scaling
QuarticForm substitute(const UnimodularMap& g, const QuarticForm& f);
QuarticFormQ act_twisted(const RationalMap& g, const QuarticForm& f);
QuarticFormQ act_twisted(const RationalMap& g, const QuarticFormQ& f);
CubicForm translate_cubic(const CubicForm& g, const Int& u);  // g(x + u y, y)

// --- resolvent, eligibility, reducibility -------------------------------
CubicForm resolvent_cubic(const QuarticForm& f);
bool is_eligible(const InvariantPair& p);
bool is_eligible_residue(int i_mod9, int j_mod27);
bool is_irreducible_q(const QuarticForm& f);
bool has_rational_linear_factor(const QuarticForm& f);
bool cubic_has_rational_root(const CubicForm& g);

// --- ternary pair embedding ---------------------------------------------
TernaryQuadraticPair phi_embed(const QuarticForm& f);
// 4 det(A x - B y) as a binary cubic in (x, y)
CubicForm pair_resolvent(const TernaryQuadraticPair& w);
Mat3Q rho(const RationalMap& g);
Mat3Q rho(const UnimodularMap& g);
// matrix by which phi intertwines the row-vector action on forms:
// phi(g.f) = rho_for_action(g) . phi(f)  modulo adding multiples of A
Mat3Q rho_for_action(const RationalMap& g);
Mat3Q mat3_mul(const Mat3Q& x, const Mat3Q& y);
Mat3Q mat3_transpose(const Mat3Q& x);
Mat3Q mat3_from_doubled(const Mat3& m2);  // halves entries
Rational mat3_det(const Mat3Q& m);
// B-part of phi for a rational quartic, undoubled
Mat3Q phi_b(const QuarticFormQ& f);
// phi(g.f) == rho_for_action(g) phi(f) rho_for_action(g)^T up to a multiple of A
bool phi_equivariant(const RationalMap& g, const QuarticForm& f);
// rho(g) (2A) rho(g)^T == 2A
bool rho_preserves_a(const RationalMap& g);

// --- real roots ---------------------------------------------------------
// number of distinct real roots of an integer polynomial (coefficients from
// the constant term upward), by an exact Sturm chain
int sturm_real_root_count(std::vector<Int> poly);
RootType root_type(const QuarticForm& f);  // requires disc != 0
int real_root_count(const QuarticForm& f);  // in P^1

// roots of a real polynomial (highest degree first), Aberth + Newton polish
std::vector<std::complex<long double>> poly_roots(const std::vector<long double>& c);
// numerically located roots of f(x,1) (a != 0), polished in long double
std::array<std::complex<long double>, 4> quartic_roots(const QuarticForm& f);

std::ostream& operator<<(std::ostream& os, const QuarticForm& f);
std::ostream& operator<<(std::ostream& os, const CubicForm& g);
std::ostream& operator<<(std::ostream& os, const InvariantPair& p);
std::ostream& operator<<(std::ostream& os, const Int& x);
std::ostream& operator<<(std::ostream& os, const Rational& x);
std::ostream& operator<<(std::ostream& os, RootType t);

}  // namespace bqf

template <>
struct std::hash<bqf::QuarticForm> {
  std::size_t operator()(const bqf::QuarticForm& f) const noexcept {
    std::size_t h = 0;
    for (const auto& x : f.coeffs()) h = h * 1000003u ^ x.hash();
    return h;
  }
};
template <>
struct std::hash<bqf::InvariantPair> {
  std::size_t operator()(const bqf::InvariantPair& p) const noexcept { return p.I.hash() * 31u ^ p.J.hash(); }
};
