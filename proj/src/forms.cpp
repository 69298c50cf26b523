#include "bqf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace bqf {

namespace {

// homogeneous polynomials: v[j] = coefficient of x^(deg-j) y^j
template <class T>
std::vector<T> hmul(const std::vector<T>& x, const std::vector<T>& y) {
  std::vector<T> r(x.size() + y.size() - 1, T(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return r;
}

// sum_i c_i L1^(n-i) L2^i with L1 = (p x + r y), L2 = (q x + s y)
template <class T, std::size_t N>
std::array<T, N> subst(const std::array<T, N>& c, const T& p, const T& q, const T& r, const T& s) {
  constexpr std::size_t n = N - 1;
  std::vector<std::vector<T>> p1(N), p2(N);
  p1[0] = {T(1)};
  p2[0] = {T(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    p1[k] = hmul(p1[k - 1], std::vector<T>{p, r});
    p2[k] = hmul(p2[k - 1], std::vector<T>{q, s});
  }
  std::array<T, N> out;
  out.fill(T(0));
  for (std::size_t i = 0; i <= n; ++i) {
    if (c[i] == T(0)) continue;
    auto term = hmul(p1[n - i], p2[i]);
    for (std::size_t j = 0; j <= n; ++j) out[j] += c[i] * term[j];
  }
  return out;
}

template <class T>
void invariants_of(const std::array<T, 5>& f, T& I, T& J) {
  const T &a = f[0], &b = f[1], &c = f[2], &d = f[3], &e = f[4];
  I = T(12) * a * e - T(3) * b * d + c * c;
  J = T(72) * a * c * e + T(9) * b * c * d - T(27) * a * d * d - T(27) * e * b * b - T(2) * c * c * c;
}

}  // namespace

Int QuarticForm::eval(const Int& x, const Int& y) const {
  Int x2 = x * x, y2 = y * y;
  return a * x2 * x2 + b * x2 * x * y + c * x2 * y2 + d * x * y2 * y + e * y2 * y2;
}

std::string QuarticForm::str() const {
  return a.str() + "," + b.str() + "," + c.str() + "," + d.str() + "," + e.str();
}

Int CubicForm::eval(const Int& x, const Int& y) const {
  return a * x * x * x + b * x * x * y + c * x * y * y + d * y * y * y;
}

std::string CubicForm::str() const { return a.str() + "," + b.str() + "," + c.str() + "," + d.str(); }

Int InvariantPair::disc() const { return exact_div(disc_numerator(), Int(27)); }

Int InvariantPair::h4() const {
  Int i3 = Int(4) * abs(I * I * I), j2 = J * J;
  return i3 > j2 ? i3 : j2;
}

UnimodularMap UnimodularMap::inverse() const {
  Int dt = det();
  if (abs(dt) != Int(1)) throw std::domain_error("inverse of non-unimodular matrix");
  // dt = +-1 so 1/dt = dt
  return {s * dt, -q * dt, -r * dt, p * dt};
}

UnimodularMap operator*(const UnimodularMap& x, const UnimodularMap& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

std::string UnimodularMap::str() const {
  return "[[" + p.str() + "," + q.str() + "],[" + r.str() + "," + s.str() + "]]";
}

RationalMap operator*(const RationalMap& x, const RationalMap& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

bool QuarticFormQ::is_integral() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.is_integer(); });
}

QuarticForm QuarticFormQ::to_integral() const {
  if (!is_integral()) throw std::domain_error("form is not integral");
  return {c[0].num(), c[1].num(), c[2].num(), c[3].num(), c[4].num()};
}

const char* root_type_name(RootType t) {
  switch (t) {
    case RootType::FourReal: return "0";
    case RootType::TwoReal: return "1";
    case RootType::NoneRealPositive: return "2+";
    case RootType::NoneRealNegative: return "2-";
  }
  return "?";
}

std::optional<RootType> parse_root_type(std::string_view s) {
  if (s == "0") return RootType::FourReal;
  if (s == "1") return RootType::TwoReal;
  if (s == "2+") return RootType::NoneRealPositive;
  if (s == "2-") return RootType::NoneRealNegative;
  return std::nullopt;
}

InvariantPair quartic_invariants(const QuarticForm& f) {
  InvariantPair p;
  invariants_of(f.coeffs(), p.I, p.J);
  return p;
}

InvariantPairQ quartic_invariants(const QuarticFormQ& f) {
  InvariantPairQ p;
  invariants_of(f.c, p.I, p.J);
  return p;
}

Int quartic_disc(const QuarticForm& f) { return quartic_invariants(f).disc(); }

Int height(const InvariantPair& p) { return p.h4(); }

InvariantPair cubic_invariants(const CubicForm& g) {
  const Int &a = g.a, &b = g.b, &c = g.c, &d = g.d;
  return {b * b - Int(3) * a * c, Int(-2) * b * b * b + Int(9) * a * b * c - Int(27) * a * a * d};
}

Int cubic_disc(const CubicForm& g) {
  const Int &a = g.a, &b = g.b, &c = g.c, &d = g.d;
  return b * b * c * c - Int(4) * a * c * c * c - Int(4) * b * b * b * d - Int(27) * a * a * d * d +
         Int(18) * a * b * c * d;
}

QuarticForm substitute(const UnimodularMap& g, const QuarticForm& f) {
  return QuarticForm::from(subst(f.coeffs(), g.p, g.q, g.r, g.s));
}

QuarticForm act_untwisted(const UnimodularMap& g, const QuarticForm& f) {
  if (!g.valid()) throw std::domain_error("act_untwisted needs det +-1");
  return substitute(g, f);
}

QuarticFormQ act_twisted(const RationalMap& g, const QuarticFormQ& f) {
  Rational dt = g.det();
  if (dt.sign() == 0) throw std::domain_error("singular map");
  auto out = subst(f.c, g.p, g.q, g.r, g.s);
  Rational k = Rational(1) / (dt * dt);
  for (auto& x : out) x *= k;
  return {out};
}

QuarticFormQ act_twisted(const RationalMap& g, const QuarticForm& f) { return act_twisted(g, QuarticFormQ::from(f)); }

CubicForm translate_cubic(const CubicForm& g, const Int& u) {
  auto out = subst(std::array<Int, 4>{g.a, g.b, g.c, g.d}, Int(1), Int(0), u, Int(1));
  return {out[0], out[1], out[2], out[3]};
}

CubicForm resolvent_cubic(const QuarticForm& f) {
  const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d, &e = f.e;
  return {Int(1), c, b * d - Int(4) * a * e, a * d * d + b * b * e - Int(4) * a * c * e};
}

bool is_eligible_residue(int i9, int j27) {
  i9 = ((i9 % 9) + 9) % 9;
  j27 = ((j27 % 27) + 27) % 27;
  auto pm = [&](int v) { return j27 == v || j27 == (27 - v) % 27; };
  if (i9 % 3 == 0) return j27 == 0;
  if (i9 == 1) return pm(2);
  if (i9 == 4) return pm(16);
  if (i9 == 7) return pm(7);
  return false;
}

bool is_eligible(const InvariantPair& p) {
  return is_eligible_residue(static_cast<int>(mod(p.I, Int(9)).to_ll()), static_cast<int>(mod(p.J, Int(27)).to_ll()));
}

// --- roots --------------------------------------------------------------

using cld = std::complex<long double>;

namespace {

cld horner(const std::vector<long double>& c, cld z) {  // c highest degree first
  cld v = 0;
  for (long double x : c) v = v * z + x;
  return v;
}

}  // namespace

std::vector<cld> poly_roots(const std::vector<long double>& c) {
  std::size_t n = c.size() - 1;
  std::vector<cld> z(n);
  long double bound = 0;
  for (std::size_t i = 1; i <= n; ++i) bound = std::max(bound, std::pow(std::fabs(c[i] / c[0]), 1.0L / i));
  bound = 2 * bound + 1e-3L;
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(bound * 0.5L, 0.4L + 2 * M_PIl * k / n);
  std::vector<long double> dc(n);
  for (std::size_t i = 0; i < n; ++i) dc[i] = c[i] * static_cast<long double>(n - i);
  // Aberth iteration
  for (int it = 0; it < 500; ++it) {
    long double maxstep = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cld pv = horner(c, z[k]), dv = horner(dc, z[k]);
      if (std::abs(pv) == 0) continue;
      cld ratio = pv / dv;
      cld sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      cld w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      maxstep = std::max(maxstep, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (maxstep < 1e-18L) break;
  }
  for (auto& r : z) {  // Newton polish
    for (int it = 0; it < 3; ++it) {
      cld dv = horner(dc, r);
      if (std::abs(dv) == 0) break;
      cld step = horner(c, r) / dv;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
    }
  }
  return z;
}

namespace {

std::vector<Int> trim(std::vector<Int> p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

// remainder of a by b, scaled by a positive constant
std::vector<Int> pos_prem(std::vector<Int> a, const std::vector<Int>& b) {
  const Int& lc = b.back();
  Int alc = abs(lc);
  int sg = lc.sign();
  while (a.size() >= b.size() && !a.empty()) {
    Int la = a.back();
    std::size_t k = a.size() - b.size();
    for (auto& x : a) x *= alc;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + k] -= Int(sg) * la * b[i];
    a = trim(std::move(a));
  }
  return a;
}

std::vector<Int> primitive(std::vector<Int> p) {
  Int g = 0;
  for (auto& x : p) g = gcd(g, x);
  if (g > Int(1))
    for (auto& x : p) x /= g;
  return p;
}

}  // namespace

int sturm_real_root_count(std::vector<Int> poly) {
  poly = trim(std::move(poly));
  if (poly.size() <= 1) return 0;
  std::vector<std::vector<Int>> seq;
  seq.push_back(primitive(poly));
  std::vector<Int> der;
  for (std::size_t i = 1; i < poly.size(); ++i) der.push_back(poly[i] * Int(static_cast<long long>(i)));
  seq.push_back(primitive(der));
  while (true) {
    auto r = pos_prem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    seq.push_back(primitive(std::move(r)));
  }
  auto changes = [&](bool neg_inf) {
    int cnt = 0, last = 0;
    for (auto& p : seq) {
      int s = p.back().sign();
      if (neg_inf && (p.size() - 1) % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++cnt;
      last = s;
    }
    return cnt;
  };
  return changes(true) - changes(false);
}

int real_root_count(const QuarticForm& f) {
  if (!f.a.is_zero()) return sturm_real_root_count({f.e, f.d, f.c, f.b, f.a});
  return 1 + sturm_real_root_count({f.e, f.d, f.c, f.b});
}

RootType root_type(const QuarticForm& f) {
  Int dn = quartic_invariants(f).disc_numerator();
  if (dn.is_zero()) throw std::domain_error("root_type: zero discriminant");
  if (dn.sign() < 0) return RootType::TwoReal;
  int n = real_root_count(f);
  if (n == 4) return RootType::FourReal;
  if (n != 0) throw std::logic_error("root count inconsistent with discriminant sign");
  int s = f.a.is_zero() ? f.e.sign() : f.a.sign();
  return s > 0 ? RootType::NoneRealPositive : RootType::NoneRealNegative;
}

std::array<std::complex<long double>, 4> quartic_roots(const QuarticForm& f) {
  if (f.a.is_zero()) throw std::domain_error("quartic_roots needs a != 0");
  auto z = poly_roots({f.a.to_ld(), f.b.to_ld(), f.c.to_ld(), f.d.to_ld(), f.e.to_ld()});
  return {z[0], z[1], z[2], z[3]};
}

// --- reducibility -------------------------------------------------------

bool has_rational_linear_factor(const QuarticForm& f) {
  if (f.a.is_zero() || f.e.is_zero()) return true;
  auto z = quartic_roots(f);
  long double al = f.a.to_ld();
  for (auto& r : z) {
    long double scale = 1 + std::abs(r);
    if (std::fabs(r.imag()) > 1e-6L * scale) continue;
    long double k = std::round(r.real() * al);
    for (int dk = -1; dk <= 1; ++dk) {
      if (std::fabs(k) > 9e18L) break;
      if (f.eval(Int(static_cast<long long>(k) + dk), f.a).is_zero()) return true;
    }
  }
  return false;
}

namespace {

// does a x^2 + u x y + v y^2 divide f over Q?
bool quad_divides(const QuarticForm& f, const Int& qa, const Int& qb, const Int& qc) {
  // long division of f(x,1) by qa x^2 + qb x + qc over Q
  std::array<Rational, 5> r = {f.a, f.b, f.c, f.d, f.e};  // highest first
  for (int i = 0; i <= 2; ++i) {
    Rational t = r[static_cast<std::size_t>(i)] / Rational(qa);
    r[static_cast<std::size_t>(i)] -= t * Rational(qa);
    r[static_cast<std::size_t>(i + 1)] -= t * Rational(qb);
    r[static_cast<std::size_t>(i + 2)] -= t * Rational(qc);
  }
  return r[3].sign() == 0 && r[4].sign() == 0;
}

}  // namespace

bool is_irreducible_q(const QuarticForm& f) {
  if (f.is_zero()) throw std::domain_error("is_irreducible_q of zero form");
  if (has_rational_linear_factor(f)) return false;
  auto z = quartic_roots(f);
  long double al = f.a.to_ld();
  static constexpr int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (auto& pr : pairs) {
    for (int half = 0; half < 2; ++half) {
      auto &x = z[static_cast<std::size_t>(pr[2 * half])], &y = z[static_cast<std::size_t>(pr[2 * half + 1])];
      std::complex<long double> s = (x + y) * al, t = x * y * al;
      long double tol = 1e-6L * (1 + std::abs(s) + std::abs(t));
      if (std::fabs(s.imag()) > tol || std::fabs(t.imag()) > tol) continue;
      long double ms = std::round(s.real()), mt = std::round(t.real());
      if (std::fabs(ms - s.real()) > 1e-4L * (1 + std::fabs(ms)) || std::fabs(mt - t.real()) > 1e-4L * (1 + std::fabs(mt)))
        continue;
      if (std::fabs(ms) > 9e18L || std::fabs(mt) > 9e18L) continue;
      if (quad_divides(f, f.a, Int(-static_cast<long long>(ms)), Int(static_cast<long long>(mt)))) return false;
    }
  }
  return true;
}

bool cubic_has_rational_root(const CubicForm& g) {
  if (g.a.is_zero() || g.d.is_zero()) return true;
  auto z = poly_roots({g.a.to_ld(), g.b.to_ld(), g.c.to_ld(), g.d.to_ld()});
  long double al = g.a.to_ld();
  for (auto& r : z) {
    if (std::fabs(r.imag()) > 1e-6L * (1 + std::abs(r))) continue;
    long double k = std::round(r.real() * al);
    if (std::fabs(k) > 9e18L) continue;
    for (int dk = -1; dk <= 1; ++dk)
      if (g.eval(Int(static_cast<long long>(k) + dk), g.a).is_zero()) return true;
  }
  return false;
}

// --- ternary pairs ------------------------------------------------------

TernaryQuadraticPair phi_embed(const QuarticForm& f) {
  TernaryQuadraticPair w;
  w.A2 = {{{0, 0, 1}, {0, -2, 0}, {1, 0, 0}}};
  w.B2 = {{{Int(2) * f.a, f.b, 0}, {f.b, Int(2) * f.c, f.d}, {0, f.d, Int(2) * f.e}}};
  return w;
}

CubicForm pair_resolvent(const TernaryQuadraticPair& w) {
  // entries of A2 x - B2 y as homogeneous linear forms
  using L = std::vector<Int>;
  std::array<std::array<L, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = {w.A2[i][j], -w.B2[i][j]};
  auto add = [](L x, const L& y) {
    if (x.size() < y.size()) x.resize(y.size(), Int(0));
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return x;
  };
  auto neg = [](L x) {
    for (auto& v : x) v = -v;
    return x;
  };
  L det(4, Int(0));
  det = add(det, hmul(m[0][0], add(hmul(m[1][1], m[2][2]), neg(hmul(m[1][2], m[2][1])))));
  det = add(det, neg(hmul(m[0][1], add(hmul(m[1][0], m[2][2]), neg(hmul(m[1][2], m[2][0]))))));
  det = add(det, hmul(m[0][2], add(hmul(m[1][0], m[2][1]), neg(hmul(m[1][1], m[2][0])))));
  // det(2M) = 8 det(M); 4 det(M) = det(2M)/2
  return {exact_div(det[0], 2), exact_div(det[1], 2), exact_div(det[2], 2), exact_div(det[3], 2)};
}

Mat3Q rho(const RationalMap& g) {
  const Rational &a = g.p, &b = g.q, &c = g.r, &d = g.s;
  Rational k = Rational(1) / g.det();
  Mat3Q m = {{{d * d, c * d, c * c}, {Rational(2) * b * d, a * d + b * c, Rational(2) * a * c}, {b * b, a * b, a * a}}};
  for (auto& row : m)
    for (auto& x : row) x *= k;
  return m;
}

Mat3Q rho(const UnimodularMap& g) { return rho(RationalMap::from(g)); }

Mat3Q rho_for_action(const RationalMap& g) { return rho(RationalMap{g.s, g.r, g.q, g.p}); }

Mat3Q mat3_mul(const Mat3Q& x, const Mat3Q& y) {
  Mat3Q r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int k = 0; k < 3; ++k) s += x[i][k] * y[k][j];
      r[i][j] = s;
    }
  return r;
}

Mat3Q mat3_transpose(const Mat3Q& x) {
  Mat3Q r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = x[j][i];
  return r;
}

Mat3Q mat3_from_doubled(const Mat3& m2) {
  Mat3Q r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Rational(m2[i][j], 2);
  return r;
}

Mat3Q phi_b(const QuarticFormQ& f) {
  const auto& c = f.c;
  Rational h(1, 2);
  return {{{c[0], c[1] * h, 0}, {c[1] * h, c[2], c[3] * h}, {0, c[3] * h, c[4]}}};
}

bool phi_equivariant(const RationalMap& g, const QuarticForm& f) {
  Mat3Q r = rho_for_action(g);
  Mat3Q lhs = mat3_mul(mat3_mul(r, phi_b(QuarticFormQ::from(f))), mat3_transpose(r));
  Mat3Q rhs = phi_b(act_twisted(g, f));
  // difference must be lambda * A, A = [[0,0,1/2],[0,-1,0],[1/2,0,0]]
  Rational lam = rhs[1][1] - lhs[1][1];
  static const Mat3Q a1 = {{{0, 0, Rational(1, 2)}, {0, -1, 0}, {Rational(1, 2), 0, 0}}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (lhs[i][j] - rhs[i][j] != lam * a1[i][j]) return false;
  return true;
}

bool rho_preserves_a(const RationalMap& g) {
  Mat3Q a2 = {{{0, 0, 1}, {0, -2, 0}, {1, 0, 0}}};
  Mat3Q r = rho(g);
  return mat3_mul(mat3_mul(r, a2), mat3_transpose(r)) == a2;
}

Rational mat3_det(const Mat3Q& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::ostream& operator<<(std::ostream& os, const Int& x) { return os << x.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }
std::ostream& operator<<(std::ostream& os, const QuarticForm& f) { return os << "(" << f.str() << ")"; }
std::ostream& operator<<(std::ostream& os, const CubicForm& g) { return os << "(" << g.str() << ")"; }
std::ostream& operator<<(std::ostream& os, const InvariantPair& p) { return os << "(" << p.I << "," << p.J << ")"; }
std::ostream& operator<<(std::ostream& os, RootType t) { return os << root_type_name(t); }

}  // namespace bqf
