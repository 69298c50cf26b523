#include "bqf/local_arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bqf {

using ll = long long;

namespace {

ll md(ll x, ll m) {
  x %= m;
  return x < 0 ? x + m : x;
}

ll pw(ll b, ll e, ll m) {
  ll r = 1 % m;
  b = md(b, m);
  while (e) {
    if (e & 1) r = static_cast<ll>(static_cast<i128>(r) * b % m);
    b = static_cast<ll>(static_cast<i128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

ll inv_mod(ll x, ll p) { return pw(x, p - 2, p); }

using Poly = std::vector<ll>;  // lowest degree first, entries in [0,p)

int deg(const Poly& h) {
  for (int i = static_cast<int>(h.size()) - 1; i >= 0; --i)
    if (h[static_cast<std::size_t>(i)]) return i;
  return -1;
}

ll eval_mod(const Poly& h, ll x, ll p) {
  ll v = 0;
  for (int i = deg(h); i >= 0; --i) v = md(v * x + h[static_cast<std::size_t>(i)], p);
  return v;
}

// h / (x - r), exact
Poly div_linear(const Poly& h, ll r, ll p) {
  int n = deg(h);
  Poly q(static_cast<std::size_t>(std::max(n, 1)), 0);
  ll carry = 0;
  for (int i = n; i >= 1; --i) {
    carry = md(h[static_cast<std::size_t>(i)] + carry * r, p);
    q[static_cast<std::size_t>(i - 1)] = carry;
  }
  return q;
}

// remainder and quotient of h by a monic polynomial m
std::pair<Poly, Poly> divmod(Poly h, const Poly& m, ll p) {
  int dm = deg(m), dh = deg(h);
  Poly q(static_cast<std::size_t>(std::max(dh - dm + 1, 1)), 0);
  for (int i = dh; i >= dm; --i) {
    ll c = h[static_cast<std::size_t>(i)];
    if (!c) continue;
    q[static_cast<std::size_t>(i - dm)] = c;
    for (int j = 0; j <= dm; ++j)
      h[static_cast<std::size_t>(i - dm + j)] = md(h[static_cast<std::size_t>(i - dm + j)] - c * m[static_cast<std::size_t>(j)], p);
  }
  return {h, q};
}

struct Signature {
  std::vector<int> lin;  // multiplicities of roots in P^1(F_p), descending
  int rest = 0;          // degree of the rootless part
  int kind = 0;          // rest 4: 0 irreducible, 1 two distinct quadratics, 2 square of a quadratic
};

// coefficients highest degree first (binary form a x^n + ... )
Signature signature(const std::vector<ll>& hi, ll p) {
  int n = static_cast<int>(hi.size()) - 1;
  Poly h(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) h[static_cast<std::size_t>(k)] = md(hi[static_cast<std::size_t>(n - k)], p);
  int d = deg(h);
  if (d < 0) throw std::invalid_argument("splitting type: form vanishes mod p");
  Signature s;
  if (n - d > 0) s.lin.push_back(n - d);
  for (ll r = 0; r < p && deg(h) > 0; ++r) {
    int m = 0;
    while (deg(h) > 0 && eval_mod(h, r, p) == 0) {
      h = div_linear(h, r, p);
      ++m;
    }
    if (m) s.lin.push_back(m);
  }
  std::sort(s.lin.rbegin(), s.lin.rend());
  s.rest = std::max(deg(h), 0);
  if (s.rest == 4) {
    s.kind = 0;
    ll lead_inv = inv_mod(h[4], p);
    for (auto& x : h) x = md(x * lead_inv, p);
    for (ll u = 0; u < p && s.kind == 0; ++u)
      for (ll v = 0; v < p; ++v) {
        Poly q = {v, u, 1};
        auto [rem, quo] = divmod(h, q, p);
        if (deg(rem) >= 0) continue;
        quo.resize(3, 0);
        s.kind = (quo[0] == v && quo[1] == u) ? 2 : 1;
        break;
      }
  }
  return s;
}

CubicSplit cubic_split_of(const Signature& s) {
  const auto& l = s.lin;
  if (s.rest == 3) return CubicSplit::S3;
  if (s.rest == 2) return CubicSplit::S12;
  if (l.size() == 3) return CubicSplit::S111;
  if (l.size() == 2) return CubicSplit::S1_21;
  return CubicSplit::S1_3;
}

QuarticSplit quartic_split_of(const Signature& s) {
  const auto& l = s.lin;
  switch (s.rest) {
    case 4:
      return s.kind == 0 ? QuarticSplit::S4 : s.kind == 1 ? QuarticSplit::S22 : QuarticSplit::S2_2;
    case 3:
      return QuarticSplit::S13;
    case 2:
      return l.size() == 2 ? QuarticSplit::S112 : QuarticSplit::S1_22;
    default:
      break;
  }
  if (l.size() == 4) return QuarticSplit::S1111;
  if (l.size() == 3) return QuarticSplit::S1_211;
  if (l.size() == 1) return QuarticSplit::S1_4;
  return l[0] == 3 ? QuarticSplit::S1_31 : QuarticSplit::S1_21_2;
}

// maximality at p of a x^3 + b x^2 y + c x y^2 + d y^3, from residues mod p^2
bool cubic_maximal_small(ll a, ll b, ll c, ll d, ll p) {
  ll p2 = p * p;
  a = md(a, p2), b = md(b, p2), c = md(c, p2), d = md(d, p2);
  if (a % p == 0 && b % p == 0 && c % p == 0 && d % p == 0) return false;
  if (a % p == 0 && b % p == 0 && a == 0) return false;  // [1:0] multiple, p^2 | g(1,0)
  for (ll r = 0; r < p; ++r) {
    ll g = md(((a * r + b) % p2 * r + c) % p2 * r + d, p2);
    if (g % p) continue;
    ll dg = md((3 * a * r + 2 * b) % p * r + c, p);
    if (dg) continue;
    if (g == 0) return false;
  }
  return true;
}

ll residue(const Int& x, ll m) { return mod(x, Int(m)).to_ll(); }

void check_prime(ll p) {
  if (p < 2 || !is_prime(Int(p))) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

// roots mod p of multiplicity >= 2 of an integer polynomial (lowest first), via gcd(h, h')
std::vector<Int> multiple_roots(const std::vector<Int>& coeffs, const Int& p) {
  auto red = [&](const std::vector<Int>& v) {
    std::vector<Int> r;
    for (auto& x : v) r.push_back(mod(x, p));
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
  };
  auto inv = [&](const Int& x) {
    // p prime: x^(p-2)
    Int r = 1, b = mod(x, p), e = p - Int(2);
    while (e.sign() > 0) {
      if (e.is_odd()) r = mod(r * b, p);
      b = mod(b * b, p);
      e = e / Int(2);
    }
    return r;
  };
  auto rem = [&](std::vector<Int> a, const std::vector<Int>& b) {
    Int li = inv(b.back());
    while (a.size() >= b.size()) {
      Int c = mod(a.back() * li, p);
      std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[off + j] = mod(a[off + j] - c * b[j], p);
      a.pop_back();
      while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return a;
  };
  std::vector<Int> h = red(coeffs), dh;
  for (std::size_t i = 1; i < coeffs.size(); ++i) dh.push_back(coeffs[i] * Int(static_cast<long long>(i)));
  dh = red(dh);
  if (h.size() < 2 || dh.empty()) {
    if (h.size() >= 2 && dh.empty()) {
      // derivative vanishes identically (p | every exponent): fall back to scanning
      std::vector<Int> out;
      for (Int r = 0; r < p; r += Int(1)) {
        Int v = 0;
        for (auto it = h.rbegin(); it != h.rend(); ++it) v = mod(v * r + *it, p);
        if (v.is_zero()) out.push_back(r);
      }
      return out;
    }
    return {};
  }
  std::vector<Int> a = h, b = dh;
  while (!b.empty()) {
    auto r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // a = gcd, degree 0, 1 or 2 (cubic case)
  if (a.size() <= 1) return {};
  Int li = inv(a.back());
  for (auto& x : a) x = mod(x * li, p);
  if (a.size() == 2) return {mod(-a[0], p)};
  // monic quadratic gcd: either (x-r)^2 or two distinct roots; scan is too slow for big p, solve
  if (p == Int(2)) {
    std::vector<Int> out;
    for (int r = 0; r < 2; ++r)
      if (mod(a[0] + a[1] * Int(r) + Int(r * r), p).is_zero()) out.push_back(Int(r));
    return out;
  }
  Int disc = mod(a[1] * a[1] - Int(4) * a[0], p);
  if (disc.is_zero()) return {mod(-a[1] * inv(Int(2)), p)};
  // distinct roots of the gcd would need a square root mod p; a cubic cannot have two double roots
  throw std::logic_error("multiple_roots: unexpected gcd");
}

}  // namespace

// --- names -------------------------------------------------------------------

std::string split_name(CubicSplit s) {
  switch (s) {
    case CubicSplit::S111: return "(111)";
    case CubicSplit::S12: return "(12)";
    case CubicSplit::S3: return "(3)";
    case CubicSplit::S1_21: return "(1^21)";
    case CubicSplit::S1_3: return "(1^3)";
  }
  return "?";
}

std::string split_name(QuarticSplit s) {
  switch (s) {
    case QuarticSplit::S1111: return "(1111)";
    case QuarticSplit::S112: return "(112)";
    case QuarticSplit::S13: return "(13)";
    case QuarticSplit::S22: return "(22)";
    case QuarticSplit::S4: return "(4)";
    case QuarticSplit::S1_211: return "(1^211)";
    case QuarticSplit::S1_22: return "(1^22)";
    case QuarticSplit::S1_21_2: return "(1^21^2)";
    case QuarticSplit::S2_2: return "(2^2)";
    case QuarticSplit::S1_31: return "(1^31)";
    case QuarticSplit::S1_4: return "(1^4)";
  }
  return "?";
}

std::optional<CubicSplit> parse_cubic_split(std::string_view s) {
  for (auto c : kCubicSplits)
    if (split_name(c) == s) return c;
  return std::nullopt;
}

std::optional<QuarticSplit> parse_quartic_split(std::string_view s) {
  for (auto c : kQuarticSplits)
    if (split_name(c) == s) return c;
  return std::nullopt;
}

// --- splitting types --------------------------------------------------------

CubicSplit splitting_type_cubic(const CubicForm& g, long long p) {
  check_prime(p);
  return cubic_split_of(signature({residue(g.a, p), residue(g.b, p), residue(g.c, p), residue(g.d, p)}, p));
}

QuarticSplit splitting_type_quartic(const QuarticForm& f, long long p) {
  check_prime(p);
  return quartic_split_of(
      signature({residue(f.a, p), residue(f.b, p), residue(f.c, p), residue(f.d, p), residue(f.e, p)}, p));
}

std::optional<CubicSplit> split_map_R(QuarticSplit t) {
  switch (t) {
    case QuarticSplit::S1111:
    case QuarticSplit::S22: return CubicSplit::S111;
    case QuarticSplit::S112:
    case QuarticSplit::S4: return CubicSplit::S12;
    case QuarticSplit::S13: return CubicSplit::S3;
    case QuarticSplit::S1_211:
    case QuarticSplit::S1_22: return CubicSplit::S1_21;
    case QuarticSplit::S1_31: return CubicSplit::S1_3;
    default: return std::nullopt;
  }
}

// --- maximality ---------------------------------------------------------------

bool is_maximal_cubic(const CubicForm& g, long long p) {
  check_prime(p);
  if (p < 1000000) return cubic_maximal_small(residue(g.a, p * p), residue(g.b, p * p), residue(g.c, p * p),
                                              residue(g.d, p * p), p);
  Int P(p), P2 = P * P;
  if (divides(P, g.a) && divides(P, g.b) && divides(P, g.c) && divides(P, g.d)) return false;
  if (divides(P, g.a) && divides(P, g.b) && divides(P2, g.a)) return false;
  for (const Int& r : multiple_roots({g.d, g.c, g.b, g.a}, P))
    if (divides(P2, g.eval(r, 1))) return false;
  return true;
}

bool is_maximal_cubic_everywhere(const CubicForm& g) {
  Int disc = cubic_disc(g);
  if (disc.is_zero()) throw std::invalid_argument("is_maximal_cubic_everywhere: zero discriminant");
  Int content = gcd(gcd(g.a, g.b), gcd(g.c, g.d));
  if (content != Int(1)) return false;
  for (const auto& [q, e] : factorize(disc)) {
    if (e < 2) continue;
    if (!is_maximal_cubic(g, q.to_ll())) return false;
  }
  return true;
}

bool is_strongly_maximal_quartic(const QuarticForm& f, long long p) {
  return is_maximal_cubic(resolvent_cubic(f), p);
}

bool is_strongly_maximal_quartic_everywhere(const QuarticForm& f) {
  return is_maximal_cubic_everywhere(resolvent_cubic(f));
}

CubicForm monic_cubic_for(const InvariantPair& pr) {
  Int r = mod(pr.J + Int(1), Int(3)) - Int(1);  // r = J mod 3 in {-1,0,1}
  Int s = exact_div(r * r - pr.I, Int(3));
  Int t = exact_div(Int(-2) * r * r * r + Int(9) * r * s - pr.J, Int(27));
  return {1, r, s, t};
}

// --- census ---------------------------------------------------------------------

std::string family_name(Family f) {
  switch (f) {
    case Family::MonicCubic: return "monic-cubic";
    case Family::Quartic: return "quartic";
    case Family::GeneralCubic: return "general-cubic";
    case Family::TernaryPair: return "ternary-pair";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (auto f : {Family::MonicCubic, Family::Quartic, Family::GeneralCubic, Family::TernaryPair})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

namespace {

ll ipow(ll b, int e) {
  ll r = 1;
  while (e--) r *= b;
  return r;
}

DensityCensus census_monic(ll p) {
  ll p2 = p * p;
  // splitting symbol depends on (r,s,t) mod p
  std::vector<int> sym(static_cast<std::size_t>(p * p * p));
  for (ll r = 0; r < p; ++r)
    for (ll s = 0; s < p; ++s)
      for (ll t = 0; t < p; ++t)
        sym[static_cast<std::size_t>((r * p + s) * p + t)] = static_cast<int>(cubic_split_of(signature({1, r, s, t}, p)));
  std::vector<ll> cnt(5, 0), cmax(5, 0);
  ll nmax = 0;
  for (ll r = 0; r < p2; ++r)
    for (ll s = 0; s < p2; ++s)
      for (ll t = 0; t < p2; ++t) {
        int k = sym[static_cast<std::size_t>(((r % p) * p + s % p) * p + t % p)];
        ++cnt[static_cast<std::size_t>(k)];
        if (cubic_maximal_small(1, r, s, t, p)) ++cmax[static_cast<std::size_t>(k)], ++nmax;
      }
  ll total = ipow(p2, 3);
  DensityCensus c{Family::MonicCubic, p, Rational(nmax, total), {}, {}, Rational(0)};
  for (int k = 0; k < 5; ++k) {
    c.split.emplace_back(cnt[static_cast<std::size_t>(k)], total);
    c.split_max.emplace_back(cmax[static_cast<std::size_t>(k)], total);
  }
  return c;
}

DensityCensus census_quartic(ll p) {
  ll p2 = p * p;
  ll np = ipow(p, 5);
  std::vector<int> sym(static_cast<std::size_t>(np), -1);
  for (ll idx = 0; idx < np; ++idx) {
    ll x = idx;
    std::vector<ll> c(5);
    for (int i = 4; i >= 0; --i) c[static_cast<std::size_t>(i)] = x % p, x /= p;
    if (idx == 0) continue;
    sym[static_cast<std::size_t>(idx)] = static_cast<int>(quartic_split_of(signature(c, p)));
  }
  std::vector<ll> cnt(11, 0), cmax(11, 0);
  ll nmax = 0, nzero = 0;
  for (ll a = 0; a < p2; ++a)
    for (ll b = 0; b < p2; ++b)
      for (ll c = 0; c < p2; ++c)
        for (ll d = 0; d < p2; ++d)
          for (ll e = 0; e < p2; ++e) {
            ll idx = (((a % p * p + b % p) * p + c % p) * p + d % p) * p + e % p;
            int k = sym[static_cast<std::size_t>(idx)];
            bool mx = cubic_maximal_small(1, c, b * d - 4 * a * e, a * d * d + b * b * e - 4 * a * c * e, p);
            if (mx) ++nmax;
            if (k < 0) {
              ++nzero;
              continue;
            }
            ++cnt[static_cast<std::size_t>(k)];
            if (mx) ++cmax[static_cast<std::size_t>(k)];
          }
  ll total = ipow(p2, 5);
  DensityCensus c{Family::Quartic, p, Rational(nmax, total), {}, {}, Rational(nzero, total)};
  for (int k = 0; k < 11; ++k) {
    c.split.emplace_back(cnt[static_cast<std::size_t>(k)], total);
    c.split_max.emplace_back(cmax[static_cast<std::size_t>(k)], total);
  }
  return c;
}

DensityCensus census_general(ll p) {
  ll p2 = p * p;
  ll np = ipow(p, 4);
  std::vector<int> sym(static_cast<std::size_t>(np), -1);
  for (ll idx = 1; idx < np; ++idx) {
    ll x = idx;
    std::vector<ll> c(4);
    for (int i = 3; i >= 0; --i) c[static_cast<std::size_t>(i)] = x % p, x /= p;
    sym[static_cast<std::size_t>(idx)] = static_cast<int>(cubic_split_of(signature(c, p)));
  }
  std::vector<ll> cnt(5, 0), cmax(5, 0);
  ll nmax = 0, nzero = 0;
  for (ll a = 0; a < p2; ++a)
    for (ll b = 0; b < p2; ++b)
      for (ll c = 0; c < p2; ++c)
        for (ll d = 0; d < p2; ++d) {
          int k = sym[static_cast<std::size_t>(((a % p * p + b % p) * p + c % p) * p + d % p)];
          bool mx = cubic_maximal_small(a, b, c, d, p);
          if (mx) ++nmax;
          if (k < 0) {
            ++nzero;
            continue;
          }
          ++cnt[static_cast<std::size_t>(k)];
          if (mx) ++cmax[static_cast<std::size_t>(k)];
        }
  ll total = ipow(p2, 4);
  DensityCensus c{Family::GeneralCubic, p, Rational(nmax, total), {}, {}, Rational(nzero, total)};
  for (int k = 0; k < 5; ++k) {
    c.split.emplace_back(cnt[static_cast<std::size_t>(k)], total);
    c.split_max.emplace_back(cmax[static_cast<std::size_t>(k)], total);
  }
  return c;
}

// pairs of integral ternary quadratic forms mod 4; resolvent 4 det(A x - B y)
DensityCensus census_pairs() {
  const ll p = 2, m = 4;
  // 4 det of the half-integral symmetric matrix of q = (q11,q12,q13,q22,q23,q33):
  // 4 q11 q22 q33 + q12 q13 q23 - q11 q23^2 - q22 q13^2 - q33 q12^2
  // with entries linear in (x,y): q = x A - y B; coefficients of x^3, x^2y, xy^2, y^3
  using L = std::array<ll, 2>;  // (x coefficient, y coefficient)
  auto mul2 = [](const L& u, const L& v) { return std::array<ll, 3>{u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1]}; };
  auto mul3 = [&](const L& u, const L& v, const L& w) {
    auto q = mul2(u, v);
    return std::array<ll, 4>{q[0] * w[0], q[0] * w[1] + q[1] * w[0], q[1] * w[1] + q[2] * w[0], q[2] * w[1]};
  };
  ll nmax = 0;
  const ll total = 1LL << 24;
  for (ll code = 0; code < total; ++code) {
    std::array<ll, 12> v;
    ll x = code;
    for (int i = 0; i < 12; ++i) v[static_cast<std::size_t>(i)] = x & 3, x >>= 2;
    std::array<L, 6> q;
    for (int i = 0; i < 6; ++i) q[static_cast<std::size_t>(i)] = {v[static_cast<std::size_t>(i)], -v[static_cast<std::size_t>(6 + i)]};
    auto t1 = mul3(q[0], q[3], q[5]);
    auto t2 = mul3(q[1], q[2], q[4]);
    auto t3 = mul3(q[0], q[4], q[4]);
    auto t4 = mul3(q[3], q[2], q[2]);
    auto t5 = mul3(q[5], q[1], q[1]);
    std::array<ll, 4> g;
    for (int i = 0; i < 4; ++i)
      g[static_cast<std::size_t>(i)] = md(4 * t1[static_cast<std::size_t>(i)] + t2[static_cast<std::size_t>(i)] -
                                              t3[static_cast<std::size_t>(i)] - t4[static_cast<std::size_t>(i)] -
                                              t5[static_cast<std::size_t>(i)],
                                          m);
    if (cubic_maximal_small(g[0], g[1], g[2], g[3], p)) ++nmax;
  }
  return DensityCensus{Family::TernaryPair, 2, Rational(nmax, total), {}, {}, Rational(0)};
}

}  // namespace

DensityCensus density_census(Family fam, long long p) {
  check_prime(p);
  static std::mutex mu;
  static std::map<std::pair<int, ll>, DensityCensus> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({static_cast<int>(fam), p});
    if (it != memo.end()) return it->second;
  }
  DensityCensus c;
  switch (fam) {
    case Family::MonicCubic:
      if (p > 13) throw std::length_error("density budget: monic cubics need p <= 13");
      c = census_monic(p);
      break;
    case Family::Quartic:
      if (p > 5) throw std::length_error("density budget: quartics need p <= 5");
      c = census_quartic(p);
      break;
    case Family::GeneralCubic:
      if (p > 7) throw std::length_error("density budget: general cubics need p <= 7");
      c = census_general(p);
      break;
    case Family::TernaryPair:
      if (p != 2) throw std::length_error("density budget: ternary pairs only at p = 2");
      c = census_pairs();
      break;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(static_cast<int>(fam), p), c);
  return c;
}

Rational density(Family fam, long long p, std::optional<int> split_index, bool require_maximal) {
  auto c = density_census(fam, p);
  if (!split_index) return require_maximal ? c.maximal : Rational(1);
  if (c.split.empty()) throw std::length_error("density: no splitting data for this family");
  auto k = static_cast<std::size_t>(*split_index);
  if (k >= c.split.size()) throw std::out_of_range("density: split index");
  return require_maximal ? c.split_max[k] : c.split[k];
}

// --- closed forms ----------------------------------------------------------------------

bool FormulaTable::all_hold() const {
  for (const auto& r : monic_ratios)
    if (!r.holds) return false;
  for (const auto& r : general_ratios)
    if (!r.holds) return false;
  return true;
}

FormulaTable density_formula_table(long long pl) {
  check_prime(pl);
  Rational p(pl), one(1);
  auto sq = [](const Rational& x) { return x * x; };
  FormulaTable t;
  t.p = pl;
  t.monic_split = {
      {"(111)", (p - one) * (p - Rational(2)) / (Rational(6) * sq(p))},
      {"(12)", (p - one) / (Rational(2) * p)},
      {"(3)", (sq(p) - one) / (Rational(3) * sq(p))},
      {"(1^21)", (p - one) / sq(p)},
      {"(1^3)", one / sq(p)},
  };
  t.monic_split_max = t.monic_split;
  t.monic_split_max[3].value = sq(p - one) / pow(p, 3);
  t.monic_split_max[4].value = (p - one) / pow(p, 3);
  Rational p4 = pow(p, 4), p5 = pow(p, 5);
  t.quartic_split_max = {
      {"(1111)", (p + one) * sq(p - one) * (p - Rational(2)) / (Rational(24) * p4)},
      {"(112)", (p + one) * sq(p - one) / (Rational(4) * pow(p, 3))},
      {"(13)", sq(sq(p) - one) / (Rational(3) * p4)},
      {"(22)", sq(p - one) * (sq(p) - p - Rational(2)) / (Rational(8) * p4)},
      {"(4)", (p + one) * sq(p - one) / (Rational(4) * pow(p, 3))},
      {"(1^211)", pow(p - one, 3) * (p + one) / (Rational(2) * p5)},
      {"(1^22)", pow(p - one, 3) * (p + one) / (Rational(2) * p5)},
      {"(1^21^2)", Rational(0)},
      {"(2^2)", Rational(0)},
      {"(1^31)", sq(p - one) * (p + one) / p5},
      {"(1^4)", Rational(0)},
  };
  t.monic_maximal = (sq(p) - one) / sq(p);
  t.quartic_strongly_maximal = sq(sq(p) - one) / p4;
  t.general_maximal = (pow(p, 3) - one) * (sq(p) - one) / p5;
  t.pair_strongly_maximal = sq(t.general_maximal);

  // R^{-1} columns
  const std::vector<std::pair<int, std::vector<int>>> pre = {{0, {0, 3}}, {1, {1, 4}}, {2, {2}}, {3, {5, 6}}, {4, {9}}};
  // monic symbol vs quartic preimages: printed left column
  std::vector<Rational> printed2 = {(p - Rational(2)) / (Rational(6) * (p + one)), p / (Rational(2) * (p + one)),
                                    Rational(1, 3), (p - one) / (p * (p + one)), one / (p * (p + one))};
  for (const auto& [s, thetas] : pre) {
    RatioRow r;
    r.sigma = t.monic_split_max[static_cast<std::size_t>(s)].label;
    r.left = t.monic_split_max[static_cast<std::size_t>(s)].value / t.monic_maximal;
    for (int th : thetas) {
      r.preimage.push_back(t.quartic_split_max[static_cast<std::size_t>(th)].label);
      r.right_terms.push_back(t.quartic_split_max[static_cast<std::size_t>(th)].value / t.quartic_strongly_maximal);
      r.right_sum += r.right_terms.back();
    }
    r.holds = r.left == r.right_sum && r.left == printed2[static_cast<std::size_t>(s)];
    t.monic_ratios.push_back(r);
  }
  // general cubic symbol vs pair preimages: printed columns
  Rational q = sq(p) + p + one;
  std::vector<Rational> left4 = {sq(p) / (Rational(6) * q), sq(p) / (Rational(2) * q), sq(p) / (Rational(3) * q), p / q,
                                 one / q};
  std::vector<std::vector<Rational>> right4 = {{sq(p) / (Rational(24) * q), sq(p) / (Rational(8) * q)},
                                               {sq(p) / (Rational(4) * q), sq(p) / (Rational(4) * q)},
                                               {sq(p) / (Rational(3) * q)},
                                               {p / (Rational(2) * q), p / (Rational(2) * q)},
                                               {one / q}};
  for (std::size_t s = 0; s < 5; ++s) {
    RatioRow r;
    r.sigma = t.monic_split[s].label;
    r.left = left4[s];
    for (std::size_t k = 0; k < right4[s].size(); ++k) {
      r.preimage.push_back(t.quartic_split_max[static_cast<std::size_t>(pre[s].second[k])].label);
      r.right_terms.push_back(right4[s][k]);
      r.right_sum += right4[s][k];
    }
    r.holds = r.left == r.right_sum;
    t.general_ratios.push_back(r);
  }
  return t;
}

}  // namespace bqf
