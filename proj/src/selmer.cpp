#include "bqf/selmer.hpp"

#include "bqf/reduction.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bqf {

// --- curves ---------------------------------------------------------------------

bool is_minimal_model(const Int& A, const Int& B) {
  Int g = A.is_zero() ? abs(B) : B.is_zero() ? abs(A) : gcd(A, B);
  if (g.is_zero()) return true;
  for (const auto& [p, e] : factorize(g)) {
    bool a4 = A.is_zero() || valuation(A, p) >= 4;
    bool b6 = B.is_zero() || valuation(B, p) >= 6;
    if (a4 && b6) return false;
  }
  return true;
}

EllipticCurve::EllipticCurve(Int a, Int b) : A(std::move(a)), B(std::move(b)) {
  if (disc().is_zero()) throw std::invalid_argument("singular curve " + str());
  if (!is_minimal_model(A, B)) throw std::invalid_argument("non-minimal model " + str());
}

InvariantPair curve_invariants(const EllipticCurve& E) { return {Int(-3) * E.A, Int(-27) * E.B}; }

Int curve_height4(const EllipticCurve& E) { return curve_invariants(E).h4(); }

bool has_rational_two_torsion(const EllipticCurve& E) { return cubic_has_rational_root({1, 0, E.A, E.B}); }

std::optional<PointCertificate> infinite_order_certificate(const EllipticCurve& E, long long search_bound) {
  for (long long xi = -search_bound; xi <= search_bound; ++xi) {
    Int x(xi), rhs = x * x * x + E.A * x + E.B, y;
    if (rhs.sign() <= 0 || !is_square(rhs, &y)) continue;
    // lambda = (3x^2 + A) / 2y, x(2P) = lambda^2 - 2x
    Rational lam(Int(3) * x * x + E.A, Int(2) * y);
    Rational x2 = lam * lam - Rational(Int(2) * x);
    if (!x2.is_integer()) return PointCertificate{x, y, x2};
  }
  return std::nullopt;
}

// --- local solubility -------------------------------------------------------------

bool real_soluble(const QuarticForm& f) { return root_type(f) != RootType::NoneRealNegative; }

namespace {

using Poly = std::vector<Int>;  // constant term first

Int powmod(Int b, Int e, const Int& m) {
  Int r(1);
  b = mod(b, m);
  while (e.sign() > 0) {
    if (e.is_odd()) r = mod(r * b, m);
    b = mod(b * b, m);
    e = e / Int(2);
  }
  return r;
}

// nonzero square mod odd p
bool qr(const Int& u, const Int& p) {
  Int r = mod(u, p);
  return !r.is_zero() && powmod(r, (p - Int(1)) / Int(2), p) == Int(1);
}

bool is_square_qp(const Int& c, const Int& p) {
  if (c.is_zero()) return true;
  int v = valuation(c, p);
  if (v % 2) return false;
  Int u = c / pow(p, static_cast<unsigned>(v));
  if (p == Int(2)) return mod(u, Int(8)) == Int(1);
  return qr(u, p);
}

// coefficients of g(x0 + s t) in t
Poly taylor(const Poly& g, const Int& x0, const Int& s) {
  Poly h(g.size());
  // Horner on polynomials: h <- h * (x0 + s t) + g_j
  for (std::size_t j = g.size(); j-- > 0;) {
    Poly nh(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (h[i].is_zero()) continue;
      nh[i] += h[i] * x0;
      if (i + 1 < g.size()) nh[i + 1] += h[i] * s;
    }
    nh[0] += g[j];
    h = std::move(nh);
  }
  return h;
}

Int eval(const Poly& g, const Int& x) {
  Int r;
  for (std::size_t j = g.size(); j-- > 0;) r = r * x + g[j];
  return r;
}

Poly derivative(const Poly& g) {
  Poly d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * Int(static_cast<long long>(i)));
  return d;
}

// --- polynomials over F_p (p odd, possibly large) ---

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly reduce(Poly a, const Int& p) {
  for (auto& x : a) x = mod(x, p);
  trim(a);
  return a;
}

Int inv_mod(const Int& a, const Int& p) { return powmod(a, p - Int(2), p); }

Poly poly_mod(Poly a, const Poly& m, const Int& p) {
  trim(a);
  Int li = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    Int q = mod(a.back() * li, p);
    std::size_t sh = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[sh + i] = mod(a[sh + i] - q * m[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  return poly_mod(r, m, p);
}

Poly poly_powmod(Poly b, Int e, const Poly& m, const Int& p) {
  Poly r{Int(1)};
  r = poly_mod(r, m, p);
  b = poly_mod(b, m, p);
  while (e.sign() > 0) {
    if (e.is_odd()) r = poly_mulmod(r, b, m, p);
    b = poly_mulmod(b, b, m, p);
    e = e / Int(2);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, const Int& p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Int li = inv_mod(a.back(), p);
    for (auto& x : a) x = mod(x * li, p);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, const Int& p) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
  trim(a);
  return a;
}

// distinct roots of a squarefree product of linear factors (monic)
void split_linear(const Poly& g, const Int& p, std::mt19937_64& rng, std::vector<Int>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(mod(-g[0], p));
    return;
  }
  Int half = (p - Int(1)) / Int(2);
  for (int tries = 0; tries < 200; ++tries) {
    Int a = mod(Int(static_cast<long long>(rng() >> 2)), p);
    Poly w = poly_powmod({a, Int(1)}, half, g, p);
    Poly d = poly_gcd(g, poly_sub(w, {Int(1)}, p), p);
    if (d.size() > 1 && d.size() < g.size()) {
      split_linear(d, p, rng, out);
      // g / d
      Poly q, r = g;
      q.assign(g.size() - d.size() + 1, Int(0));
      while (r.size() >= d.size()) {
        Int c = r.back();
        std::size_t sh = r.size() - d.size();
        q[sh] = c;
        for (std::size_t i = 0; i < d.size(); ++i) r[sh + i] = mod(r[sh + i] - c * d[i], p);
        trim(r);
      }
      split_linear(q, p, rng, out);
      return;
    }
  }
  throw std::runtime_error("root splitting mod p did not converge");
}

// distinct roots in F_p of a nonzero polynomial over F_p
std::vector<Int> roots_mod_p(const Poly& h, const Int& p) {
  std::vector<Int> out;
  if (h.size() <= 1) return out;
  if (p < Int(2000)) {
    long long pp = p.to_ll();
    for (long long r = 0; r < pp; ++r)
      if (mod(eval(h, Int(r)), p).is_zero()) out.push_back(Int(r));
    return out;
  }
  Poly m = h;
  Int li = inv_mod(m.back(), p);
  for (auto& x : m) x = mod(x * li, p);
  Poly tp = poly_powmod({Int(0), Int(1)}, p, m, p);
  Poly g = poly_gcd(m, poly_sub(tp, {Int(0), Int(1)}, p), p);
  std::mt19937_64 rng(12345);
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

// h = lc * s^2 over F_p for some polynomial s
bool is_const_times_square(const Poly& h, const Int& p) {
  std::size_t deg = h.size() - 1;
  if (deg % 2) return false;
  if (deg == 0) return true;
  Int li = inv_mod(h.back(), p), i2 = inv_mod(Int(2), p);
  Poly m = h;
  for (auto& x : m) x = mod(x * li, p);
  std::size_t k = deg / 2;
  Poly s(k + 1);
  s[k] = Int(1);
  // match coefficients of t^{2k-1} .. t^k
  for (std::size_t j = 1; j <= k; ++j) {
    Int acc = m[2 * k - j];
    for (std::size_t i = 1; i < j; ++i) acc -= s[k - i] * s[k - j + i];
    s[k - j] = mod(acc * i2, p);
  }
  Poly sq(2 * k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) sq[i + j] = mod(sq[i + j] + s[i] * s[j], p);
  return sq == m;
}

// some r in F_p with h(r) a nonzero square
bool has_square_value(const Poly& h, const Int& p) {
  if (p < Int(2000)) {
    long long pp = p.to_ll();
    for (long long r = 0; r < pp; ++r)
      if (qr(eval(h, Int(r)), p)) return true;
    return false;
  }
  if (is_const_times_square(h, p)) return qr(h.back(), p);  // s has < p roots
  // otherwise the curve z^2 = h(t) is absolutely irreducible of genus <= 1 and the
  // Weil bound leaves roughly p/2 such t; scan for an explicit one
  for (long long r = 0; r < 100000; ++r)
    if (qr(eval(h, Int(r)), p)) return true;
  throw std::runtime_error("square value scan exhausted mod " + p.str());
}

enum class Disk { Yes, No, Undecided };

struct DiskSearch {
  Int p;
  int max_depth;

  bool hensel(const Poly& g, const Int& x0) const {
    Int v = eval(g, x0);
    if (v.is_zero()) return true;
    Int d = eval(derivative(g), x0);
    return !d.is_zero() && valuation(v, p) > 2 * valuation(d, p);
  }

  // is g(x) a square in Q_p for some x in x0 + p^n Z_p
  Disk odd(const Poly& g, const Int& x0, int n) const {
    if (hensel(g, x0)) return Disk::Yes;
    Int s = pow(p, static_cast<unsigned>(n));
    Poly h = taylor(g, x0, s);
    int m = -1;
    for (const auto& c : h)
      if (!c.is_zero()) {
        int v = valuation(c, p);
        if (m < 0 || v < m) m = v;
      }
    if (m < 0) return Disk::Yes;  // g vanishes identically on the disk
    Int pm = pow(p, static_cast<unsigned>(m));
    Poly hb;
    for (const auto& c : h) hb.push_back(c / pm);
    hb = reduce(hb, p);
    if (m % 2 == 0 && has_square_value(hb, p)) return Disk::Yes;
    // remaining points lie over roots of hb
    bool undecided = false;
    for (const auto& r : roots_mod_p(hb, p)) {
      if (n >= max_depth) {
        undecided = true;
        continue;
      }
      Disk d = odd(g, x0 + r * s, n + 1);
      if (d == Disk::Yes) return d;
      if (d == Disk::Undecided) undecided = true;
    }
    return undecided ? Disk::Undecided : Disk::No;
  }

  Disk two(const Poly& g, const Int& x0, int n) const {
    if (hensel(g, x0)) return Disk::Yes;
    Int s = pow(p, static_cast<unsigned>(n));
    Poly h = taylor(g, x0, s);
    int v0 = valuation(h[0], p);  // h[0] != 0, else hensel
    bool uniform = true;
    for (std::size_t i = 1; i < h.size(); ++i)
      if (!h[i].is_zero() && valuation(h[i], p) < v0 + 3) uniform = false;
    if (uniform) return is_square_qp(h[0], p) ? Disk::Yes : Disk::No;
    if (n >= max_depth) return Disk::Undecided;
    bool undecided = false;
    for (int r = 0; r < 2; ++r) {
      Disk d = two(g, x0 + Int(r) * s, n + 1);
      if (d == Disk::Yes) return d;
      if (d == Disk::Undecided) undecided = true;
    }
    return undecided ? Disk::Undecided : Disk::No;
  }

  Disk run(const Poly& g, int n) const { return p == Int(2) ? two(g, Int(0), n) : odd(g, Int(0), n); }
};

}  // namespace

bool qp_soluble(const QuarticForm& f, long long p_) {
  Int p(p_);
  Int D = quartic_disc(f);
  if (D.is_zero()) throw std::invalid_argument("qp_soluble: zero discriminant");
  if (p_ != 2 && !divides(p, D)) return true;
  DiskSearch ds{p, 2 * valuation(D, p) + 6};
  Poly g1{f.e, f.d, f.c, f.b, f.a};  // f(x, 1)
  Poly g2{f.a, f.b, f.c, f.d, f.e};  // f(1, y)
  Disk d1 = ds.run(g1, 0);
  if (d1 == Disk::Yes) return true;
  Disk d2 = ds.run(g2, 1);
  if (d2 == Disk::Yes) return true;
  if (d1 == Disk::Undecided || d2 == Disk::Undecided)
    throw std::runtime_error("qp_soluble: undecided at p=" + p.str() + " for " + f.str());
  return false;
}

LocalCertificate locally_soluble(const QuarticForm& f) {
  LocalCertificate cert;
  if (!real_soluble(f)) {
    cert.soluble = false;
    cert.failed_at = "inf";
    return cert;
  }
  std::vector<long long> primes{2, 3};
  for (const auto& q : prime_divisors(quartic_disc(f)))
    if (q > Int(3)) primes.push_back(q.to_ll());
  for (long long p : primes) {
    cert.primes_checked.push_back(p);
    if (!qp_soluble(f, p)) {
      cert.soluble = false;
      cert.failed_at = std::to_string(p);
      return cert;
    }
  }
  return cert;
}

// --- minimisation and fusion -----------------------------------------------------------

namespace {

// (x, y) -> (a x + b y, d y), a d = p^k, 0 <= b < a: one map per index-p^k sublattice
template <class F>
bool for_each_sublattice(long long p, int k, F&& visit) {
  Int pk = pow(Int(p), static_cast<unsigned>(k));
  for (int i = 0; i <= k; ++i) {
    Int a = pow(Int(p), static_cast<unsigned>(i)), d = pk / a;
    long long amax = a.to_ll();
    for (long long b = 0; b < amax; ++b)
      if (visit(UnimodularMap{a, 0, Int(b), d})) return true;
  }
  return false;
}

std::optional<QuarticForm> divide_form(const QuarticForm& g, const Int& m) {
  for (const auto& c : g.coeffs())
    if (!divides(m, c)) return std::nullopt;
  return QuarticForm{g.a / m, g.b / m, g.c / m, g.d / m, g.e / m};
}

bool reduction_hypothesis(const InvariantPair& inv, long long p) {
  auto div = [](long long q, int e, const Int& x) { return x.is_zero() || valuation(x, Int(q)) >= e; };
  if (p >= 5) return div(p, 4, inv.I) && div(p, 6, inv.J);
  if (p == 3) return div(3, 5, inv.I) && div(3, 9, inv.J);
  return div(2, 6, inv.I) && div(2, 9, inv.J) && div(2, 10, Int(8) * inv.I + inv.J);
}

}  // namespace

QuarticForm minimize(const QuarticForm& f0) {
  QuarticForm f = f0;
  for (;;) {
    auto inv = quartic_invariants(f);
    Int g = inv.I.is_zero() ? abs(inv.J) : inv.J.is_zero() ? abs(inv.I) : gcd(inv.I, inv.J);
    bool reduced = false;
    for (const auto& q : prime_divisors(g)) {
      long long p = q.to_ll();
      if (!reduction_hypothesis(inv, p) || !qp_soluble(f, p)) continue;
      std::optional<QuarticForm> next;
      int kmax = p <= 3 ? 4 : p < 100 ? 3 : 2;
      for (int k = 1; k <= kmax && !next; ++k) {
        Int m = pow(q, static_cast<unsigned>(2 * k + 2));
        for_each_sublattice(p, k, [&](const UnimodularMap& M) {
          next = divide_form(substitute(M, f), m);
          return next.has_value();
        });
      }
      if (!next) throw std::logic_error("minimize: guaranteed reduction not found at p=" + q.str() + " for " + f.str());
      f = canonical_form(*next).form;
      reduced = true;
      break;
    }
    if (!reduced) return f;
  }
}

std::vector<int> q_fuse(const std::vector<QuarticForm>& classes) {
  std::vector<int> parent(classes.size());
  std::iota(parent.begin(), parent.end(), 0);
  if (classes.empty()) return parent;
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  auto unite = [&](int i, int j) {
    i = find(i), j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  };
  std::map<QuarticForm, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[canonical_form(classes[i]).form] = static_cast<int>(i);

  Int D = quartic_disc(classes[0]);
  std::vector<long long> primes{2, 3};
  for (const auto& [q, e] : factorize(D))
    if (q > Int(3) && e >= 2) primes.push_back(q.to_ll());
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (long long p : primes)
      for (int k = 1; k <= 2; ++k) {
        Int m = pow(Int(p), static_cast<unsigned>(2 * k));
        for_each_sublattice(p, k, [&](const UnimodularMap& M) {
          if (auto g = divide_form(substitute(M, classes[i]), m)) {
            auto it = index.find(canonical_form(*g).form);
            if (it != index.end()) unite(static_cast<int>(i), it->second);
          }
          return false;
        });
      }
  std::vector<int> label(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) label[i] = find(static_cast<int>(i));
  return label;
}

SelmerReport selmer_size(const EllipticCurve& E, const BoxConstants& box) {
  if (!E.rigid()) throw std::invalid_argument("selmer_size: curve with A = 0 or B = 0: " + E.str());
  auto inv = curve_invariants(E);
  SelmerReport rep{E, {Int(16) * inv.I, Int(64) * inv.J}, {}, 0, 0, false, false};
  std::vector<QuarticForm> soluble;
  std::vector<LocalCertificate> certs;
  for (const auto& f : fiber_forms(rep.fiber, box, true, nullptr)) {
    auto c = locally_soluble(f);
    if (!c.soluble) {
      ++rep.insoluble_classes;
      continue;
    }
    soluble.push_back(f);
    certs.push_back(std::move(c));
  }
  auto label = q_fuse(soluble);
  std::map<int, std::size_t> block;
  for (std::size_t i = 0; i < soluble.size(); ++i) {
    auto [it, fresh] = block.emplace(label[i], rep.classes.size());
    if (fresh) rep.classes.push_back({soluble[i], {}, certs[i], false});
    auto& sc = rep.classes[it->second];
    sc.members.push_back(soluble[i]);
    if (has_rational_linear_factor(soluble[i])) sc.identity = true;
  }
  rep.size = static_cast<int>(rep.classes.size());
  rep.power_of_two = rep.size > 0 && (rep.size & (rep.size - 1)) == 0;
  rep.identity_found = std::any_of(rep.classes.begin(), rep.classes.end(), [](const auto& c) { return c.identity; });
  return rep;
}

// --- families and averages -----------------------------------------------------------

bool CurveFamily::contains(const Int& A, const Int& B) const {
  for (const auto& rc : constraints) {
    Int m(rc.modulus);
    long long a = mod(A, m).to_ll(), b = mod(B, m).to_ll();
    if (std::find(rc.allowed.begin(), rc.allowed.end(), std::make_pair(a, b)) == rc.allowed.end()) return false;
  }
  return true;
}

CurveFamily CurveFamily::parse(const std::string& spec) {
  CurveFamily fam;
  if (spec.empty() || spec == "all") return fam;
  std::stringstream blocks(spec);
  std::string block;
  while (std::getline(blocks, block, '|')) {
    auto colon = block.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("family block without modulus: " + block);
    ResidueConstraint rc;
    rc.modulus = std::stoll(block.substr(0, colon));
    if (rc.modulus < 1) throw std::invalid_argument("family modulus must be positive");
    std::stringstream pairs(block.substr(colon + 1));
    std::string pr;
    while (std::getline(pairs, pr, ';')) {
      auto comma = pr.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("family residue needs a,b: " + pr);
      long long a = std::stoll(pr.substr(0, comma)), b = std::stoll(pr.substr(comma + 1));
      rc.allowed.emplace_back(((a % rc.modulus) + rc.modulus) % rc.modulus, ((b % rc.modulus) + rc.modulus) % rc.modulus);
    }
    fam.constraints.push_back(std::move(rc));
  }
  return fam;
}

SelmerStats selmer_average(const CurveFamily& fam, const Int& X, int threads, const BoxConstants& box) {
  SelmerStats st;
  st.X = X;
  Int X4 = Int(4) * X;
  // 4 * 27 |A|^3 < 4X and 729 B^2 < 4X
  Int amax = icbrt_floor(X / Int(27)) + Int(1), bmax = isqrt(X4 / Int(729)) + Int(1);
  std::vector<EllipticCurve> curves;
  for (Int A = -amax; A <= amax; A += Int(1))
    for (Int B = -bmax; B <= bmax; B += Int(1)) {
      Int h4 = InvariantPair{Int(-3) * A, Int(-27) * B}.h4();
      if (!(h4 < X4)) continue;
      if ((Int(4) * A * A * A + Int(27) * B * B).is_zero() || !is_minimal_model(A, B) || !fam.contains(A, B)) continue;
      EllipticCurve E(A, B);
      if (!E.rigid()) {
        ++st.excluded_nonrigid;
        continue;
      }
      if (has_rational_two_torsion(E)) {
        ++st.excluded_torsion;
        continue;
      }
      curves.push_back(E);
    }
  std::vector<std::optional<SelmerReport>> reps(curves.size());
  detail::parallel_for(curves.size(), threads, [&](std::size_t i) { reps[i] = selmer_size(curves[i], box); });
  for (const auto& o : reps) {
    const auto& r = *o;
    ++st.curves;
    st.total_size += r.size;
    ++st.size_histogram[r.size];
    if (!r.power_of_two) ++st.not_power_of_two;
    if (!r.identity_found) ++st.identity_missing;
  }
  return st;
}

LocalMass local_mass(long long p) {
  LocalMass m;
  m.p = p;
  m.orbit_ratio = p == 2 ? Rational(2) : Rational(1);
  m.haar = Rational(1) - Rational(Int(1), Int(p) * Int(p));
  m.abs_factor = p == 2 ? Rational(Int(1), Int(1024)) : p == 3 ? Rational(27) : Rational(1);
  return m;
}

Rational mass_ratio_product(long long pmax) {
  Rational r(1);
  for (long long p : primes_up_to(pmax)) r *= local_mass(p).orbit_ratio;
  return r;
}

}  // namespace bqf
