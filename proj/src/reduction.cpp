#include "bqf/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace bqf {

CubicForm reduce_monic_cubic(const CubicForm& g) {
  if (g.a != Int(1)) throw std::invalid_argument("reduce_monic_cubic: leading coefficient must be 1");
  // b + 3u in {-1,0,1}
  Int u = -floor_div(g.b + Int(1), Int(3));
  return translate_cubic(g, u);
}

CubicForm reduce_cubic_n(const CubicForm& g) {
  if (g.a.sign() <= 0) throw std::invalid_argument("reduce_cubic_n: leading coefficient must be positive");
  Int u = -floor_div(g.b, Int(3) * g.a);
  return translate_cubic(g, u);
}

// --- covariant point ------------------------------------------------------

namespace {

Complex upper(Complex z) { return z.imag() < 0 ? std::conj(z) : z; }

// root in the upper half plane of A z^2 + B z + C (real, negative discriminant)
Complex upper_root(long double A, long double B, long double C) {
  if (A < 0) A = -A, B = -B, C = -C;
  long double disc = 4 * A * C - B * B;
  if (!(disc > 0)) disc = 0;
  return {-B / (2 * A), std::sqrt(disc) / (2 * A)};
}

}  // namespace

Complex covariant_point(const std::array<long double, 5>& c, int nreal) {
  auto z = poly_roots({c[0], c[1], c[2], c[3], c[4]});
  std::sort(z.begin(), z.end(), [](Complex x, Complex y) { return std::fabs(x.imag()) < std::fabs(y.imag()); });
  if (nreal == 4) {
    std::array<long double, 4> r = {z[0].real(), z[1].real(), z[2].real(), z[3].real()};
    std::sort(r.begin(), r.end());
    long double s1 = r[0] + r[2], p1 = r[0] * r[2], s2 = r[1] + r[3], p2 = r[1] * r[3];
    return upper_root(s1 - s2, 2 * (p2 - p1), p1 * s2 - s1 * p2);
  }
  if (nreal == 2) return upper(z[3]);
  if (nreal != 0) throw std::logic_error("covariant_point: bad real root count");
  // the two roots in H
  std::array<Complex, 4> h = {z[0], z[1], z[2], z[3]};
  std::sort(h.begin(), h.end(), [](Complex x, Complex y) { return x.imag() > y.imag(); });
  Complex b = h[0], g = h[1];
  Complex s = b + g, p = b * g;
  return upper_root(s.imag(), -2 * p.imag(), (p * std::conj(s)).imag());
}

Complex covariant_point(const QuarticForm& f) {
  if (f.a.is_zero()) throw std::domain_error("covariant_point needs a != 0");
  RootType t = root_type(f);
  int nreal = t == RootType::FourReal ? 4 : t == RootType::TwoReal ? 2 : 0;
  return covariant_point({f.a.to_ld(), f.b.to_ld(), f.c.to_ld(), f.d.to_ld(), f.e.to_ld()}, nreal);
}

Complex moebius(const UnimodularMap& u, Complex z) {
  long double al = u.p.to_ld(), be = u.q.to_ld(), ga = u.r.to_ld(), de = u.s.to_ld();
  if (u.det().sign() < 0) z = std::conj(z);
  return (al * z + be) / (ga * z + de);
}

UnimodularMap form_map_for(const UnimodularMap& u) {
  // (u^-1)^T
  Int d = u.det();
  return {u.s * d, -u.r * d, -u.q * d, u.p * d};
}

// --- canonical forms ------------------------------------------------------

namespace {

constexpr long double kEps = 1e-7L;

bool in_domain(Complex z) { return std::fabs(z.real()) <= 0.5L + kEps && std::norm(z) >= 1 - kEps; }

// standard matrix taking z into the SL2(Z) fundamental domain
UnimodularMap to_fundamental(Complex& z) {
  UnimodularMap u;
  for (int it = 0; it < 10000; ++it) {
    long double n = std::round(z.real());
    if (n != 0) {
      z -= n;
      u = UnimodularMap{1, Int(static_cast<long long>(-n)), 0, 1} * u;
    }
    if (std::norm(z) < 1 - 1e-12L) {
      z = -1.0L / z;
      u = UnimodularMap{0, -1, 1, 0} * u;
    } else {
      return u;
    }
  }
  throw std::runtime_error("to_fundamental: no convergence");
}

const std::vector<UnimodularMap>& neighbours() {
  static const std::vector<UnimodularMap> list = [] {
    std::vector<UnimodularMap> v;
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q)
        for (int r = -2; r <= 2; ++r)
          for (int s = -2; s <= 2; ++s)
            if (std::abs(p * s - q * r) == 1) v.push_back({p, q, r, s});
    return v;
  }();
  return list;
}

int nreal_of(const QuarticForm& f) {
  RootType t = root_type(f);
  return t == RootType::FourReal ? 4 : t == RootType::TwoReal ? 2 : 0;
}

Complex point_of(const QuarticForm& f, int nreal) {
  return covariant_point({f.a.to_ld(), f.b.to_ld(), f.c.to_ld(), f.d.to_ld(), f.e.to_ld()}, nreal);
}

// orbit members whose covariant point lies in the thickened domain, with their maps from f
std::vector<std::pair<QuarticForm, UnimodularMap>> reduced_members(const QuarticForm& f0, int nreal) {
  QuarticForm f = f0;
  UnimodularMap acc;
  if (f.a.is_zero()) {
    for (int k = 1;; ++k) {
      if (!f.eval(1, k).is_zero()) {
        UnimodularMap g{1, k, 0, 1};
        f = act_untwisted(g, f);
        acc = g * acc;
        break;
      }
    }
  }
  // successive refinement keeps the root computation well conditioned
  for (int it = 0; it < 64; ++it) {
    Complex w = point_of(f, nreal);
    if (in_domain(w)) break;
    UnimodularMap u = to_fundamental(w);
    UnimodularMap g = form_map_for(u);
    QuarticForm h = act_untwisted(g, f);
    if (h.a.is_zero()) break;  // rare; the candidate step below still works from f
    f = h;
    acc = g * acc;
  }
  Complex z = point_of(f, nreal);
  UnimodularMap t0 = to_fundamental(z);
  std::vector<std::pair<QuarticForm, UnimodularMap>> out;
  for (const auto& e : neighbours()) {
    if (!in_domain(moebius(e, z))) continue;
    UnimodularMap g = form_map_for(e * t0);
    out.emplace_back(act_untwisted(g, f), g * acc);
  }
  if (out.empty()) throw std::logic_error("reduced_members: empty candidate set");
  return out;
}

}  // namespace

Canonical canonical_form(const QuarticForm& f, bool with_stabilizer) {
  if (quartic_disc(f).is_zero()) throw std::invalid_argument("canonical_form: zero discriminant");
  int nreal = nreal_of(f);
  auto cands = reduced_members(f, nreal);
  auto best = std::min_element(cands.begin(), cands.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Canonical c{best->first, best->second, 0};
  if (with_stabilizer) {
    auto around = reduced_members(c.form, nreal);
    for (const auto& cand : around) c.stabilizer += cand.first == c.form;
  }
  return c;
}

Canonical reduce_quartic(const QuarticForm& f) {
  if (quartic_disc(f).is_zero()) throw std::invalid_argument("reduce_quartic: zero discriminant");
  if (!is_irreducible_q(f)) throw std::invalid_argument("reduce_quartic: reducible form");
  return canonical_form(f);
}

int stabilizer_order_z(const QuarticForm& f) { return canonical_form(f, true).stabilizer; }

std::optional<UnimodularMap> equivalent_quartics(const QuarticForm& f1, const QuarticForm& f2) {
  if (quartic_invariants(f1) != quartic_invariants(f2)) return std::nullopt;
  auto c1 = canonical_form(f1), c2 = canonical_form(f2);
  if (c1.form != c2.form) return std::nullopt;
  return c2.witness.inverse() * c1.witness;
}

namespace {

const UnimodularMap kGens[] = {{0, 1, 1, 0}, {1, 0, 1, 1}, {1, 0, -1, 1}, {-1, 0, 0, 1}};

Int max_abs(const QuarticForm& f) {
  Int m = 0;
  for (const auto& x : f.coeffs()) m = std::max(m, abs(x));
  return m;
}

}  // namespace

std::optional<UnimodularMap> equivalent_quartics_bfs(const QuarticForm& f1, const QuarticForm& f2, int max_len,
                                                     const Int& coeff_bound) {
  if (quartic_invariants(f1) != quartic_invariants(f2)) return std::nullopt;
  std::unordered_map<QuarticForm, UnimodularMap> seen{{f1, UnimodularMap{}}};
  std::vector<QuarticForm> frontier{f1};
  for (int len = 0; len <= max_len; ++len) {
    std::vector<QuarticForm> next;
    for (const auto& f : frontier) {
      if (f == f2) return seen.at(f);
      if (len == max_len) continue;
      for (const auto& g : kGens) {
        QuarticForm h = act_untwisted(g, f);
        if (max_abs(h) > coeff_bound || seen.count(h)) continue;
        seen.emplace(h, g * seen.at(f));
        next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// --- oracle -----------------------------------------------------------------

namespace {

std::vector<int> orbit_labels(const std::vector<QuarticForm>& forms, long long limit) {
  std::unordered_map<QuarticForm, int> index;
  for (int i = 0; i < static_cast<int>(forms.size()); ++i) index.emplace(forms[i], i);
  std::vector<int> label(forms.size(), -1);
  Int lim(limit);
  for (int i = 0; i < static_cast<int>(forms.size()); ++i) {
    if (label[i] >= 0) continue;
    // forms are sorted, so i is the least member of its component
    std::unordered_set<QuarticForm> seen{forms[i]};
    std::deque<QuarticForm> queue{forms[i]};
    while (!queue.empty()) {
      QuarticForm f = queue.front();
      queue.pop_front();
      if (auto it = index.find(f); it != index.end()) label[it->second] = i;
      for (const auto& g : kGens) {
        QuarticForm h = act_untwisted(g, f);
        if (max_abs(h) > lim || !seen.insert(h).second) continue;
        queue.push_back(h);
      }
    }
  }
  return label;
}

}  // namespace

OrbitPartition brute_force_orbits(int box, bool include_reducible, int factor, bool check_doubling) {
  OrbitPartition out;
  for (int a = -box; a <= box; ++a)
    for (int b = -box; b <= box; ++b)
      for (int c = -box; c <= box; ++c)
        for (int d = -box; d <= box; ++d)
          for (int e = -box; e <= box; ++e) {
            QuarticForm f{a, b, c, d, e};
            if (quartic_disc(f).is_zero()) continue;
            if (!include_reducible && !is_irreducible_q(f)) continue;
            out.forms.push_back(f);
          }
  std::sort(out.forms.begin(), out.forms.end());
  out.label = orbit_labels(out.forms, static_cast<long long>(factor) * box);
  for (int i = 0; i < static_cast<int>(out.label.size()); ++i) out.orbit_count += out.label[i] == i;
  if (check_doubling) out.stable = orbit_labels(out.forms, 2LL * factor * box) == out.label;
  return out;
}

}  // namespace bqf
