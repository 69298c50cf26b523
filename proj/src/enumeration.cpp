#include "bqf/enumeration.hpp"

#include "bqf/local_arith.hpp"
#include "bqf/reduction.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bqf {

using ll = long long;

namespace {

ll floor_div_ll(ll a, ll b) {
  ll q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// number of x in [lo, hi] with x = r mod m
ll progression_count(ll lo, ll hi, ll r, ll m) {
  if (hi < lo) return 0;
  return floor_div_ll(hi - r, m) - floor_div_ll(lo - 1 - r, m);
}

// residues of J mod 27 allowed for each I mod 9
const std::array<std::vector<int>, 9>& allowed_j() {
  static const auto table = [] {
    std::array<std::vector<int>, 9> t;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 27; ++j)
        if (is_eligible_residue(i, j)) t[static_cast<std::size_t>(i)].push_back(j);
    return t;
  }();
  return table;
}

struct Ranges {
  ll imax = -1, jmax = -1;
};

Ranges ranges_for(const Int& X) {
  Ranges r;
  if (X <= Int(0)) return r;
  // |I|^3 < X, J^2 < 4X
  r.imax = icbrt_floor(X - Int(1)).to_ll();
  r.jmax = isqrt(Int(4) * X - Int(1)).to_ll();
  return r;
}

// J-intervals with the requested sign of 4I^3 - J^2, within |J| <= jmax
std::vector<std::pair<ll, ll>> j_intervals(ll I, ll jmax, DiscSign sign) {
  Int four_i3 = Int(4) * Int(I) * Int(I) * Int(I);
  if (sign == DiscSign::Positive) {
    if (I <= 0) return {};
    // J^2 < 4I^3
    ll s = isqrt(four_i3 - Int(1)).to_ll();
    s = std::min(s, jmax);
    return {{-s, s}};
  }
  if (I < 0) return {{-jmax, jmax}};
  // J^2 > 4I^3
  ll s = isqrt(four_i3).to_ll() + 1;
  if (s > jmax) return {};
  return {{-jmax, -s}, {s, jmax}};
}

}  // namespace

int eligible_residue_cells() {
  int n = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 27; ++j) n += is_eligible_residue(i, j);
  return n;
}

std::vector<InvariantPair> eligible_pairs(const Int& X, DiscSign sign) {
  std::vector<InvariantPair> out;
  auto rg = ranges_for(X);
  for (ll I = -rg.imax; I <= rg.imax; ++I) {
    const auto& res = allowed_j()[static_cast<std::size_t>(((I % 9) + 9) % 9)];
    if (res.empty()) continue;
    for (auto [lo, hi] : j_intervals(I, rg.jmax, sign))
      for (ll J = lo; J <= hi; ++J)
        if (std::binary_search(res.begin(), res.end(), static_cast<int>(((J % 27) + 27) % 27))) out.push_back({I, J});
  }
  return out;
}

long long eligible_pair_count(const Int& X, DiscSign sign) {
  ll n = 0;
  auto rg = ranges_for(X);
  for (ll I = -rg.imax; I <= rg.imax; ++I)
    for (int r : allowed_j()[static_cast<std::size_t>(((I % 9) + 9) % 9)])
      for (auto [lo, hi] : j_intervals(I, rg.jmax, sign)) n += progression_count(lo, hi, r, 27);
  return n;
}

long long eligible_degenerate_count(const Int& X) {
  // 4I^3 = J^2  <=>  I = k^2, J = +-2k^3
  ll n = 0;
  auto rg = ranges_for(X);
  for (ll k = 0; k * k <= rg.imax; ++k) {
    ll I = k * k, J = 2 * k * k * k;
    if (J > rg.jmax) break;
    for (ll s : {J, -J}) {
      if (is_eligible({I, s})) ++n;
      if (J == 0) break;
    }
  }
  return n;
}

std::vector<MonicClass> monic_cubic_classes(const Int& X, DiscSign sign) {
  std::vector<MonicClass> out;
  for (const auto& p : eligible_pairs(X, sign)) {
    CubicForm g = monic_cubic_for(p);  // throws if the recipe is not integral
    if (cubic_invariants(g) != p) throw std::logic_error("monic_cubic_classes: reconstruction mismatch at " + p.str());
    out.push_back({p, g, !cubic_has_rational_root(g)});
  }
  return out;
}

// --- search regions -------------------------------------------------------------

std::string BoxConstants::key() const {
  std::ostringstream s;
  s << "samples=" << samples << " slack=" << slack << " scale=" << scale;
  return s.str();
}

namespace {

using Coeffs = std::array<long double, 5>;

// f((x,y) m) for a real matrix m = [[p,q],[r,s]]
Coeffs act_real(long double p, long double q, long double r, long double s, const Coeffs& f) {
  // powers of X = p x + r y and Y = q x + s y as coefficient lists indexed by the power of y
  std::array<std::array<long double, 5>, 5> xp{}, yp{};
  xp[0][0] = yp[0][0] = 1;
  for (int k = 1; k <= 4; ++k)
    for (int j = 0; j < k; ++j) {
      xp[k][j] += xp[k - 1][j] * p;
      xp[k][j + 1] += xp[k - 1][j] * r;
      yp[k][j] += yp[k - 1][j] * q;
      yp[k][j + 1] += yp[k - 1][j] * s;
    }
  Coeffs out{};
  for (int k = 0; k <= 4; ++k)
    for (int i = 0; i <= 4 - k; ++i)
      for (int j = 0; j <= k; ++j) out[i + j] += f[k] * xp[4 - k][i] * yp[k][j];
  return out;
}

long double inv_real(const Coeffs& f, bool want_j) {
  auto [a, b, c, d, e] = f;
  if (!want_j) return 12 * a * e - 3 * b * d + c * c;
  return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c;
}

int nreal_for(RootType t) { return t == RootType::FourReal ? 4 : t == RootType::TwoReal ? 2 : 0; }

// real form with invariants (I,J) of the given type
std::optional<Coeffs> representative(long double I, long double J, RootType t) {
  long double disc = 4 * I * I * I - J * J;
  switch (t) {
    case RootType::FourReal:
      if (!(disc > 0)) return std::nullopt;
      return Coeffs{0, 1, 0, -I / 3, -J / 27};
    case RootType::TwoReal:
      if (!(disc < 0)) return std::nullopt;
      return Coeffs{0, 1, 0, -I / 3, -J / 27};
    case RootType::NoneRealPositive:
    case RootType::NoneRealNegative: {
      if (!(disc > 0)) return std::nullopt;
      long double jj = t == RootType::NoneRealPositive ? J : -J;
      long double sq = std::sqrt(I), tt = jj / (I * sq);
      long double s = std::sqrt(std::max(0.0L, 2 - tt)) / (3 * std::sqrt(3.0L));
      Coeffs f{sq / 16, -sq * s, sq / 2, 0, sq};
      if (t == RootType::NoneRealNegative)
        for (auto& x : f) x = -x;
      return f;
    }
  }
  return std::nullopt;
}

constexpr long double kPi = 3.141592653589793238462643383279502884L;

}  // namespace

std::optional<FiberBounds> fiber_bounds(const InvariantPair& inv, RootType t, const BoxConstants& box) {
  long double I = inv.I.to_ld(), J = inv.J.to_ld();
  auto rep = representative(I, J, t);
  if (!rep) return std::nullopt;
  Coeffs f = *rep;
  long double scale_inv = std::max({1.0L, std::fabs(I), std::pow(std::fabs(J), 2.0L / 3)});
  if (std::fabs(inv_real(f, false) - I) > 1e-9L * scale_inv || std::fabs(inv_real(f, true) - J) > 1e-9L * scale_inv * std::sqrt(scale_inv))
    throw std::logic_error("fiber_bounds: representative has wrong invariants at " + inv.str());
  // make the leading coefficient nonzero before locating the covariant point
  if (std::fabs(f[0]) < 1e-12L) f = act_real(1, 0.37L, 0, 1, f);
  Complex w = covariant_point(f, nreal_for(t));
  long double u = w.real(), v = w.imag(), sv = std::sqrt(v);
  Coeffs n = act_real(sv, 0, u / sv, 1 / sv, f);
  Complex wn = covariant_point(n, nreal_for(t));
  if (std::abs(wn - Complex(0, 1)) > 1e-6L) throw std::logic_error("fiber_bounds: normalisation failed at " + inv.str());
  long double ma = 0, mb = 0, mh = 0;
  int K = box.samples;
  for (int k = 0; k < K; ++k) {
    long double th = 2 * kPi * k / K, cs = std::cos(th), sn = std::sin(th);
    Coeffs r = act_real(cs, sn, -sn, cs, n);
    ma = std::max(ma, std::fabs(r[0]));
    mb = std::max(mb, std::fabs(r[1]));
    mh = std::max(mh, std::fabs(8 * r[0] * r[2] - 3 * r[1] * r[1]));
  }
  long double h = 2 * kPi / K;
  if (4 * h >= 1) throw std::invalid_argument("fiber_bounds: too few samples");
  long double k4 = 1 / (1 - 4 * h / 2), k8 = 1 / (1 - 8 * h / 2), sl = box.slack * box.scale;
  FiberBounds b;
  // reduced members have Im w >= sqrt(3)/2: a and 8ac-3b^2 shrink by 1/v^2, b (when a = 0) by 1/v
  b.a = ma * k4 * sl * 4 / 3 + 1e-9L;
  b.hs = mh * k8 * sl * 4 / 3 + 1e-9L;
  b.b0 = mb * k4 * sl * 2 / std::sqrt(3.0L) + 1e-9L;
  return b;
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

bool j_matches(i128 a, i128 b, i128 c, i128 d, i128 e, i128 J) {
  return 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c * c * c == J;
}

// all integral forms with invariants (I,J) inside the search region (not yet reduced)
std::set<QuarticForm> box_members(ll I, ll J, const FiberBounds& bd) {
  std::set<QuarticForm> hits;
  const i128 I1 = I, J1 = J;
  ll A = static_cast<ll>(std::floor(bd.a));
  long double H = bd.hs;
  for (ll a = -A; a <= A; ++a) {
    if (a == 0) continue;
    const i128 a1 = a, aa = std::llabs(a);
    for (ll b = -2 * aa + 1; b <= 2 * aa; ++b) {
      const i128 b1 = b;
      long double lo = (3.0L * b * b - H) / (8.0L * a), hi = (3.0L * b * b + H) / (8.0L * a);
      if (lo > hi) std::swap(lo, hi);
      ll clo = static_cast<ll>(std::ceil(lo)), chi = static_cast<ll>(std::floor(hi));
      for (ll c = clo; c <= chi; ++c) {
        const i128 c1 = c;
        i128 hs = 8 * a1 * c1 - 3 * b1 * b1;
        i128 N = 48 * I1 * a1 * a1 * hs - hs * hs * hs - 64 * J1 * a1 * a1 * a1;
        if (N < 0 || N % 27 != 0) continue;
        i128 R;
        if (!is_square128(N / 27, &R)) continue;
        for (int sgn = 0; sgn < (R == 0 ? 1 : 2); ++sgn) {
          i128 r = sgn ? -R : R;
          i128 num = r - b1 * b1 * b1 + 4 * a1 * b1 * c1, den = 8 * a1 * a1;
          if (num % den != 0) continue;
          i128 d = num / den;
          i128 num2 = I1 - c1 * c1 + 3 * b1 * d;
          if (num2 % (12 * a1) != 0) continue;
          i128 e = num2 / (12 * a1);
          if (!j_matches(a1, b1, c1, d, e, J1)) continue;
          hits.insert(QuarticForm{Int(a1), Int(b1), Int(c1), Int(d), Int(e)});
        }
      }
    }
  }
  ll B = static_cast<ll>(std::floor(bd.b0));
  for (ll b = -B; b <= B; ++b) {
    if (b == 0) continue;
    const i128 b1 = b;
    for (ll c = 0; c < 3 * std::llabs(b); ++c) {
      const i128 c1 = c;
      i128 num = c1 * c1 - I1;
      if (num % (3 * b1) != 0) continue;
      i128 d = num / (3 * b1);
      i128 num2 = 9 * b1 * c1 * d - 2 * c1 * c1 * c1 - J1;
      if (num2 % (27 * b1 * b1) != 0) continue;
      i128 e = num2 / (27 * b1 * b1);
      if (-3 * b1 * d + c1 * c1 != I1 || !j_matches(0, b1, c1, d, e, J1)) continue;
      hits.insert(QuarticForm{Int(0), Int(b1), Int(c1), Int(d), Int(e)});
    }
  }
  return hits;
}

QuarticClass describe(const QuarticForm& canonical) {
  QuarticClass q;
  auto c = canonical_form(canonical, true);
  q.form = c.form;
  q.stabilizer = c.stabilizer;
  q.type = root_type(c.form);
  q.reducible = !is_irreducible_q(c.form);
  return q;
}

std::vector<QuarticForm> canonical_list(const InvariantPair& inv, const BoxConstants& box) {
  FiberBounds bd;
  bool any = false;
  for (RootType t : {RootType::FourReal, RootType::TwoReal, RootType::NoneRealPositive, RootType::NoneRealNegative}) {
    auto b = fiber_bounds(inv, t, box);
    if (!b) continue;
    any = true;
    bd.a = std::max(bd.a, b->a);
    bd.hs = std::max(bd.hs, b->hs);
    bd.b0 = std::max(bd.b0, b->b0);
  }
  if (!any) throw std::logic_error("classes_with_invariants: no real type");
  std::set<QuarticForm> canon;
  for (const auto& f : box_members(inv.I.to_ll(), inv.J.to_ll(), bd)) canon.insert(canonical_form(f).form);
  return {canon.begin(), canon.end()};
}

void check_fiber(const InvariantPair& inv) {
  if (!is_eligible(inv)) throw std::invalid_argument("classes_with_invariants: ineligible pair " + inv.str());
  if (inv.disc_numerator().is_zero()) throw std::invalid_argument("classes_with_invariants: zero discriminant " + inv.str());
}

std::vector<QuarticForm> certified_list(const InvariantPair& inv, const BoxConstants& box, bool certify) {
  auto forms = canonical_list(inv, box);
  if (certify && certification_sampled(inv)) {
    BoxConstants big = box;
    big.scale *= 1.5;
    if (canonical_list(inv, big) != forms)
      throw std::runtime_error("search-region certification failed at " + inv.str());
  }
  return forms;
}

}  // namespace

bool certification_sampled(const InvariantPair& inv) { return fnv1a(inv.str()) % 100 == 0; }

std::vector<QuarticForm> fiber_forms(const InvariantPair& inv, const BoxConstants& box, bool certify, ClassCache* cache) {
  check_fiber(inv);
  if (const auto* hit = cache ? cache->find(inv) : nullptr) return *hit;
  auto forms = certified_list(inv, box, certify);
  if (cache) cache->put(inv, forms);
  return forms;
}

std::vector<QuarticClass> classes_with_invariants(const InvariantPair& inv, const BoxConstants& box) {
  check_fiber(inv);
  std::vector<QuarticClass> out;
  for (const auto& f : canonical_list(inv, box)) out.push_back(describe(f));
  return out;
}

// --- cache --------------------------------------------------------------------------

std::string cache_serialize(const BoxConstants& box, const std::map<InvariantPair, std::vector<QuarticForm>>& recs) {
  std::string body;
  for (const auto& [inv, forms] : recs) {
    body += inv.I.str() + " " + inv.J.str() + " | " + std::to_string(forms.size()) + " | ";
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (i) body += ';';
      body += forms[i].str();
    }
    body += '\n';
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  return "bqf-cache 1\nbox " + box.key() + "\nchecksum " + hex + "\n" + body;
}

std::map<InvariantPair, std::vector<QuarticForm>> cache_parse(const std::string& text, const BoxConstants& box) {
  std::istringstream in(text);
  std::string line;
  auto fail = [](const std::string& why) { throw std::runtime_error("cache corrupt: " + why); };
  if (!std::getline(in, line) || line != "bqf-cache 1") fail("bad header");
  if (!std::getline(in, line) || line != "box " + box.key()) fail("box constants differ");
  if (!std::getline(in, line) || line.rfind("checksum ", 0) != 0) fail("missing checksum");
  std::string want = line.substr(9);
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(body)));
  if (want != hex) fail("checksum mismatch");
  std::map<InvariantPair, std::vector<QuarticForm>> out;
  std::istringstream bs(body);
  while (std::getline(bs, line)) {
    auto p1 = line.find(" | "), p2 = line.find(" | ", p1 + 3);
    if (p1 == std::string::npos || p2 == std::string::npos) fail("bad record");
    std::istringstream ij(line.substr(0, p1));
    std::string si, sj;
    ij >> si >> sj;
    InvariantPair inv{Int::parse(si), Int::parse(sj)};
    std::size_t count = std::stoul(line.substr(p1 + 3, p2 - p1 - 3));
    std::vector<QuarticForm> forms;
    std::string rest = line.substr(p2 + 3);
    std::istringstream fs(rest);
    std::string item;
    while (std::getline(fs, item, ';')) {
      if (item.empty()) continue;
      std::array<Int, 5> c;
      std::istringstream cs(item);
      std::string num;
      for (int k = 0; k < 5; ++k) {
        if (!std::getline(cs, num, ',')) fail("bad form");
        c[static_cast<std::size_t>(k)] = Int::parse(num);
      }
      forms.push_back(QuarticForm::from(c));
    }
    if (forms.size() != count) fail("count mismatch");
    out.emplace(inv, std::move(forms));
  }
  return out;
}

ClassCache::ClassCache(std::string dir, BoxConstants box) : dir_(std::move(dir)), box_(box) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(box_.key())));
  path_ = dir_ + "/classes-" + hex + ".cache";
}

void ClassCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  records_ = cache_parse(text, box_);
  dirty_ = false;
}

void ClassCache::save() const {
  std::filesystem::create_directories(dir_);
  std::string tmp = path_ + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << cache_serialize(box_, records_);
    if (!out) throw std::runtime_error("cannot write cache " + tmp);
  }
  std::filesystem::rename(tmp, path_);
}

const std::vector<QuarticForm>* ClassCache::find(const InvariantPair& inv) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto it = records_.find(inv);
  return it == records_.end() ? nullptr : &it->second;
}

void ClassCache::put(const InvariantPair& inv, std::vector<QuarticForm> forms) {
  std::lock_guard<std::mutex> lock(*mu_);
  records_[inv] = std::move(forms);
  dirty_ = true;
}

// --- counting ------------------------------------------------------------------------

namespace {

std::vector<InvariantPair> nondegenerate_pairs(const Int& X) {
  auto pos = eligible_pairs(X, DiscSign::Positive), neg = eligible_pairs(X, DiscSign::Negative);
  pos.insert(pos.end(), neg.begin(), neg.end());
  std::sort(pos.begin(), pos.end());
  return pos;
}

}  // namespace

ClassCount count_quartic_classes(const Int& X, const CountOptions& opt) {
  auto pairs = nondegenerate_pairs(X);
  std::vector<std::vector<QuarticClass>> lists(pairs.size());
  std::vector<char> fresh(pairs.size(), 0);
  std::vector<std::vector<QuarticForm>> fresh_forms(pairs.size());
  detail::parallel_for(pairs.size(), opt.threads, [&](std::size_t i) {
    const auto& inv = pairs[i];
    std::vector<QuarticForm> forms;
    if (const auto* hit = opt.cache ? opt.cache->find(inv) : nullptr) {
      forms = *hit;
    } else {
      forms = certified_list(inv, opt.box, opt.certify);
      fresh[i] = 1;
      fresh_forms[i] = forms;
    }
    for (const auto& f : forms) lists[i].push_back(describe(f));
  });
  if (opt.cache)
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (fresh[i]) opt.cache->put(pairs[i], std::move(fresh_forms[i]));

  ClassCount out;
  out.fibers = static_cast<long long>(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    FiberCount fc{pairs[i], {}, 0, 0, 0};
    for (const auto& q : lists[i]) {
      ++out.all_classes;
      if (q.reducible) {
        ++fc.reducible;
        if (!has_rational_linear_factor(q.form)) ++fc.reducible_no_linear;
        continue;
      }
      if (q.stabilizer > 2) ++fc.big_stabilizer;
      if (opt.root_type && q.type != *opt.root_type) continue;
      if (opt.filter == ClassFilter::StronglyMaximal && !is_strongly_maximal_quartic_everywhere(q.form)) continue;
      if (opt.predicate && !opt.predicate(q.form)) continue;
      auto k = static_cast<std::size_t>(q.type);
      ++fc.by_type[k];
      ++out.by_type[k];
      ++out.total;
      Rational w(2, q.stabilizer);
      out.weighted_by_type[k] += w;
      out.weighted_total += w;
    }
    out.reducible += fc.reducible;
    out.reducible_no_linear += fc.reducible_no_linear;
    out.big_stabilizer += fc.big_stabilizer;
    out.irreducible += static_cast<long long>(lists[i].size()) - fc.reducible;
    out.breakdown.push_back(fc);
  }
  return out;
}

// --- n-monogenized cubics --------------------------------------------------------------

namespace {

// does x^3 + B x^2 + C x + D have an integer root
bool monic_integer_root(i128 B, i128 C, i128 D) {
  if (D == 0) return true;
  auto val = [&](i128 r) { return ((r + B) * r + C) * r + D; };
  auto z = poly_roots({1.0L, static_cast<long double>(B), static_cast<long double>(C), static_cast<long double>(D)});
  for (const auto& w : z) {
    if (std::fabs(w.imag()) > 1e-3L * (1 + std::fabs(w.real()))) continue;
    long double x = std::round(w.real());
    for (i128 r = static_cast<i128>(x) - 1; r <= static_cast<i128>(x) + 1; ++r)
      if (val(r) == 0) return true;
  }
  return false;
}

}  // namespace

NMonoCount n_monogenized_cubic_count(const Int& X, double delta) {
  if (!(delta > 0) || delta > 0.25) throw std::invalid_argument("n_monogenized_cubic_count: delta must lie in (0, 1/4]");
  NMonoCount out;
  long double Xl = X.to_ld();
  for (ll n = 1;; ++n) {
    // n < X^delta
    if (std::log(static_cast<long double>(n)) >= delta * std::log(Xl)) break;
    out.max_n = n;
    Int bound = Int(n) * Int(n) * X;  // max(|P|^3, Q^2/4) < n^2 X
    ll pmax = icbrt_floor(bound - Int(1)).to_ll();
    ll qmax = isqrt(Int(4) * bound - Int(1)).to_ll();
    ll pos = 0, neg = 0;
    const i128 n1 = n;
    for (ll b = 0; b < 3 * n; ++b) {
      const i128 b1 = b;
      // P = b^2 - 3nc in [-pmax, pmax]
      ll clo = -floor_div_ll(pmax - b * b, 3 * n);  // ceil((b^2 - pmax) / 3n)
      ll chi = floor_div_ll(b * b + pmax, 3 * n);
      for (ll c = clo; c <= chi; ++c) {
        const i128 c1 = c;
        i128 base = -2 * b1 * b1 * b1 + 9 * n1 * b1 * c1;  // Q = base - 27 n^2 d
        i128 m = 27 * n1 * n1;
        // |base - m d| <= qmax
        i128 dlo = base - qmax, dhi = base + qmax;
        ll d0 = static_cast<ll>(-floor_div_ll(static_cast<ll>(-dlo), static_cast<ll>(m)));
        ll d1 = floor_div_ll(static_cast<ll>(dhi), static_cast<ll>(m));
        for (ll d = d0; d <= d1; ++d) {
          const i128 dd = d;
          i128 P = b1 * b1 - 3 * n1 * c1, Q = base - m * dd;
          i128 disc4 = 4 * P * P * P - Q * Q;  // 27 disc
          if (disc4 == 0) continue;
          if (monic_integer_root(b1, n1 * c1, n1 * n1 * dd)) continue;
          (disc4 > 0 ? pos : neg)++;
        }
      }
    }
    out.positive += pos;
    out.negative += neg;
    out.per_n.emplace_back(pos, neg);
  }
  return out;
}

// --- congruence conditions ----------------------------------------------------------------

CongruenceResult congruence_count(const Int& X, const std::vector<CoefficientCondition>& conds,
                                  const std::function<bool(const CubicForm&)>& predicate) {
  CongruenceResult r;
  for (DiscSign s : {DiscSign::Positive, DiscSign::Negative})
    for (const auto& m : monic_cubic_classes(X, s)) {
      if (!m.irreducible) continue;
      ++r.total;
      std::array<Int, 4> c = {m.form.a, m.form.b, m.form.c, m.form.d};
      bool ok = true;
      for (const auto& k : conds) {
        if (k.index < 0 || k.index > 3 || k.modulus < 1) throw std::invalid_argument("congruence_count: bad condition");
        ok = ok && mod(c[static_cast<std::size_t>(k.index)] - Int(k.residue), Int(k.modulus)).is_zero();
      }
      if (ok && predicate) ok = predicate(m.form);
      r.passing += ok;
    }
  return r;
}

// --- decay ----------------------------------------------------------------------------------

std::vector<DecayRow> decay_diagnostics(const std::vector<Int>& ladder, int threads, ClassCache* cache) {
  std::vector<DecayRow> rows;
  for (const auto& X : ladder) {
    DecayRow row;
    row.X = X;
    ll red = 0, all = 0;
    for (DiscSign s : {DiscSign::Positive, DiscSign::Negative})
      for (const auto& m : monic_cubic_classes(X, s)) {
        ++all;
        red += !m.irreducible;
      }
    row.monic_reducible = all ? static_cast<double>(red) / static_cast<double>(all) : 0.0;
    row.monic_all = all;
    row.monic_reducible_count = red;
    CountOptions opt;
    opt.threads = threads;
    opt.cache = cache;
    auto cc = count_quartic_classes(X, opt);
    if (cc.all_classes) {
      row.quartic_reducible = static_cast<double>(cc.reducible_no_linear) / static_cast<double>(cc.all_classes);
      row.quartic_linear = static_cast<double>(cc.reducible - cc.reducible_no_linear) / static_cast<double>(cc.all_classes);
    }
    row.quartic_all = cc.all_classes;
    row.quartic_reducible_count = cc.reducible_no_linear;
    row.quartic_linear_count = cc.reducible - cc.reducible_no_linear;
    row.irreducible = cc.irreducible;
    row.big_stabilizer_count = cc.big_stabilizer;
    if (cc.irreducible) row.big_stabilizer = static_cast<double>(cc.big_stabilizer) / static_cast<double>(cc.irreducible);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bqf
