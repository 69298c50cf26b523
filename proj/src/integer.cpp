#include "bqf/integer.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace bqf {

namespace {

BigInt to_big128(i128 v) {
  bool neg = v < 0;
  u128 m = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  BigInt b = static_cast<std::uint64_t>(m >> 64);
  b <<= 64;
  b += static_cast<std::uint64_t>(m);
  return neg ? BigInt(-b) : b;
}

const BigInt& big_small_max() {
  static const BigInt m = to_big128(kSmallMax);
  return m;
}

}  // namespace

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 m = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (m) {
    s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Int::Int(const BigInt& b) : v_(0) { *this = from_big(BigInt(b)); }

Int Int::from_big(BigInt&& b) {
  Int r;
  const BigInt& lim = big_small_max();
  if (b <= lim && b >= -lim) {
    bool neg = b.sign() < 0;
    BigInt m = neg ? BigInt(-b) : b;
    u128 lo = static_cast<std::uint64_t>(m & BigInt(0xFFFFFFFFFFFFFFFFULL));
    u128 hi = static_cast<std::uint64_t>(m >> 64);
    i128 v = static_cast<i128>((hi << 64) | lo);
    r.v_ = neg ? -v : v;
  } else {
    r.big_ = std::make_shared<const BigInt>(std::move(b));
  }
  return r;
}

BigInt Int::big() const { return big_ ? *big_ : to_big128(v_); }

Int Int::parse(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  std::size_t start = i;
  BigInt acc = 0;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) acc = acc * 10 + (s[i] - '0');
  std::size_t stop = i;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (stop == start || i != s.size()) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (neg) acc = -acc;
  return Int(acc);
}

std::string Int::str() const { return big_ ? big_->str() : to_string(v_); }

long long Int::to_ll() const {
  if (big_ || v_ > INT64_MAX || v_ < INT64_MIN) throw std::overflow_error("integer does not fit in 64 bits: " + str());
  return static_cast<long long>(v_);
}

long double Int::to_ld() const {
  if (!big_) return static_cast<long double>(v_);
  return big_->convert_to<long double>();
}

bool Int::is_odd() const {
  if (!big_) return (v_ & 1) != 0;
  return bit_test(*big_, 0);
}

Int operator/(const Int& x, const Int& y) {
  if (y.is_zero()) throw std::domain_error("division by zero");
  if (!x.big_ && !y.big_) return Int(x.v_ / y.v_);
  return Int::from_big(x.big() / y.big());
}
Int operator%(const Int& x, const Int& y) {
  if (y.is_zero()) throw std::domain_error("division by zero");
  if (!x.big_ && !y.big_) return Int(x.v_ % y.v_);
  return Int::from_big(x.big() % y.big());
}

std::size_t Int::hash() const noexcept {
  if (big_) return std::hash<std::string>{}(big_->str());
  u128 u = static_cast<u128>(v_);
  std::uint64_t h = static_cast<std::uint64_t>(u) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(u >> 64) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

Int abs(const Int& x) { return x.sign() < 0 ? -x : x; }

Int gcd(const Int& x, const Int& y) {
  if (x.is_small() && y.is_small()) {
    i128 a = abs128(x.small()), b = abs128(y.small());
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return Int(a);
  }
  return Int(boost::multiprecision::gcd(x.big(), y.big()));
}

Int pow(const Int& x, unsigned k) {
  Int r = 1, b = x;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

Int floor_div(const Int& x, const Int& y) {
  Int q = x / y;
  if ((x % y).sign() != 0 && ((x.sign() < 0) != (y.sign() < 0))) q -= 1;
  return q;
}
Int ceil_div(const Int& x, const Int& y) { return -floor_div(-x, y); }

Int mod(const Int& x, const Int& m) {
  Int r = x % m;
  if (r.sign() < 0) r += abs(m);
  return r;
}

Int exact_div(const Int& x, const Int& y) {
  if (!(x % y).is_zero()) throw std::logic_error("inexact division " + x.str() + " / " + y.str());
  return x / y;
}

bool divides(const Int& d, const Int& x) {
  if (d.is_zero()) return x.is_zero();
  return (x % d).is_zero();
}

Int isqrt(const Int& n) {
  if (n.sign() < 0) throw std::domain_error("isqrt of negative");
  if (n.is_small() && n.small() < (static_cast<i128>(1) << 100)) {
    i128 v = n.small();
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return Int(r);
  }
  return Int(boost::multiprecision::sqrt(n.big()));
}

bool is_square(const Int& n, Int* root) {
  if (n.sign() < 0) return false;
  Int r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

bool is_square128(i128 n, i128* root) {
  if (n < 0) return false;
  // quadratic residue filter mod 64
  static constexpr std::uint64_t kQr64 = [] {
    std::uint64_t m = 0;
    for (unsigned i = 0; i < 64; ++i) m |= 1ULL << ((i * i) & 63);
    return m;
  }();
  if (!((kQr64 >> static_cast<unsigned>(n & 63)) & 1)) return false;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

Int icbrt_floor(const Int& n) {
  if (n.sign() < 0) {
    Int r = -icbrt_floor(-n);
    if (r * r * r != n) r -= 1;
    return r;
  }
  Int r;
  if (!n.is_small() || n.small() > (static_cast<i128>(1) << 90)) {
    // integer Newton from above
    BigInt x = n.big();
    BigInt y = BigInt(1) << (msb(x) / 3 + 1);
    for (;;) {
      BigInt z = (2 * y + x / (y * y)) / 3;
      if (z >= y) break;
      y = z;
    }
    r = Int(y);
  } else {
    r = Int(static_cast<long long>(std::cbrt(static_cast<double>(n.to_ld()))));
  }
  while (r.sign() > 0 && r * r * r > n) r -= 1;
  while ((r + 1) * (r + 1) * (r + 1) <= n) r += 1;
  return r;
}

int valuation(const Int& n, const Int& p) {
  if (n.is_zero()) throw std::domain_error("valuation of zero");
  int v = 0;
  Int m = n;
  while ((m % p).is_zero()) {
    m /= p;
    ++v;
  }
  return v;
}

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

u64 rho_u64(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(n);
  for (;;) {
    u64 c = rng() % (n - 1) + 1, x = rng() % n, y = x, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = rho_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

bool is_prime_big(const BigInt& n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(n, 30);
}

BigInt rho_big(const BigInt& n) {
  if (!bit_test(n, 0)) return 2;
  std::mt19937_64 rng(12345);
  for (;;) {
    BigInt c = BigInt(rng()) % (n - 1) + 1, x = BigInt(rng()) % n, y = x, d = 1;
    auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(BigInt(x > y ? BigInt(x - y) : BigInt(y - x)), n);
    }
    if (d != n) return d;
  }
}

void factor_big(const BigInt& n, std::vector<BigInt>& out) {
  if (n == 1) return;
  if (n <= BigInt(UINT64_MAX)) {
    std::vector<u64> v;
    factor_u64(static_cast<u64>(n), v);
    for (u64 p : v) out.emplace_back(p);
    return;
  }
  if (is_prime_big(n)) {
    out.push_back(n);
    return;
  }
  BigInt d = rho_big(n);
  factor_big(d, out);
  factor_big(n / d, out);
}

}  // namespace

bool is_prime(const Int& n) {
  if (n.sign() <= 0) return false;
  if (n.is_small() && n.small() <= static_cast<i128>(UINT64_MAX)) return is_prime_u64(static_cast<u64>(n.small()));
  return is_prime_big(n.big());
}

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n.is_zero()) throw std::domain_error("factorize(0)");
  Int m = abs(n);
  std::vector<BigInt> ps;
  // strip small primes cheaply
  std::vector<std::pair<Int, int>> res;
  for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 37LL, 41LL, 43LL, 47LL}) {
    int e = 0;
    while ((m % Int(p)).is_zero()) {
      m /= Int(p);
      ++e;
    }
    if (e) res.emplace_back(Int(p), e);
  }
  factor_big(m.big(), ps);
  std::sort(ps.begin(), ps.end());
  for (std::size_t i = 0; i < ps.size();) {
    std::size_t j = i;
    while (j < ps.size() && ps[j] == ps[i]) ++j;
    res.emplace_back(Int(ps[i]), static_cast<int>(j - i));
    i = j;
  }
  std::sort(res.begin(), res.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return res;
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> r;
  for (auto& [p, e] : factorize(n)) r.push_back(p);
  return r;
}

std::vector<long long> primes_up_to(long long n) {
  std::vector<long long> r;
  if (n < 2) return r;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  for (long long i = 2; i <= n; ++i) {
    if (comp[static_cast<std::size_t>(i)]) continue;
    r.push_back(i);
    for (long long j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = true;
  }
  return r;
}

}  // namespace bqf
