#pragma once
// Exact integers: a 128-bit fast path that silently widens to cpp_int when a
// result leaves the signed 127-bit range.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace bqf {

using i128 = __int128;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

class Int {
 public:
  Int() noexcept : v_(0) {}
  template <class T>
    requires std::is_integral_v<T>
  Int(T x) noexcept : v_(static_cast<i128>(x)) {}
  explicit Int(const BigInt& b);

  static Int parse(std::string_view s);
  std::string str() const;

  bool is_small() const noexcept { return !big_; }
  i128 small() const noexcept { return v_; }  // only meaningful if is_small()
  BigInt big() const;
  long long to_ll() const;  // throws std::overflow_error
  long double to_ld() const;
  double to_double() const { return static_cast<double>(to_ld()); }

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && v_ == 0; }
  bool is_odd() const;

  Int operator-() const;
  Int& operator+=(const Int& o) { return *this = *this + o; }
  Int& operator-=(const Int& o) { return *this = *this - o; }
  Int& operator*=(const Int& o) { return *this = *this * o; }
  Int& operator/=(const Int& o) { return *this = *this / o; }
  Int& operator%=(const Int& o) { return *this = *this % o; }

  friend Int operator+(const Int& x, const Int& y);
  friend Int operator-(const Int& x, const Int& y);
  friend Int operator*(const Int& x, const Int& y);
  // truncating, like the builtin operators
  friend Int operator/(const Int& x, const Int& y);
  friend Int operator%(const Int& x, const Int& y);

  friend bool operator==(const Int& x, const Int& y);
  friend std::strong_ordering operator<=>(const Int& x, const Int& y);

  std::size_t hash() const noexcept;

 private:
  i128 v_;
  std::shared_ptr<const BigInt> big_;
  static Int from_big(BigInt&& b);
};

inline constexpr i128 kSmallMax = ~(static_cast<i128>(1) << 127);

inline Int operator+(const Int& x, const Int& y) {
  if (!x.big_ && !y.big_) {
    i128 r;
    if (!__builtin_add_overflow(x.v_, y.v_, &r) && r != -kSmallMax - 1) return Int(r);
  }
  return Int::from_big(x.big() + y.big());
}
inline Int operator-(const Int& x, const Int& y) {
  if (!x.big_ && !y.big_) {
    i128 r;
    if (!__builtin_sub_overflow(x.v_, y.v_, &r) && r != -kSmallMax - 1) return Int(r);
  }
  return Int::from_big(x.big() - y.big());
}
inline Int operator*(const Int& x, const Int& y) {
  if (!x.big_ && !y.big_) {
    i128 r;
    if (!__builtin_mul_overflow(x.v_, y.v_, &r) && r != -kSmallMax - 1) return Int(r);
  }
  return Int::from_big(x.big() * y.big());
}
inline Int Int::operator-() const {
  if (!big_) return Int(-v_);
  return from_big(-*big_);
}
inline bool operator==(const Int& x, const Int& y) {
  if (!x.big_ && !y.big_) return x.v_ == y.v_;
  if (x.big_ && y.big_) return *x.big_ == *y.big_;
  return false;  // canonical: small values never stored big
}
inline std::strong_ordering operator<=>(const Int& x, const Int& y) {
  if (!x.big_ && !y.big_) return x.v_ <=> y.v_;
  int c = x.big().compare(y.big());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}
inline int Int::sign() const noexcept {
  if (!big_) return v_ > 0 ? 1 : (v_ < 0 ? -1 : 0);
  return big_->sign();
}

std::string to_string(i128 v);

// --- elementary number theory -------------------------------------------
Int abs(const Int& x);
Int gcd(const Int& x, const Int& y);
Int pow(const Int& x, unsigned k);
Int floor_div(const Int& x, const Int& y);
Int ceil_div(const Int& x, const Int& y);
Int mod(const Int& x, const Int& m);  // result in [0, |m|)
// exact division; throws std::logic_error when y does not divide x
Int exact_div(const Int& x, const Int& y);
bool divides(const Int& d, const Int& x);
Int isqrt(const Int& n);  // floor(sqrt(n)), n >= 0
bool is_square(const Int& n, Int* root = nullptr);
Int icbrt_floor(const Int& n);  // floor of real cube root, any sign
int valuation(const Int& n, const Int& p);  // n != 0

bool is_prime(const Int& n);
// prime factorization of |n| (n != 0), primes ascending
std::vector<std::pair<Int, int>> factorize(const Int& n);
std::vector<Int> prime_divisors(const Int& n);
std::vector<long long> primes_up_to(long long n);

// i128 helpers for hot loops
inline i128 abs128(i128 x) { return x < 0 ? -x : x; }
bool is_square128(i128 n, i128* root);

}  // namespace bqf

template <>
struct std::hash<bqf::Int> {
  std::size_t operator()(const bqf::Int& x) const noexcept { return x.hash(); }
};
