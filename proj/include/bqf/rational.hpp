#pragma once
#include "bqf/integer.hpp"

namespace bqf {

// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(const Int& n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  template <class T>
    requires std::is_integral_v<T>
  Rational(T n) : num_(n), den_(1) {}
  Rational(const Int& n, const Int& d);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_integer() const { return den_ == Int(1); }
  int sign() const { return num_.sign(); }
  long double to_ld() const { return num_.to_ld() / den_.to_ld(); }
  double to_double() const { return static_cast<double>(to_ld()); }
  std::string str() const;  // "n/d", or "n" when integral
  static Rational parse(std::string_view s);

  Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& x, const Rational& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    return x.num_ * y.den_ <=> y.num_ * x.den_;
  }

 private:
  struct raw_tag {};
  Rational(Int n, Int d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}
  Int num_, den_;
};

Rational pow(const Rational& x, int k);

}  // namespace bqf
