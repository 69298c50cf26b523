#include "bqf/rational.hpp"

namespace bqf {

Rational::Rational(const Int& n, const Int& d) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  Int g = gcd(n, d);
  if (g.is_zero()) g = 1;
  num_ = n / g;
  den_ = d / g;
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

std::string Rational::str() const { return is_integer() ? num_.str() : num_.str() + "/" + den_.str(); }

Rational Rational::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(Int::parse(s));
  return Rational(Int::parse(s.substr(0, slash)), Int::parse(s.substr(slash + 1)));
}

Rational operator+(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) return Rational(x.num_ + y.num_, x.den_);
  return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}
Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
Rational operator*(const Rational& x, const Rational& y) { return Rational(x.num_ * y.num_, x.den_ * y.den_); }
Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_.is_zero()) throw std::domain_error("division by zero rational");
  return Rational(x.num_ * y.den_, x.den_ * y.num_);
}

Rational pow(const Rational& x, int k) {
  if (k < 0) return Rational(1) / pow(x, -k);
  return Rational(pow(x.num(), static_cast<unsigned>(k)), pow(x.den(), static_cast<unsigned>(k)));
}

}  // namespace bqf
