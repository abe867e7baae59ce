#include "taugame/rational.hpp"

#include <stdexcept>

namespace taugame {

namespace {

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce();
  return *this;
}

Rational Rational::pow(const Rational& base, unsigned long exp) {
  Rational acc(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

std::string Rational::str() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("rationals must be p/q, got \"" + std::string(text) + "\"");
  };
  if (text.empty()) fail();
  std::size_t slash = text.find('/');
  auto check_int = [&](std::string_view part) {
    if (part.empty()) fail();
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) fail();
    for (std::size_t i = start; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') fail();
  };
  if (slash == std::string_view::npos) {
    check_int(text);
    return Rational(BigInt(std::string(text)));
  }
  std::string_view p = text.substr(0, slash);
  std::string_view q = text.substr(slash + 1);
  check_int(p);
  check_int(q);
  return Rational(BigInt(std::string(p)), BigInt(std::string(q)));
}

}  // namespace taugame
