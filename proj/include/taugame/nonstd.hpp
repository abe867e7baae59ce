#pragma once

#include <string>
#include <string_view>

#include "taugame/rational.hpp"

namespace taugame {

// Signed infinitesimal class. Absorbs everything a huge horizon sends to
// zero inside a monad (q/tau, p(tau)*delta^(c*tau), ...): only the sign
// survives, and collapse discards even that.
enum class Residue { NegInfSmall, Zero, PosInfSmall };

// Symbolic quantity a*tau + b plus an infinitesimal residue, with tau the
// single huge horizon parameter. Coefficients are exact rationals; the
// order is lexicographic (tau part, unit part, residue).
class NonStdNum {
 public:
  NonStdNum() = default;
  NonStdNum(Rational unit) : unit_(std::move(unit)) {}  // NOLINT: implicit by design
  NonStdNum(Rational tau_coef, Rational unit_coef, Residue residue = Residue::Zero)
      : tau_(std::move(tau_coef)), unit_(std::move(unit_coef)), residue_(residue) {}

  static NonStdNum tau(Rational coef = Rational(1)) { return NonStdNum(std::move(coef), Rational(0)); }
  static NonStdNum infinitesimal(Residue r) { return NonStdNum(Rational(0), Rational(0), r); }

  const Rational& tau_coef() const { return tau_; }
  const Rational& unit_coef() const { return unit_; }
  Residue residue() const { return residue_; }
  bool is_huge() const { return tau_.sign() != 0; }

  NonStdNum operator-() const;
  NonStdNum& operator+=(const NonStdNum& o);
  NonStdNum& operator-=(const NonStdNum& o) { return *this += -o; }
  // Scalar multiplication only; tau*tau never occurs in any formula here.
  NonStdNum& operator*=(const Rational& s);

  friend NonStdNum operator+(NonStdNum a, const NonStdNum& b) { return a += b; }
  friend NonStdNum operator-(NonStdNum a, const NonStdNum& b) { return a -= b; }
  friend NonStdNum operator*(NonStdNum a, const Rational& s) { return a *= s; }
  friend NonStdNum operator*(const Rational& s, NonStdNum a) { return a *= s; }

  friend bool operator==(const NonStdNum& a, const NonStdNum& b) {
    return a.tau_ == b.tau_ && a.unit_ == b.unit_ && a.residue_ == b.residue_;
  }
  friend bool operator!=(const NonStdNum& a, const NonStdNum& b) { return !(a == b); }

  std::string str() const;  // "a*tau + b [+eps|-eps]"

 private:
  Rational tau_;
  Rational unit_;
  Residue residue_ = Residue::Zero;
};

enum class Ordering { Less, Equal, Greater };

// Exact lexicographic order: tau part, then unit part, then residue
// (+eps > none > -eps). Total.
Ordering nsn_cmp(const NonStdNum& x, const NonStdNum& y);

// Collapse target of a monad: -inf, an exact finite rational, or +inf.
class ExtReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtReal() : kind_(Kind::Finite) {}
  explicit ExtReal(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
  static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }
  static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
  static ExtReal finite(Rational v) { return ExtReal(std::move(v)); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  // Only valid when finite.
  const Rational& value() const;

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }

  std::string str() const;  // "-inf" | "p/q" | "+inf"

 private:
  explicit ExtReal(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

// NegInf < Finite(q) < PosInf, finite parts by exact value.
Ordering ext_cmp(const ExtReal& a, const ExtReal& b);

// The monad of x: positive tau part is beyond every finite bound, negative
// below every one; otherwise only the unit part survives (the residue is
// indiscernible from 0).
ExtReal collapse(const NonStdNum& x);

// x and y land in the same monad.
bool indiscernible(const NonStdNum& x, const NonStdNum& y);

// Sum_{j=0}^{count-1} delta^(first_exponent+j), exact. Requires delta > 0.
Rational geometric_sum(const Rational& delta, unsigned long first_exponent, unsigned long count);

// delta^first_exponent / (1 - delta), exact. Requires 0 < delta < 1;
// throws std::domain_error("divergent tail") otherwise.
Rational geometric_tail(const Rational& delta, unsigned long first_exponent);

// Inverse of NonStdNum::str(). Throws std::invalid_argument on malformed text.
NonStdNum parse_nonstd(std::string_view text);
// Inverse of ExtReal::str().
ExtReal parse_extreal(std::string_view text);

}  // namespace taugame
