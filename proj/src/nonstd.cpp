#include "taugame/nonstd.hpp"

#include <stdexcept>

namespace taugame {

namespace {

int residue_sign(Residue r) {
  switch (r) {
    case Residue::NegInfSmall: return -1;
    case Residue::Zero: return 0;
    case Residue::PosInfSmall: return 1;
  }
  return 0;
}

Residue residue_from_sign(int s) {
  if (s < 0) return Residue::NegInfSmall;
  if (s > 0) return Residue::PosInfSmall;
  return Residue::Zero;
}

}  // namespace

NonStdNum NonStdNum::operator-() const {
  return NonStdNum(-tau_, -unit_, residue_from_sign(-residue_sign(residue_)));
}

NonStdNum& NonStdNum::operator+=(const NonStdNum& o) {
  tau_ += o.tau_;
  unit_ += o.unit_;
  // Opposite-sign residues cancel to zero; magnitudes of infinitesimals are
  // never compared anywhere in the calculus.
  residue_ = residue_from_sign(residue_sign(residue_) + residue_sign(o.residue_));
  return *this;
}

NonStdNum& NonStdNum::operator*=(const Rational& s) {
  tau_ *= s;
  unit_ *= s;
  residue_ = residue_from_sign(residue_sign(residue_) * s.sign());
  return *this;
}

std::string NonStdNum::str() const {
  std::string s = tau_.str() + "*tau ";
  if (unit_.sign() < 0) {
    s += "- " + (-unit_).str();
  } else {
    s += "+ " + unit_.str();
  }
  if (residue_ == Residue::PosInfSmall) s += " +eps";
  if (residue_ == Residue::NegInfSmall) s += " -eps";
  return s;
}

Ordering nsn_cmp(const NonStdNum& x, const NonStdNum& y) {
  if (x.tau_coef() != y.tau_coef())
    return x.tau_coef() < y.tau_coef() ? Ordering::Less : Ordering::Greater;
  if (x.unit_coef() != y.unit_coef())
    return x.unit_coef() < y.unit_coef() ? Ordering::Less : Ordering::Greater;
  int rx = residue_sign(x.residue());
  int ry = residue_sign(y.residue());
  if (rx != ry) return rx < ry ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

const Rational& ExtReal::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("ExtReal: value() on infinity");
  return value_;
}

std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    case Kind::Finite: return value_.str();
  }
  return {};
}

Ordering ext_cmp(const ExtReal& a, const ExtReal& b) {
  auto rank = [](const ExtReal& e) {
    switch (e.kind()) {
      case ExtReal::Kind::NegInf: return -1;
      case ExtReal::Kind::Finite: return 0;
      case ExtReal::Kind::PosInf: return 1;
    }
    return 0;
  };
  int ra = rank(a);
  int rb = rank(b);
  if (ra != rb) return ra < rb ? Ordering::Less : Ordering::Greater;
  if (ra != 0) return Ordering::Equal;
  if (a.value() != b.value()) return a.value() < b.value() ? Ordering::Less : Ordering::Greater;
  return Ordering::Equal;
}

ExtReal collapse(const NonStdNum& x) {
  int s = x.tau_coef().sign();
  if (s > 0) return ExtReal::pos_inf();
  if (s < 0) return ExtReal::neg_inf();
  return ExtReal::finite(x.unit_coef());
}

bool indiscernible(const NonStdNum& x, const NonStdNum& y) {
  return collapse(x) == collapse(y);
}

Rational geometric_sum(const Rational& delta, unsigned long first_exponent, unsigned long count) {
  if (delta.sign() <= 0) throw std::domain_error("geometric_sum: delta must be positive");
  if (count == 0) return Rational(0);
  Rational head = Rational::pow(delta, first_exponent);
  if (delta == Rational(1)) return head * Rational(static_cast<std::int64_t>(count));
  // delta^first * (1 - delta^count) / (1 - delta)
  return head * (Rational(1) - Rational::pow(delta, count)) / (Rational(1) - delta);
}

Rational geometric_tail(const Rational& delta, unsigned long first_exponent) {
  if (delta.sign() <= 0 || delta >= Rational(1)) throw std::domain_error("divergent tail");
  return Rational::pow(delta, first_exponent) / (Rational(1) - delta);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

NonStdNum parse_nonstd(std::string_view text) {
  std::string_view s = trim(text);
  Residue residue = Residue::Zero;
  if (s.size() >= 4 && s.substr(s.size() - 4) == "+eps") {
    residue = Residue::PosInfSmall;
    s = trim(s.substr(0, s.size() - 4));
  } else if (s.size() >= 4 && s.substr(s.size() - 4) == "-eps") {
    residue = Residue::NegInfSmall;
    s = trim(s.substr(0, s.size() - 4));
  }
  std::size_t star = s.find("*tau");
  if (star == std::string_view::npos)
    throw std::invalid_argument("nonstd number must look like \"a*tau + b\"");
  Rational tau_coef = Rational::parse(trim(s.substr(0, star)));
  std::string_view rest = trim(s.substr(star + 4));
  if (rest.empty()) throw std::invalid_argument("nonstd number missing unit part");
  int sign = 0;
  if (rest.front() == '+') sign = 1;
  if (rest.front() == '-') sign = -1;
  if (sign == 0) throw std::invalid_argument("nonstd number missing +/- before unit part");
  Rational unit = Rational::parse(trim(rest.substr(1)));
  if (sign < 0) unit = -unit;
  return NonStdNum(tau_coef, unit, residue);
}

ExtReal parse_extreal(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "-inf") return ExtReal::neg_inf();
  if (s == "+inf" || s == "inf") return ExtReal::pos_inf();
  return ExtReal::finite(Rational::parse(s));
}

}  // namespace taugame
