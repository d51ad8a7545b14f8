#include "sl2cert/rational_function.hpp"

#include "sl2cert/errors.hpp"

namespace sl2cert {

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial(0);
    den_ = Polynomial(1);
    return;
  }
  GcdResult r = gcd_cofactors(num, den);
  num_ = std::move(r.a_over_g);
  den_ = std::move(r.b_over_g);
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(-num_, den_, Raw{}); }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  GcdResult g = gcd_cofactors(a.den_, b.den_);
  Polynomial num = a.num_ * g.b_over_g + b.num_ * g.a_over_g;
  if (g.g.is_one()) return RationalFunction(std::move(num), a.den_ * b.den_, RationalFunction::Raw{});
  // Any common factor of the sum with the denominator divides g.
  GcdResult h = gcd_cofactors(num, g.g);
  Polynomial den = g.a_over_g * b.den_;
  den = den.divexact(h.g);
  return RationalFunction(std::move(h.a_over_g), std::move(den), RationalFunction::Raw{});
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  GcdResult g1 = gcd_cofactors(a.num_, b.den_);
  GcdResult g2 = gcd_cofactors(b.num_, a.den_);
  return RationalFunction(g1.a_over_g * g2.a_over_g, g2.b_over_g * g1.b_over_g, RationalFunction::Raw{});
}

RationalFunction RationalFunction::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  if (num_.sign() < 0) return RationalFunction(-den_, -num_, Raw{});
  return RationalFunction(den_, num_, Raw{});
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inv(); }

std::string RationalFunction::to_string(const std::vector<std::string>& names) const {
  if (den_.is_one()) return num_.to_string(names);
  std::string n = num_.to_string(names);
  std::string d = den_.to_string(names);
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace sl2cert
