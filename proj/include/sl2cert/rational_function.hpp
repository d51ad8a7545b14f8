#pragma once

#include <string>
#include <vector>

#include "sl2cert/polynomial.hpp"

namespace sl2cert {

/// Quotient of integer polynomials in canonical form: coprime numerator and
/// denominator, denominator with positive leading coefficient, and 0 = 0/1.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(implicit)
  RationalFunction(long long c) : num_(c), den_(1) {}          // NOLINT(implicit)
  /// Canonicalizes num/den. Throws DivisionByZero when den = 0.
  RationalFunction(const Polynomial& num, const Polynomial& den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction inv() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  struct Raw {};
  RationalFunction(Polynomial num, Polynomial den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_;
  Polynomial den_;
};

}  // namespace sl2cert
