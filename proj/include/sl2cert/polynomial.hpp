#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sl2cert/integer.hpp"

namespace sl2cert {

/// Maximum number of indeterminates a single tower can carry.
inline constexpr int kMaxVars = 11;

/// Exponent vector packed into three words so that graded-lexicographic
/// comparison is a plain lexicographic comparison of the words.
///
/// Layout: w[0] = [total degree | e0 | e1 | e2], w[1] = [e3..e6],
/// w[2] = [e7..e10], 16 bits per field. Variable 0 is the largest.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(int var, unsigned exp = 1);

  unsigned degree() const { return static_cast<unsigned>(w_[0] >> 48); }
  unsigned exp(int var) const {
    auto [word, shift] = slot(var);
    return static_cast<unsigned>((w_[word] >> shift) & 0xffffU);
  }
  void set_exp(int var, unsigned e);
  bool is_one() const { return w_[0] == 0 && w_[1] == 0 && w_[2] == 0; }
  /// Bit i set iff variable i has positive exponent.
  uint32_t support() const;

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // *this | o
  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);
  /// Removes the variable (exponent set to 0).
  Monomial without(int var) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.w_ == b.w_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.w_ != b.w_; }
  /// Graded lexicographic order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.w_ < b.w_; }
  friend bool operator>(const Monomial& a, const Monomial& b) { return b.w_ < a.w_; }

  size_t hash() const;

 private:
  static std::pair<int, int> slot(int var) {
    if (var < 3) return {0, 32 - 16 * var};
    int j = var - 3;
    return {1 + j / 4, 48 - 16 * (j % 4)};
  }
  std::array<uint64_t, 3> w_{};
};

struct Term {
  Monomial mono;
  Integer coef;
};

/// Sparse multivariate polynomial over the integers.
///
/// Terms are kept strictly decreasing in grlex order with nonzero
/// coefficients, so structural equality is polynomial equality.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Integer& c);  // NOLINT(implicit)
  Polynomial(long long c) : Polynomial(Integer(c)) {}  // NOLINT(implicit)
  Polynomial(int c) : Polynomial(Integer(c)) {}        // NOLINT(implicit)

  static Polynomial variable(int var);
  static Polynomial monomial(const Monomial& m, const Integer& c);
  /// Builds from arbitrary (possibly unsorted, duplicated) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef.is_one(); }
  bool is_term() const { return terms_.size() == 1; }
  /// Constant value; requires is_constant().
  Integer constant_value() const { return terms_.empty() ? Integer(0) : terms_[0].coef; }

  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }
  int sign() const { return terms_.empty() ? 0 : terms_.front().coef.sign(); }
  unsigned total_degree() const;
  uint32_t support() const;
  int degree_in(int var) const;
  int min_degree_in(int var) const;

  /// Positive gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;
  /// Componentwise minimum of the exponent vectors.
  Monomial monomial_content() const;
  Integer max_norm() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial scaled(const Integer& c) const;
  Polynomial times_monomial(const Monomial& m, const Integer& c) const;
  Polynomial pow(unsigned e) const;

  /// Exact division by an integer that divides every coefficient.
  Polynomial divexact_integer(const Integer& c) const;
  /// Exact division by a monomial dividing every term.
  Polynomial divexact_monomial(const Monomial& m) const;
  /// Quotient when b divides *this exactly, nullopt otherwise.
  std::optional<Polynomial> try_divide(const Polynomial& b) const;
  /// Exact quotient; throws DivisionByZero / std::logic_error when not exact.
  Polynomial divexact(const Polynomial& b) const;

  /// Coefficient of var^k as a polynomial in the remaining variables.
  Polynomial coeff_in(int var, int k) const;
  /// Every nonzero coefficient with respect to var, highest degree first.
  std::vector<std::pair<int, Polynomial>> decompose_in(int var) const;
  Polynomial eval_var(int var, const Integer& value) const;
  /// Renames variables: old index i becomes map[i].
  Polynomial remap(const std::vector<int>& map) const;
  /// Replaces var^2 by p*var + q (p, q free of var) until deg_var < 2.
  Polynomial reduce_monic_quadratic(int var, const Polynomial& p, const Polynomial& q) const;

  /// Exact square root, if the polynomial is a perfect square.
  std::optional<Polynomial> sqrt() const;

  uint64_t eval_mod(const std::vector<uint64_t>& point, uint64_t prime) const;
  std::complex<double> eval_numeric(const std::vector<std::complex<double>>& point) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  size_t hash() const;

  /// Human-readable form, e.g. "x^2*z - 3*x + 1".
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor with positive leading coefficient (0 if both are 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd together with the cofactors a/g and b/g.
struct GcdResult {
  Polynomial g, a_over_g, b_over_g;
};
GcdResult gcd_cofactors(const Polynomial& a, const Polynomial& b);

/// Pseudo-remainder of a by b with respect to var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var);

namespace detail {
/// Primitive-PRS gcd; used as the heuristic gcd fallback and in tests as an oracle.
Polynomial prs_gcd(const Polynomial& a, const Polynomial& b);
}  // namespace detail

}  // namespace sl2cert
