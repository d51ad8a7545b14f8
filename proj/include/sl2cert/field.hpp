#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl2cert/polynomial.hpp"
#include "sl2cert/rational_function.hpp"

namespace sl2cert {

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

/// Q(x1,...,xn), optionally extended by one theta with theta^2 = p*theta + q.
///
/// Towers are immutable. Two towers are compatible when they are structurally
/// identical (same indeterminates in the same order and the same extension).
class FieldTower {
 public:
  struct Extension {
    std::string name;
    RationalFunction p;
    RationalFunction q;
  };

  /// Throws InvalidSpec on duplicate names, ReducibleExtension when the
  /// discriminant p^2 + 4q is a square in the base field.
  static TowerPtr make(std::vector<std::string> indeterminates, std::optional<Extension> ext = std::nullopt);
  static TowerPtr rationals() { return make({}); }

  const std::vector<std::string>& indeterminates() const { return names_; }
  int index_of(const std::string& name) const;
  int size() const { return static_cast<int>(names_.size()); }
  bool has_extension() const { return ext_.has_value(); }
  const Extension& extension() const { return *ext_; }
  /// Name of indeterminate or the extension generator.
  bool has_symbol(const std::string& name) const;

  /// Integer-polynomial form p = P/E, q = Q/E with a shared denominator E.
  const Polynomial& ext_P() const { return P_; }
  const Polynomial& ext_Q() const { return Q_; }
  const Polynomial& ext_E() const { return E_; }

  /// Same base plus new indeterminates appended (names must be fresh).
  TowerPtr with_indeterminates(const std::vector<std::string>& extra) const;
  /// Adds the quadratic extension; UnsupportedTower if one already exists.
  TowerPtr with_extension(const std::string& name, const RationalFunction& p, const RationalFunction& q) const;

  /// Deterministic identifier derived from the structure.
  const std::string& id() const { return id_; }
  bool same_as(const FieldTower& o) const { return this == &o || id_ == o.id_; }
  std::string describe() const;

 private:
  FieldTower() = default;
  std::vector<std::string> names_;
  std::optional<Extension> ext_;
  Polynomial P_, Q_, E_;
  std::string id_;
};

/// An element (A + B*theta)/D of a tower, stored with one common denominator.
///
/// Canonical form: gcd(A, B, D) = 1 and D has positive leading coefficient,
/// so structural equality is field equality.
class FieldElement {
 public:
  FieldElement() = default;  // detached zero; only for containers
  explicit FieldElement(TowerPtr tower);
  FieldElement(TowerPtr tower, const Integer& c);
  FieldElement(TowerPtr tower, const Polynomial& a);
  FieldElement(TowerPtr tower, const RationalFunction& a, const RationalFunction& b = RationalFunction());
  /// Raw constructor; canonicalizes.
  static FieldElement from_parts(TowerPtr tower, Polynomial A, Polynomial B, Polynomial D);

  static FieldElement indeterminate(const TowerPtr& tower, const std::string& name);
  static FieldElement theta(const TowerPtr& tower);
  static FieldElement rational(const TowerPtr& tower, long long num, long long den = 1);

  const TowerPtr& tower() const { return tower_; }
  const Polynomial& A() const { return A_; }
  const Polynomial& B() const { return B_; }
  const Polynomial& D() const { return D_; }
  RationalFunction a() const;
  RationalFunction b() const;

  bool is_zero() const { return A_.is_zero() && B_.is_zero(); }
  bool is_one() const { return B_.is_zero() && A_.is_one() && D_.is_one(); }
  bool is_minus_one() const;
  /// True iff the element lies in Q (no indeterminate, no theta part).
  bool is_rational_constant() const { return B_.is_zero() && A_.is_constant() && D_.is_constant(); }
  bool in_base() const { return B_.is_zero(); }
  uint32_t support() const { return A_.support() | B_.support() | D_.support(); }

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& u, const FieldElement& v);
  friend FieldElement operator-(const FieldElement& u, const FieldElement& v);
  friend FieldElement operator*(const FieldElement& u, const FieldElement& v);
  friend FieldElement operator/(const FieldElement& u, const FieldElement& v);
  FieldElement& operator+=(const FieldElement& v) { return *this = *this + v; }
  FieldElement& operator-=(const FieldElement& v) { return *this = *this - v; }
  FieldElement& operator*=(const FieldElement& v) { return *this = *this * v; }
  FieldElement inv() const;
  FieldElement pow(long long e) const;
  FieldElement scaled(const Integer& c) const;
  FieldElement operator+(long long c) const;
  FieldElement operator-(long long c) const;
  FieldElement operator*(long long c) const { return scaled(Integer(c)); }

  /// Galois conjugate theta -> p - theta.
  FieldElement conjugate() const;
  /// Norm to the base field: u * conjugate(u).
  FieldElement norm() const;

  friend bool operator==(const FieldElement& u, const FieldElement& v);
  friend bool operator!=(const FieldElement& u, const FieldElement& v) { return !(u == v); }
  size_t hash() const;

  std::string to_string() const;

  /// Moves the element into a structurally larger tower with the same
  /// extension, matching indeterminates by name.
  FieldElement embed(const TowerPtr& target) const;

  /// Laurent expansion in the indeterminate `var`: exponent -> coefficient
  /// free of var. Throws PreconditionFailed when D is not var^k * (var-free).
  std::map<int, FieldElement> laurent_coefficients(int var) const;

 private:
  void canonicalize();
  void check_same(const FieldElement& v) const;
  TowerPtr tower_;
  Polynomial A_, B_, D_{1};
};

/// Ring homomorphism on indeterminates (and optionally theta), by name.
/// Unmapped indeterminates go to the same-named indeterminate of `target`;
/// theta goes to target theta unless the extension name is mapped.
using Substitution = std::map<std::string, FieldElement>;
FieldElement substitute(const FieldElement& u, const Substitution& sigma, const TowerPtr& target);

/// Numerical evaluation (test oracle only). `branch` is the value of theta.
std::complex<double> evaluate_numeric(const FieldElement& u,
                                      const std::map<std::string, std::complex<double>>& point,
                                      std::complex<double> branch = {0.0, 0.0});

/// Throws TowerMismatch when the towers differ.
void require_same_tower(const TowerPtr& a, const TowerPtr& b);

}  // namespace sl2cert
