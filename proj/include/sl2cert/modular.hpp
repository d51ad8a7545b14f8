#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sl2cert/sl2.hpp"

namespace sl2cert {

/// Reduction of a tower modulo the Mersenne prime 2^61 - 1 at a fixed point.
///
/// Elements map to F_p[theta]/(theta^2 - p0*theta - q0). The map is a ring
/// homomorphism on elements whose denominator does not vanish at the point, so
/// a nonzero image proves the exact element is nonzero. A zero image proves
/// nothing; callers fall back to exact arithmetic.
namespace modp {

inline constexpr uint64_t kPrime = (uint64_t{1} << 61) - 1;

uint64_t add(uint64_t a, uint64_t b);
uint64_t sub(uint64_t a, uint64_t b);
uint64_t mul(uint64_t a, uint64_t b);
uint64_t inv(uint64_t a);

struct Elem {
  uint64_t a = 0;
  uint64_t b = 0;
  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const Elem& x, const Elem& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Elem& x, const Elem& y) { return !(x == y); }
};

struct Mat {
  Elem e[4];
};

/// Evaluation point for one tower.
class Context {
 public:
  /// Draws a deterministic point from `seed`, redrawing while the extension
  /// denominator vanishes.
  Context(const TowerPtr& tower, uint64_t seed);

  /// Image of u, or nullopt when its denominator vanishes at the point.
  std::optional<Elem> map(const FieldElement& u) const;
  std::optional<Mat> map(const Mat2& m) const;

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Mat mul(const Mat& x, const Mat& y) const;
  /// Adjugate inverse, valid for determinant-one images.
  Mat inv(const Mat& x) const;
  Mat identity() const;
  Elem trace(const Mat& x) const { return add(x.e[0], x.e[3]); }
  Elem constant(long long c) const;

  bool is_identity(const Mat& m) const;
  bool is_minus_identity(const Mat& m) const;

 private:
  TowerPtr tower_;
  std::vector<uint64_t> point_;
  uint64_t p0_ = 0;
  uint64_t q0_ = 0;
};

/// A MarkedRep reduced at one point; every generator image must map.
class Rep {
 public:
  /// Tries successive seeds until all generator images map. Throws
  /// BoundedCheckFailed if no suitable point is found.
  explicit Rep(const MarkedRep& rep, uint64_t seed = 1);
  Mat word_image(const Word& w) const;
  const Context& context() const { return ctx_; }

 private:
  static Context pick(const MarkedRep& rep, uint64_t& seed);
  uint64_t seed_;
  Context ctx_;
  std::map<Symbol, std::pair<Mat, Mat>> images_;
};

}  // namespace modp
}  // namespace sl2cert
