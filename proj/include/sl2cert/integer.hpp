#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmp.h>

namespace sl2cert {

/// Arbitrary-precision integer with an inline 64-bit fast path.
///
/// Values that fit in int64_t never touch the heap; anything larger is held
/// in an mpz_t. The representation is normalized after every operation, so
/// two equal values always share the same storage class.
class Integer {
 public:
  Integer() noexcept : small_(0), big_(nullptr) {}
  Integer(long long v) noexcept : small_(v), big_(nullptr) {}  // NOLINT(implicit)
  Integer(int v) noexcept : small_(v), big_(nullptr) {}        // NOLINT(implicit)
  Integer(long v) noexcept : small_(v), big_(nullptr) {}       // NOLINT(implicit)

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept : small_(other.small_), big_(other.big_) {
    other.big_ = nullptr;
    other.small_ = 0;
  }
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept;
  ~Integer();

  /// Parses an optionally signed decimal string. Throws ParseError.
  static Integer from_string(std::string_view text);

  bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
  bool is_one() const noexcept { return big_ == nullptr && small_ == 1; }
  bool is_small() const noexcept { return big_ == nullptr; }
  int64_t small_value() const noexcept { return small_; }
  int sign() const noexcept;

  Integer operator-() const;
  Integer abs() const;

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator*(const Integer& a, const Integer& b);
  Integer& operator+=(const Integer& b);
  Integer& operator-=(const Integer& b);
  Integer& operator*=(const Integer& b);

  /// this += a * b (no temporary in the big case).
  void add_mul(const Integer& a, const Integer& b);

  /// Exact quotient; the caller guarantees b | a.
  static Integer divexact(const Integer& a, const Integer& b);
  /// Truncating quotient and remainder.
  static void divmod(const Integer& a, const Integer& b, Integer& q, Integer& r);
  bool divisible_by(const Integer& d) const;

  /// Remainder in (-m/2, m/2], m > 0.
  Integer symmetric_mod(const Integer& m) const;

  friend Integer gcd(const Integer& a, const Integer& b);
  Integer pow(unsigned e) const;
  /// Returns r with r*r == *this when *this is a perfect square.
  std::optional<Integer> exact_sqrt() const;
  /// Floor square root of a non-negative value.
  Integer isqrt() const;

  friend int compare(const Integer& a, const Integer& b) noexcept;
  friend bool operator==(const Integer& a, const Integer& b) noexcept {
    return compare(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
    int c = compare(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const;
  double to_double() const;
  size_t bit_length() const;
  size_t hash() const noexcept;
  /// Residue modulo an odd machine-word modulus, in [0, m).
  uint64_t mod_u64(uint64_t m) const;

 private:
  void set_big(mpz_srcptr v);
  void absorb(mpz_t v);  // takes ownership of an initialized mpz, normalizing
  void load(mpz_t out) const;  // initializes out with the value

  int64_t small_;
  __mpz_struct* big_;
};

}  // namespace sl2cert
