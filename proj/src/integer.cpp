#include "sl2cert/integer.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>

#include "sl2cert/errors.hpp"

namespace sl2cert {

namespace {

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();

}  // namespace

Integer::Integer(const Integer& other) : small_(other.small_), big_(nullptr) {
  if (other.big_ != nullptr) set_big(other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  if (other.big_ == nullptr) {
    if (big_ != nullptr) {
      mpz_clear(big_);
      delete big_;
      big_ = nullptr;
    }
    small_ = other.small_;
  } else if (big_ != nullptr) {
    mpz_set(big_, other.big_);
  } else {
    set_big(other.big_);
  }
  return *this;
}

Integer& Integer::operator=(Integer&& other) noexcept {
  if (this == &other) return *this;
  if (big_ != nullptr) {
    mpz_clear(big_);
    delete big_;
  }
  small_ = other.small_;
  big_ = other.big_;
  other.big_ = nullptr;
  other.small_ = 0;
  return *this;
}

Integer::~Integer() {
  if (big_ != nullptr) {
    mpz_clear(big_);
    delete big_;
  }
}

void Integer::set_big(mpz_srcptr v) {
  big_ = new __mpz_struct;
  mpz_init_set(big_, v);
}

void Integer::absorb(mpz_t v) {
  if (big_ != nullptr) {
    mpz_clear(big_);
    delete big_;
    big_ = nullptr;
  }
  if (mpz_fits_slong_p(v)) {
    small_ = mpz_get_si(v);
    mpz_clear(v);
    return;
  }
  small_ = 0;
  big_ = new __mpz_struct;
  *big_ = *v;  // steal limbs
}

void Integer::load(mpz_t out) const {
  if (big_ != nullptr) {
    mpz_init_set(out, big_);
  } else {
    mpz_init_set_si(out, small_);
  }
}

Integer Integer::from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty integer literal");
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw ParseError("malformed integer literal '" + s + "'");
  for (size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("malformed integer literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  mpz_t v;
  mpz_init(v);
  mpz_set_str(v, s.c_str(), 10);
  Integer out;
  out.absorb(v);
  return out;
}

int Integer::sign() const noexcept {
  if (big_ != nullptr) return mpz_sgn(big_);
  return (small_ > 0) - (small_ < 0);
}

Integer Integer::operator-() const {
  if (big_ == nullptr && small_ != kMin) return Integer(static_cast<long long>(-small_));
  mpz_t v;
  load(v);
  mpz_neg(v, v);
  Integer out;
  out.absorb(v);
  return out;
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

Integer operator+(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
  }
  mpz_t x, y;
  a.load(x);
  b.load(y);
  mpz_add(x, x, y);
  mpz_clear(y);
  Integer out;
  out.absorb(x);
  return out;
}

Integer operator-(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
  }
  mpz_t x, y;
  a.load(x);
  b.load(y);
  mpz_sub(x, x, y);
  mpz_clear(y);
  Integer out;
  out.absorb(x);
  return out;
}

Integer operator*(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(static_cast<long long>(r));
  }
  mpz_t x, y;
  a.load(x);
  b.load(y);
  mpz_mul(x, x, y);
  mpz_clear(y);
  Integer out;
  out.absorb(x);
  return out;
}

Integer& Integer::operator+=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_add_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = *this + b;
  return *this;
}

Integer& Integer::operator-=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_sub_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = *this - b;
  return *this;
}

Integer& Integer::operator*=(const Integer& b) {
  if (big_ == nullptr && b.big_ == nullptr) {
    int64_t r;
    if (!__builtin_mul_overflow(small_, b.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  *this = *this * b;
  return *this;
}

void Integer::add_mul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  mpz_t acc, x, y;
  load(acc);
  a.load(x);
  b.load(y);
  mpz_addmul(acc, x, y);
  mpz_clear(x);
  mpz_clear(y);
  absorb(acc);
}

Integer Integer::divexact(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw DivisionByZero("integer division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr && !(a.small_ == kMin && b.small_ == -1)) {
    return Integer(static_cast<long long>(a.small_ / b.small_));
  }
  mpz_t x, y;
  a.load(x);
  b.load(y);
  mpz_divexact(x, x, y);
  mpz_clear(y);
  Integer out;
  out.absorb(x);
  return out;
}

void Integer::divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  if (b.is_zero()) throw DivisionByZero("integer division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr && !(a.small_ == kMin && b.small_ == -1)) {
    int64_t qq = a.small_ / b.small_;
    int64_t rr = a.small_ % b.small_;
    q = Integer(static_cast<long long>(qq));
    r = Integer(static_cast<long long>(rr));
    return;
  }
  mpz_t x, y, qq, rr;
  a.load(x);
  b.load(y);
  mpz_init(qq);
  mpz_init(rr);
  mpz_tdiv_qr(qq, rr, x, y);
  mpz_clear(x);
  mpz_clear(y);
  q.absorb(qq);
  r.absorb(rr);
}

bool Integer::divisible_by(const Integer& d) const {
  if (d.is_zero()) return is_zero();
  if (big_ == nullptr && d.big_ == nullptr) {
    if (d.small_ == -1) return true;
    return small_ % d.small_ == 0;
  }
  mpz_t x, y;
  load(x);
  d.load(y);
  bool ok = mpz_divisible_p(x, y) != 0;
  mpz_clear(x);
  mpz_clear(y);
  return ok;
}

Integer Integer::symmetric_mod(const Integer& m) const {
  Integer q, r;
  divmod(*this, m, q, r);
  if (r.sign() < 0) r += m;
  // r in [0, m); move to (-m/2, m/2]
  Integer twice = r + r;
  if (compare(twice, m) > 0) r -= m;
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr && a.small_ != kMin && b.small_ != kMin) {
    uint64_t x = static_cast<uint64_t>(a.small_ < 0 ? -a.small_ : a.small_);
    uint64_t y = static_cast<uint64_t>(b.small_ < 0 ? -b.small_ : b.small_);
    while (y != 0) {
      uint64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<long long>(x));
  }
  mpz_t x, y;
  a.load(x);
  b.load(y);
  mpz_gcd(x, x, y);
  mpz_clear(y);
  Integer out;
  out.absorb(x);
  return out;
}

Integer Integer::pow(unsigned e) const {
  Integer result(1);
  Integer base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::optional<Integer> Integer::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_t x;
  load(x);
  if (mpz_perfect_square_p(x) == 0) {
    mpz_clear(x);
    return std::nullopt;
  }
  mpz_sqrt(x, x);
  Integer out;
  out.absorb(x);
  return out;
}

Integer Integer::isqrt() const {
  if (sign() < 0) throw DivisionByZero("square root of a negative integer");
  mpz_t x;
  load(x);
  mpz_sqrt(x, x);
  Integer out;
  out.absorb(x);
  return out;
}

int compare(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return (a.small_ > b.small_) - (a.small_ < b.small_);
  if (a.big_ != nullptr && b.big_ != nullptr) {
    int c = mpz_cmp(a.big_, b.big_);
    return (c > 0) - (c < 0);
  }
  if (a.big_ != nullptr) {
    int c = mpz_cmp_si(a.big_, b.small_);
    return (c > 0) - (c < 0);
  }
  int c = mpz_cmp_si(b.big_, a.small_);
  return (c < 0) - (c > 0);
}

std::string Integer::to_string() const {
  if (big_ == nullptr) return std::to_string(small_);
  char* buf = mpz_get_str(nullptr, 10, big_);
  std::string s(buf);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(buf, s.size() + 1);
  return s;
}

double Integer::to_double() const {
  if (big_ == nullptr) return static_cast<double>(small_);
  return mpz_get_d(big_);
}

size_t Integer::bit_length() const {
  if (big_ == nullptr) {
    uint64_t v = static_cast<uint64_t>(small_ < 0 ? -(small_ + 1) + 1 : small_);
    return v == 0 ? 0 : 64 - static_cast<size_t>(__builtin_clzll(v));
  }
  return mpz_sizeinbase(big_, 2);
}

size_t Integer::hash() const noexcept {
  if (big_ == nullptr) return std::hash<int64_t>{}(small_);
  size_t h = static_cast<size_t>(mpz_sgn(big_)) * 0x9e3779b97f4a7c15ULL;
  size_t n = mpz_size(big_);
  for (size_t i = 0; i < n; ++i) {
    h ^= static_cast<size_t>(mpz_getlimbn(big_, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

uint64_t Integer::mod_u64(uint64_t m) const {
  if (big_ == nullptr) {
    int64_t r = small_ % static_cast<int64_t>(m);
    if (r < 0) r += static_cast<int64_t>(m);
    return static_cast<uint64_t>(r);
  }
  return mpz_fdiv_ui(big_, m);
}

}  // namespace sl2cert
