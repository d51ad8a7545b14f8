#include "sl2cert/modular.hpp"

#include <random>

#include "sl2cert/errors.hpp"

namespace sl2cert::modp {

uint64_t add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

uint64_t mul(uint64_t a, uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(p) & kPrime;
  uint64_t hi = static_cast<uint64_t>(p >> 61);
  return add(lo, hi);
}

uint64_t inv(uint64_t a) {
  if (a == 0) throw DivisionByZero("inverse of zero modulo p");
  uint64_t result = 1;
  uint64_t base = a;
  for (uint64_t e = kPrime - 2; e != 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

Context::Context(const TowerPtr& tower, uint64_t seed) : tower_(tower) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  std::uniform_int_distribution<uint64_t> dist(2, kPrime - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    point_.assign(static_cast<size_t>(tower->size()), 0);
    for (auto& v : point_) v = dist(rng);
    if (!tower->has_extension()) return;
    uint64_t e = tower->ext_E().eval_mod(point_, kPrime);
    if (e == 0) continue;
    uint64_t ei = modp::inv(e);
    p0_ = modp::mul(tower->ext_P().eval_mod(point_, kPrime), ei);
    q0_ = modp::mul(tower->ext_Q().eval_mod(point_, kPrime), ei);
    return;
  }
  throw BoundedCheckFailed("no admissible modular evaluation point");
}

std::optional<Elem> Context::map(const FieldElement& u) const {
  uint64_t d = u.D().eval_mod(point_, kPrime);
  if (d == 0) return std::nullopt;
  uint64_t di = modp::inv(d);
  return Elem{modp::mul(u.A().eval_mod(point_, kPrime), di), modp::mul(u.B().eval_mod(point_, kPrime), di)};
}

std::optional<Mat> Context::map(const Mat2& m) const {
  Mat out;
  for (int i = 0; i < 4; ++i) {
    auto e = map(m.entry(i));
    if (!e) return std::nullopt;
    out.e[i] = *e;
  }
  return out;
}

Elem Context::add(const Elem& x, const Elem& y) const { return {modp::add(x.a, y.a), modp::add(x.b, y.b)}; }
Elem Context::sub(const Elem& x, const Elem& y) const { return {modp::sub(x.a, y.a), modp::sub(x.b, y.b)}; }
Elem Context::neg(const Elem& x) const { return {modp::sub(0, x.a), modp::sub(0, x.b)}; }

Elem Context::mul(const Elem& x, const Elem& y) const {
  // (a + b t)(c + d t) with t^2 = p0 t + q0
  uint64_t bd = modp::mul(x.b, y.b);
  uint64_t a = modp::add(modp::mul(x.a, y.a), modp::mul(bd, q0_));
  uint64_t b = modp::add(modp::add(modp::mul(x.a, y.b), modp::mul(x.b, y.a)), modp::mul(bd, p0_));
  return {a, b};
}

Mat Context::mul(const Mat& x, const Mat& y) const {
  Mat r;
  r.e[0] = add(mul(x.e[0], y.e[0]), mul(x.e[1], y.e[2]));
  r.e[1] = add(mul(x.e[0], y.e[1]), mul(x.e[1], y.e[3]));
  r.e[2] = add(mul(x.e[2], y.e[0]), mul(x.e[3], y.e[2]));
  r.e[3] = add(mul(x.e[2], y.e[1]), mul(x.e[3], y.e[3]));
  return r;
}

Mat Context::inv(const Mat& x) const {
  Mat r;
  r.e[0] = x.e[3];
  r.e[1] = neg(x.e[1]);
  r.e[2] = neg(x.e[2]);
  r.e[3] = x.e[0];
  return r;
}

Elem Context::constant(long long c) const {
  uint64_t v = c >= 0 ? static_cast<uint64_t>(c) % kPrime : modp::sub(0, static_cast<uint64_t>(-c) % kPrime);
  return {v, 0};
}

Mat Context::identity() const {
  Mat r;
  r.e[0] = r.e[3] = constant(1);
  return r;
}

bool Context::is_identity(const Mat& m) const {
  Elem one = constant(1);
  return m.e[0] == one && m.e[3] == one && m.e[1].is_zero() && m.e[2].is_zero();
}

bool Context::is_minus_identity(const Mat& m) const {
  Elem mone = constant(-1);
  return m.e[0] == mone && m.e[3] == mone && m.e[1].is_zero() && m.e[2].is_zero();
}

Context Rep::pick(const MarkedRep& rep, uint64_t& seed) {
  for (int attempt = 0; attempt < 16; ++attempt, ++seed) {
    Context ctx(rep.tower(), seed);
    bool ok = true;
    for (const auto& [sym, m] : rep.images()) {
      if (!ctx.map(m)) {
        ok = false;
        break;
      }
    }
    if (ok) return ctx;
  }
  throw BoundedCheckFailed("generator images have denominators vanishing at every modular point tried");
}

Rep::Rep(const MarkedRep& rep, uint64_t seed) : seed_(seed), ctx_(pick(rep, seed_)) {
  for (const auto& [sym, m] : rep.images()) {
    Mat im = *ctx_.map(m);
    images_[sym] = {im, ctx_.inv(im)};
  }
}

Mat Rep::word_image(const Word& w) const {
  Mat acc = ctx_.identity();
  for (const Syllable& s : w.syllables()) {
    auto it = images_.find(s.gen);
    if (it == images_.end()) throw UnknownGenerator("'" + symbol_name(s.gen) + "' is not a generator of the representation");
    const Mat& g = s.exp > 0 ? it->second.first : it->second.second;
    for (long long i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i) acc = ctx_.mul(acc, g);
  }
  return acc;
}

}  // namespace sl2cert::modp
