#include "sl2cert/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "sl2cert/errors.hpp"

namespace sl2cert {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(int var, unsigned exp) {
  Monomial m;
  m.set_exp(var, exp);
  return m;
}

void Monomial::set_exp(int var, unsigned e) {
  if (var < 0 || var >= kMaxVars) throw UnsupportedTower("too many indeterminates in one tower");
  unsigned old = exp(var);
  unsigned deg = degree() - old + e;
  if (e > 0xffffU || deg > 0xffffU) throw CapExceeded("monomial degree overflow");
  auto [word, shift] = slot(var);
  w_[word] &= ~(uint64_t{0xffff} << shift);
  w_[word] |= uint64_t{e} << shift;
  w_[0] = (w_[0] & ~(uint64_t{0xffff} << 48)) | (uint64_t{deg} << 48);
}

uint32_t Monomial::support() const {
  uint32_t s = 0;
  for (int v = 0; v < kMaxVars; ++v) {
    if (exp(v) != 0) s |= 1U << v;
  }
  return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (degree() + o.degree() > 0xffffU) throw CapExceeded("monomial degree overflow");
  Monomial r;
  for (int i = 0; i < 3; ++i) r.w_[i] = w_[i] + o.w_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < 3; ++i) r.w_[i] = w_[i] - o.w_[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree() > o.degree()) return false;
  for (int v = 0; v < kMaxVars; ++v) {
    if (exp(v) > o.exp(v)) return false;
  }
  return true;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int v = 0; v < kMaxVars; ++v) {
    unsigned e = std::min(a.exp(v), b.exp(v));
    if (e != 0) r.set_exp(v, e);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int v = 0; v < kMaxVars; ++v) {
    unsigned e = std::max(a.exp(v), b.exp(v));
    if (e != 0) r.set_exp(v, e);
  }
  return r;
}

Monomial Monomial::without(int var) const {
  Monomial r = *this;
  r.set_exp(var, 0);
  return r;
}

size_t Monomial::hash() const {
  size_t h = 0;
  for (uint64_t w : w_) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// -------------------------------------------------------------- Polynomial

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono > b.mono; }

// Adds `sign * b` into `a`, both sorted decreasing.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0;
  size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].mono > b[j].mono) {
      out.push_back(a[i++]);
    } else if (b[j].mono > a[i].mono) {
      out.push_back(Term{b[j].mono, subtract ? -b[j].coef : b[j].coef});
      ++j;
    } else {
      Integer c = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
      if (!c.is_zero()) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(Term{b[j].mono, subtract ? -b[j].coef : b[j].coef});
  return out;
}

// Sorts decreasing and combines equal monomials, dropping zeros.
void canonicalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  size_t w = 0;
  for (size_t r = 0; r < terms.size();) {
    Monomial m = terms[r].mono;
    Integer c = std::move(terms[r].coef);
    size_t s = r + 1;
    while (s < terms.size() && terms[s].mono == m) {
      c += terms[s].coef;
      ++s;
    }
    if (!c.is_zero()) {
      terms[w].mono = m;
      terms[w].coef = std::move(c);
      ++w;
    }
    r = s;
  }
  terms.resize(w);
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

Polynomial::Polynomial(const Integer& c) {
  if (!c.is_zero()) terms_.push_back(Term{Monomial(), c});
}

Polynomial Polynomial::variable(int var) { return monomial(Monomial::variable(var), Integer(1)); }

Polynomial Polynomial::monomial(const Monomial& m, const Integer& c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  canonicalize(terms);
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const Term& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

uint32_t Polynomial::support() const {
  uint32_t s = 0;
  for (const Term& t : terms_) s |= t.mono.support();
  return s;
}

int Polynomial::degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.mono.exp(var)));
  return d;
}

int Polynomial::min_degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = 1 << 20;
  for (const Term& t : terms_) d = std::min(d, static_cast<int>(t.mono.exp(var)));
  return d;
}

Integer Polynomial::content() const {
  Integer g(0);
  for (const Term& t : terms_) {
    g = gcd(g, t.coef);
    if (g.is_one()) break;
  }
  return g;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_[0].mono;
  for (size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Monomial::gcd(m, terms_[i].mono);
  return m;
}

Integer Polynomial::max_norm() const {
  Integer n(0);
  for (const Term& t : terms_) {
    Integer a = t.coef.abs();
    if (a > n) n = a;
  }
  return n;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Polynomial r;
  r.terms_ = merge(a.terms_, b.terms_, false);
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return a;
  Polynomial r;
  r.terms_ = merge(a.terms_, b.terms_, true);
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const Term& s : a.terms_) {
    for (const Term& t : b.terms_) out.push_back(Term{s.mono * t.mono, s.coef * t.coef});
  }
  canonicalize(out);
  Polynomial r;
  r.terms_ = std::move(out);
  return r;
}

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c.is_zero()) return Polynomial();
  if (c.is_one()) return *this;
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Integer& c) const {
  if (c.is_zero()) return Polynomial();
  Polynomial r = *this;
  for (Term& t : r.terms_) {
    t.mono = t.mono * m;
    if (!c.is_one()) t.coef *= c;
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::divexact_integer(const Integer& c) const {
  if (c.is_zero()) throw DivisionByZero("polynomial divided by zero");
  if (c.is_one()) return *this;
  Polynomial r = *this;
  for (Term& t : r.terms_) t.coef = Integer::divexact(t.coef, c);
  return r;
}

Polynomial Polynomial::divexact_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial r = *this;
  for (Term& t : r.terms_) t.mono = t.mono / m;
  return r;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& b) const {
  if (b.is_zero()) throw DivisionByZero("polynomial divided by zero");
  if (is_zero()) return Polynomial();
  if (b.terms_.size() == 1) {
    const Term& d = b.terms_[0];
    Polynomial r = *this;
    for (Term& t : r.terms_) {
      if (!d.mono.divides(t.mono) || !t.coef.divisible_by(d.coef)) return std::nullopt;
      t.mono = t.mono / d.mono;
      t.coef = Integer::divexact(t.coef, d.coef);
    }
    return r;
  }
  if (terms_.size() < b.terms_.size()) return std::nullopt;
  uint32_t bs = b.support();
  if ((bs & ~support()) != 0) return std::nullopt;
  for (int v = 0; v < kMaxVars; ++v) {
    if ((bs >> v) & 1U) {
      if (degree_in(v) < b.degree_in(v)) return std::nullopt;
    }
  }
  const Term& lb = b.terms_[0];
  // The last term of a product is the product of the last terms.
  const Term& tb = b.terms_.back();
  const Term& ta = terms_.back();
  if (!tb.mono.divides(ta.mono) || !ta.coef.divisible_by(tb.coef)) return std::nullopt;

  std::vector<Term> rem = terms_;
  std::vector<Term> quot;
  std::vector<Term> scaled;
  while (!rem.empty()) {
    const Term& lt = rem.front();
    if (!lb.mono.divides(lt.mono) || !lt.coef.divisible_by(lb.coef)) return std::nullopt;
    Term q{lt.mono / lb.mono, Integer::divexact(lt.coef, lb.coef)};
    scaled.clear();
    scaled.reserve(b.terms_.size());
    for (const Term& t : b.terms_) scaled.push_back(Term{t.mono * q.mono, t.coef * q.coef});
    rem = merge(rem, scaled, true);
    quot.push_back(std::move(q));
  }
  Polynomial r;
  r.terms_ = std::move(quot);
  return r;
}

Polynomial Polynomial::divexact(const Polynomial& b) const {
  auto q = try_divide(b);
  if (!q) throw std::logic_error("inexact polynomial division");
  return std::move(*q);
}

Polynomial Polynomial::coeff_in(int var, int k) const {
  Polynomial r;
  for (const Term& t : terms_) {
    if (static_cast<int>(t.mono.exp(var)) == k) r.terms_.push_back(Term{t.mono.without(var), t.coef});
  }
  return r;
}

std::vector<std::pair<int, Polynomial>> Polynomial::decompose_in(int var) const {
  int top = degree_in(var);
  std::vector<Polynomial> buckets(static_cast<size_t>(std::max(top, -1) + 1));
  for (const Term& t : terms_) {
    buckets[t.mono.exp(var)].terms_.push_back(Term{t.mono.without(var), t.coef});
  }
  std::vector<std::pair<int, Polynomial>> out;
  for (int k = top; k >= 0; --k) {
    if (!buckets[static_cast<size_t>(k)].is_zero()) out.emplace_back(k, std::move(buckets[static_cast<size_t>(k)]));
  }
  return out;
}

Polynomial Polynomial::eval_var(int var, const Integer& value) const {
  int top = degree_in(var);
  if (top <= 0) return *this;
  std::vector<Integer> pw(static_cast<size_t>(top) + 1);
  pw[0] = Integer(1);
  for (int k = 1; k <= top; ++k) pw[static_cast<size_t>(k)] = pw[static_cast<size_t>(k) - 1] * value;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    unsigned e = t.mono.exp(var);
    out.push_back(Term{t.mono.without(var), e == 0 ? t.coef : t.coef * pw[e]});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::remap(const std::vector<int>& map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m;
    for (int v = 0; v < kMaxVars; ++v) {
      unsigned e = t.mono.exp(v);
      if (e == 0) continue;
      if (v >= static_cast<int>(map.size()) || map[static_cast<size_t>(v)] < 0) {
        throw TowerMismatch("variable has no image under remapping");
      }
      int nv = map[static_cast<size_t>(v)];
      m.set_exp(nv, m.exp(nv) + e);
    }
    out.push_back(Term{m, t.coef});
  }
  return from_terms(std::move(out));
}

Polynomial Polynomial::reduce_monic_quadratic(int var, const Polynomial& p, const Polynomial& q) const {
  int top = degree_in(var);
  if (top < 2) return *this;
  std::vector<Polynomial> c(static_cast<size_t>(top) + 1);
  for (auto& [k, coef] : decompose_in(var)) c[static_cast<size_t>(k)] = std::move(coef);
  for (int k = top; k >= 2; --k) {
    Polynomial& ck = c[static_cast<size_t>(k)];
    if (ck.is_zero()) continue;
    c[static_cast<size_t>(k) - 1] += ck * p;
    c[static_cast<size_t>(k) - 2] += ck * q;
    ck = Polynomial();
  }
  return c[0] + c[1] * variable(var);
}

std::optional<Polynomial> Polynomial::sqrt() const {
  if (is_zero()) return Polynomial();
  const Term& lt = terms_[0];
  if (lt.coef.sign() < 0) return std::nullopt;
  auto c0 = lt.coef.exact_sqrt();
  if (!c0) return std::nullopt;
  Monomial m0;
  for (int v = 0; v < kMaxVars; ++v) {
    unsigned e = lt.mono.exp(v);
    if (e % 2 != 0) return std::nullopt;
    if (e != 0) m0.set_exp(v, e / 2);
  }
  unsigned min_deg = terms_[0].mono.degree();
  for (const Term& t : terms_) min_deg = std::min(min_deg, t.mono.degree());

  Term lead{m0, *c0};
  Polynomial root = monomial(m0, *c0);
  Polynomial rem = *this - root * root;
  Integer two_c0 = *c0 * Integer(2);
  while (!rem.is_zero()) {
    const Term& r = rem.terms_[0];
    if (!m0.divides(r.mono) || !r.coef.divisible_by(two_c0)) return std::nullopt;
    Monomial tm = r.mono / m0;
    if (!(tm < root.terms_.back().mono) || 2 * tm.degree() < min_deg) return std::nullopt;
    Integer tc = Integer::divexact(r.coef, two_c0);
    Polynomial t = monomial(tm, tc);
    rem = rem - (root.scaled(Integer(2)) + t) * t;
    root.terms_.push_back(Term{tm, tc});
  }
  return root;
}

uint64_t Polynomial::eval_mod(const std::vector<uint64_t>& point, uint64_t prime) const {
  std::array<std::vector<uint64_t>, kMaxVars> pw;
  uint64_t acc = 0;
  for (const Term& t : terms_) {
    uint64_t v = t.coef.mod_u64(prime);
    for (int var = 0; var < kMaxVars && v != 0; ++var) {
      unsigned e = t.mono.exp(var);
      if (e == 0) continue;
      auto& table = pw[static_cast<size_t>(var)];
      if (table.empty()) table.push_back(1);
      while (table.size() <= e) table.push_back(mulmod(table.back(), point[static_cast<size_t>(var)], prime));
      v = mulmod(v, table[e], prime);
    }
    acc += v;
    if (acc >= prime) acc -= prime;
  }
  return acc;
}

std::complex<double> Polynomial::eval_numeric(const std::vector<std::complex<double>>& point) const {
  std::array<std::vector<std::complex<double>>, kMaxVars> pw;
  std::complex<double> acc = 0.0;
  for (const Term& t : terms_) {
    std::complex<double> v = t.coef.to_double();
    for (int var = 0; var < kMaxVars; ++var) {
      unsigned e = t.mono.exp(var);
      if (e == 0) continue;
      auto& table = pw[static_cast<size_t>(var)];
      if (table.empty()) table.emplace_back(1.0);
      while (table.size() <= e) table.push_back(table.back() * point[static_cast<size_t>(var)]);
      v *= table[e];
    }
    acc += v;
  }
  return acc;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

size_t Polynomial::hash() const {
  size_t h = terms_.size();
  for (const Term& t : terms_) {
    h ^= t.mono.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= t.coef.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Integer c = t.coef;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    first = false;
    bool wrote = false;
    if (!c.is_one() || t.mono.is_one()) {
      os << c.to_string();
      wrote = true;
    }
    for (int v = 0; v < kMaxVars; ++v) {
      unsigned e = t.mono.exp(v);
      if (e == 0) continue;
      if (wrote) os << "*";
      os << (v < static_cast<int>(names.size()) ? names[static_cast<size_t>(v)] : "x" + std::to_string(v));
      if (e != 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

// -------------------------------------------------------------------- gcd

namespace {

Polynomial normalize_sign(Polynomial p) { return p.sign() < 0 ? -p : p; }

int top_var(uint32_t support) { return 31 - __builtin_clz(support); }

// gcd of all coefficients of p with respect to var, combined with `acc`.
Polynomial content_in(const Polynomial& p, int var, Polynomial acc) {
  for (auto& [k, c] : p.decompose_in(var)) {
    acc = gcd(acc, c);
    if (acc.is_one()) break;
  }
  return acc;
}

Polynomial interpolate(const Polynomial& h, const Integer& xi, int var) {
  std::vector<Term> out;
  Polynomial rest = h;
  unsigned k = 0;
  while (!rest.is_zero()) {
    std::vector<Term> digit;
    for (const Term& t : rest.terms()) {
      Integer d = t.coef.symmetric_mod(xi);
      if (!d.is_zero()) digit.push_back(Term{t.mono, d});
    }
    Polynomial g = Polynomial::from_terms(digit);
    for (const Term& t : g.terms()) {
      Monomial m = t.mono;
      m.set_exp(var, k);
      out.push_back(Term{m, t.coef});
    }
    rest = (rest - g).divexact_integer(xi);
    ++k;
  }
  return normalize_sign(Polynomial::from_terms(std::move(out)));
}

Polynomial primitive_integer(const Polynomial& p) {
  Integer c = p.content();
  return normalize_sign(c.is_zero() ? p : p.divexact_integer(c));
}

constexpr int kHeuristicAttempts = 6;

// Heuristic gcd by evaluation at a large integer and xi-adic reconstruction.
std::optional<GcdResult> heuristic_gcd(const Polynomial& f, const Polynomial& g) {
  if (f.is_constant() || g.is_constant()) {
    Integer c = gcd(f.content(), g.content());
    return GcdResult{Polynomial(c), f.divexact_integer(c), g.divexact_integer(c)};
  }
  int var = top_var(f.support() | g.support());
  Integer c = gcd(f.content(), g.content());
  Polynomial F = f.divexact_integer(c);
  Polynomial G = g.divexact_integer(c);
  Integer fn = F.max_norm();
  Integer gn = G.max_norm();
  Integer B = Integer(2) * std::min(fn, gn) + Integer(29);
  Integer r1 = std::min(B, Integer(99) * B.isqrt());
  Integer q1, q2, rr;
  Integer::divmod(fn, F.lead().coef.abs(), q1, rr);
  Integer::divmod(gn, G.lead().coef.abs(), q2, rr);
  Integer r2 = Integer(2) * std::min(q1, q2) + Integer(2);
  Integer xi = std::max(r1, r2);

  for (int attempt = 0; attempt < kHeuristicAttempts; ++attempt) {
    Polynomial ff = F.eval_var(var, xi);
    Polynomial gg = G.eval_var(var, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto sub = heuristic_gcd(ff, gg);
      if (!sub) return std::nullopt;
      Polynomial h = primitive_integer(interpolate(sub->g, xi, var));
      if (auto cf = F.try_divide(h)) {
        if (auto cg = G.try_divide(h)) return GcdResult{h.scaled(c), std::move(*cf), std::move(*cg)};
      }
      Polynomial cff = interpolate(sub->a_over_g, xi, var);
      if (auto h2 = F.try_divide(cff)) {
        if (auto cg = G.try_divide(*h2)) {
          if (h2->sign() < 0) return GcdResult{(-*h2).scaled(c), -cff, -*cg};
          return GcdResult{h2->scaled(c), cff, std::move(*cg)};
        }
      }
      Polynomial cfg = interpolate(sub->b_over_g, xi, var);
      if (auto h3 = G.try_divide(cfg)) {
        if (auto cf = F.try_divide(*h3)) {
          if (h3->sign() < 0) return GcdResult{(-*h3).scaled(c), -*cf, -cfg};
          return GcdResult{h3->scaled(c), std::move(*cf), cfg};
        }
      }
    }
    Integer q, r;
    Integer::divmod(Integer(73794) * xi * xi.isqrt().isqrt(), Integer(27011), q, r);
    xi = q;
  }
  return std::nullopt;
}

// gcd of primitive (integer and monomial content free) polynomials.
Polynomial gcd_core(const Polynomial& f, const Polynomial& g) {
  if (f.is_constant() || g.is_constant()) return Polynomial(1);
  if (f == g) return normalize_sign(f);
  uint32_t sf = f.support();
  uint32_t sg = g.support();
  if (sf != sg) {
    // A variable present on only one side cannot occur in the gcd.
    uint32_t only_f = sf & ~sg;
    uint32_t only_g = sg & ~sf;
    if (only_f != 0) return content_in(f, top_var(only_f), g);
    return content_in(g, top_var(only_g), f);
  }
  if (auto h = heuristic_gcd(f, g)) return normalize_sign(h->g);
  return detail::prs_gcd(f, g);
}

}  // namespace

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int var) {
  int db = b.degree_in(var);
  Polynomial lb = b.coeff_in(var, db);
  Polynomial r = a;
  int dr = r.degree_in(var);
  while (!r.is_zero() && dr >= db) {
    Polynomial lr = r.coeff_in(var, dr);
    Polynomial shift = lr.times_monomial(Monomial::variable(var, static_cast<unsigned>(dr - db)), Integer(1));
    r = r * lb - shift * b;
    dr = r.degree_in(var);
  }
  return r;
}

namespace detail {

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  uint32_t sup = a.support() | b.support();
  if (sup == 0) return Polynomial(gcd(a.constant_value(), b.constant_value()));
  int var = top_var(sup);
  if (a.degree_in(var) == 0 || b.degree_in(var) == 0) {
    // gcd lies in the coefficient ring.
    if (a.degree_in(var) == 0) {
      Polynomial acc = a;
      for (auto& [k, c] : b.decompose_in(var)) acc = prs_gcd(acc, c);
      return normalize_sign(acc);
    }
    Polynomial acc = b;
    for (auto& [k, c] : a.decompose_in(var)) acc = prs_gcd(acc, c);
    return normalize_sign(acc);
  }
  auto cont = [&](const Polynomial& p) {
    Polynomial acc;
    for (auto& [k, c] : p.decompose_in(var)) {
      acc = prs_gcd(acc, c);
      if (acc.is_one()) break;
    }
    return acc;
  };
  Polynomial ca = cont(a);
  Polynomial cb = cont(b);
  Polynomial c = prs_gcd(ca, cb);
  Polynomial f = a.divexact(ca);
  Polynomial g = b.divexact(cb);
  if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
  while (!g.is_zero()) {
    if (g.degree_in(var) == 0) return normalize_sign(c);
    Polynomial r = pseudo_remainder(f, g, var);
    f = std::move(g);
    if (r.is_zero()) {
      g = Polynomial();
    } else {
      g = r.divexact(cont(r));
    }
  }
  Polynomial pf = f.divexact(cont(f));
  return normalize_sign(c * pf);
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  Integer ca = a.content();
  Integer cb = b.content();
  Integer c = gcd(ca, cb);
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial m = Monomial::gcd(ma, mb);
  if (a.is_term() || b.is_term()) return Polynomial::monomial(m, c);
  Polynomial fa = a.divexact_integer(ca).divexact_monomial(ma);
  Polynomial fb = b.divexact_integer(cb).divexact_monomial(mb);
  Polynomial h = gcd_core(fa, fb);
  return h.times_monomial(m, c);
}

GcdResult gcd_cofactors(const Polynomial& a, const Polynomial& b) {
  Polynomial g = gcd(a, b);
  if (g.is_zero()) return GcdResult{g, Polynomial(), Polynomial()};
  if (g.is_one()) return GcdResult{g, a, b};
  return GcdResult{g, a.divexact(g), b.divexact(g)};
}

}  // namespace sl2cert
