#include "sl2cert/field.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "sl2cert/errors.hpp"

namespace sl2cert {

namespace {

std::string fnv_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  GcdResult g = gcd_cofactors(a, b);
  return g.a_over_g * b;
}

}  // namespace

void require_same_tower(const TowerPtr& a, const TowerPtr& b) {
  if (!a || !b) throw TowerMismatch("element without a tower");
  if (a.get() != b.get() && !a->same_as(*b)) {
    throw TowerMismatch("elements of different towers: " + a->describe() + " vs " + b->describe());
  }
}

// ------------------------------------------------------------- FieldTower

TowerPtr FieldTower::make(std::vector<std::string> indeterminates, std::optional<Extension> ext) {
  if (static_cast<int>(indeterminates.size()) > kMaxVars) {
    throw UnsupportedTower("a tower holds at most " + std::to_string(kMaxVars) + " indeterminates");
  }
  std::set<std::string> seen;
  for (const auto& n : indeterminates) {
    if (n.empty()) throw InvalidSpec("empty indeterminate name");
    if (!seen.insert(n).second) throw InvalidSpec("duplicate indeterminate '" + n + "'");
  }
  std::shared_ptr<FieldTower> t(new FieldTower());
  t->names_ = std::move(indeterminates);
  if (ext) {
    if (ext->name.empty() || seen.count(ext->name) != 0) {
      throw InvalidSpec("extension generator name must be fresh");
    }
    RationalFunction disc = ext->p * ext->p + RationalFunction(4) * ext->q;
    if (disc.num().sqrt().has_value() && disc.den().sqrt().has_value()) {
      throw ReducibleExtension("discriminant " + disc.to_string(t->names_) + " is a square");
    }
    t->E_ = lcm(ext->p.den(), ext->q.den());
    t->P_ = ext->p.num() * t->E_.divexact(ext->p.den());
    t->Q_ = ext->q.num() * t->E_.divexact(ext->q.den());
    t->ext_ = std::move(ext);
  }
  t->id_ = fnv_hex(t->describe());
  return t;
}

int FieldTower::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool FieldTower::has_symbol(const std::string& name) const {
  return index_of(name) >= 0 || (ext_ && ext_->name == name);
}

TowerPtr FieldTower::with_indeterminates(const std::vector<std::string>& extra) const {
  std::vector<std::string> names = names_;
  names.insert(names.end(), extra.begin(), extra.end());
  return make(std::move(names), ext_);
}

TowerPtr FieldTower::with_extension(const std::string& name, const RationalFunction& p,
                                    const RationalFunction& q) const {
  if (ext_) throw UnsupportedTower("tower already carries the extension '" + ext_->name + "'");
  return make(names_, Extension{name, p, q});
}

std::string FieldTower::describe() const {
  std::string s = "Q(";
  for (size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
  s += ")";
  if (ext_) {
    s += "[" + ext_->name + "]/(" + ext_->name + "^2 = (" + ext_->p.to_string(names_) + ")*" + ext_->name +
         " + (" + ext_->q.to_string(names_) + "))";
  }
  return s;
}

// ----------------------------------------------------------- FieldElement

FieldElement::FieldElement(TowerPtr tower) : tower_(std::move(tower)), A_(0), B_(0), D_(1) {}

FieldElement::FieldElement(TowerPtr tower, const Integer& c) : tower_(std::move(tower)), A_(c), B_(0), D_(1) {}

FieldElement::FieldElement(TowerPtr tower, const Polynomial& a) : tower_(std::move(tower)), A_(a), B_(0), D_(1) {}

FieldElement::FieldElement(TowerPtr tower, const RationalFunction& a, const RationalFunction& b)
    : tower_(std::move(tower)) {
  if (!b.is_zero() && !tower_->has_extension()) throw TowerMismatch("theta part in a tower without extension");
  if (b.is_zero()) {
    A_ = a.num();
    B_ = Polynomial(0);
    D_ = a.den();
    return;
  }
  Polynomial d = lcm(a.den(), b.den());
  A_ = a.num() * d.divexact(a.den());
  B_ = b.num() * d.divexact(b.den());
  D_ = d;
  canonicalize();
}

FieldElement FieldElement::from_parts(TowerPtr tower, Polynomial A, Polynomial B, Polynomial D) {
  if (D.is_zero()) throw DivisionByZero("zero denominator");
  if (!B.is_zero() && !tower->has_extension()) throw TowerMismatch("theta part in a tower without extension");
  FieldElement e;
  e.tower_ = std::move(tower);
  e.A_ = std::move(A);
  e.B_ = std::move(B);
  e.D_ = std::move(D);
  e.canonicalize();
  return e;
}

FieldElement FieldElement::indeterminate(const TowerPtr& tower, const std::string& name) {
  int i = tower->index_of(name);
  if (i < 0) throw TowerMismatch("unknown indeterminate '" + name + "' in " + tower->describe());
  return FieldElement(tower, Polynomial::variable(i));
}

FieldElement FieldElement::theta(const TowerPtr& tower) {
  if (!tower->has_extension()) throw TowerMismatch("tower has no extension generator");
  FieldElement e(tower);
  e.B_ = Polynomial(1);
  return e;
}

FieldElement FieldElement::rational(const TowerPtr& tower, long long num, long long den) {
  return from_parts(tower, Polynomial(num), Polynomial(0), Polynomial(den));
}

void FieldElement::canonicalize() {
  if (A_.is_zero() && B_.is_zero()) {
    D_ = Polynomial(1);
    return;
  }
  if (!D_.is_one()) {
    Polynomial g = A_.is_zero() ? D_ : gcd(D_, A_);
    if (!g.is_one() && !B_.is_zero()) g = gcd(g, B_);
    if (!g.is_one()) {
      A_ = A_.divexact(g);
      B_ = B_.divexact(g);
      D_ = D_.divexact(g);
    }
  }
  if (D_.sign() < 0) {
    A_ = -A_;
    B_ = -B_;
    D_ = -D_;
  }
}

void FieldElement::check_same(const FieldElement& v) const { require_same_tower(tower_, v.tower_); }

RationalFunction FieldElement::a() const { return RationalFunction(A_, D_); }
RationalFunction FieldElement::b() const { return RationalFunction(B_, D_); }

bool FieldElement::is_minus_one() const {
  return B_.is_zero() && D_.is_one() && A_.is_constant() && A_.constant_value() == Integer(-1);
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.A_ = -A_;
  r.B_ = -B_;
  return r;
}

FieldElement operator+(const FieldElement& u, const FieldElement& v) {
  u.check_same(v);
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  FieldElement r(u.tower_);
  if (u.D_ == v.D_) {
    r.A_ = u.A_ + v.A_;
    r.B_ = u.B_ + v.B_;
    r.D_ = u.D_;
    r.canonicalize();
    return r;
  }
  GcdResult g = gcd_cofactors(u.D_, v.D_);
  r.A_ = u.A_ * g.b_over_g + v.A_ * g.a_over_g;
  r.B_ = u.B_ * g.b_over_g + v.B_ * g.a_over_g;
  if (g.g.is_one()) {
    r.D_ = u.D_ * v.D_;
    if (r.A_.is_zero() && r.B_.is_zero()) r.D_ = Polynomial(1);
    return r;
  }
  // Common factors of the sum with the denominator divide g.
  Polynomial h = r.A_.is_zero() ? g.g : gcd(g.g, r.A_);
  if (!h.is_one() && !r.B_.is_zero()) h = gcd(h, r.B_);
  r.D_ = g.a_over_g * v.D_;
  if (!h.is_one()) {
    r.A_ = r.A_.divexact(h);
    r.B_ = r.B_.divexact(h);
    r.D_ = r.D_.divexact(h);
  }
  if (r.A_.is_zero() && r.B_.is_zero()) r.D_ = Polynomial(1);
  return r;
}

FieldElement operator-(const FieldElement& u, const FieldElement& v) { return u + (-v); }

FieldElement operator*(const FieldElement& u, const FieldElement& v) {
  u.check_same(v);
  if (u.is_zero() || v.is_zero()) return FieldElement(u.tower_);
  FieldElement r(u.tower_);
  if (u.B_.is_zero() && v.B_.is_zero()) {
    GcdResult g1 = gcd_cofactors(u.A_, v.D_);
    GcdResult g2 = gcd_cofactors(v.A_, u.D_);
    r.A_ = g1.a_over_g * g2.a_over_g;
    r.D_ = g2.b_over_g * g1.b_over_g;
    return r;
  }
  if (u.B_.is_zero() || v.B_.is_zero()) {
    const FieldElement& base = u.B_.is_zero() ? u : v;
    const FieldElement& ext = u.B_.is_zero() ? v : u;
    // Cancel the base numerator against the other denominator first.
    GcdResult g1 = gcd_cofactors(base.A_, ext.D_);
    r.A_ = ext.A_ * g1.a_over_g;
    r.B_ = ext.B_ * g1.a_over_g;
    r.D_ = base.D_ * g1.b_over_g;
    r.canonicalize();
    return r;
  }
  const FieldTower& t = *u.tower_;
  Polynomial aa = u.A_ * v.A_;
  Polynomial bb = u.B_ * v.B_;
  Polynomial ab = u.A_ * v.B_ + u.B_ * v.A_;
  if (t.ext_E().is_one()) {
    r.A_ = aa + t.ext_Q() * bb;
    r.B_ = ab + t.ext_P() * bb;
    r.D_ = u.D_ * v.D_;
  } else {
    r.A_ = t.ext_E() * aa + t.ext_Q() * bb;
    r.B_ = t.ext_E() * ab + t.ext_P() * bb;
    r.D_ = t.ext_E() * u.D_ * v.D_;
  }
  r.canonicalize();
  return r;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (B_.is_zero()) {
    FieldElement r(tower_);
    r.A_ = D_;
    r.D_ = A_;
    if (r.D_.sign() < 0) {
      r.A_ = -r.A_;
      r.D_ = -r.D_;
    }
    return r;
  }
  const FieldTower& t = *tower_;
  const Polynomial& E = t.ext_E();
  Polynomial n = E * A_ * A_ + t.ext_P() * A_ * B_ - t.ext_Q() * B_ * B_;
  if (n.is_zero()) throw DivisionByZero("zero norm; extension is reducible");
  return from_parts(tower_, D_ * (E * A_ + t.ext_P() * B_), -(D_ * E * B_), n);
}

FieldElement operator/(const FieldElement& u, const FieldElement& v) {
  u.check_same(v);
  if (v.is_zero()) throw DivisionByZero("division by zero field element");
  return u * v.inv();
}

FieldElement FieldElement::pow(long long e) const {
  if (e < 0) return inv().pow(-e);
  FieldElement result(tower_, Integer(1));
  FieldElement base = *this;
  while (e != 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

FieldElement FieldElement::scaled(const Integer& c) const {
  return from_parts(tower_, A_.scaled(c), B_.scaled(c), D_);
}

FieldElement FieldElement::operator+(long long c) const { return *this + FieldElement(tower_, Integer(c)); }
FieldElement FieldElement::operator-(long long c) const { return *this - FieldElement(tower_, Integer(c)); }

FieldElement FieldElement::conjugate() const {
  if (B_.is_zero()) return *this;
  // a + b theta -> (a + b p) - b theta
  const FieldTower& t = *tower_;
  return from_parts(tower_, t.ext_E() * A_ + t.ext_P() * B_, -(t.ext_E() * B_), t.ext_E() * D_);
}

FieldElement FieldElement::norm() const { return *this * conjugate(); }

bool operator==(const FieldElement& u, const FieldElement& v) {
  if (u.tower_ && v.tower_) u.check_same(v);
  return u.A_ == v.A_ && u.B_ == v.B_ && u.D_ == v.D_;
}

size_t FieldElement::hash() const {
  size_t h = A_.hash();
  h ^= B_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= D_.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string FieldElement::to_string() const {
  const std::vector<std::string> empty;
  const auto& names = tower_ ? tower_->indeterminates() : empty;
  if (B_.is_zero()) return RationalFunction(A_, D_).to_string(names);
  std::string th = tower_->extension().name;
  std::string num;
  std::string b;
  bool negative = false;
  if (B_.is_term() && B_.lead().mono.is_one()) {
    Integer c = B_.lead().coef;
    negative = c.sign() < 0;
    Integer mag = negative ? -c : c;
    b = mag.is_one() ? th : mag.to_string() + "*" + th;
  } else if (B_.is_term()) {
    negative = B_.sign() < 0;
    b = (negative ? -B_ : B_).to_string(names) + "*" + th;
  } else {
    b = "(" + B_.to_string(names) + ")*" + th;
  }
  if (A_.is_zero()) {
    num = (negative ? "-" : "") + b;
  } else {
    num = A_.to_string(names) + (negative ? " - " : " + ") + b;
  }
  if (D_.is_one()) return num;
  return "(" + num + ")/" + (D_.is_term() ? D_.to_string(names) : "(" + D_.to_string(names) + ")");
}

FieldElement FieldElement::embed(const TowerPtr& target) const {
  if (tower_.get() == target.get() || tower_->same_as(*target)) {
    FieldElement r = *this;
    r.tower_ = target;
    return r;
  }
  std::vector<int> map(static_cast<size_t>(tower_->size()));
  for (int i = 0; i < tower_->size(); ++i) {
    int j = target->index_of(tower_->indeterminates()[static_cast<size_t>(i)]);
    if (j < 0) throw TowerMismatch("indeterminate '" + tower_->indeterminates()[static_cast<size_t>(i)] + "' missing in target tower");
    map[static_cast<size_t>(i)] = j;
  }
  if (tower_->has_extension()) {
    if (!target->has_extension() || target->extension().name != tower_->extension().name) {
      throw TowerMismatch("target tower lacks the extension '" + tower_->extension().name + "'");
    }
    Polynomial P = tower_->ext_P().remap(map);
    Polynomial Q = tower_->ext_Q().remap(map);
    Polynomial E = tower_->ext_E().remap(map);
    if (P * target->ext_E() != target->ext_P() * E || Q * target->ext_E() != target->ext_Q() * E) {
      throw TowerMismatch("extension minimal polynomials differ");
    }
  }
  return from_parts(target, A_.remap(map), B_.remap(map), D_.remap(map));
}

std::map<int, FieldElement> FieldElement::laurent_coefficients(int var) const {
  if (D_.degree_in(var) != D_.min_degree_in(var)) {
    throw PreconditionFailed("denominator is not a monomial in '" + tower_->indeterminates()[static_cast<size_t>(var)] + "'");
  }
  int k = D_.degree_in(var);
  Polynomial rest = D_.coeff_in(var, k);
  std::map<int, std::pair<Polynomial, Polynomial>> parts;
  for (auto& [j, c] : A_.decompose_in(var)) parts[j - k].first = std::move(c);
  for (auto& [j, c] : B_.decompose_in(var)) parts[j - k].second = std::move(c);
  std::map<int, FieldElement> out;
  for (auto& [e, ab] : parts) out.emplace(e, from_parts(tower_, ab.first, ab.second, rest));
  return out;
}

// ------------------------------------------------------------ substitute

namespace {

FieldElement eval_poly_at(const Polynomial& p, const std::vector<FieldElement>& images, const TowerPtr& target) {
  if (p.is_zero()) return FieldElement(target);
  std::array<std::vector<FieldElement>, kMaxVars> pw;
  // Group by full monomial; accumulate as polynomial-with-field-coefficients
  // would be faster, but substitution is not on any hot path.
  FieldElement acc(target);
  for (const Term& t : p.terms()) {
    FieldElement term(target, t.coef);
    for (int v = 0; v < kMaxVars; ++v) {
      unsigned e = t.mono.exp(v);
      if (e == 0) continue;
      auto& table = pw[static_cast<size_t>(v)];
      if (table.empty()) table.push_back(FieldElement(target, Integer(1)));
      while (table.size() <= e) table.push_back(table.back() * images[static_cast<size_t>(v)]);
      term *= table[e];
    }
    acc += term;
  }
  return acc;
}

}  // namespace

FieldElement substitute(const FieldElement& u, const Substitution& sigma, const TowerPtr& target) {
  const TowerPtr& src = u.tower();
  for (const auto& [name, img] : sigma) {
    if (!src->has_symbol(name)) throw TowerMismatch("substitution names unknown symbol '" + name + "'");
    require_same_tower(img.tower(), target);
  }
  std::vector<FieldElement> images;
  std::vector<int> rename;
  bool pure_rename = true;
  std::set<int> used;
  for (const std::string& name : src->indeterminates()) {
    auto it = sigma.find(name);
    FieldElement img = it != sigma.end() ? it->second : FieldElement::indeterminate(target, name);
    int idx = -1;
    if (img.in_base() && img.D().is_one() && img.A().is_term() && img.A().lead().coef.is_one() &&
        img.A().lead().mono.degree() == 1) {
      uint32_t s = img.A().support();
      idx = __builtin_ctz(s);
    }
    if (idx < 0 || !used.insert(idx).second) pure_rename = false;
    rename.push_back(idx);
    images.push_back(std::move(img));
  }

  std::optional<FieldElement> theta_img;
  if (src->has_extension()) {
    auto it = sigma.find(src->extension().name);
    if (it != sigma.end()) {
      theta_img = it->second;
      pure_rename = false;
    } else {
      theta_img = FieldElement::theta(target);
    }
  }

  if (pure_rename) {
    if (src->has_extension()) {
      Polynomial P = src->ext_P().remap(rename);
      Polynomial Q = src->ext_Q().remap(rename);
      Polynomial E = src->ext_E().remap(rename);
      if (P * target->ext_E() != target->ext_P() * E || Q * target->ext_E() != target->ext_Q() * E) {
        throw TowerMismatch("substitution does not carry the minimal polynomial to the target's");
      }
    }
    Polynomial D = u.D().remap(rename);
    return FieldElement::from_parts(target, u.A().remap(rename), u.B().remap(rename), D);
  }

  FieldElement den = eval_poly_at(u.D(), images, target);
  if (den.is_zero()) throw DenominatorVanishes("substitution makes the denominator vanish");
  FieldElement num = eval_poly_at(u.A(), images, target);
  if (src->has_extension()) {
    FieldElement p = eval_poly_at(src->ext_P(), images, target);
    FieldElement q = eval_poly_at(src->ext_Q(), images, target);
    FieldElement e = eval_poly_at(src->ext_E(), images, target);
    if (e.is_zero()) throw DenominatorVanishes("substitution makes the minimal polynomial degenerate");
    const FieldElement& th = *theta_img;
    if (!(th * th * e - p * th - q).is_zero()) {
      throw TowerMismatch("image of " + src->extension().name + " does not satisfy its minimal polynomial");
    }
    if (!u.B().is_zero()) num += eval_poly_at(u.B(), images, target) * th;
  }
  return num / den;
}

std::complex<double> evaluate_numeric(const FieldElement& u, const std::map<std::string, std::complex<double>>& point,
                                      std::complex<double> branch) {
  const FieldTower& t = *u.tower();
  std::vector<std::complex<double>> pt(static_cast<size_t>(t.size()), {0.0, 0.0});
  uint32_t need = u.support();
  if (t.has_extension()) need |= t.ext_P().support() | t.ext_Q().support() | t.ext_E().support();
  for (int i = 0; i < t.size(); ++i) {
    auto it = point.find(t.indeterminates()[static_cast<size_t>(i)]);
    if (it != point.end()) {
      pt[static_cast<size_t>(i)] = it->second;
    } else if ((need >> i) & 1U) {
      throw InvalidSpec("no value for indeterminate '" + t.indeterminates()[static_cast<size_t>(i)] + "'");
    }
  }
  std::complex<double> d = u.D().eval_numeric(pt);
  if (std::abs(d) < 1e-12) throw DenominatorNearZero("denominator is numerically zero at the point");
  std::complex<double> num = u.A().eval_numeric(pt);
  if (t.has_extension()) {
    std::complex<double> e = t.ext_E().eval_numeric(pt);
    if (std::abs(e) < 1e-12) throw DenominatorNearZero("minimal polynomial denominator vanishes at the point");
    std::complex<double> p = t.ext_P().eval_numeric(pt) / e;
    std::complex<double> q = t.ext_Q().eval_numeric(pt) / e;
    double scale = std::max({1.0, std::norm(branch), std::abs(p * branch), std::abs(q)});
    if (std::abs(branch * branch - p * branch - q) > 1e-9 * scale) {
      throw InvalidSpec("branch value does not satisfy the minimal polynomial at the point");
    }
    num += u.B().eval_numeric(pt) * branch;
  }
  return num / d;
}

}  // namespace sl2cert
