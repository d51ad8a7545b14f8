#include "sl2cert/sl2.hpp"

#include "sl2cert/errors.hpp"

namespace sl2cert {

Mat2::Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22)
    : e_{std::move(e11), std::move(e12), std::move(e21), std::move(e22)} {
  for (int i = 1; i < 4; ++i) require_same_tower(e_[0].tower(), e_[i].tower());
  FieldElement d = det();
  if (!d.is_one()) throw NotUnimodular("determinant is " + d.to_string() + ", not 1");
}

Mat2::Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22, Unchecked)
    : e_{std::move(e11), std::move(e12), std::move(e21), std::move(e22)} {}

Mat2 Mat2::identity(const TowerPtr& tower) {
  FieldElement one(tower, Integer(1));
  FieldElement zero(tower);
  return Mat2(one, zero, zero, one, Unchecked{});
}

Mat2 Mat2::diagonal(const FieldElement& d) {
  FieldElement zero(d.tower());
  return Mat2(d, zero, zero, d.inv(), Unchecked{});
}

Mat2 Mat2::inv() const { return Mat2(e_[3], -e_[1], -e_[2], e_[0], Unchecked{}); }

Mat2 Mat2::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  Mat2 result = identity(tower());
  Mat2 base = *this;
  while (k != 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k != 0) base = base * base;
  }
  return result;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  require_same_tower(a.tower(), b.tower());
  return Mat2(a.e_[0] * b.e_[0] + a.e_[1] * b.e_[2], a.e_[0] * b.e_[1] + a.e_[1] * b.e_[3],
              a.e_[2] * b.e_[0] + a.e_[3] * b.e_[2], a.e_[2] * b.e_[1] + a.e_[3] * b.e_[3], Mat2::Unchecked{});
}

bool operator==(const Mat2& a, const Mat2& b) {
  for (int i = 0; i < 4; ++i) {
    if (a.e_[i] != b.e_[i]) return false;
  }
  return true;
}

bool Mat2::is_identity() const { return e_[0].is_one() && e_[3].is_one() && e_[1].is_zero() && e_[2].is_zero(); }

bool Mat2::is_minus_identity() const {
  return e_[0].is_minus_one() && e_[3].is_minus_one() && e_[1].is_zero() && e_[2].is_zero();
}

Mat2 Mat2::negated() const { return Mat2(-e_[0], -e_[1], -e_[2], -e_[3], Unchecked{}); }

Mat2 Mat2::conjugated_by(const FieldElement& x11, const FieldElement& x12, const FieldElement& x21,
                         const FieldElement& x22) const {
  FieldElement d = x11 * x22 - x12 * x21;
  if (d.is_zero()) throw DivisionByZero("conjugating matrix is singular");
  // X M adj(X) / det X
  FieldElement m11 = x11 * e_[0] + x12 * e_[2];
  FieldElement m12 = x11 * e_[1] + x12 * e_[3];
  FieldElement m21 = x21 * e_[0] + x22 * e_[2];
  FieldElement m22 = x21 * e_[1] + x22 * e_[3];
  FieldElement di = d.inv();
  return Mat2((m11 * x22 - m12 * x21) * di, (m12 * x11 - m11 * x12) * di, (m21 * x22 - m22 * x21) * di,
              (m22 * x11 - m21 * x12) * di);
}

Mat2 Mat2::embed(const TowerPtr& target) const {
  return Mat2(e_[0].embed(target), e_[1].embed(target), e_[2].embed(target), e_[3].embed(target), Unchecked{});
}

Mat2 Mat2::substituted(const Substitution& sigma, const TowerPtr& target) const {
  return Mat2(substitute(e_[0], sigma, target), substitute(e_[1], sigma, target), substitute(e_[2], sigma, target),
              substitute(e_[3], sigma, target));
}

std::string Mat2::to_string() const {
  return "[[" + e_[0].to_string() + ", " + e_[1].to_string() + "], [" + e_[2].to_string() + ", " +
         e_[3].to_string() + "]]";
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) { return a * b; }
Mat2 mat_inv(const Mat2& a) { return a.inv(); }
FieldElement mat_trace(const Mat2& a) { return a.trace(); }
Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b * a.inv() * b.inv(); }

MarkedRep::MarkedRep(TowerPtr tower, std::vector<Symbol> generators, std::map<Symbol, Mat2> images,
                     std::vector<Word> relators)
    : tower_(std::move(tower)),
      generators_(std::move(generators)),
      images_(std::move(images)),
      relators_(std::move(relators)) {
  for (Symbol g : generators_) {
    auto it = images_.find(g);
    if (it == images_.end()) throw UnknownGenerator("no image for generator '" + symbol_name(g) + "'");
    require_same_tower(tower_, it->second.tower());
  }
}

const Mat2& MarkedRep::image(Symbol s) const {
  auto it = images_.find(s);
  if (it == images_.end()) throw UnknownGenerator("'" + symbol_name(s) + "' is not a generator of the representation");
  return it->second;
}

Mat2 MarkedRep::word_image(const Word& w) const {
  Mat2 m = Mat2::identity(tower_);
  for (const Syllable& s : w.syllables()) m = m * image(s.gen).pow(s.exp);
  return m;
}

Mat2 word_image(const MarkedRep& rep, const Word& w) { return rep.word_image(w); }

}  // namespace sl2cert
