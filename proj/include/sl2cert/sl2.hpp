#pragma once

#include <map>
#include <string>
#include <vector>

#include "sl2cert/field.hpp"
#include "sl2cert/words.hpp"

namespace sl2cert {

/// 2x2 matrix of determinant exactly 1 over a field tower.
class Mat2 {
 public:
  Mat2() = default;
  /// Throws NotUnimodular unless e11*e22 - e12*e21 = 1, TowerMismatch on mixed towers.
  Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22);
  static Mat2 identity(const TowerPtr& tower);
  static Mat2 diagonal(const FieldElement& d);

  const FieldElement& e11() const { return e_[0]; }
  const FieldElement& e12() const { return e_[1]; }
  const FieldElement& e21() const { return e_[2]; }
  const FieldElement& e22() const { return e_[3]; }
  const FieldElement& entry(int i) const { return e_[i]; }
  const TowerPtr& tower() const { return e_[0].tower(); }

  FieldElement trace() const { return e_[0] + e_[3]; }
  FieldElement det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  Mat2 inv() const;
  Mat2 pow(long long k) const;
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend bool operator==(const Mat2& a, const Mat2& b);
  friend bool operator!=(const Mat2& a, const Mat2& b) { return !(a == b); }

  bool is_identity() const;
  bool is_minus_identity() const;
  bool is_pm_identity() const { return is_identity() || is_minus_identity(); }
  bool is_diagonal() const { return e_[1].is_zero() && e_[2].is_zero(); }
  Mat2 negated() const;
  /// X * this * X^-1 for an invertible (not necessarily unimodular) X given by entries.
  Mat2 conjugated_by(const FieldElement& x11, const FieldElement& x12, const FieldElement& x21,
                     const FieldElement& x22) const;
  /// Moves every entry into `target` (see FieldElement::embed).
  Mat2 embed(const TowerPtr& target) const;
  Mat2 substituted(const Substitution& sigma, const TowerPtr& target) const;

  std::string to_string() const;

 private:
  struct Unchecked {};
  Mat2(FieldElement e11, FieldElement e12, FieldElement e21, FieldElement e22, Unchecked);
  FieldElement e_[4];
};

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_inv(const Mat2& a);
FieldElement mat_trace(const Mat2& a);
/// A B A^-1 B^-1.
Mat2 commutator(const Mat2& a, const Mat2& b);

/// Generators with matrix images over one tower, plus declared relators.
class MarkedRep {
 public:
  MarkedRep() = default;
  MarkedRep(TowerPtr tower, std::vector<Symbol> generators, std::map<Symbol, Mat2> images,
            std::vector<Word> relators = {});

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Symbol>& generators() const { return generators_; }
  const std::map<Symbol, Mat2>& images() const { return images_; }
  const std::vector<Word>& relators() const { return relators_; }
  void add_relator(const Word& w) { relators_.push_back(w); }
  const Mat2& image(Symbol s) const;
  bool has_generator(Symbol s) const { return images_.count(s) != 0; }

  /// Throws UnknownGenerator when w uses a letter outside the generators.
  Mat2 word_image(const Word& w) const;

 private:
  TowerPtr tower_;
  std::vector<Symbol> generators_;
  std::map<Symbol, Mat2> images_;
  std::vector<Word> relators_;
};

Mat2 word_image(const MarkedRep& rep, const Word& w);

}  // namespace sl2cert
