#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sl2cert {

/// Interned generator name. Ids are process-wide and stable for the process.
using Symbol = int;
Symbol intern(std::string_view name);
const std::string& symbol_name(Symbol s);

struct Syllable {
  Symbol gen;
  long long exp;
  friend bool operator==(const Syllable& a, const Syllable& b) { return a.gen == b.gen && a.exp == b.exp; }
};

/// Freely reduced word: adjacent syllables always have distinct symbols and
/// exponents are nonzero.
class Word {
 public:
  Word() = default;
  /// Concatenates and freely reduces arbitrary syllables.
  static Word from_syllables(const std::vector<Syllable>& syllables);
  static Word letter(Symbol s, long long exp = 1);
  static Word letter(std::string_view name, long long exp = 1) { return letter(intern(name), exp); }

  /// Parses `B^-1*A^-1*B*A`, `(AB)^2`, `1` (empty word). When `alphabet` is
  /// given, identifiers that are not generators but spell a sequence of
  /// single-character generators are split (so `ABab` works for a,b,A,B).
  static Word parse(std::string_view text, const std::vector<Symbol>* alphabet = nullptr);
  std::string to_string() const;

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  size_t num_syllables() const { return syl_.size(); }
  /// Number of letters (sum of |exponent|).
  size_t length() const;
  /// Exponent sum of one generator.
  long long exponent_sum(Symbol s) const;
  bool uses_only(const std::vector<Symbol>& alphabet) const;

  Word inverse() const;
  Word pow(long long k) const;
  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& b) { return *this = *this * b; }

  /// Letters as (symbol, +1/-1), left to right.
  std::vector<std::pair<Symbol, int>> letters() const;
  static Word from_letters(const std::vector<std::pair<Symbol, int>>& letters);

  friend bool operator==(const Word& a, const Word& b) { return a.syl_ == b.syl_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  /// Shortlex on letters, letters ordered by (symbol id, positive first).
  friend bool operator<(const Word& a, const Word& b);
  size_t hash() const;

 private:
  std::vector<Syllable> syl_;
};

struct WordHash {
  size_t operator()(const Word& w) const { return w.hash(); }
};

/// Free reduction of an arbitrary syllable list.
Word free_reduce(const std::vector<Syllable>& syllables);
inline Word free_reduce(const Word& w) { return w; }
Word cyclic_reduce(const Word& w);
/// w = c * core * c^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
CyclicDecomposition cyclic_decompose(const Word& w);

struct PowerDecomposition {
  bool proper;
  Word root;
  long long k;
};
/// Maximal root: w = root^k with k maximal. Throws TrivialWord on the empty word.
PowerDecomposition is_proper_power(const Word& w);
/// The k with s = a^k, if any (a nontrivial).
std::optional<long long> power_of(const Word& s, const Word& a);
/// Two words commute in the free group.
bool commute(const Word& u, const Word& v);
Word commutator(const Word& u, const Word& v);

/// Free product of two free groups amalgamating <left_edge> = <right_edge>.
struct AmalgamSpec {
  std::vector<Symbol> left_generators;
  std::vector<Symbol> right_generators;
  Word left_edge;
  Word right_edge;
  /// Throws InvalidSpec when the invariants fail.
  void validate() const;
};

/// HNN extension of a free base by stable letter t with t a_i t^-1 = b_i.
///
/// Supported shapes: one pair (cyclic associated subgroups), or one pair per
/// base generator a_i = generator_i describing an automorphism of the base.
struct HnnSpec {
  std::vector<Symbol> base_generators;
  std::vector<std::pair<Word, Word>> pairs;
  Symbol stable;
  void validate() const;
  bool automorphism_mode() const;
};

struct NormalForm {
  enum class Kind { Free, Amalgam, Hnn };
  Kind kind = Kind::Free;
  /// Amalgam: alternating blocks (side 0 = left factor, 1 = right factor).
  std::vector<std::pair<int, Word>> blocks;
  /// HNN: bases g_0..g_r and stable exponents n_1..n_r.
  std::vector<Word> bases;
  std::vector<long long> t_exponents;
  /// True when no pinch or edge-syllable reduction applies.
  bool reduced = true;

  bool is_identity() const;
  /// The group element as a word (for re-evaluation).
  Word to_word(Symbol stable = -1) const;
  std::string to_string() const;
};

NormalForm britton_reduce(const HnnSpec& spec, const Word& w);
NormalForm amalgam_normal_form(const AmalgamSpec& spec, const Word& w);
/// Canonical form with minimal-length coset representatives; equal elements
/// give identical outputs.
NormalForm amalgam_canonical_form(const AmalgamSpec& spec, const Word& w);

/// Maximum scan bound: 12, lowered by the SL2CERT_MAX_BOUND environment variable.
int max_bound();
/// Throws CapExceeded when L exceeds max_bound().
void check_bound(int L);

/// Visits every nonempty reduced word of length <= L in length-lex order
/// (letters ordered g0, g0^-1, g1, g1^-1, ...). Return false to stop.
void for_each_word(const std::vector<Symbol>& generators, int L, const std::function<bool(const Word&)>& visit);
std::vector<Word> enumerate_words(const std::vector<Symbol>& generators, int L);
/// Words whose amalgam normal form is nontrivial, one per group element.
std::vector<Word> enumerate_normal_forms(const AmalgamSpec& spec, int L);
/// Words whose Britton form is nontrivial, one per distinct form.
std::vector<Word> enumerate_normal_forms(const HnnSpec& spec, int L);
/// Cyclically reduced words only.
std::vector<Word> enumerate_cyclically_reduced(const std::vector<Symbol>& generators, int L);

}  // namespace sl2cert
