#include "sl2cert/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sl2cert/errors.hpp"

namespace sl2cert {

// ---------------------------------------------------------------- symbols

namespace {

struct SymbolTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, Symbol> ids;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Symbol intern(std::string_view name) {
  SymbolTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  Symbol s = static_cast<Symbol>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(std::string(name), s);
  return s;
}

const std::string& symbol_name(Symbol s) {
  SymbolTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  if (s < 0 || static_cast<size_t>(s) >= t.names.size()) throw UnknownGenerator("unknown symbol id");
  return t.names[static_cast<size_t>(s)];
}

// ------------------------------------------------------------------- Word

Word Word::from_syllables(const std::vector<Syllable>& syllables) {
  Word w;
  for (const Syllable& s : syllables) {
    if (s.exp == 0) continue;
    if (!w.syl_.empty() && w.syl_.back().gen == s.gen) {
      w.syl_.back().exp += s.exp;
      if (w.syl_.back().exp == 0) w.syl_.pop_back();
    } else {
      w.syl_.push_back(s);
    }
  }
  return w;
}

Word Word::letter(Symbol s, long long exp) {
  Word w;
  if (exp != 0) w.syl_.push_back({s, exp});
  return w;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<Symbol>* alphabet) : s_(text), alphabet_(alphabet) {}

  Word parse_all() {
    Word w = parse_product();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*' || s_[pos_] == '.')) ++pos_;
  }

  Word parse_product() {
    Word w;
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') break;
      w *= parse_factor();
    }
    return w;
  }

  long long parse_exponent() {
    skip_spaces();
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    skip_spaces();
    bool paren = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      paren = true;
      ++pos_;
      skip_spaces();
    }
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    if (pos_ - start > 15) fail("exponent too large");
    long long e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    if (paren) {
      skip_spaces();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    }
    return neg ? -e : e;
  }

  void skip_spaces() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Word parse_factor() {
    char c = s_[pos_];
    Word base;
    if (c == '(') {
      ++pos_;
      base = parse_product();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else if (c == '1' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string ident(s_.substr(start, pos_ - start));
      long long e = parse_exponent();
      return identifier(ident, e);
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    return base.pow(parse_exponent());
  }

  bool in_alphabet(Symbol s) const {
    return std::find(alphabet_->begin(), alphabet_->end(), s) != alphabet_->end();
  }

  Word identifier(const std::string& ident, long long e) {
    if (alphabet_ == nullptr) return Word::letter(intern(ident), e);
    Symbol whole = intern(ident);
    if (in_alphabet(whole)) return Word::letter(whole, e);
    std::vector<Syllable> parts;
    for (char ch : ident) {
      Symbol s = intern(std::string(1, ch));
      if (!in_alphabet(s)) fail("unknown generator '" + ident + "'");
      parts.push_back({s, 1});
    }
    parts.back().exp = e;
    return Word::from_syllables(parts);
  }

  std::string_view s_;
  const std::vector<Symbol>* alphabet_;
  size_t pos_ = 0;
};

}  // namespace

Word Word::parse(std::string_view text, const std::vector<Symbol>* alphabet) {
  return Parser(text, alphabet).parse_all();
}

std::string Word::to_string() const {
  if (syl_.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < syl_.size(); ++i) {
    if (i) out += "*";
    out += symbol_name(syl_[i].gen);
    if (syl_[i].exp != 1) out += "^" + std::to_string(syl_[i].exp);
  }
  return out;
}

size_t Word::length() const {
  size_t n = 0;
  for (const Syllable& s : syl_) n += static_cast<size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

long long Word::exponent_sum(Symbol s) const {
  long long n = 0;
  for (const Syllable& x : syl_) {
    if (x.gen == s) n += x.exp;
  }
  return n;
}

bool Word::uses_only(const std::vector<Symbol>& alphabet) const {
  for (const Syllable& s : syl_) {
    if (std::find(alphabet.begin(), alphabet.end(), s.gen) == alphabet.end()) return false;
  }
  return true;
}

Word Word::inverse() const {
  Word w;
  w.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(long long k) const {
  if (k == 0 || syl_.empty()) return Word();
  if (k < 0) return inverse().pow(-k);
  CyclicDecomposition d = cyclic_decompose(*this);
  std::vector<Syllable> core;
  for (long long i = 0; i < k; ++i) core.insert(core.end(), d.core.syl_.begin(), d.core.syl_.end());
  return d.conjugator * from_syllables(core) * d.conjugator.inverse();
}

Word operator*(const Word& a, const Word& b) {
  if (a.syl_.empty()) return b;
  if (b.syl_.empty()) return a;
  Word w = a;
  for (const Syllable& s : b.syl_) {
    if (!w.syl_.empty() && w.syl_.back().gen == s.gen) {
      w.syl_.back().exp += s.exp;
      if (w.syl_.back().exp == 0) w.syl_.pop_back();
    } else {
      w.syl_.push_back(s);
    }
  }
  return w;
}

std::vector<std::pair<Symbol, int>> Word::letters() const {
  std::vector<std::pair<Symbol, int>> out;
  for (const Syllable& s : syl_) {
    int sign = s.exp > 0 ? 1 : -1;
    for (long long i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i) out.emplace_back(s.gen, sign);
  }
  return out;
}

Word Word::from_letters(const std::vector<std::pair<Symbol, int>>& letters) {
  std::vector<Syllable> syl;
  syl.reserve(letters.size());
  for (auto [s, e] : letters) syl.push_back({s, e});
  return from_syllables(syl);
}

bool operator<(const Word& a, const Word& b) {
  size_t la = a.length();
  size_t lb = b.length();
  if (la != lb) return la < lb;
  auto A = a.letters();
  auto B = b.letters();
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].first != B[i].first) return A[i].first < B[i].first;
    if (A[i].second != B[i].second) return A[i].second > B[i].second;
  }
  return false;
}

size_t Word::hash() const {
  size_t h = syl_.size();
  for (const Syllable& s : syl_) {
    h ^= static_cast<size_t>(s.gen) * 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<size_t>(s.exp) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ------------------------------------------------------------ reductions

Word free_reduce(const std::vector<Syllable>& syllables) { return Word::from_syllables(syllables); }

CyclicDecomposition cyclic_decompose(const Word& w) {
  std::vector<Syllable> s = w.syllables();
  std::vector<Syllable> conj;
  size_t lo = 0;
  size_t hi = s.size();
  while (hi - lo >= 2 && s[lo].gen == s[hi - 1].gen) {
    long long e = s[lo].exp;
    long long f = s[hi - 1].exp;
    if (e == -f) {
      conj.push_back(s[lo]);
      ++lo;
      --hi;
      continue;
    }
    // x^e R x^f = x^e (R x^(e+f)) x^-e
    conj.push_back(s[lo]);
    std::vector<Syllable> core(s.begin() + static_cast<long>(lo) + 1, s.begin() + static_cast<long>(hi) - 1);
    core.push_back({s[lo].gen, e + f});
    return {Word::from_syllables(conj), Word::from_syllables(core)};
  }
  std::vector<Syllable> core(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi));
  return {Word::from_syllables(conj), Word::from_syllables(core)};
}

Word cyclic_reduce(const Word& w) { return cyclic_decompose(w).core; }

PowerDecomposition is_proper_power(const Word& w) {
  if (w.empty()) throw TrivialWord("the empty word has no root");
  CyclicDecomposition d = cyclic_decompose(w);
  auto letters = d.core.letters();
  size_t n = letters.size();
  for (size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (size_t i = p; i < n && periodic; ++i) periodic = letters[i] == letters[i - p];
    if (periodic) {
      Word r(Word::from_letters({letters.begin(), letters.begin() + static_cast<long>(p)}));
      Word root = d.conjugator * r * d.conjugator.inverse();
      return {true, root, static_cast<long long>(n / p)};
    }
  }
  return {false, w, 1};
}

std::optional<long long> power_of(const Word& s, const Word& a) {
  if (a.empty()) throw TrivialWord("power_of with trivial base");
  if (s.empty()) return 0;
  CyclicDecomposition d = cyclic_decompose(a);
  long long cl = static_cast<long long>(d.conjugator.length());
  long long vl = static_cast<long long>(d.core.length());
  long long sl = static_cast<long long>(s.length());
  if (sl <= 2 * cl || (sl - 2 * cl) % vl != 0) return std::nullopt;
  long long k = (sl - 2 * cl) / vl;
  if (a.pow(k) == s) return k;
  if (a.pow(-k) == s) return -k;
  return std::nullopt;
}

bool commute(const Word& u, const Word& v) { return u * v == v * u; }

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

// ------------------------------------------------------------- amalgams

namespace {

bool contains(const std::vector<Symbol>& v, Symbol s) { return std::find(v.begin(), v.end(), s) != v.end(); }

bool is_cyclically_reduced(const Word& w) { return cyclic_reduce(w) == w; }

// Drops empty blocks and merges neighbours on the same side until stable.
void coalesce(std::vector<std::pair<int, Word>>& blocks) {
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].second.empty()) {
        blocks.erase(blocks.begin() + static_cast<long>(i));
        again = true;
        break;
      }
      if (i + 1 < blocks.size() && blocks[i].first == blocks[i + 1].first) {
        blocks[i].second *= blocks[i + 1].second;
        blocks.erase(blocks.begin() + static_cast<long>(i) + 1);
        again = true;
        break;
      }
    }
  }
}

}  // namespace

void AmalgamSpec::validate() const {
  for (Symbol s : left_generators) {
    if (contains(right_generators, s)) throw InvalidSpec("factor generator sets are not disjoint");
  }
  if (left_edge.empty() || right_edge.empty()) throw InvalidSpec("edge words must be nontrivial");
  if (!left_edge.uses_only(left_generators) || !right_edge.uses_only(right_generators)) {
    throw InvalidSpec("edge word uses letters outside its factor");
  }
  if (!is_cyclically_reduced(left_edge) || !is_cyclically_reduced(right_edge)) {
    throw InvalidSpec("edge words must be cyclically reduced");
  }
}

NormalForm amalgam_normal_form(const AmalgamSpec& spec, const Word& w) {
  spec.validate();
  NormalForm nf;
  nf.kind = NormalForm::Kind::Amalgam;
  std::vector<std::pair<int, Word>> blocks;
  for (const Syllable& s : w.syllables()) {
    int side;
    if (contains(spec.left_generators, s.gen)) {
      side = 0;
    } else if (contains(spec.right_generators, s.gen)) {
      side = 1;
    } else {
      throw InvalidSpec("letter '" + symbol_name(s.gen) + "' belongs to neither factor");
    }
    if (!blocks.empty() && blocks.back().first == side) {
      blocks.back().second *= Word::letter(s.gen, s.exp);
    } else {
      blocks.emplace_back(side, Word::letter(s.gen, s.exp));
    }
  }
  const Word* edge[2] = {&spec.left_edge, &spec.right_edge};
  bool changed = true;
  while (changed && blocks.size() >= 2) {
    changed = false;
    for (size_t i = 0; i < blocks.size(); ++i) {
      auto k = power_of(blocks[i].second, *edge[blocks[i].first]);
      if (!k) continue;
      int other = 1 - blocks[i].first;
      Word merged = edge[other]->pow(*k);
      size_t lo = i;
      size_t hi = i + 1;
      if (i > 0) {
        merged = blocks[i - 1].second * merged;
        lo = i - 1;
      }
      if (i + 1 < blocks.size()) {
        merged = merged * blocks[i + 1].second;
        hi = i + 2;
      }
      blocks.erase(blocks.begin() + static_cast<long>(lo), blocks.begin() + static_cast<long>(hi));
      blocks.insert(blocks.begin() + static_cast<long>(lo), {other, merged});
      coalesce(blocks);
      changed = true;
      break;
    }
  }
  if (blocks.size() == 1 && blocks[0].second.empty()) blocks.clear();
  nf.blocks = std::move(blocks);
  nf.reduced = true;
  return nf;
}

NormalForm amalgam_canonical_form(const AmalgamSpec& spec, const Word& w) {
  NormalForm nf = amalgam_normal_form(spec, w);
  const Word* edge[2] = {&spec.left_edge, &spec.right_edge};
  auto& b = nf.blocks;
  if (b.size() == 1) {
    if (b[0].first == 1) {
      if (auto k = power_of(b[0].second, spec.right_edge)) b[0] = {0, spec.left_edge.pow(*k)};
    }
    return nf;
  }
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    const Word& e = *edge[b[i].first];
    long long window = 2 * static_cast<long long>(b[i].second.length() / e.length()) + 2;
    Word best = b[i].second;
    long long best_k = 0;
    for (long long k = -window; k <= window; ++k) {
      Word cand = b[i].second * e.pow(k);
      if (cand < best) {
        best = cand;
        best_k = k;
      }
    }
    b[i].second = best;
    b[i + 1].second = edge[b[i + 1].first]->pow(-best_k) * b[i + 1].second;
  }
  return nf;
}

// ------------------------------------------------------------------- HNN

bool HnnSpec::automorphism_mode() const {
  if (pairs.size() != base_generators.size() || pairs.size() < 2) return false;
  std::set<Symbol> covered;
  for (const auto& [a, b] : pairs) {
    if (a.num_syllables() != 1 || a.syllables()[0].exp != 1) return false;
    covered.insert(a.syllables()[0].gen);
  }
  return covered.size() == base_generators.size();
}

void HnnSpec::validate() const {
  if (contains(base_generators, stable)) throw InvalidSpec("stable letter is a base generator");
  if (pairs.empty()) throw InvalidSpec("HNN extension needs associated elements");
  for (const auto& [a, b] : pairs) {
    if (a.empty() || b.empty()) throw InvalidSpec("associated words must be nontrivial");
    if (!a.uses_only(base_generators) || !b.uses_only(base_generators)) {
      throw InvalidSpec("associated word uses letters outside the base");
    }
  }
  if (pairs.size() > 1 && !automorphism_mode()) {
    throw UnsupportedSubgroup("several associated pairs are supported only when they define an automorphism");
  }
}

namespace {

Word apply_map(const Word& w, const std::map<Symbol, Word>& images) {
  Word out;
  for (const Syllable& s : w.syllables()) {
    auto it = images.find(s.gen);
    out *= it == images.end() ? Word::letter(s.gen, s.exp) : it->second.pow(s.exp);
  }
  return out;
}

std::string spec_key(const HnnSpec& spec) {
  std::string k;
  for (Symbol s : spec.base_generators) k += symbol_name(s) + ",";
  k += "|";
  for (const auto& [a, b] : spec.pairs) k += a.to_string() + "=" + b.to_string() + ";";
  return k;
}

struct AutomorphismData {
  std::map<Symbol, Word> forward;
  std::map<Symbol, Word> backward;
};

const AutomorphismData& automorphism_data(const HnnSpec& spec) {
  static std::mutex mu;
  static std::map<std::string, AutomorphismData> cache;
  std::string key = spec_key(spec);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  AutomorphismData d;
  for (const auto& [a, b] : spec.pairs) d.forward[a.syllables()[0].gen] = b;
  // Search preimages of each generator; a map with a right inverse on the
  // generators is surjective, hence an automorphism of the free group.
  std::set<Symbol> missing(spec.base_generators.begin(), spec.base_generators.end());
  constexpr int kSearch = 8;
  for_each_word(spec.base_generators, kSearch, [&](const Word& w) {
    Word img = apply_map(w, d.forward);
    if (img.num_syllables() == 1 && img.syllables()[0].exp == 1) {
      Symbol g = img.syllables()[0].gen;
      if (missing.erase(g) != 0) d.backward[g] = w;
    }
    return !missing.empty();
  });
  if (!missing.empty()) throw UnsupportedSubgroup("could not invert the associated automorphism");
  return cache.emplace(key, std::move(d)).first->second;
}

}  // namespace

NormalForm britton_reduce(const HnnSpec& spec, const Word& w) {
  spec.validate();
  NormalForm nf;
  nf.kind = NormalForm::Kind::Hnn;
  nf.bases.emplace_back();
  for (const Syllable& s : w.syllables()) {
    if (s.gen != spec.stable && !contains(spec.base_generators, s.gen)) {
      throw InvalidSpec("letter '" + symbol_name(s.gen) + "' is neither base nor stable");
    }
  }

  if (spec.automorphism_mode()) {
    // t g = phi(g) t, so every form collapses to g * t^n.
    const AutomorphismData& d = automorphism_data(spec);
    Word acc;
    long long n = 0;
    std::map<long long, std::map<Symbol, Word>> powers;
    auto phi_pow = [&](long long k) -> const std::map<Symbol, Word>& {
      auto it = powers.find(k);
      if (it != powers.end()) return it->second;
      std::map<Symbol, Word> m;
      for (Symbol g : spec.base_generators) m[g] = Word::letter(g);
      const auto& step = k >= 0 ? d.forward : d.backward;
      for (long long i = 0; i < (k >= 0 ? k : -k); ++i) {
        std::map<Symbol, Word> next;
        for (auto& [g, img] : m) next[g] = apply_map(img, step);
        m = std::move(next);
      }
      return powers.emplace(k, std::move(m)).first->second;
    };
    for (const Syllable& s : w.syllables()) {
      if (s.gen == spec.stable) {
        n += s.exp;
      } else {
        acc *= apply_map(Word::letter(s.gen, s.exp), phi_pow(n));
      }
    }
    nf.bases[0] = acc;
    if (n != 0) {
      nf.t_exponents.push_back(n);
      nf.bases.emplace_back();
    }
    return nf;
  }

  const Word& a = spec.pairs[0].first;
  const Word& b = spec.pairs[0].second;
  auto push_t = [&](int e) {
    if (!nf.t_exponents.empty()) {
      long long& last = nf.t_exponents.back();
      Word& tail = nf.bases.back();
      if ((last > 0) != (e > 0)) {
        // t g t^-1 with g in <a>, or t^-1 g t with g in <b>.
        auto k = power_of(tail, last > 0 ? a : b);
        if (k) {
          Word image = (last > 0 ? b : a).pow(*k);
          last -= last > 0 ? 1 : -1;
          if (last == 0) {
            nf.t_exponents.pop_back();
            nf.bases.pop_back();
            nf.bases.back() *= image;
          } else {
            tail = image;
          }
          return;
        }
      } else if (tail.empty()) {
        last += e;
        return;
      }
    }
    nf.t_exponents.push_back(e);
    nf.bases.emplace_back();
  };
  for (const Syllable& s : w.syllables()) {
    if (s.gen == spec.stable) {
      int e = s.exp > 0 ? 1 : -1;
      for (long long i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i) push_t(e);
    } else {
      nf.bases.back() *= Word::letter(s.gen, s.exp);
    }
  }
  return nf;
}

bool NormalForm::is_identity() const {
  switch (kind) {
    case Kind::Hnn:
      return t_exponents.empty() && (bases.empty() || bases[0].empty());
    case Kind::Amalgam:
    case Kind::Free:
      return blocks.empty() || (blocks.size() == 1 && blocks[0].second.empty());
  }
  return false;
}

Word NormalForm::to_word(Symbol stable) const {
  Word w;
  if (kind == Kind::Hnn) {
    for (size_t i = 0; i < bases.size(); ++i) {
      if (i > 0) w *= Word::letter(stable, t_exponents[i - 1]);
      w *= bases[i];
    }
    return w;
  }
  for (const auto& [side, b] : blocks) w *= b;
  return w;
}

std::string NormalForm::to_string() const {
  std::ostringstream os;
  if (kind == Kind::Hnn) {
    for (size_t i = 0; i < bases.size(); ++i) {
      if (i > 0) os << " . t^" << t_exponents[i - 1] << " . ";
      os << bases[i].to_string();
    }
    return os.str();
  }
  if (blocks.empty()) return "1";
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << " | ";
    os << (blocks[i].first == 0 ? "L:" : "R:") << blocks[i].second.to_string();
  }
  return os.str();
}

// ----------------------------------------------------------- enumeration

int max_bound() {
  constexpr int kCap = 12;
  const char* env = std::getenv("SL2CERT_MAX_BOUND");
  if (env == nullptr || *env == '\0') return kCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return kCap;
  return static_cast<int>(std::min<long>(v, kCap));
}

void check_bound(int L) {
  if (L < 0) throw InvalidSpec("negative scan bound");
  int cap = max_bound();
  if (L > cap) throw CapExceeded("bound " + std::to_string(L) + " exceeds the cap " + std::to_string(cap));
}

void for_each_word(const std::vector<Symbol>& generators, int L, const std::function<bool(const Word&)>& visit) {
  check_bound(L);
  std::vector<std::pair<Symbol, int>> alphabet;
  for (Symbol g : generators) {
    alphabet.emplace_back(g, 1);
    alphabet.emplace_back(g, -1);
  }
  std::vector<std::pair<Symbol, int>> cur;
  bool stop = false;
  std::function<void(int)> rec = [&](int remaining) {
    if (stop) return;
    if (remaining == 0) {
      if (!visit(Word::from_letters(cur))) stop = true;
      return;
    }
    for (const auto& l : alphabet) {
      if (!cur.empty() && cur.back().first == l.first && cur.back().second == -l.second) continue;
      cur.push_back(l);
      rec(remaining - 1);
      cur.pop_back();
      if (stop) return;
    }
  };
  for (int len = 1; len <= L && !stop; ++len) rec(len);
}

std::vector<Word> enumerate_words(const std::vector<Symbol>& generators, int L) {
  std::vector<Word> out;
  for_each_word(generators, L, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::vector<Word> enumerate_cyclically_reduced(const std::vector<Symbol>& generators, int L) {
  std::vector<Word> out;
  for_each_word(generators, L, [&](const Word& w) {
    if (cyclic_reduce(w) == w) out.push_back(w);
    return true;
  });
  return out;
}

std::vector<Word> enumerate_normal_forms(const AmalgamSpec& spec, int L) {
  std::vector<Symbol> gens = spec.left_generators;
  gens.insert(gens.end(), spec.right_generators.begin(), spec.right_generators.end());
  std::vector<Word> out;
  std::unordered_set<std::string> seen;
  for_each_word(gens, L, [&](const Word& w) {
    NormalForm nf = amalgam_canonical_form(spec, w);
    if (!nf.is_identity() && seen.insert(nf.to_string()).second) out.push_back(w);
    return true;
  });
  return out;
}

std::vector<Word> enumerate_normal_forms(const HnnSpec& spec, int L) {
  std::vector<Symbol> gens = spec.base_generators;
  gens.push_back(spec.stable);
  std::vector<Word> out;
  std::unordered_set<std::string> seen;
  for_each_word(gens, L, [&](const Word& w) {
    NormalForm nf = britton_reduce(spec, w);
    if (!nf.is_identity() && seen.insert(nf.to_string()).second) out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace sl2cert
