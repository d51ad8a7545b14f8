#include "sl2cert/verifiers.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sl2cert/constructors.hpp"
#include "sl2cert/errors.hpp"
#include "sl2cert/modular.hpp"

namespace sl2cert {

namespace {

Witness mat_witness(std::string label, std::string property, const Mat2& m) {
  return {std::move(label), std::move(property), std::nullopt, m, "", ""};
}

Witness elem_witness(std::string label, std::string property, const FieldElement& u) {
  return {std::move(label), std::move(property), u, std::nullopt, "", ""};
}

Witness info_witness(std::string label) { return {std::move(label), "info", std::nullopt, std::nullopt, "", ""}; }

Witness word_witness(std::string label, std::string property, const std::string& lhs, const std::string& rhs = "") {
  return {std::move(label), std::move(property), std::nullopt, std::nullopt, lhs, rhs};
}

bool is_pm2(const FieldElement& t) { return (t - 2).is_zero() || (t + 2).is_zero(); }

bool mod_pm2(const modp::Context& ctx, const modp::Mat& m) {
  modp::Elem t = ctx.trace(m);
  return ctx.sub(t, ctx.constant(2)).is_zero() || ctx.add(t, ctx.constant(2)).is_zero();
}

modp::Mat mod_commutator(const modp::Context& ctx, const modp::Mat& a, const modp::Mat& b) {
  return ctx.mul(ctx.mul(a, b), ctx.mul(ctx.inv(a), ctx.inv(b)));
}

// ---------------------------------------------------------------- BS(1, m)

// z -> m^k z + b, composed as maps.
struct Affine {
  long long k = 0;
  FieldElement b;
};

class AffineModel {
 public:
  explicit AffineModel(long long m) : m_(m), q_(FieldTower::rationals()) {}
  Affine identity() const { return {0, FieldElement(q_)}; }
  Affine generator(Symbol s, long long e) const {
    if (symbol_name(s) == "t") return {e, FieldElement(q_)};
    if (symbol_name(s) == "x") return {0, FieldElement(q_, Integer(e))};
    throw UnknownGenerator("BS(1,m) words use the letters x and t");
  }
  Affine compose(const Affine& f, const Affine& g) const { return {f.k + g.k, power(f.k) * g.b + f.b}; }
  Affine image(const Word& w) const {
    Affine acc = identity();
    for (const Syllable& s : w.syllables()) acc = compose(acc, generator(s.gen, s.exp));
    return acc;
  }
  static bool equal(const Affine& f, const Affine& g) { return f.k == g.k && f.b == g.b; }
  bool is_identity(const Affine& f) const { return f.k == 0 && f.b.is_zero(); }

 private:
  FieldElement power(long long k) const { return FieldElement(q_, Integer(m_)).pow(k); }
  long long m_;
  TowerPtr q_;
};

// ---------------------------------------------------------------- comm-eq

// Words over x, y as strings of x, X, y, Y.
char inv_letter(char c) { return static_cast<char>(c ^ 0x20); }

std::string reduce_concat(const std::string& a, const std::string& b) {
  std::string out = a;
  for (char c : b) {
    if (!out.empty() && out.back() == inv_letter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string inverse(const std::string& a) {
  std::string out(a.rbegin(), a.rend());
  for (char& c : out) c = inv_letter(c);
  return out;
}

std::string power(const std::string& a, long long k) {
  std::string base = k < 0 ? inverse(a) : a;
  std::string out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out = reduce_concat(out, base);
  return out;
}

std::vector<std::string> all_words(int L) {
  std::vector<std::string> out;
  std::function<void(std::string&)> rec = [&](std::string& w) {
    if (!w.empty()) out.push_back(w);
    if (static_cast<int>(w.size()) == L) return;
    for (char c : {'x', 'X', 'y', 'Y'}) {
      if (!w.empty() && w.back() == inv_letter(c)) continue;
      w.push_back(c);
      rec(w);
      w.pop_back();
    }
  };
  std::string w;
  rec(w);
  return out;
}

Word to_word(const std::string& s) {
  std::vector<std::pair<Symbol, int>> letters;
  Symbol x = intern("x"), y = intern("y");
  for (char c : s) letters.emplace_back((c == 'x' || c == 'X') ? x : y, (c == 'x' || c == 'y') ? 1 : -1);
  return Word::from_letters(letters);
}

bool shortlex(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

// ---------------------------------------------------------------- HNN

struct LPoly {
  int lo = 0;
  std::vector<modp::Elem> c;
  modp::Elem at(int d) const {
    int i = d - lo;
    return (i < 0 || i >= static_cast<int>(c.size())) ? modp::Elem{} : c[static_cast<size_t>(i)];
  }
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
};

LPoly lp_axpy(const modp::Context& ctx, const LPoly& u, const modp::Elem& a, const LPoly& v, const modp::Elem& b) {
  if (u.c.empty()) {
    LPoly r = v;
    for (auto& e : r.c) e = ctx.mul(e, b);
    return r;
  }
  if (v.c.empty()) {
    LPoly r = u;
    for (auto& e : r.c) e = ctx.mul(e, a);
    return r;
  }
  int lo = std::min(u.lo, v.lo);
  int hi = std::max(u.hi(), v.hi());
  LPoly r;
  r.lo = lo;
  r.c.resize(static_cast<size_t>(hi - lo + 1));
  for (int d = lo; d <= hi; ++d) {
    r.c[static_cast<size_t>(d - lo)] = ctx.add(ctx.mul(u.at(d), a), ctx.mul(v.at(d), b));
  }
  return r;
}

using LMat = std::array<LPoly, 4>;

// P * s^n * g.
LMat step(const modp::Context& ctx, const LMat& P, int n, const modp::Mat& g) {
  LMat Q = P;
  Q[0].lo += n;
  Q[2].lo += n;
  Q[1].lo -= n;
  Q[3].lo -= n;
  LMat R;
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < 2; ++col) {
      R[static_cast<size_t>(2 * row + col)] =
          lp_axpy(ctx, Q[static_cast<size_t>(2 * row)], g.e[col], Q[static_cast<size_t>(2 * row + 1)], g.e[2 + col]);
    }
  }
  return R;
}

std::string form_label(const HnnNormalForm& f) {
  std::string s;
  for (size_t i = 0; i < f.n.size(); ++i) {
    if (i) s += " ";
    s += "s^" + std::to_string(f.n[i]) + " (" + f.g[i].to_string() + ")";
  }
  return s;
}

// Null space of the 4x4 linear system over a field, by Gaussian elimination.
std::vector<std::array<FieldElement, 4>> null_space(std::array<std::array<FieldElement, 4>, 4> m, const TowerPtr& t) {
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < 4 && row < 4; ++col) {
    int p = -1;
    for (int r = row; r < 4; ++r) {
      if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(p)]);
    FieldElement inv = m[static_cast<size_t>(row)][static_cast<size_t>(col)].inv();
    for (auto& e : m[static_cast<size_t>(row)]) e *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == row) continue;
      FieldElement f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int c = 0; c < 4; ++c) {
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * m[static_cast<size_t>(row)][static_cast<size_t>(c)];
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::array<FieldElement, 4>> basis;
  for (int free = 0; free < 4; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::array<FieldElement, 4> v{FieldElement(t), FieldElement(t), FieldElement(t), FieldElement(t)};
    v[static_cast<size_t>(free)] = FieldElement(t, Integer(1));
    for (size_t r = 0; r < pivot_col.size(); ++r) {
      v[static_cast<size_t>(pivot_col[r])] = -m[r][static_cast<size_t>(free)];
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Certified:
      return "certified";
    case Status::Refuted:
      return "refuted";
    case Status::Bounded:
      return "bounded";
  }
  return "?";
}

bool is_constant(const FieldElement& u) {
  if (u.support() != 0) return false;
  if (u.in_base()) return true;
  const FieldTower& t = *u.tower();
  return (t.ext_P().support() | t.ext_Q().support() | t.ext_E().support()) == 0;
}

bool reverify(const Report& r) {
  if ((r.status == Status::Certified || r.status == Status::Refuted) && r.witnesses.empty()) return false;
  std::optional<AffineModel> affine;
  if (auto it = r.parameters.find("m"); it != r.parameters.end()) affine.emplace(std::stoll(it->second));
  for (const Witness& w : r.witnesses) {
    const std::string& p = w.property;
    if (p == "info") continue;
    if (p == "identity" || p == "not_identity" || p == "not_pm_identity" || p == "minus_identity" ||
        p == "trace_pm2") {
      if (!w.matrix) return false;
      const Mat2& m = *w.matrix;
      bool ok = p == "identity"          ? m.is_identity()
                : p == "not_identity"    ? !m.is_identity()
                : p == "not_pm_identity" ? !m.is_pm_identity()
                : p == "minus_identity"  ? m.is_minus_identity()
                                         : is_pm2(m.trace());
      if (!ok) return false;
    } else if (p == "zero" || p == "nonzero" || p == "non_constant") {
      if (!w.element) return false;
      bool ok = p == "zero" ? w.element->is_zero() : p == "nonzero" ? !w.element->is_zero() : !is_constant(*w.element);
      if (!ok) return false;
    } else if (p == "free_equation") {
      if (Word::parse(w.lhs) != Word::parse(w.rhs)) return false;
    } else if (p == "affine_identity" || p == "affine_not_identity") {
      if (!affine) return false;
      bool id = affine->is_identity(affine->image(Word::parse(w.lhs)));
      if (id != (p == "affine_identity")) return false;
    } else {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- scans

Report check_relations(const MarkedRep& rep) {
  Report r;
  r.claim = "relations";
  r.status = Status::Certified;
  for (const Word& w : rep.relators()) {
    ++r.examined;
    Mat2 m = rep.word_image(w);
    if (m.is_identity()) {
      r.witnesses.push_back(mat_witness(w.to_string(), "identity", m));
    } else {
      r.status = Status::Refuted;
      r.witnesses.insert(r.witnesses.begin(), mat_witness(w.to_string(), "not_identity", m));
    }
  }
  if (rep.relators().empty()) r.witnesses.push_back(info_witness("no relators declared"));
  return r;
}

Report trace_pm2_scan(const MarkedRep& rep, int L) {
  check_bound(L);
  Report r;
  r.claim = "trace-pm2";
  r.bound = L;
  r.status = Status::Bounded;
  modp::Rep mrep(rep);
  const modp::Context& ctx = mrep.context();
  for (const Word& w : enumerate_cyclically_reduced(rep.generators(), L)) {
    ++r.examined;
    if (!mod_pm2(ctx, mrep.word_image(w))) continue;
    Mat2 m = rep.word_image(w);
    if (is_pm2(m.trace()) && !m.is_identity()) {
      r.status = Status::Refuted;
      r.witnesses.push_back(mat_witness(w.to_string(), "trace_pm2", m));
      r.witnesses.push_back(mat_witness(w.to_string(), "not_identity", m));
      break;
    }
  }
  return r;
}

Report ct_scan(const MarkedRep& rep, int L) {
  check_bound(L);
  Report r;
  r.claim = "ct";
  r.bound = L;
  r.status = Status::Bounded;
  modp::Rep mrep(rep);
  const modp::Context& ctx = mrep.context();
  std::vector<Word> words = enumerate_words(rep.generators(), L);
  std::vector<modp::Mat> imgs;
  for (const Word& w : words) imgs.push_back(mrep.word_image(w));
  // Exact commuting test, called only when the modular images commute.
  auto commute_exact = [&](size_t i, size_t j) {
    Mat2 a = rep.word_image(words[i]);
    Mat2 b = rep.word_image(words[j]);
    return a * b == b * a;
  };
  for (size_t gi = 0; gi < words.size(); ++gi) {
    if (ctx.is_identity(imgs[gi]) && rep.word_image(words[gi]).is_identity()) continue;
    ++r.examined;
    std::vector<size_t> cent;
    for (size_t u = 0; u < words.size(); ++u) {
      if (u == gi) continue;
      if (!ctx.is_identity(mod_commutator(ctx, imgs[u], imgs[gi]))) continue;
      if (ctx.is_identity(imgs[u]) && rep.word_image(words[u]).is_identity()) continue;
      if (commute_exact(u, gi)) cent.push_back(u);
    }
    for (size_t i = 0; i < cent.size(); ++i) {
      for (size_t j = i + 1; j < cent.size(); ++j) {
        if (ctx.is_identity(mod_commutator(ctx, imgs[cent[i]], imgs[cent[j]]))) continue;
        const Word& g = words[gi];
        const Word& u = words[cent[i]];
        const Word& v = words[cent[j]];
        r.status = Status::Refuted;
        r.witnesses.push_back(mat_witness("[" + u.to_string() + ", " + g.to_string() + "]", "identity",
                                          rep.word_image(commutator(u, g))));
        r.witnesses.push_back(mat_witness("[" + v.to_string() + ", " + g.to_string() + "]", "identity",
                                          rep.word_image(commutator(v, g))));
        r.witnesses.push_back(mat_witness("[" + u.to_string() + ", " + v.to_string() + "]", "not_identity",
                                          rep.word_image(commutator(u, v))));
        r.witnesses.push_back(mat_witness(g.to_string(), "not_identity", rep.word_image(g)));
        return r;
      }
    }
  }
  return r;
}

Report ct_scan_bs1m(long long m, int L) {
  check_bound(L);
  if (m == 0) throw DegenerateParameter("BS(1,0) is not a group extension of this kind");
  Report r;
  r.claim = "ct";
  r.bound = L;
  r.status = Status::Bounded;
  r.parameters["m"] = std::to_string(m);
  r.notes.push_back("evaluated in the faithful affine model z -> m^k z + b of BS(1,m)");
  AffineModel model(m);
  std::vector<Word> words = enumerate_words({intern("x"), intern("t")}, L);
  std::vector<Affine> imgs;
  for (const Word& w : words) imgs.push_back(model.image(w));
  auto commute = [&](size_t i, size_t j) {
    return AffineModel::equal(model.compose(imgs[i], imgs[j]), model.compose(imgs[j], imgs[i]));
  };
  for (size_t gi = 0; gi < words.size(); ++gi) {
    if (model.is_identity(imgs[gi])) continue;
    ++r.examined;
    std::vector<size_t> cent;
    for (size_t u = 0; u < words.size(); ++u) {
      if (u != gi && !model.is_identity(imgs[u]) && commute(u, gi)) cent.push_back(u);
    }
    for (size_t i = 0; i < cent.size(); ++i) {
      for (size_t j = i + 1; j < cent.size(); ++j) {
        if (commute(cent[i], cent[j])) continue;
        const Word& g = words[gi];
        const Word& u = words[cent[i]];
        const Word& v = words[cent[j]];
        r.status = Status::Refuted;
        r.witnesses.push_back(word_witness("[u, g]", "affine_identity", commutator(u, g).to_string()));
        r.witnesses.push_back(word_witness("[v, g]", "affine_identity", commutator(v, g).to_string()));
        r.witnesses.push_back(word_witness("[u, v]", "affine_not_identity", commutator(u, v).to_string()));
        r.witnesses.push_back(word_witness("g", "affine_not_identity", g.to_string()));
        r.parameters["u"] = u.to_string();
        r.parameters["v"] = v.to_string();
        r.parameters["g"] = g.to_string();
        return r;
      }
    }
  }
  return r;
}

Report csa_scan(const MarkedRep& rep, int L) {
  check_bound(L);
  Report r;
  r.claim = "csa";
  r.bound = L;
  r.status = Status::Bounded;
  modp::Rep mrep(rep);
  const modp::Context& ctx = mrep.context();
  std::vector<Word> words = enumerate_words(rep.generators(), L);
  std::vector<modp::Mat> imgs;
  for (const Word& w : words) imgs.push_back(mrep.word_image(w));
  long long parabolic = 0;
  for (size_t gi = 0; gi < words.size(); ++gi) {
    ++r.examined;
    if (!mod_pm2(ctx, imgs[gi])) continue;
    Mat2 G = rep.word_image(words[gi]);
    if (G.is_minus_identity()) {
      r.status = Status::Refuted;
      r.witnesses.push_back(mat_witness(words[gi].to_string(), "minus_identity", G));
      return r;
    }
    FieldElement tr = G.trace();
    if (!is_pm2(tr) || G.is_identity()) continue;
    ++parabolic;
    // The eigenline is Ker N = Im N for the nilpotent N = G - (tr/2) I.
    FieldElement half = tr / FieldElement(G.tower(), Integer(2));
    FieldElement n11 = G.e11() - half, n21 = G.e21();
    FieldElement v1 = n11, v2 = n21;
    if (v1.is_zero() && v2.is_zero()) {
      v1 = G.e12();
      v2 = G.e22() - half;
    }
    auto mv1 = ctx.map(v1);
    auto mv2 = ctx.map(v2);
    for (size_t hi = 0; hi < words.size(); ++hi) {
      const modp::Mat& h = imgs[hi];
      if (mv1 && mv2) {
        modp::Elem hv1 = ctx.add(ctx.mul(h.e[0], *mv1), ctx.mul(h.e[1], *mv2));
        modp::Elem hv2 = ctx.add(ctx.mul(h.e[2], *mv1), ctx.mul(h.e[3], *mv2));
        if (!ctx.sub(ctx.mul(*mv1, hv2), ctx.mul(*mv2, hv1)).is_zero()) continue;
      }
      Mat2 H = rep.word_image(words[hi]);
      FieldElement hv1 = H.e11() * v1 + H.e12() * v2;
      FieldElement hv2 = H.e21() * v1 + H.e22() * v2;
      FieldElement det = v1 * hv2 - v2 * hv1;
      if (!det.is_zero()) continue;
      FieldElement th = H.trace();
      if (is_pm2(th)) continue;
      r.status = Status::Refuted;
      r.witnesses.push_back(mat_witness(words[gi].to_string(), "trace_pm2", G));
      r.witnesses.push_back(mat_witness(words[gi].to_string(), "not_identity", G));
      r.witnesses.push_back(elem_witness("det[v, " + words[hi].to_string() + " v]", "zero", det));
      r.witnesses.push_back(elem_witness("tr " + words[hi].to_string() + " - 2", "nonzero", th - 2));
      r.witnesses.push_back(elem_witness("tr " + words[hi].to_string() + " + 2", "nonzero", th + 2));
      return r;
    }
  }
  r.parameters["parabolic_words"] = std::to_string(parabolic);
  return r;
}

namespace {

Report scan_words(const MarkedRep& rep, const std::vector<Word>& words, int L, const std::string& kind) {
  Report r;
  r.claim = "faithful";
  r.bound = L;
  r.status = Status::Bounded;
  r.parameters["normal_forms"] = kind;
  modp::Rep mrep(rep);
  const modp::Context& ctx = mrep.context();
  for (const Word& w : words) {
    ++r.examined;
    modp::Mat m = mrep.word_image(w);
    if (!ctx.is_identity(m) && !ctx.is_minus_identity(m)) continue;
    Mat2 e = rep.word_image(w);
    if (e.is_pm_identity()) {
      r.status = Status::Refuted;
      r.witnesses.push_back(mat_witness(w.to_string(), e.is_identity() ? "identity" : "minus_identity", e));
      return r;
    }
  }
  return r;
}

}  // namespace

Report faithfulness_scan(const MarkedRep& rep, const std::vector<Symbol>& generators, int L) {
  check_bound(L);
  return scan_words(rep, enumerate_words(generators, L), L, "free");
}

Report faithfulness_scan(const MarkedRep& rep, const AmalgamSpec& spec, int L) {
  check_bound(L);
  return scan_words(rep, enumerate_normal_forms(spec, L), L, "amalgam");
}

Report faithfulness_scan(const MarkedRep& rep, const HnnSpec& spec, int L) {
  check_bound(L);
  return scan_words(rep, enumerate_normal_forms(spec, L), L, "hnn");
}

Report torus_bundle_box_scan(const TorusBundle& tb, int box) {
  if (box < 0) throw InvalidSpec("box must be non-negative");
  Report r;
  r.claim = "faithful";
  r.bound = box;
  r.status = Status::Bounded;
  r.parameters["normal_forms"] = "a^p b^q t^r";
  Symbol a = intern("a"), b = intern("b"), t = intern("t");
  const TowerPtr& T = tb.rep.tower();
  FieldElement zero(T);
  for (long long p = -box; p <= box; ++p) {
    for (long long q = -box; q <= box; ++q) {
      for (long long k = -box; k <= box; ++k) {
        Word w = Word::letter(a, p) * Word::letter(b, q) * Word::letter(t, k);
        Mat2 m = tb.rep.word_image(w);
        ++r.examined;
        if (!tb.abelian) {
          FieldElement mk = tb.mu.pow(k);
          FieldElement off = mk.inv() * (tb.x * q + p);
          if (m != Mat2(mk, off, zero, mk.inv())) {
            throw BoundedCheckFailed("closed form disagrees at " + w.to_string());
          }
        }
        bool trivial = p == 0 && q == 0 && k == 0;
        if (m.is_pm_identity() != trivial) {
          r.status = Status::Refuted;
          r.witnesses.push_back(mat_witness(w.to_string(), m.is_identity() ? "identity" : "minus_identity", m));
          return r;
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------- obstructions

Report gluing_obstruction(long long lo, long long hi) {
  if (lo > hi) throw InvalidSpec("empty range for n");
  Report r;
  r.claim = "gluing";
  r.parameters["n_lo"] = std::to_string(lo);
  r.parameters["n_hi"] = std::to_string(hi);
  Figure8Family f8 = figure8_family();
  Mat2 l = f8.rep.word_image(f8.longitude);
  FieldElement d1 = l.e11();
  r.parameters["d1"] = d1.to_string();

  DiscreteFigure8 disc = figure8_discrete(Branch::Plus);
  Mat2 l1 = disc.rep.word_image(disc.longitude);
  Mat2 m1 = disc.rep.word_image(disc.meridian);
  auto galois = [](const Mat2& m) {
    return Mat2(m.e11().conjugate(), m.e12().conjugate(), m.e21().conjugate(), m.e22().conjugate());
  };
  // Conjugation by +-diag(i, -i) negates the off-diagonal entries.
  auto by_x = [](const Mat2& m) { return Mat2(m.e11(), -m.e12(), -m.e21(), m.e22()); };
  std::vector<Mat2> targets{l1, galois(l1), l1.negated(), galois(l1).negated()};

  bool obstructed_any = false;
  std::vector<long long> generic_free, omega_free;
  for (long long n = lo; n <= hi; ++n) {
    std::string tag = "n=" + std::to_string(n);
    FieldElement ln = f8.lambda.pow(n);
    FieldElement e1 = ln * d1 * d1 - 1;
    FieldElement e2 = ln - 1;
    bool generic_ok = e1.is_zero() || e2.is_zero();
    Mat2 l2 = m1.pow(n) * l1;
    Mat2 xl2 = by_x(l2);
    bool omega_ok = false;
    for (const Mat2& c : targets) omega_ok = omega_ok || xl2 == c;
    if (generic_ok) generic_free.push_back(n);
    if (omega_ok) omega_free.push_back(n);
    if (n == 0) {
      r.witnesses.push_back(info_witness(tag + ": no obstruction; longitudes identified"));
      r.witnesses.push_back(elem_witness(tag + ": lambda^n - 1", "zero", e2));
      continue;
    }
    if (!generic_ok) {
      obstructed_any = true;
      r.witnesses.push_back(elem_witness(tag + ": lambda^n d1^2 - 1", "nonzero", e1));
      r.witnesses.push_back(elem_witness(tag + ": lambda^n - 1", "nonzero", e2));
    }
    if (!omega_ok) {
      r.witnesses.push_back(elem_witness(tag + ": omega branch, X l2 X^-1 - conj(l1) top-right", "nonzero",
                                         xl2.e12() - galois(l1).e12()));
      r.witnesses.push_back(elem_witness(tag + ": omega branch, X l2 X^-1 - l1 top-right", "nonzero",
                                         xl2.e12() - l1.e12()));
    }
  }
  auto join = [](const std::vector<long long>& v) {
    std::string s;
    for (long long n : v) s += (s.empty() ? "" : ",") + std::to_string(n);
    return s;
  };
  r.parameters["unobstructed_generic"] = join(generic_free);
  r.parameters["unobstructed_omega"] = join(omega_free);
  if (generic_free != omega_free) r.notes.push_back("the two branches disagree on the unobstructed set");
  r.status = obstructed_any ? Status::Refuted : Status::Certified;
  return r;
}

Report hnn_endterm_invariant(const HnnConstruction& hnn, const HnnNormalForm& form) {
  if (form.n.empty() || form.n.size() != form.g.size()) throw MalformedNormalForm("need r >= 1 pairs (n_i, g_i)");
  for (size_t i = 0; i < form.n.size(); ++i) {
    if (form.n[i] == 0) throw MalformedNormalForm("exponent n_" + std::to_string(i + 1) + " is zero");
    if (hnn.base.word_image(form.g[i]).is_diagonal()) {
      throw MalformedNormalForm("g_" + std::to_string(i + 1) + " = " + form.g[i].to_string() + " is diagonal");
    }
  }
  Report r;
  r.claim = "hnn-invariant";
  r.parameters["form"] = form_label(form);
  const TowerPtr& T = hnn.rep.tower();
  int xv = T->index_of(hnn.parameter);
  FieldElement x = FieldElement::indeterminate(T, hnn.parameter);
  FieldElement zero(T);
  Mat2 gamma = Mat2::identity(T);
  for (size_t i = 0; i < form.n.size(); ++i) {
    Mat2 s(x.pow(form.n[i]), zero, zero, x.pow(-form.n[i]));
    gamma = gamma * s * hnn.rep.word_image(form.g[i]);
  }
  long long n = 0;
  for (size_t i = 1; i < form.n.size(); ++i) n += std::llabs(form.n[i]);
  long long S = form.n[0] + n, D = form.n[0] - n;
  r.parameters["S"] = std::to_string(S);
  r.parameters["D"] = std::to_string(D);
  r.status = Status::Certified;
  const char* names[4] = {"e11", "e12", "e21", "e22"};
  for (int k = 0; k < 4; ++k) {
    auto lc = gamma.entry(k).laurent_coefficients(xv);
    long long top = k < 2 ? S : -D;
    long long bot = k < 2 ? D : -S;
    bool ok = !lc.empty() && lc.rbegin()->first == top && lc.begin()->first == bot;
    if (!ok) {
      r.status = Status::Refuted;
      r.witnesses.insert(r.witnesses.begin(), mat_witness(std::string(names[k]) + " has the wrong Laurent support",
                                                          "not_identity", gamma));
      return r;
    }
    r.witnesses.push_back(elem_witness(std::string(names[k]) + " x^" + std::to_string(top), "nonzero",
                                       lc.rbegin()->second));
    r.witnesses.push_back(elem_witness(std::string(names[k]) + " x^" + std::to_string(bot), "nonzero",
                                       lc.begin()->second));
  }
  FieldElement tr = gamma.trace();
  if (is_constant(tr)) {
    r.status = Status::Refuted;
    r.witnesses.insert(r.witnesses.begin(), elem_witness("trace is constant", "zero", tr - tr));
    return r;
  }
  r.witnesses.push_back(elem_witness("trace", "non_constant", tr));
  return r;
}

Report hnn_invariant_scan(const HnnConstruction& hnn, int r_max, int n_max, int g_len) {
  check_bound(g_len);
  if (r_max < 1 || n_max < 1) throw InvalidSpec("r_max and n_max must be positive");
  Report r;
  r.claim = "hnn-invariant";
  r.bound = r_max;
  r.status = Status::Bounded;
  r.parameters["r_max"] = std::to_string(r_max);
  r.parameters["n_max"] = std::to_string(n_max);
  r.parameters["g_len"] = std::to_string(g_len);
  modp::Rep mrep(hnn.base);
  const modp::Context& ctx = mrep.context();
  std::vector<Word> gs;
  std::vector<modp::Mat> gm;
  for (const Word& w : enumerate_words(hnn.base.generators(), g_len)) {
    if (hnn.base.word_image(w).is_diagonal()) continue;
    gs.push_back(w);
    gm.push_back(mrep.word_image(w));
  }
  r.parameters["g_count"] = std::to_string(gs.size());
  std::vector<int> ns;
  for (int k = -n_max; k <= n_max; ++k) {
    if (k != 0) ns.push_back(k);
  }
  LMat id;
  id[0] = {0, {ctx.constant(1)}};
  id[3] = {0, {ctx.constant(1)}};
  id[1] = {0, {}};
  id[2] = {0, {}};
  HnnNormalForm form;
  long long exact_fallbacks = 0;
  bool failed = false;
  std::function<void(const LMat&, long long)> rec = [&](const LMat& P, long long nsum) {
    for (int nk : ns) {
      for (size_t gi = 0; gi < gs.size() && !failed; ++gi) {
        form.n.push_back(nk);
        form.g.push_back(gs[gi]);
        long long sum = form.n.size() == 1 ? 0 : nsum + std::llabs(nk);
        LMat Q = step(ctx, P, nk, gm[gi]);
        ++r.examined;
        long long S = form.n[0] + sum, D = form.n[0] - sum;
        bool ok = true;
        for (int k = 0; k < 4 && ok; ++k) {
          long long top = k < 2 ? S : -D;
          long long bot = k < 2 ? D : -S;
          const LPoly& e = Q[static_cast<size_t>(k)];
          ok = !e.at(static_cast<int>(top)).is_zero() && !e.at(static_cast<int>(bot)).is_zero();
          // Support beyond [bot, top] would contradict the degree count.
          for (int d = e.lo; ok && d <= e.hi(); ++d) {
            if ((d < bot || d > top) && !e.at(d).is_zero()) ok = false;
          }
        }
        LPoly tr = lp_axpy(ctx, Q[0], ctx.constant(1), Q[3], ctx.constant(1));
        bool nonconst = false;
        for (int d = tr.lo; d <= tr.hi(); ++d) nonconst = nonconst || (d != 0 && !tr.at(d).is_zero());
        if (!ok || !nonconst) {
          ++exact_fallbacks;
          Report exact = hnn_endterm_invariant(hnn, form);
          if (exact.status == Status::Refuted) {
            r.status = Status::Refuted;
            r.witnesses = exact.witnesses;
            r.witnesses.insert(r.witnesses.begin(), info_witness(form_label(form)));
            failed = true;
          }
        }
        if (!failed && static_cast<int>(form.n.size()) < r_max) rec(Q, sum);
        form.n.pop_back();
        form.g.pop_back();
      }
      if (failed) return;
    }
  };
  rec(id, 0);
  r.parameters["exact_fallbacks"] = std::to_string(exact_fallbacks);
  return r;
}

Report order4_obstruction(const HnnSpec& spec, const MarkedRep& rep, const Word& g) {
  spec.validate();
  if (spec.pairs.size() != 1) throw InvalidSpec("order4_obstruction needs exactly one associated pair");
  const Word& a = spec.pairs[0].first;
  const Word& b = spec.pairs[0].second;
  Mat2 A = rep.word_image(a);
  Mat2 B = rep.word_image(b);
  Mat2 G = rep.word_image(g);
  if (B != G * A.inv() * G.inv()) {
    throw HypothesisNotMet("image of " + b.to_string() + " is not g a^-1 g^-1 for g = " + g.to_string());
  }
  Report r;
  r.claim = "order4";
  r.status = Status::Refuted;
  const TowerPtr& T = rep.tower();
  // U = g^-1 t must satisfy U A = A^-1 U. Unknowns (u11, u12, u21, u22).
  Mat2 Ai = A.inv();
  std::array<std::array<FieldElement, 4>, 4> m;
  for (auto& row : m) row.fill(FieldElement(T));
  // (U A)_{ij} = sum_k u_ik A_kj ; (Ai U)_{ij} = sum_k Ai_ik u_kj.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      auto& row = m[static_cast<size_t>(2 * i + j)];
      for (int k = 0; k < 2; ++k) {
        row[static_cast<size_t>(2 * i + k)] += A.entry(2 * k + j);
        row[static_cast<size_t>(2 * k + j)] -= Ai.entry(2 * i + k);
      }
    }
  }
  auto basis = null_space(m, T);
  r.parameters["solution_dimension"] = std::to_string(basis.size());
  if (basis.empty()) {
    r.witnesses.push_back(info_witness("no matrix conjugates a to a^-1; the stable letter has no image at all"));
    return r;
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    r.witnesses.push_back(elem_witness("trace of solution " + std::to_string(i + 1), "zero", basis[i][0] + basis[i][3]));
  }
  Symbol t = spec.stable;
  Word u = g.inverse() * Word::letter(t);
  Word u4 = u.pow(4);
  r.witnesses.push_back(info_witness("trace zero and det one force (g^-1 t)^2 = -I, so " + u4.to_string() +
                                     " = I in any image"));
  r.parameters["forced_relation"] = u4.to_string();
  r.parameters["stable_exponent_sum"] = std::to_string(u4.exponent_sum(t));
  r.notes.push_back("a relator with nonzero stable-letter exponent sum is nontrivial in the HNN extension");
  return r;
}

Report triple_hnn_obstruction() {
  Report r;
  r.claim = "triple-hnn";
  r.status = Status::Refuted;
  TowerPtr tz = FieldTower::make({"z"});
  FieldElement z = FieldElement::indeterminate(tz, "z");
  FieldElement P = substitute_traces(trace_of_word(Word::parse("A*B*A^-1*B^-1")), z, z, z) - z;
  FieldElement factored = (z - 2) * (z * z - z - 1);
  r.parameters["polynomial"] = P.to_string();
  r.parameters["factored"] = "-(z - 2)*(z^2 - z - 1)";
  r.parameters["roots"] = "2, (1 + sqrt 5)/2, (1 - sqrt 5)/2";
  r.witnesses.push_back(elem_witness("P + (z - 2)(z^2 - z - 1)", "zero", P + factored));
  FieldElement at2 = substitute(P, {{"z", FieldElement(tz, Integer(2))}}, tz);
  r.witnesses.push_back(elem_witness("P(2)", "zero", at2));
  r.witnesses.push_back(info_witness("z = 2: a and b share a fixed point, so <a, b> is metabelian"));

  RationalFunction one(1);
  TowerPtr tp = FieldTower::make({}, FieldTower::Extension{"phi", one, one});
  FieldElement phi = FieldElement::theta(tp);
  FieldElement o(tp, Integer(1));
  FieldElement zr(tp);
  for (const FieldElement& tr : {phi, phi.conjugate()}) {
    FieldElement root = substitute(z * z - z - 1, {{"z", tr}}, tp);
    r.witnesses.push_back(elem_witness("z^2 - z - 1 at " + tr.to_string(), "zero", root));
    Mat2 M(tr, -o, o, zr);
    r.witnesses.push_back(mat_witness("M^5 for trace " + tr.to_string(), "minus_identity", M.pow(5)));
    r.witnesses.push_back(mat_witness("M^10 for trace " + tr.to_string(), "identity", M.pow(10)));
    r.witnesses.push_back(mat_witness("M^2 for trace " + tr.to_string(), "not_pm_identity", M.pow(2)));
  }
  r.notes.push_back("z^2 - z - 1 = 0 makes the common trace 2cos(pi/5) or 2cos(3pi/5), giving elements of order 10 in SL(2)");
  return r;
}

Report commutator_equation_search(long long m, long long n, int L) {
  check_bound(L);
  Report r;
  r.claim = "comm-eq";
  r.bound = L;
  r.parameters["m"] = std::to_string(m);
  r.parameters["n"] = std::to_string(n);
  bool prop_range = std::llabs(m) - std::llabs(n) >= 3;
  bool thm_range = std::llabs(m) >= 2 && std::llabs(n) >= 2;
  r.parameters["in_difference_range"] = prop_range ? "true" : "false";
  r.parameters["in_both_exponents_range"] = thm_range ? "true" : "false";

  // Positive control: [x,y] = [x,y]^2 [y,x].
  {
    Word c = Word::parse("x*y*x^-1*y^-1");
    Word rhs = c.pow(2) * Word::parse("y*x*y^-1*x^-1");
    if (c != rhs) throw BoundedCheckFailed("positive control [x,y] = [x,y]^2 [y,x] failed");
    r.witnesses.push_back(word_witness("control: [x,y] = [x,y]^2 [y,x]", "free_equation", c.to_string(),
                                       rhs.to_string()));
  }

  std::vector<std::string> words = all_words(L);
  std::unordered_set<std::string> cset;
  std::vector<std::string> comms;
  for (const std::string& u1 : words) {
    for (const std::string& u2 : words) {
      std::string c = reduce_concat(reduce_concat(reduce_concat(u1, u2), inverse(u1)), inverse(u2));
      if (!c.empty() && cset.insert(c).second) comms.push_back(c);
    }
  }
  std::sort(comms.begin(), comms.end(), shortlex);
  size_t amax = 0;
  for (const auto& c : comms) amax = std::max(amax, c.size());
  r.parameters["commutators"] = std::to_string(comms.size());

  std::optional<std::array<std::string, 3>> found;  // a, b, c
  if (m == 0 || n == 0) {
    long long e = m == 0 ? n : m;
    for (const std::string& b : comms) {
      ++r.examined;
      if (e == 0) break;
      std::string a = power(b, e);
      if (cset.count(a) != 0) {
        // c is any nontrivial commutator; it enters with exponent 0.
        if (m == 0) {
          found = std::array<std::string, 3>{a, comms.front(), b};
        } else {
          found = std::array<std::string, 3>{a, b, comms.front()};
        }
        break;
      }
    }
  } else {
    // a = X Y^-1 with X = b^m, Y = c^-n. X Y^-1 cancels the common suffix of X and Y.
    std::vector<std::string> ys;
    std::unordered_map<std::string, std::vector<size_t>> index;
    std::set<size_t> ylens;
    for (size_t i = 0; i < comms.size(); ++i) {
      std::string y = power(comms[i], -n);
      for (size_t k = 0; k <= y.size(); ++k) {
        index[std::to_string(y.size()) + ":" + y.substr(y.size() - k)].push_back(i);
      }
      ylens.insert(y.size());
      ys.push_back(std::move(y));
    }
    for (const std::string& b : comms) {
      std::string X = power(b, m);
      for (size_t len : ylens) {
        long long need = static_cast<long long>(X.size() + len) - static_cast<long long>(amax);
        size_t kk = need <= 0 ? 0 : static_cast<size_t>((need + 1) / 2);
        if (kk > std::min(X.size(), len)) continue;
        auto it = index.find(std::to_string(len) + ":" + X.substr(X.size() - kk));
        if (it == index.end()) continue;
        for (size_t ci : it->second) {
          ++r.examined;
          std::string a = reduce_concat(X, inverse(ys[ci]));
          if (!a.empty() && cset.count(a) != 0) {
            found = std::array<std::string, 3>{a, b, comms[ci]};
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
  }

  if (found) {
    Word a = to_word((*found)[0]), b = to_word((*found)[1]), c = to_word((*found)[2]);
    r.witnesses.push_back(word_witness("a = b^m c^n", "free_equation", a.to_string(),
                                       (b.pow(m) * c.pow(n)).to_string()));
    r.parameters["a"] = a.to_string();
    r.parameters["b"] = b.to_string();
    r.parameters["c"] = c.to_string();
    r.status = prop_range ? Status::Refuted : Status::Certified;
  } else {
    r.status = Status::Bounded;
  }
  return r;
}

Report lyndon_equation_scan(int L) {
  check_bound(L);
  Report r;
  r.claim = "lyndon";
  r.bound = L;
  r.status = Status::Bounded;
  Symbol a = intern("a"), b = intern("b");
  std::vector<Word> words = enumerate_words({a, b}, L);
  std::unordered_map<Word, Word, WordHash> squares;
  for (const Word& x : words) squares.emplace(x.pow(2), x);
  long long solutions = 0;
  bool control = false;
  Word control_x = Word::letter(a, 2), control_y = Word::letter(a);
  for (const Word& y : words) {
    for (const Word& z : words) {
      ++r.examined;
      auto it = squares.find(y.pow(2) * z.pow(2));
      if (it == squares.end()) continue;
      const Word& x = it->second;
      ++solutions;
      if (x == control_x && y == control_y && z == control_y) control = true;
      if (!commute(x, y) || !commute(y, z) || !commute(x, z)) {
        r.status = Status::Refuted;
        r.witnesses.push_back(word_witness("x^2 = y^2 z^2", "free_equation", x.pow(2).to_string(),
                                           (y.pow(2) * z.pow(2)).to_string()));
        r.parameters["x"] = x.to_string();
        r.parameters["y"] = y.to_string();
        r.parameters["z"] = z.to_string();
        return r;
      }
    }
  }
  // Explicit control, independent of the bound.
  if (control_x.pow(2) != control_y.pow(2) * control_y.pow(2)) throw BoundedCheckFailed("lyndon control failed");
  if (L >= 2 && !control) throw BoundedCheckFailed("lyndon scan missed the control solution x = a^2, y = z = a");
  r.witnesses.push_back(word_witness("control: (a^2)^2 = a^2 a^2", "free_equation", control_x.pow(2).to_string(),
                                     (control_y.pow(2) * control_y.pow(2)).to_string()));
  r.parameters["solutions"] = std::to_string(solutions);
  return r;
}

}  // namespace sl2cert
