#include "sl2cert/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <tuple>

#include "sl2cert/errors.hpp"
#include "sl2cert/modular.hpp"
#include "sl2cert/tracering.hpp"

namespace sl2cert {

namespace {

FieldElement constant(const TowerPtr& t, long long c) { return FieldElement(t, Integer(c)); }

void require_relations(const MarkedRep& rep, const std::string& what) {
  Report r = check_relations(rep);
  if (r.status != Status::Certified) {
    std::string w = r.witnesses.empty() ? std::string("?") : r.witnesses.front().label;
    throw BoundedCheckFailed(what + ": relator " + w + " does not map to I");
  }
}

std::string fresh(const std::string& base, const std::set<std::string>& taken) {
  std::string n = base;
  while (taken.count(n) != 0) n += "_2";
  return n;
}

RationalFunction remap_rf(const RationalFunction& f, const std::vector<int>& map) {
  return RationalFunction(f.num().remap(map), f.den().remap(map));
}

// Tower holding the indeterminates of t1, then those of t2 (renamed on clash,
// `skip2` left out), then `extra` fresh names. At most one extension survives.
struct JoinedTower {
  TowerPtr tower;
  std::map<std::string, std::string> names2;  // t2 indeterminate -> joined name
  std::vector<std::string> extra;             // actual names of the extras
};

JoinedTower join_towers(const FieldTower& t1, const FieldTower& t2, const std::vector<std::string>& extra,
                        const std::string& skip2 = "") {
  JoinedTower out;
  std::vector<std::string> names = t1.indeterminates();
  std::set<std::string> taken(names.begin(), names.end());
  if (t1.has_extension()) taken.insert(t1.extension().name);
  if (t2.has_extension()) taken.insert(t2.extension().name);
  for (const std::string& n : t2.indeterminates()) {
    if (n == skip2) continue;
    std::string nn = fresh(n, taken);
    taken.insert(nn);
    names.push_back(nn);
    out.names2[n] = nn;
  }
  for (const std::string& e : extra) {
    std::string nn = fresh(e, taken);
    taken.insert(nn);
    names.push_back(nn);
    out.extra.push_back(nn);
  }

  std::optional<FieldTower::Extension> ext;
  if (t1.has_extension()) ext = t1.extension();
  if (t2.has_extension()) {
    std::vector<int> map(static_cast<size_t>(t2.size()), 0);
    uint32_t skipped = 0;
    for (int i = 0; i < t2.size(); ++i) {
      const std::string& n = t2.indeterminates()[static_cast<size_t>(i)];
      if (n == skip2) {
        skipped |= 1U << i;
        continue;
      }
      map[static_cast<size_t>(i)] = static_cast<int>(
          std::find(names.begin(), names.end(), out.names2[n]) - names.begin());
    }
    uint32_t used = t2.ext_P().support() | t2.ext_Q().support() | t2.ext_E().support();
    if ((used & skipped) != 0) {
      throw UnsupportedTower("the extension of the second tower depends on the parameter '" + skip2 + "'");
    }
    FieldTower::Extension e2{t2.extension().name, remap_rf(t2.extension().p, map), remap_rf(t2.extension().q, map)};
    if (ext) {
      if (ext->name != e2.name || ext->p != e2.p || ext->q != e2.q) {
        throw UnsupportedTower("both towers carry different quadratic extensions");
      }
    } else {
      ext = e2;
    }
  }
  out.tower = FieldTower::make(names, ext);
  return out;
}

Substitution rename_into(const FieldTower& src, const std::map<std::string, std::string>& names,
                         const TowerPtr& target) {
  Substitution s;
  for (const auto& [from, to] : names) {
    if (src.index_of(from) >= 0) s.emplace(from, FieldElement::indeterminate(target, to));
  }
  return s;
}

std::map<Symbol, Mat2> move_images(const MarkedRep& rep, const Substitution& sigma, const TowerPtr& target) {
  std::map<Symbol, Mat2> out;
  for (const auto& [s, m] : rep.images()) {
    out.emplace(s, sigma.empty() ? m.embed(target) : m.substituted(sigma, target));
  }
  return out;
}

void require_disjoint(const MarkedRep& a, const MarkedRep& b) {
  for (Symbol s : b.generators()) {
    if (a.has_generator(s)) throw InvalidSpec("generator '" + symbol_name(s) + "' appears in both factors");
  }
}

// Solves f = c for the indeterminate `var` of f's tower, provided the
// numerator of f - c is affine in var. The root is returned in `base`, whose
// indeterminates are a prefix of f's tower without var.
std::optional<FieldElement> solve_affine(const FieldElement& f, const FieldElement& c, int var,
                                         const TowerPtr& base) {
  FieldElement g = f - c;
  if (g.A().degree_in(var) > 1 || g.B().degree_in(var) > 1) return std::nullopt;
  if (g.A().degree_in(var) < 1 && g.B().degree_in(var) < 1) return std::nullopt;
  FieldElement lin = FieldElement::from_parts(base, g.A().coeff_in(var, 1), g.B().coeff_in(var, 1), 1);
  FieldElement cst = FieldElement::from_parts(base, g.A().coeff_in(var, 0), g.B().coeff_in(var, 0), 1);
  if (lin.is_zero()) return std::nullopt;
  return -cst / lin;
}

// Columns v, Mv for a cyclic vector v among e1, e2, e1 + e2.
std::array<FieldElement, 4> cyclic_basis(const Mat2& m) {
  if (!m.e21().is_zero()) return {constant(m.tower(), 1), m.e11(), FieldElement(m.tower()), m.e21()};
  if (!m.e12().is_zero()) return {FieldElement(m.tower()), m.e12(), constant(m.tower(), 1), m.e22()};
  FieldElement one = constant(m.tower(), 1);
  FieldElement k12 = m.e11() + m.e12();
  FieldElement k22 = m.e21() + m.e22();
  if ((k22 - k12).is_zero()) throw NotDiagonalizable("scalar edge image has no cyclic vector");
  return {one, k12, one, k22};
}

// Entries of X with X m2 X^-1 = m1, for non-scalar m1, m2 of equal trace.
std::array<FieldElement, 4> intertwiner(const Mat2& m1, const Mat2& m2) {
  auto k1 = cyclic_basis(m1);
  auto k2 = cyclic_basis(m2);
  // X = K1 * adj(K2).
  FieldElement a11 = k2[3], a12 = -k2[1], a21 = -k2[2], a22 = k2[0];
  return {k1[0] * a11 + k1[1] * a21, k1[0] * a12 + k1[1] * a22, k1[2] * a11 + k1[3] * a21,
          k1[2] * a12 + k1[3] * a22};
}

std::map<Symbol, Mat2> conjugate_images(const std::map<Symbol, Mat2>& images, const std::array<FieldElement, 4>& x) {
  std::map<Symbol, Mat2> out;
  for (const auto& [s, m] : images) out.emplace(s, m.conjugated_by(x[0], x[1], x[2], x[3]));
  return out;
}

std::map<Symbol, Mat2> restrict_images(const MarkedRep& rep, const std::vector<Symbol>& gens) {
  std::map<Symbol, Mat2> out;
  for (Symbol s : gens) out.emplace(s, rep.image(s));
  return out;
}

// Bounded edge condition: tr[g, h] != 2 for factor words g outside <edge>.
// Words whose image already equals a power of the edge image are skipped.
Report edge_condition_scan(const MarkedRep& rep, const std::vector<Symbol>& gens, const Word& edge, int L,
                           const std::string& label) {
  check_bound(L);
  Report r;
  r.claim = "edge-condition";
  r.bound = L;
  r.parameters["factor"] = label;
  r.parameters["edge"] = edge.to_string();
  modp::Rep mrep(rep);
  const modp::Context& ctx = mrep.context();
  modp::Mat h = mrep.word_image(edge);
  modp::Mat hinv = ctx.inv(h);
  Mat2 H = rep.word_image(edge);
  long long skipped = 0;
  bool failed = false;
  for_each_word(gens, L, [&](const Word& g) {
    if (power_of(g, edge).has_value()) return true;
    ++r.examined;
    modp::Mat gm = mrep.word_image(g);
    modp::Mat c = ctx.mul(ctx.mul(gm, h), ctx.mul(ctx.inv(gm), hinv));
    if (!ctx.sub(ctx.trace(c), ctx.constant(2)).is_zero()) return true;
    Mat2 G = rep.word_image(g);
    Mat2 C = commutator(G, H);
    if (!(C.trace() - 2).is_zero()) return true;
    if (C.is_identity()) {
      for (long long k = -static_cast<long long>(g.length()) - 1; k <= static_cast<long long>(g.length()) + 1; ++k) {
        if (H.pow(k) == G) {
          ++skipped;
          return true;
        }
      }
    }
    r.status = Status::Refuted;
    r.witnesses.push_back({g.to_string(), "trace_pm2", std::nullopt, C, "", ""});
    failed = true;
    return false;
  });
  if (!failed) r.status = Status::Bounded;
  if (skipped > 0) r.notes.push_back(std::to_string(skipped) + " words equal to a power of the edge image were skipped");
  return r;
}

}  // namespace

// ------------------------------------------------------------ figure-eight

Figure8Family figure8_family() {
  Polynomial l = Polynomial::variable(0);
  Polynomial l2 = l * l;
  Polynomial l4 = l2 * l2;
  // x = (l^2 + 1)/l, so 1 + x^2 and -(2x^2 - 1) have denominator l^2.
  RationalFunction p(l4 + l2 * Polynomial(3) + Polynomial(1), l2);
  RationalFunction q(l4 * Polynomial(-2) - l2 * Polynomial(3) - Polynomial(2), l2);
  TowerPtr t = FieldTower::make({"lambda"}, FieldTower::Extension{"z", p, q});
  FieldElement lam = FieldElement::indeterminate(t, "lambda");
  FieldElement z = FieldElement::theta(t);
  FieldElement one = constant(t, 1);
  FieldElement zero(t);
  FieldElement x = lam + lam.inv();
  FieldElement mu = (lam * z - x) / (lam * lam - 1);
  Mat2 A(lam, zero, zero, lam.inv());
  Mat2 B(mu, one, mu * (x - mu) - 1, x - mu);
  Symbol a = intern("A"), b = intern("B");
  MarkedRep rep(t, {a, b}, {{a, A}, {b, B}}, {figure8_relator_word()});
  require_relations(rep, "figure8_family");
  return {rep, Word::letter(a), figure8_longitude_word(), lam, x, z, mu};
}

DiscreteFigure8 figure8_discrete(Branch branch) {
  RationalFunction m1(Polynomial(-1));
  TowerPtr t = FieldTower::make({}, FieldTower::Extension{"omega", m1, m1});
  FieldElement omega = FieldElement::theta(t);
  FieldElement w = branch == Branch::Plus ? omega : -omega - 1;
  FieldElement one = constant(t, 1);
  FieldElement zero(t);
  Symbol a = intern("A"), b = intern("B");
  MarkedRep rep(t, {a, b}, {{a, Mat2(one, one, zero, one)}, {b, Mat2(one, zero, -w, one)}}, {figure8_relator_word()});
  require_relations(rep, "figure8_discrete");
  return {rep, Word::letter(a), figure8_longitude_word(), omega};
}

FibredWords figure8_fibred_words() {
  return {Word::parse("A"), Word::parse("A^-1*B"), Word::parse("A^-1*B^-1*A*B")};
}

FibredFigure8 figure8_fibred_rep() {
  Figure8Family f8 = figure8_family();
  FibredWords fw = figure8_fibred_words();
  Symbol t = intern("t"), a = intern("a"), b = intern("b");
  MarkedRep rep(f8.rep.tower(), {a, b, t},
                {{t, f8.rep.word_image(fw.t)}, {a, f8.rep.word_image(fw.a)}, {b, f8.rep.word_image(fw.b)}},
                {Word::parse("t*a*t^-1*(a*b*a)^-1"), Word::parse("t*b*t^-1*(b*a)^-1")});
  require_relations(rep, "figure8_fibred_rep");
  HnnSpec spec{{a, b}, {{Word::letter(a), Word::parse("a*b*a")}, {Word::letter(b), Word::parse("b*a")}}, t};
  spec.validate();
  return {rep, spec};
}

// ------------------------------------------------------------ torus bundles

TorusBundle torus_bundle_rep(long long i, long long j, long long k, long long l) {
  long long det = i * l - j * k;
  long long tr = i + l;
  if (det != 1 && det != -1) throw InvalidSpec("monodromy must have determinant +-1");
  TorusBundle out;
  out.monodromy = {i, j, k, l};
  Symbol a = intern("a"), b = intern("b"), ts = intern("t");
  std::vector<Symbol> gens{a, b, ts};

  if (i == 1 && j == 0 && k == 0 && l == 1) {
    TowerPtr t = FieldTower::make({"x1", "x2"});
    FieldElement one = constant(t, 1);
    FieldElement zero(t);
    FieldElement x1 = FieldElement::indeterminate(t, "x1");
    FieldElement x2 = FieldElement::indeterminate(t, "x2");
    out.rep = MarkedRep(t, gens,
                        {{a, Mat2(one, one, zero, one)}, {b, Mat2(one, x1, zero, one)}, {ts, Mat2(one, x2, zero, one)}},
                        {Word::parse("t*a*t^-1*a^-1"), Word::parse("t*b*t^-1*b^-1"), Word::parse("a*b*a^-1*b^-1")});
    out.mu = one;
    out.x = x1;
    out.abelian = true;
    require_relations(out.rep, "torus_bundle_rep");
    return out;
  }
  if ((det == 1 && tr >= -2 && tr <= 2) || (det == -1 && tr == 0)) {
    throw NotHyperbolic("monodromy has a root-of-unity eigenvalue");
  }
  if (det == -1) {
    throw UnsupportedTower("det -1 monodromy needs the square root of a unit of norm -1, outside one quadratic extension");
  }

  // theta is the eigenvalue: theta^2 = tr*theta - 1.
  TowerPtr t = FieldTower::make({}, FieldTower::Extension{"theta", RationalFunction(tr), RationalFunction(-1)});
  FieldElement theta = FieldElement::theta(t);
  // mu^2 = theta. With s^2 = 1, (theta + s)^2 = theta (tr + 2s), so mu exists
  // in Q(theta) when tr + 2s is a rational square or a square times disc.
  long long disc = tr * tr - 4;
  std::optional<FieldElement> mu;
  auto isqrt = [](long long n) -> std::optional<long long> {
    if (n < 0) return std::nullopt;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? std::optional<long long>(r) : std::nullopt;
  };
  for (long long s : {-1LL, 1LL}) {
    long long m = tr + 2 * s;
    if (auto r = isqrt(m); r && m > 0) {
      mu = (theta + s) / constant(t, *r);
      break;
    }
  }
  if (!mu) {
    for (long long s : {-1LL, 1LL}) {
      long long m = tr + 2 * s;
      // m / disc = (r_num / r_den)^2 with m * disc a square.
      if (m == 0 || (m > 0) != (disc > 0)) continue;
      if (auto r = isqrt(m * disc)) {
        // sqrt(m) = sqrt(m * disc) / disc * sqrt(disc), sqrt(disc) = 2 theta - tr.
        FieldElement sq = constant(t, *r) / constant(t, disc) * (theta * 2 - tr);
        mu = (theta + s) / sq;
        break;
      }
    }
  }
  if (!mu || *mu * *mu != theta) {
    throw UnsupportedTower("the square root of the eigenvalue is not in Q(theta); it needs a degree-4 field");
  }
  FieldElement one = constant(t, 1);
  FieldElement zero(t);
  FieldElement x = (theta - i) / constant(t, j);
  out.mu = *mu;
  out.x = x;
  Word ta = Word::parse("t*a*t^-1");
  Word tb = Word::parse("t*b*t^-1");
  Word ea = Word::letter(a, i) * Word::letter(b, j);
  Word eb = Word::letter(a, k) * Word::letter(b, l);
  out.rep = MarkedRep(t, gens,
                      {{a, Mat2(one, one, zero, one)}, {b, Mat2(one, x, zero, one)}, {ts, Mat2(*mu, zero, zero, mu->inv())}},
                      {ta * ea.inverse(), tb * eb.inverse(), Word::parse("a*b*a^-1*b^-1")});
  if (x.is_rational_constant()) throw BoundedCheckFailed("torus_bundle_rep: x is rational");
  require_relations(out.rep, "torus_bundle_rep");
  return out;
}

// ------------------------------------------------------------ BS(1, m)

MarkedRep bs1m_rep(long long m) {
  if (m == 0 || m == 1 || m == -1) throw DegenerateParameter("t would have finite order for m = " + std::to_string(m));
  Symbol ts = intern("t"), xs = intern("x");
  TowerPtr t;
  FieldElement s;
  long long r = m > 0 ? static_cast<long long>(std::llround(std::sqrt(static_cast<double>(m)))) : -1;
  if (m > 0 && r * r == m) {
    t = FieldTower::rationals();
    s = constant(t, r);
  } else {
    t = FieldTower::make({}, FieldTower::Extension{"s", RationalFunction(), RationalFunction(m)});
    s = FieldElement::theta(t);
  }
  FieldElement one = constant(t, 1);
  FieldElement zero(t);
  Word rel = Word::parse("t*x*t^-1") * Word::letter(xs, -m);
  MarkedRep rep(t, {xs, ts}, {{ts, Mat2(s, zero, zero, s.inv())}, {xs, Mat2(one, one, zero, one)}}, {rel});
  require_relations(rep, "bs1m_rep");
  return rep;
}

// ------------------------------------------------------------ generic free

MarkedRep generic_free_rep(int rank, const GenericNames& names, int certify_bound) {
  if (rank != 2) throw InvalidSpec("generic_free_rep supports rank 2 only");
  TowerPtr t = FieldTower::make({names.lambda, names.mu, names.nu});
  FieldElement lam = FieldElement::indeterminate(t, names.lambda);
  FieldElement mu = FieldElement::indeterminate(t, names.mu);
  FieldElement nu = FieldElement::indeterminate(t, names.nu);
  FieldElement one = constant(t, 1);
  FieldElement zero(t);
  Symbol a = intern(names.a), b = intern(names.b);
  MarkedRep rep(t, {a, b}, {{a, Mat2(lam, zero, zero, lam.inv())}, {b, Mat2(mu, one, nu, (one + nu) / mu)}});
  if (certify_bound > 0) {
    check_bound(certify_bound);
    // Traces differing at two points are non-constant.
    modp::Rep r1(rep, 1);
    modp::Rep r2(rep, 1000003);
    for (const Word& w : enumerate_cyclically_reduced(rep.generators(), certify_bound)) {
      modp::Elem t1 = r1.context().trace(r1.word_image(w));
      modp::Elem t2 = r2.context().trace(r2.word_image(w));
      if (t1 != t2) continue;
      FieldElement tr = rep.word_image(w).trace();
      if (is_constant(tr)) throw BoundedCheckFailed("word " + w.to_string() + " has constant trace");
    }
  }
  return rep;
}

// ------------------------------------------------------------ free product

JoinResult free_product_join(const MarkedRep& rep1, const MarkedRep& rep2, int syllables, int syllable_len) {
  check_bound(syllables);
  check_bound(syllable_len);
  require_disjoint(rep1, rep2);
  JoinResult out;

  // Precondition: no short word of either factor maps to -I.
  Report pre;
  pre.claim = "no-minus-identity";
  pre.bound = 2;
  for (const MarkedRep* rep : {&rep1, &rep2}) {
    for (const Word& w : enumerate_words(rep->generators(), 2)) {
      ++pre.examined;
      if (rep->word_image(w).is_minus_identity()) {
        throw PreconditionFailed("word " + w.to_string() + " maps to -I in a factor");
      }
    }
  }
  pre.status = Status::Bounded;
  out.reports.push_back(pre);

  JoinedTower jt = join_towers(*rep1.tower(), *rep2.tower(), {"u", "v"});
  const TowerPtr& J = jt.tower;
  FieldElement u = FieldElement::indeterminate(J, jt.extra[0]);
  FieldElement v = FieldElement::indeterminate(J, jt.extra[1]);
  FieldElement one = constant(J, 1);
  std::map<Symbol, Mat2> images = move_images(rep1, {}, J);
  Substitution sigma = rename_into(*rep2.tower(), jt.names2, J);
  for (auto& [s, m] : move_images(rep2, sigma, J)) {
    images.emplace(s, m.conjugated_by(one, u, v, one + u * v));
  }
  std::vector<Symbol> gens = rep1.generators();
  gens.insert(gens.end(), rep2.generators().begin(), rep2.generators().end());
  std::vector<Word> rels = rep1.relators();
  rels.insert(rels.end(), rep2.relators().begin(), rep2.relators().end());
  out.rep = MarkedRep(J, gens, images, rels);
  require_relations(out.rep, "free_product_join");

  // Syllables: one word per distinct nontrivial image of length <= syllable_len.
  modp::Rep mrep(out.rep);
  const modp::Context& ctx = mrep.context();
  std::vector<std::vector<std::pair<Word, modp::Mat>>> syl(2);
  for (int side = 0; side < 2; ++side) {
    const MarkedRep& f = side == 0 ? rep1 : rep2;
    std::set<std::array<uint64_t, 8>> seen;
    for (const Word& w : enumerate_words(f.generators(), syllable_len)) {
      modp::Mat m = mrep.word_image(w);
      std::array<uint64_t, 8> key{};
      for (int q = 0; q < 4; ++q) {
        key[static_cast<size_t>(2 * q)] = m.e[q].a;
        key[static_cast<size_t>(2 * q + 1)] = m.e[q].b;
      }
      if (!seen.insert(key).second) continue;
      if (ctx.is_identity(m) && out.rep.word_image(w).is_identity()) continue;
      syl[static_cast<size_t>(side)].emplace_back(w, m);
    }
  }

  Report scan;
  scan.claim = "free-product-faithfulness";
  scan.bound = syllables;
  scan.parameters["syllable_length"] = std::to_string(syllable_len);
  std::vector<size_t> path;
  std::function<void(int, const modp::Mat&, int)> dfs = [&](int side, const modp::Mat& acc, int depth) {
    for (size_t idx = 0; idx < syl[static_cast<size_t>(side)].size(); ++idx) {
      modp::Mat m = ctx.mul(acc, syl[static_cast<size_t>(side)][idx].second);
      path.push_back(idx);
      ++scan.examined;
      if (ctx.is_identity(m) || ctx.is_minus_identity(m)) {
        Word w;
        for (size_t d = 0; d < path.size(); ++d) {
          int sd = (side + static_cast<int>(path.size() - 1 - d)) % 2;
          // Sides alternate, ending at `side`.
          w *= syl[static_cast<size_t>(sd)][path[d]].first;
        }
        Mat2 exact = out.rep.word_image(w);
        if (exact.is_pm_identity()) {
          throw BoundedCheckFailed("alternating form " + w.to_string() + " maps to +-I");
        }
      }
      if (depth + 1 < syllables) dfs(1 - side, m, depth + 1);
      path.pop_back();
    }
  };
  for (int start = 0; start < 2; ++start) dfs(start, ctx.identity(), 0);
  scan.status = Status::Bounded;
  out.reports.push_back(scan);
  out.assumptions.push_back("faithfulness of the free product certified only for alternating forms of at most " +
                            std::to_string(syllables) + " syllables of length <= " + std::to_string(syllable_len));
  out.assumptions.push_back("syllables are deduplicated by image, assuming each factor representation is faithful");
  return out;
}

// ------------------------------------------------------------ amalgam

JoinResult amalgam_join(const MarkedRep& rep1, const Word& w1, const MarkedRep& rep2, const Word& w2,
                        const std::string& param2, int bound) {
  check_bound(bound);
  require_disjoint(rep1, rep2);
  if (w1.empty() || w2.empty()) throw InvalidSpec("edge words must be nontrivial");
  int pidx = rep2.tower()->index_of(param2);
  if (pidx < 0) throw InvalidSpec("parameter '" + param2 + "' is not an indeterminate of the second tower");
  JoinResult out;

  Mat2 h1 = rep1.word_image(w1);
  FieldElement t1 = h1.trace();
  if ((t1 - 2).is_zero() || (t1 + 2).is_zero()) throw NotDiagonalizable("edge image in the first factor is parabolic");
  if (is_constant(t1)) throw PreconditionFailed("edge image in the first factor has constant trace");
  {
    FieldElement t2 = rep2.word_image(w2).trace();
    if ((t2 - 2).is_zero() || (t2 + 2).is_zero()) throw NotDiagonalizable("edge image in the second factor is parabolic");
  }

  for (const MarkedRep* rep : {&rep1, &rep2}) {
    Report tr = trace_pm2_scan(*rep, bound);
    if (tr.status == Status::Refuted) {
      throw TraceScanFailed("trace scan found " + tr.witnesses.front().label + " with trace +-2");
    }
    out.reports.push_back(tr);
  }
  JoinedTower jt = join_towers(*rep1.tower(), *rep2.tower(), {param2}, param2);
  const TowerPtr& Jp = jt.tower;
  const std::string& pname = jt.extra[0];
  std::vector<std::string> jnames = Jp->indeterminates();
  jnames.pop_back();
  TowerPtr J = FieldTower::make(jnames, Jp->has_extension() ? std::optional(Jp->extension()) : std::nullopt);
  int pvar = Jp->size() - 1;

  auto names2 = jt.names2;
  names2[param2] = pname;
  std::map<Symbol, Mat2> img2p = move_images(rep2, rename_into(*rep2.tower(), names2, Jp), Jp);
  MarkedRep rep2p(Jp, rep2.generators(), img2p);
  Mat2 h2 = rep2p.word_image(w2);
  Mat2 h1J = h1.embed(J);
  Mat2 h1p = h1.embed(Jp);

  std::vector<std::pair<std::string, std::pair<FieldElement, FieldElement>>> equations;
  if (h1.is_diagonal() && h2.is_diagonal()) {
    equations.push_back({"e11", {h2.e11(), h1p.e11()}});
    equations.push_back({"e11=e22", {h2.e11(), h1p.e22()}});
  }
  equations.push_back({"trace", {h2.trace(), h1p.trace()}});

  std::optional<std::map<Symbol, Mat2>> img2;
  std::string mode;
  FieldElement value;
  for (const auto& [name, eq] : equations) {
    auto root = solve_affine(eq.first, eq.second, pvar, J);
    if (!root) continue;
    Substitution sigma{{pname, *root}};
    std::map<Symbol, Mat2> sub;
    try {
      for (const auto& [s, m] : img2p) sub.emplace(s, m.substituted(sigma, J));
    } catch (const DenominatorVanishes&) {
      continue;
    } catch (const NotUnimodular&) {
      continue;
    }
    MarkedRep cand(J, rep2.generators(), sub);
    Mat2 e2 = cand.word_image(w2);
    if (e2 == h1J) {
      img2 = std::move(sub);
      mode = name;
    } else if (e2.trace() == h1J.trace()) {
      img2 = conjugate_images(sub, intertwiner(h1J, e2));
      mode = name + "+conjugation";
    } else {
      continue;
    }
    value = *root;
    break;
  }
  if (!img2) {
    throw SubstitutionImpossible("no affine solution for '" + param2 + "' matching the edge images");
  }

  std::map<Symbol, Mat2> images = move_images(rep1, {}, J);
  for (auto& [s, m] : *img2) images.emplace(s, m);
  std::vector<Symbol> gens = rep1.generators();
  gens.insert(gens.end(), rep2.generators().begin(), rep2.generators().end());
  std::vector<Word> rels = rep1.relators();
  rels.insert(rels.end(), rep2.relators().begin(), rep2.relators().end());
  rels.push_back(w1 * w2.inverse());
  out.rep = MarkedRep(J, gens, images, rels);
  if (out.rep.word_image(w2) != out.rep.word_image(w1)) throw BoundedCheckFailed("edge images differ after the join");
  require_relations(out.rep, "amalgam_join");

  {
    Report sub;
    sub.claim = "parameter-substitution";
    sub.status = Status::Certified;
    sub.parameters["parameter"] = param2;
    sub.parameters["mode"] = mode;
    sub.parameters["value"] = value.to_string();
    sub.witnesses.push_back({"edge", "identity", std::nullopt,
                             out.rep.word_image(w1 * w2.inverse()), "", ""});
    out.reports.push_back(sub);
  }
  MarkedRep f1(J, rep1.generators(), restrict_images(out.rep, rep1.generators()));
  MarkedRep f2(J, rep2.generators(), restrict_images(out.rep, rep2.generators()));
  Report s2 = trace_pm2_scan(f2, bound);
  if (s2.status == Status::Refuted) {
    throw TraceScanFailed("after substitution " + s2.witnesses.front().label + " has trace +-2");
  }
  out.reports.push_back(s2);
  for (auto [f, edge, label] : {std::tuple{&f1, &w1, "first"}, std::tuple{&f2, &w2, "second"}}) {
    Report c = edge_condition_scan(*f, f->generators(), *edge, bound, label);
    if (c.status == Status::Refuted) {
      throw BoundedCheckFailed("edge condition fails in the " + std::string(label) + " factor at " +
                               c.witnesses.front().label);
    }
    out.reports.push_back(c);
  }
  out.assumptions.push_back("the trace and edge conditions are certified for words of length <= " +
                            std::to_string(bound) + " only");
  return out;
}

// ------------------------------------------------------------ HNN

HnnConstruction hnn_extend(const MarkedRep& rep, const Word& a, const Word& g, const HnnOptions& opts) {
  HnnConstruction out;
  Symbol stable = intern(opts.stable);
  if (rep.has_generator(stable)) throw InvalidSpec("stable letter '" + opts.stable + "' is already a generator");
  if (a.empty()) throw InvalidSpec("associated word must be nontrivial");

  Mat2 M = rep.word_image(a);
  FieldElement tr = M.trace();
  if ((tr - 2).is_zero() || (tr + 2).is_zero()) throw NotDiagonalizable("image of " + a.to_string() + " is parabolic or +-I");
  if (is_constant(tr)) throw NotDiagonalizable("image of " + a.to_string() + " has constant eigenvalues");
  Report scan = trace_pm2_scan(rep, opts.scan_bound);
  if (scan.status == Status::Refuted) {
    throw TraceScanFailed("trace scan found " + scan.witnesses.front().label + " with trace +-2");
  }
  out.reports.push_back(scan);

  MarkedRep base = rep;
  if (!M.is_diagonal()) {
    TowerPtr tb = rep.tower();
    FieldElement lam, lam2;
    if (!tr.in_base()) throw NotDiagonalizable("trace is not in the base field");
    RationalFunction trf = tr.a();
    RationalFunction disc = trf * trf - RationalFunction(4);
    auto sq_num = disc.num().sqrt();
    auto sq_den = disc.den().sqrt();
    if (sq_num && sq_den) {
      FieldElement root(tb, RationalFunction(*sq_num, *sq_den));
      lam = (tr + root) / constant(tb, 2);
      lam2 = (tr - root) / constant(tb, 2);
    } else {
      if (tb->has_extension()) throw NotDiagonalizable("eigenvalues need a second quadratic extension");
      std::set<std::string> taken(tb->indeterminates().begin(), tb->indeterminates().end());
      tb = tb->with_extension(fresh("eta", taken), trf, RationalFunction(-1));
      lam = FieldElement::theta(tb);
      lam2 = lam.conjugate();
      tr = tr.embed(tb);
    }
    Mat2 Mb = M.embed(tb);
    FieldElement p11, p12, p21, p22;
    if (!Mb.e12().is_zero()) {
      p11 = Mb.e12(), p21 = lam - Mb.e11(), p12 = Mb.e12(), p22 = lam2 - Mb.e11();
    } else {
      p11 = lam - Mb.e22(), p21 = Mb.e21(), p12 = lam2 - Mb.e22(), p22 = Mb.e21();
    }
    std::map<Symbol, Mat2> imgs;
    for (const auto& [s, m] : rep.images()) imgs.emplace(s, m.embed(tb).conjugated_by(p22, -p12, -p21, p11));
    base = MarkedRep(tb, rep.generators(), imgs, rep.relators());
    if (!base.word_image(a).is_diagonal()) throw NotDiagonalizable("conjugation failed to diagonalize");
  }

  std::set<std::string> taken(base.tower()->indeterminates().begin(), base.tower()->indeterminates().end());
  if (base.tower()->has_extension()) taken.insert(base.tower()->extension().name);
  std::string xname = fresh(opts.parameter, taken);
  TowerPtr T = base.tower()->with_indeterminates({xname});
  FieldElement x = FieldElement::indeterminate(T, xname);
  FieldElement zero(T);
  std::map<Symbol, Mat2> imgs;
  for (const auto& [s, m] : base.images()) imgs.emplace(s, m.embed(T));
  MarkedRep ext(T, base.generators(), imgs, base.relators());
  Mat2 s = Mat2(x, zero, zero, x.inv());
  imgs.emplace(stable, ext.word_image(g) * s);
  std::vector<Symbol> gens = base.generators();
  gens.push_back(stable);
  std::vector<Word> rels = base.relators();
  Word tw = Word::letter(stable);
  rels.push_back(tw * a * tw.inverse() * (g * a * g.inverse()).inverse());
  out.rep = MarkedRep(T, gens, imgs, rels);
  require_relations(out.rep, "hnn_extend");
  out.base = base;
  out.a = a;
  out.g = g;
  out.stable = stable;
  out.parameter = xname;

  if (opts.r_max > 0) {
    Report inv = hnn_invariant_scan(out, opts.r_max, opts.n_max, opts.g_len);
    if (inv.status == Status::Refuted) {
      throw BoundedCheckFailed("Laurent end-term invariant fails at " + inv.witnesses.front().label);
    }
    out.reports.push_back(inv);
  }
  return out;
}

// ------------------------------------------------------------ surface quotient

JoinResult minsky_quotient_rep(int bound) {
  Figure8Family f8 = figure8_family();
  GenericNames names;
  names.a = "C";
  names.b = "D";
  MarkedRep g2 = generic_free_rep(2, names, bound);
  JoinResult j = amalgam_join(f8.rep, Word::parse("A*B*A^-1*B^-1"), g2, Word::parse("C*D*C^-1*D^-1"), names.nu, bound);

  Report cert;
  cert.claim = "minsky";
  cert.status = Status::Certified;
  Word surface = Word::parse("A*B*A^-1*B^-1*(C*D*C^-1*D^-1)^-1");
  Mat2 surf = j.rep.word_image(surface);
  Mat2 rel = j.rep.word_image(figure8_relator_word());
  FieldElement tcomm = j.rep.word_image(Word::parse("A*B*A^-1*B^-1")).trace();
  if (!surf.is_identity() || !rel.is_identity() || is_constant(tcomm)) {
    throw BoundedCheckFailed("minsky_quotient_rep: certification failed");
  }
  cert.witnesses.push_back({"surface", "identity", std::nullopt, surf, "", ""});
  cert.witnesses.push_back({"r(A,B)", "identity", std::nullopt, rel, "", ""});
  cert.witnesses.push_back({"tr[A,B]", "non_constant", tcomm, std::nullopt, "", ""});
  for (Symbol s : j.rep.generators()) {
    const Mat2& m = j.rep.image(s);
    if (m.is_pm_identity()) throw BoundedCheckFailed("generator " + symbol_name(s) + " maps to +-I");
    cert.witnesses.push_back({symbol_name(s), "not_pm_identity", std::nullopt, m, "", ""});
  }
  j.reports.push_back(cert);
  return j;
}

}  // namespace sl2cert
