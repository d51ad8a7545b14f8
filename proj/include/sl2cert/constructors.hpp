#pragma once

#include <array>
#include <string>
#include <vector>

#include "sl2cert/sl2.hpp"
#include "sl2cert/verifiers.hpp"
#include "sl2cert/words.hpp"

namespace sl2cert {

/// The curve of figure-eight knot group representations over
/// Q(lambda)[z]/(z^2 - (1 + x^2) z + 2x^2 - 1), x = lambda + 1/lambda.
struct Figure8Family {
  MarkedRep rep;
  Word meridian;
  Word longitude;
  FieldElement lambda, x, z, mu;
};
Figure8Family figure8_family();

/// The discrete representation A = (1 1; 0 1), B = (1 0; -w 1) over
/// Q(omega). Plus takes w = omega, Minus its Galois conjugate -1 - omega.
enum class Branch { Plus, Minus };
struct DiscreteFigure8 {
  MarkedRep rep;
  Word meridian;
  Word longitude;
  FieldElement omega;
};
DiscreteFigure8 figure8_discrete(Branch branch = Branch::Plus);

/// Torus bundle with monodromy (i j; k l) on generators a, b, t.
struct TorusBundle {
  MarkedRep rep;
  std::array<long long, 4> monodromy;
  /// Hyperbolic case: t = diag(mu, 1/mu), b = (1 x; 0 1).
  FieldElement mu, x;
  /// True for the identity monodromy (the Z^3 representation).
  bool abelian = false;
};
TorusBundle torus_bundle_rep(long long i, long long j, long long k, long long l);

/// <x, t | t x t^-1 = x^m> with t = diag(sqrt m, 1/sqrt m), x = (1 1; 0 1).
MarkedRep bs1m_rep(long long m);

struct GenericNames {
  std::string a = "A";
  std::string b = "B";
  std::string lambda = "lambda";
  std::string mu = "mu";
  std::string nu = "nu";
};
/// A = diag(lambda, 1/lambda), B = (mu 1; nu (1 + nu)/mu). Certifies that all
/// cyclically reduced words of length <= certify_bound have non-constant trace.
MarkedRep generic_free_rep(int rank = 2, const GenericNames& names = {}, int certify_bound = kDefaultWordBound);

/// A joined representation with the certificates gathered on the way.
struct JoinResult {
  MarkedRep rep;
  std::vector<Report> reports;
  std::vector<std::string> assumptions;
};

/// Free product: rep2 conjugated by (1 u; v 1 + uv) with fresh u, v. Alternating
/// forms of up to `syllables` syllables (each a word of length <= syllable_len
/// in one factor) are checked against +-I.
JoinResult free_product_join(const MarkedRep& rep1, const MarkedRep& rep2, int syllables = kDefaultSyllableBound,
                             int syllable_len = 3);

/// Amalgam over <w1> = <w2>. rep2 is a family in the indeterminate `param2`,
/// which is solved for so that the edge images agree.
JoinResult amalgam_join(const MarkedRep& rep1, const Word& w1, const MarkedRep& rep2, const Word& w2,
                        const std::string& param2, int bound = kDefaultWordBound);

struct HnnOptions {
  std::string stable = "t";
  std::string parameter = "x";
  int scan_bound = kDefaultWordBound;
  /// Normal forms for the end-term check (r_max = 0 skips it).
  int r_max = 3;
  int n_max = 2;
  int g_len = 2;
};

/// HNN extension G*_{t a t^-1 = g a g^-1}: the base is conjugated so that a is
/// diagonal, s = g^-1 t = diag(x, 1/x) for a fresh indeterminate x.
struct HnnConstruction {
  MarkedRep base;  // base rep after conjugation, over the base tower
  MarkedRep rep;   // base generators plus the stable letter, over base(x)
  Word a;
  Word g;
  Symbol stable = -1;
  std::string parameter;
  std::vector<Report> reports;
};
HnnConstruction hnn_extend(const MarkedRep& rep, const Word& a, const Word& g = Word(), const HnnOptions& opts = {});

/// pi_1(S_2)/N: figure-eight family amalgamated with a generic free rep on C, D
/// along ABA^-1B^-1 = CDC^-1D^-1.
JoinResult minsky_quotient_rep(int bound = kDefaultWordBound);

/// Generator words for the fibred presentation <t, a, b | t a t^-1 = aba, t b t^-1 = ba>
/// of the figure-eight group, in terms of A, B.
struct FibredWords {
  Word t, a, b;
};
FibredWords figure8_fibred_words();
/// The figure-eight family on generators t, a, b of the fibred presentation,
/// with the matching automorphism-mode HnnSpec.
struct FibredFigure8 {
  MarkedRep rep;
  HnnSpec spec;
};
FibredFigure8 figure8_fibred_rep();

}  // namespace sl2cert
