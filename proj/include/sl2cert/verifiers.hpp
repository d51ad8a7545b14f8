#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sl2cert/sl2.hpp"
#include "sl2cert/tracering.hpp"
#include "sl2cert/words.hpp"

namespace sl2cert {

enum class Status { Certified, Refuted, Bounded };
const char* status_name(Status s);

/// One piece of evidence. `property` names what reverify() rechecks from the
/// payload alone:
///   identity, not_identity, not_pm_identity,
///   minus_identity                             (matrix)
///   zero, nonzero, non_constant                (element)
///   free_equation                              (lhs, rhs words equal in the free group)
///   trace_pm2                                  (matrix trace is exactly 2 or -2)
///   affine_identity, affine_not_identity       (lhs word in BS(1,m), m from parameters)
///   info                                       (not rechecked)
struct Witness {
  std::string label;
  std::string property;
  std::optional<FieldElement> element;
  std::optional<Mat2> matrix;
  std::string lhs;
  std::string rhs;
};

struct Report {
  std::string claim;
  Status status = Status::Bounded;
  /// Scan bound used; 0 when the report is not a bounded search.
  int bound = 0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
  std::map<std::string, std::string> parameters;
  /// Number of objects examined by a scan.
  long long examined = 0;
};

/// Rechecks every witness from its stored payload. Returns false on the first
/// witness whose property does not hold.
bool reverify(const Report& r);

/// True when u involves no indeterminate, directly or through theta.
bool is_constant(const FieldElement& u);

/// Default scan bounds.
inline constexpr int kDefaultWordBound = 6;
inline constexpr int kDefaultSyllableBound = 4;

// ---------------------------------------------------------------- scans

/// Evaluates every declared relator: certified iff all map to I.
Report check_relations(const MarkedRep& rep);

/// Cyclically reduced words of length <= L whose trace is identically +-2
/// while the image is not I. Refuted on the first such word.
Report trace_pm2_scan(const MarkedRep& rep, int L);

/// Commutative transitivity: u, v, g of length <= L with [u,g] = [v,g] = I,
/// [u,v] != I and g != I.
Report ct_scan(const MarkedRep& rep, int L);
/// The same search inside BS(1,m) = <x,t | t x t^-1 = x^m>, using its
/// faithful affine action z -> m^k z + b. Generators named x and t.
Report ct_scan_bs1m(long long m, int L);

/// Bounded CSA criterion: -I absent, and for each parabolic (trace +-2,
/// image != I) word g, every word h fixing g's eigenline has trace +-2.
Report csa_scan(const MarkedRep& rep, int L);

/// Nontrivial elements of length <= L (free reduction over `generators`)
/// must not map to +-I.
Report faithfulness_scan(const MarkedRep& rep, const std::vector<Symbol>& generators, int L);
Report faithfulness_scan(const MarkedRep& rep, const AmalgamSpec& spec, int L);
Report faithfulness_scan(const MarkedRep& rep, const HnnSpec& spec, int L);

struct TorusBundle;
/// a^p b^q t^r against the closed form (mu^r, mu^-r (p + x q); 0, mu^-r) and
/// against +-I for all |p|, |q|, |r| <= box.
Report torus_bundle_box_scan(const TorusBundle& tb, int box);

// ------------------------------------------------------------ obstructions

/// Gluing two figure-eight complements with l2 = m1^n l1, for n in [lo, hi].
Report gluing_obstruction(long long lo, long long hi);

/// One HNN normal form s^n1 g1 ... s^nr gr, with s the diagonal stable letter.
struct HnnNormalForm {
  std::vector<long long> n;
  std::vector<Word> g;
};

struct HnnConstruction;
/// Checks the Laurent end terms of one normal form by direct matrix product.
Report hnn_endterm_invariant(const HnnConstruction& hnn, const HnnNormalForm& form);
/// All forms with r <= r_max, 0 < |n_i| <= n_max, g_i from non-diagonal base
/// words of length <= g_len.
Report hnn_invariant_scan(const HnnConstruction& hnn, int r_max, int n_max, int g_len);

/// The extension t a t^-1 = b with b = g a^-1 g^-1 in the representation.
Report order4_obstruction(const HnnSpec& spec, const MarkedRep& rep, const Word& g);

/// tr a = tr b = tr ab = tr [a,b] = z forces (z - 2)(z^2 - z - 1) = 0.
Report triple_hnn_obstruction();

/// Searches a = b^m c^n over nontrivial commutators of words of length <= L in F(x, y).
Report commutator_equation_search(long long m, long long n, int L);

/// Solutions of x^2 = y^2 z^2 with x, y, z of length <= L in F(a, b).
Report lyndon_equation_scan(int L);

}  // namespace sl2cert
