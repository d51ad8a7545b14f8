#pragma once

#include <string>
#include <vector>

#include "sl2cert/field.hpp"
#include "sl2cert/words.hpp"

namespace sl2cert {

/// Integer polynomial in p = tr A (variable 0), q = tr B (1), r = tr AB (2).
using TracePolynomial = Polynomial;

/// Variable names used when printing a TracePolynomial.
const std::vector<std::string>& trace_variable_names();

/// Trace of w(A, B) as a polynomial in p, q, r. Letters other than `a` and
/// `b` raise WrongAlphabet.
TracePolynomial trace_of_word(const Word& w, Symbol a, Symbol b);
inline TracePolynomial trace_of_word(const Word& w) { return trace_of_word(w, intern("A"), intern("B")); }

/// Evaluates tp at (p0, q0, r0); all three must share a tower.
FieldElement substitute_traces(const TracePolynomial& tp, const FieldElement& p0, const FieldElement& q0,
                               const FieldElement& r0);

/// Polynomial images of tp under any ring: caller supplies the values as
/// polynomials in another variable set.
Polynomial substitute_traces(const TracePolynomial& tp, const Polynomial& p0, const Polynomial& q0,
                             const Polynomial& r0);

/// The longitude BA^-1B^-1A^2B^-1A^-1B of the figure-eight knot group.
Word figure8_longitude_word();
/// B^-1A^-1BAB^-1ABA^-1B^-1A.
Word figure8_relator_word();

struct TauLongitude {
  /// Trace of the longitude at p = q = x, r = z; variables x (0), z (1).
  Polynomial raw;
  /// raw reduced modulo z^2 = (1 + x^2) z - 2x^2 + 1.
  Polynomial reduced;
};
TauLongitude tau_longitude();
/// Names {"x", "z"} for printing tau polynomials.
const std::vector<std::string>& tau_variable_names();

}  // namespace sl2cert
