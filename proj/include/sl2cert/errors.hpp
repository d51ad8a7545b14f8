#pragma once

#include <stdexcept>
#include <string>

namespace sl2cert {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable name printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SL2CERT_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  }

// exactfield
SL2CERT_DEFINE_ERROR(DivisionByZero);
SL2CERT_DEFINE_ERROR(TowerMismatch);
SL2CERT_DEFINE_ERROR(DenominatorVanishes);
SL2CERT_DEFINE_ERROR(DenominatorNearZero);
SL2CERT_DEFINE_ERROR(UnsupportedTower);
SL2CERT_DEFINE_ERROR(ReducibleExtension);
SL2CERT_DEFINE_ERROR(BranchMismatch);
// sl2
SL2CERT_DEFINE_ERROR(NotUnimodular);
SL2CERT_DEFINE_ERROR(UnknownGenerator);
// words
SL2CERT_DEFINE_ERROR(TrivialWord);
SL2CERT_DEFINE_ERROR(CapExceeded);
SL2CERT_DEFINE_ERROR(ParseError);
SL2CERT_DEFINE_ERROR(UnsupportedSubgroup);
SL2CERT_DEFINE_ERROR(InvalidSpec);
// tracering
SL2CERT_DEFINE_ERROR(WrongAlphabet);
// constructors
SL2CERT_DEFINE_ERROR(NotHyperbolic);
SL2CERT_DEFINE_ERROR(DegenerateParameter);
SL2CERT_DEFINE_ERROR(BoundedCheckFailed);
SL2CERT_DEFINE_ERROR(PreconditionFailed);
SL2CERT_DEFINE_ERROR(NotDiagonalizable);
SL2CERT_DEFINE_ERROR(TraceScanFailed);
SL2CERT_DEFINE_ERROR(SubstitutionImpossible);
// verifiers
SL2CERT_DEFINE_ERROR(MalformedNormalForm);
SL2CERT_DEFINE_ERROR(HypothesisNotMet);

#undef SL2CERT_DEFINE_ERROR

}  // namespace sl2cert
