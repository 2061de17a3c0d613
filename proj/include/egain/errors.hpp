#pragma once

#include <stdexcept>
#include <string>

#include "egain/symplectic.hpp"

namespace egain {

// Base for everything the library throws on bad input or failed preconditions.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// Admissibility certificate failed (covariance or channel). Carries the
// failing certificate so callers can report it.
class InadmissibleError : public Error {
  public:
    InadmissibleError(const std::string &what, HermitianCert cert) : Error(what), cert_(cert) {}
    [[nodiscard]] const HermitianCert &cert() const { return cert_; }

  private:
    HermitianCert cert_;
};

// det K = 0: Phi[I] is not a bounded operator and the gain formulas do not apply.
class NonRegularError : public Error {
  public:
    using Error::Error;
};

// Preconditions of the Gaussian extremality check (strict channel,
// nondegenerate state) are not met.
class HypothesisViolation : public Error {
  public:
    using Error::Error;
};

// A numerical invariant that should hold by construction did not.
class NumericalError : public Error {
  public:
    using Error::Error;
};

} // namespace egain
