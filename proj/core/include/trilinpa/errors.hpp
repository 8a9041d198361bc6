#pragma once

#include <stdexcept>
#include <string>

namespace trilinpa {

// Failure categories map one-to-one onto CLI exit codes:
// validation 1, numerical 2, io 3.
enum class ErrorCategory : int { Validation = 1, Numerical = 2, Io = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), category_(cat) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

#define TRILINPA_DEFINE_ERROR(NAME, CATEGORY)              \
  struct NAME : Error {                                    \
    explicit NAME(const std::string& msg)                  \
        : Error(ErrorCategory::CATEGORY, #NAME ": " + msg) {} \
  }

// Basis and state construction.
TRILINPA_DEFINE_ERROR(EmptySector, Validation);
TRILINPA_DEFINE_ERROR(CapOverflow, Validation);
TRILINPA_DEFINE_ERROR(NotInBasis, Validation);
TRILINPA_DEFINE_ERROR(DimensionMismatch, Validation);
TRILINPA_DEFINE_ERROR(BasisMismatch, Validation);
TRILINPA_DEFINE_ERROR(TruncationTooSevere, Numerical);

// Model assembly.
TRILINPA_DEFINE_ERROR(ZeroDetuning, Validation);
TRILINPA_DEFINE_ERROR(OutOfWindow, Validation);
TRILINPA_DEFINE_ERROR(DegenerateCoupling, Validation);

// Propagation.
TRILINPA_DEFINE_ERROR(NonHermitian, Numerical);
TRILINPA_DEFINE_ERROR(StepTooLarge, Numerical);

// Observables and analytics.
TRILINPA_DEFINE_ERROR(EmptyMode, Validation);
TRILINPA_DEFINE_ERROR(NonGaussianInput, Validation);
TRILINPA_DEFINE_ERROR(OutsideValidityWindow, Validation);

// Configuration and output.
TRILINPA_DEFINE_ERROR(ParseError, Validation);
TRILINPA_DEFINE_ERROR(ValidationError, Validation);
TRILINPA_DEFINE_ERROR(IoError, Io);

#undef TRILINPA_DEFINE_ERROR

}  // namespace trilinpa
