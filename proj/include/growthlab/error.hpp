#pragma once

#include <stdexcept>
#include <string>

namespace growthlab {

enum class Err {
  // fields
  NonPrimeCharacteristic,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  EvenCharacteristic,
  // groups
  RankTooSmall,
  CharacteristicTwoOrthogonal,
  UnsupportedFamily,
  DimensionMismatch,
  NotInGroup,
  NotInSL,
  OnSingularLocus,
  GeneratorVerificationFailed,
  // varieties
  NonMonic,
  NotRegularSemisimple,
  // census / search
  BudgetExceeded,
  NoEscapePossible,
  BoundViolated,
  NoRegularSemisimple,
  NotGenerating,
  // ledger
  RecurrenceViolated,
  OutOfRange,
  InsufficientProfile,
  // cli
  ConfigInvalid,
};

const char* err_name(Err e);

// Single exception type carrying a machine-checkable code.
class LabError : public std::runtime_error {
 public:
  LabError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw LabError(code, what); }

}  // namespace growthlab
