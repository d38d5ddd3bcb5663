#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsc {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  ParseError,
  GeneratorMismatch,
  NotDegreeTwo,
  ZeroRepresentative,
  DegreeExceedsTruncation,
  InhomogeneousInput,
  WindowTooShort,
  SizeMismatch,
  NotMuSymmetric,
  InvalidMu,
  InhomogeneousElement,
  DegreeZeroElement,
  MatricesLinearlyDependent,
  UnsupportedFieldForScan,
  TooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `module` names the component that
/// raised it so command-line diagnostics can be tagged.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& what)
      : std::runtime_error(what), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace gsc
