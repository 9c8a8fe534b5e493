#ifndef GAT_ERROR_HPP
#define GAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gat {

enum class ErrorKind {
  IllFormed,
  ContextMismatch,
  TypeMismatch,
  NormalFormsDiffer,
  FuelExhausted,
  BadInference,
  DuplicateName,
  InvalidName,
  InvalidContext,
  InvalidType,
  SideFailsToCheck,
  TypeMismatchBetweenSides,
  NotFound,
  SyntaxError,
  UnknownSymbol,
  ArityMismatch,
  ArgumentTypeMismatch,
  AmbiguousImplicit,
  Undefined,
  ShapeMismatch,
  UnknownExample,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the kernel and its front ends is reported through this one
// exception type; `kind` carries the category callers dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // NormalFormsDiffer and FuelExhausted both mean "no proof found".
  bool is_not_convertible() const noexcept {
    return kind_ == ErrorKind::NormalFormsDiffer || kind_ == ErrorKind::FuelExhausted;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace gat

#endif
