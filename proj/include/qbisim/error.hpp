#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbisim {

enum class ErrorKind {
  UnknownElement,
  NoAdjoint,
  NotComposable,
  SizeLimit,
  BadGrid,
  BaseMismatch,
  NotParallel,
  TypeMismatch,
  NotABisimulation,
  NotBisimilar,
  NotLocallyDistributive,
  InternalAssertion,
  EndpointMismatch,
  NotACongruence,
  AmbientMismatch,
  NotExact,
  ParseError,
  ValidationError,
  DanglingReference,
  UnknownLabel,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

struct Violation {
  std::string kind;
  std::string detail;
};

/// Outcome of a validator: a list of violations plus free-form notes.
/// An empty violation list means the object is valid.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  void add(std::string kind, std::string detail);
  void note(std::string text);
  void merge(const Report& other, std::string_view prefix = {});
  bool has(std::string_view kind) const;
  std::string summary() const;
};

}  // namespace qbisim
