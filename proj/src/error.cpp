#include "qbisim/error.hpp"

#include "qbisim/limits.hpp"

namespace qbisim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NoAdjoint: return "NoAdjoint";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::BadGrid: return "BadGrid";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotABisimulation: return "NotABisimulation";
    case ErrorKind::NotBisimilar: return "NotBisimilar";
    case ErrorKind::NotLocallyDistributive: return "NotLocallyDistributive";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotACongruence: return "NotACongruence";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

void Report::add(std::string kind, std::string detail) {
  violations.push_back({std::move(kind), std::move(detail)});
}

void Report::note(std::string text) { notes.push_back(std::move(text)); }

void Report::merge(const Report& other, std::string_view prefix) {
  for (const auto& v : other.violations) {
    violations.push_back({v.kind, std::string(prefix) + v.detail});
  }
  for (const auto& n : other.notes) notes.push_back(std::string(prefix) + n);
}

bool Report::has(std::string_view kind) const {
  for (const auto& v : violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

std::string Report::summary() const {
  if (ok()) return "valid";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.kind + ": " + v.detail;
  }
  return out;
}

Limits& limits() {
  static Limits instance;
  return instance;
}

}  // namespace qbisim
