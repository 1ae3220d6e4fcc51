#pragma once

#include <stdexcept>
#include <string>

namespace dspwb {

enum class ErrorKind {
  Degenerate,
  Config,
  Parameter,
  Design,
  UnsupportedRule,
  Shape,
  LengthMismatch,
  DivergentProduct,
  NoPeak,
  InsufficientPeriodicity,
  UndefinedMobility,
  UndefinedComplexity,
  Parse,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Degenerate: return "degenerate signal";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Design: return "design error";
    case ErrorKind::UnsupportedRule: return "unsupported rule";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::LengthMismatch: return "length mismatch";
    case ErrorKind::DivergentProduct: return "divergent product";
    case ErrorKind::NoPeak: return "no peak";
    case ErrorKind::InsufficientPeriodicity: return "insufficient periodicity";
    case ErrorKind::UndefinedMobility: return "undefined mobility";
    case ErrorKind::UndefinedComplexity: return "undefined complexity";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

/// Every library failure is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dspwb
