#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace binom {

enum class Errc {
  SingularMatrix,
  ZeroValue,
  NonFinite,
  NegativeEvenRoot,
  NoRealRoot,
  InvalidOrthant,
  CertificationFailed,
  DimensionTooLarge,
  WeightSumNonzero,
  ScaleTooSmall,
  InvalidInput,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ZeroValue: return "ZeroValue";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NegativeEvenRoot: return "NegativeEvenRoot";
    case Errc::NoRealRoot: return "NoRealRoot";
    case Errc::InvalidOrthant: return "InvalidOrthant";
    case Errc::CertificationFailed: return "CertificationFailed";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::WeightSumNonzero: return "WeightSumNonzero";
    case Errc::ScaleTooSmall: return "ScaleTooSmall";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace binom
