#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Validation failure carrying a stable machine-readable code (used for CLI diagnostics).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

namespace errc {
inline constexpr const char* kFileNotFound = "E_FILE_NOT_FOUND";
inline constexpr const char* kParse = "E_PARSE";
inline constexpr const char* kSchema = "E_SCHEMA";
inline constexpr const char* kArrowMismatch = "E_ARROW_MISMATCH";
inline constexpr const char* kGroup = "E_GROUP";
inline constexpr const char* kBicovariance = "E_BICOVARIANCE";
inline constexpr const char* kAsymmetric = "E_ASYMMETRIC";
inline constexpr const char* kSingular = "E_SINGULAR";
inline constexpr const char* kSignature = "E_SIGNATURE";
inline constexpr const char* kNotRightInvariant = "E_NOT_RIGHT_INVARIANT";
inline constexpr const char* kInconsistent = "E_INCONSISTENT";
inline constexpr const char* kNotIsometry = "E_NOT_ISOMETRY";
inline constexpr const char* kNotCompatible = "E_NOT_COMPATIBLE";
inline constexpr const char* kUnsupported = "E_UNSUPPORTED";
inline constexpr const char* kUsage = "E_USAGE";
inline constexpr const char* kDegenerate = "E_DEGENERATE";
}  // namespace errc

}  // namespace cayley
