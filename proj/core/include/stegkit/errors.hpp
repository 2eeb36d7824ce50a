#pragma once

#include <stdexcept>

namespace stegkit {

/// Base class for every error the library reports. The CLI maps these to
/// exit code 2; anything else escaping a module is a bug.
class StegoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual const char* name() const { return "StegoError"; }
};

#define STEGKIT_DEFINE_ERROR(ClassName)                                     \
  class ClassName : public StegoError {                                     \
   public:                                                                  \
    using StegoError::StegoError;                                           \
    [[nodiscard]] const char* name() const override { return #ClassName; } \
  }

// Framing / codec
STEGKIT_DEFINE_ERROR(BadMagic);
STEGKIT_DEFINE_ERROR(Truncated);
STEGKIT_DEFINE_ERROR(CapacityExceeded);

// Text schemes
STEGKIT_DEFINE_ERROR(KeyExhaustsCover);
STEGKIT_DEFINE_ERROR(Unsatisfiable);
STEGKIT_DEFINE_ERROR(NotEnoughGaps);
STEGKIT_DEFINE_ERROR(IndexOutOfTable);

// Containers
STEGKIT_DEFINE_ERROR(UnsupportedBmp);
STEGKIT_DEFINE_ERROR(UnsupportedWav);
STEGKIT_DEFINE_ERROR(Malformed);

// Audio
STEGKIT_DEFINE_ERROR(ClipTooShort);
STEGKIT_DEFINE_ERROR(StrengthTooSmall);

// Video
STEGKIT_DEFINE_ERROR(DimensionMismatch);
STEGKIT_DEFINE_ERROR(BadAlpha);

// Network
STEGKIT_DEFINE_ERROR(ChecksumMismatch);
STEGKIT_DEFINE_ERROR(BadVersion);
STEGKIT_DEFINE_ERROR(TemplateTooLarge);
STEGKIT_DEFINE_ERROR(ProtocolViolation);

// Steganalysis
STEGKIT_DEFINE_ERROR(InsufficientSamples);
STEGKIT_DEFINE_ERROR(NoInput);

#undef STEGKIT_DEFINE_ERROR

}  // namespace stegkit
