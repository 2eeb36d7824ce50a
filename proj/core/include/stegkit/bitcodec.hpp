#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stegkit {

/// Optional shared secret. The transform is a repeating-key XOR, an
/// involution: applying it twice with the same key is the identity.
struct StegoKey {
  std::vector<std::uint8_t> bytes;  // non-empty
};

using MaybeKey = std::optional<StegoKey>;

/// Ordered sequence of 0/1 values with a read cursor. Bit order within a
/// byte is MSB-first everywhere in this library.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  void push(std::uint8_t bit) { bits_.push_back(bit & 1u); }

  /// Reads the bit under the cursor and advances. Throws Truncated past the end.
  std::uint8_t next();

  [[nodiscard]] bool exhausted() const { return cursor_ >= bits_.size(); }
  [[nodiscard]] std::size_t size() const { return bits_.size(); }
  [[nodiscard]] std::size_t remaining() const { return bits_.size() - cursor_; }
  [[nodiscard]] std::size_t cursor() const { return cursor_; }
  void reset() { cursor_ = 0; }

  [[nodiscard]] const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t cursor_ = 0;
};

/// MSB-first expansion of bytes into bits.
BitStream bits_of(std::span<const std::uint8_t> data);

/// Packs bits MSB-first into bytes; a final partial byte is zero-padded.
std::vector<std::uint8_t> bytes_of(const BitStream& bits);
std::vector<std::uint8_t> bytes_of(std::span<const std::uint8_t> bits);

/// Repeating-key XOR; identity when key is absent.
std::vector<std::uint8_t> xor_with_key(std::span<const std::uint8_t> data,
                                       const MaybeKey& key);

/// The framed payload every channel carries: 2-byte magic, big-endian
/// 32-bit payload length, then the (optionally key-XORed) payload bytes.
/// The magic doubles as the no-hidden-message detector.
struct SecretFrame {
  static constexpr std::uint8_t kMagic0 = 0x53;
  static constexpr std::uint8_t kMagic1 = 0x47;
  static constexpr std::size_t kHeaderBytes = 6;
  static constexpr std::size_t kHeaderBits = 48;

  std::uint32_t length = 0;
  std::vector<std::uint8_t> payload;  // as stored, possibly key-XORed
};

/// magic | u32-be length | message XOR repeating key.
std::vector<std::uint8_t> frame_encode(std::span<const std::uint8_t> message,
                                       const MaybeKey& key = std::nullopt);

/// Inverse of frame_encode. Trailing bytes beyond the declared length are
/// ignored (channels over-extract). Throws BadMagic when no frame is
/// present, Truncated when the declared length exceeds the data.
std::vector<std::uint8_t> frame_decode(std::span<const std::uint8_t> data,
                                       const MaybeKey& key = std::nullopt);

/// Validates the 6-byte header prefix and returns the declared payload
/// length. Throws BadMagic / Truncated.
std::uint32_t frame_peek_length(std::span<const std::uint8_t> data);

/// Two-phase framed extraction shared by the channels: read 48 header bits,
/// learn the payload length, then read exactly the frame. `extract_bits(n)`
/// must return the first n carrier bits packed MSB-first and may be called
/// more than once.
std::vector<std::uint8_t> extract_framed(
    const std::function<std::vector<std::uint8_t>(std::size_t)>& extract_bits,
    std::size_t capacity_bits, const MaybeKey& key = std::nullopt);

}  // namespace stegkit
