#include "stegkit/bitcodec.hpp"

#include <stdexcept>

#include "stegkit/errors.hpp"

namespace stegkit {

std::uint8_t BitStream::next() {
  if (cursor_ >= bits_.size()) {
    throw Truncated("bit stream exhausted");
  }
  return bits_[cursor_++];
}

BitStream bits_of(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> bits;
  bits.reserve(data.size() * 8);
  for (std::uint8_t byte : data) {
    for (int i = 7; i >= 0; --i) {
      bits.push_back(static_cast<std::uint8_t>((byte >> i) & 1u));
    }
  }
  return BitStream(std::move(bits));
}

std::vector<std::uint8_t> bytes_of(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1u) {
      out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    }
  }
  return out;
}

std::vector<std::uint8_t> bytes_of(const BitStream& bits) {
  return bytes_of(std::span<const std::uint8_t>(bits.bits()));
}

std::vector<std::uint8_t> xor_with_key(std::span<const std::uint8_t> data,
                                       const MaybeKey& key) {
  std::vector<std::uint8_t> out(data.begin(), data.end());
  if (!key) {
    return out;
  }
  if (key->bytes.empty()) {
    throw std::invalid_argument("stego key must be non-empty");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] ^= key->bytes[i % key->bytes.size()];
  }
  return out;
}

std::vector<std::uint8_t> frame_encode(std::span<const std::uint8_t> message,
                                       const MaybeKey& key) {
  if (message.size() >= (1ull << 32)) {
    throw CapacityExceeded("message length must be below 2^32 bytes");
  }
  const auto length = static_cast<std::uint32_t>(message.size());
  std::vector<std::uint8_t> out;
  out.reserve(SecretFrame::kHeaderBytes + message.size());
  out.push_back(SecretFrame::kMagic0);
  out.push_back(SecretFrame::kMagic1);
  out.push_back(static_cast<std::uint8_t>(length >> 24));
  out.push_back(static_cast<std::uint8_t>(length >> 16));
  out.push_back(static_cast<std::uint8_t>(length >> 8));
  out.push_back(static_cast<std::uint8_t>(length));
  auto payload = xor_with_key(message, key);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::uint32_t frame_peek_length(std::span<const std::uint8_t> data) {
  if (data.size() < 2 || data[0] != SecretFrame::kMagic0 ||
      data[1] != SecretFrame::kMagic1) {
    throw BadMagic("no frame present");
  }
  if (data.size() < SecretFrame::kHeaderBytes) {
    throw Truncated("frame header incomplete");
  }
  return (static_cast<std::uint32_t>(data[2]) << 24) |
         (static_cast<std::uint32_t>(data[3]) << 16) |
         (static_cast<std::uint32_t>(data[4]) << 8) |
         static_cast<std::uint32_t>(data[5]);
}

std::vector<std::uint8_t> frame_decode(std::span<const std::uint8_t> data,
                                       const MaybeKey& key) {
  const std::uint32_t length = frame_peek_length(data);
  if (data.size() - SecretFrame::kHeaderBytes < length) {
    throw Truncated("declared payload length exceeds available bytes");
  }
  return xor_with_key(data.subspan(SecretFrame::kHeaderBytes, length), key);
}

std::vector<std::uint8_t> extract_framed(
    const std::function<std::vector<std::uint8_t>(std::size_t)>& extract_bits,
    std::size_t capacity_bits, const MaybeKey& key) {
  if (capacity_bits < SecretFrame::kHeaderBits) {
    throw BadMagic("carrier too small to hold a frame header");
  }
  const auto header = extract_bits(SecretFrame::kHeaderBits);
  const std::uint32_t length = frame_peek_length(header);
  const std::size_t need =
      SecretFrame::kHeaderBits + 8 * static_cast<std::size_t>(length);
  if (need > capacity_bits) {
    throw Truncated("declared payload length exceeds carrier capacity");
  }
  return frame_decode(extract_bits(need), key);
}

}  // namespace stegkit
