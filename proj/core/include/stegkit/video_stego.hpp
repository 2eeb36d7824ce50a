#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stegkit {

/// Ordered grayscale frames sharing one geometry.
struct FrameSequence {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::vector<std::uint8_t>> frames;  // each width*height, row-major

  [[nodiscard]] std::size_t pixel_capacity() const {
    return width * height * frames.size();
  }
  bool operator==(const FrameSequence&) const = default;
};

/// Payload bits tiled over the cover geometry in raster order, frame by
/// frame; pixels past bit_count carry nothing.
struct MessagePlane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t bit_count = 0;
  std::vector<std::vector<std::uint8_t>> frames;  // 0/1 per pixel

  static MessagePlane tile(std::span<const std::uint8_t> bits, std::size_t width,
                           std::size_t height, std::size_t frame_count);
};

/// Additive frame-domain embedding: each carrying pixel is first clamped
/// into [alpha, 255-alpha], then moved by +alpha for bit 1 and -alpha for
/// bit 0. Non-carrying pixels pass through. Requires 1 <= alpha <= 127
/// (BadAlpha) and bit count within capacity (CapacityExceeded).
FrameSequence video_embed(const FrameSequence& cover,
                          std::span<const std::uint8_t> bits, int alpha);

/// Known-carrier inverse: recomputes the margin-clamped cover and reads the
/// sign of the difference. Throws DimensionMismatch.
std::vector<std::uint8_t> video_extract_known(const FrameSequence& stego,
                                              const FrameSequence& cover, int alpha,
                                              std::size_t bit_count);

/// Raw frame container (magic "FRSQ", little-endian header fields).
std::vector<std::uint8_t> frsq_write(const FrameSequence& seq);
FrameSequence frsq_read(std::span<const std::uint8_t> data);

}  // namespace stegkit
