#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stegkit {

/// Raster of 8-bit samples, row-major from the top-left pixel. Three-channel
/// images interleave R,G,B; single-channel images hold gray values or
/// palette indices.
struct PixelImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int channels = 1;  // 1 or 3
  std::vector<std::uint8_t> samples;

  [[nodiscard]] std::size_t sample_count() const { return samples.size(); }
  bool operator==(const PixelImage&) const = default;
};

/// Parses an uncompressed 8-bit (palettized) or 24-bit Windows bitmap.
/// Palettized images are returned as their index plane (channels == 1).
/// Throws UnsupportedBmp for other depths or compressed files, Malformed
/// for size mismatches.
PixelImage bmp_read(std::span<const std::uint8_t> data);

/// Writes the canonical form: bottom-up rows, BGR byte order on disk,
/// 4-byte row padding; single-channel images get a grayscale palette.
std::vector<std::uint8_t> bmp_write(const PixelImage& image);

/// Replaces the least-significant bit of sample i with payload bit i
/// (MSB-first), walking samples in raster order from the top-left corner.
/// Throws CapacityExceeded when 8 * payload size exceeds the sample count.
PixelImage lsb_embed(const PixelImage& cover,
                     std::span<const std::uint8_t> payload);

/// Packs the LSBs of the first bit_count samples MSB-first.
std::vector<std::uint8_t> lsb_extract(const PixelImage& stego,
                                      std::size_t bit_count);

/// Peak signal-to-noise ratio in dB against a 255 peak; +inf for identical
/// images. Throws DimensionMismatch.
double psnr(const PixelImage& a, const PixelImage& b);

}  // namespace stegkit
