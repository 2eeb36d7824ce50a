#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "stegkit/image_stego.hpp"

namespace stegkit {

/// 8x8 block flattened row-major.
using Block8 = std::array<double, 64>;

/// Quantized coefficients of one block, row-major in memory (the container
/// file stores them in zigzag order).
using CoeffBlock = std::array<std::int16_t, 64>;

/// Per-frequency divisors, row-major; all entries >= 1.
using QuantTable = std::array<std::uint16_t, 64>;

/// The standard JPEG luminance table, the default when callers do not
/// supply their own.
extern const QuantTable kDefaultQuantTable;

/// Zigzag visit order: zigzag position -> row-major index.
extern const std::array<std::uint8_t, 64> kZigzagOrder;

/// Quantized-coefficient container. width/height are the original cover
/// dimensions; blocks cover the image padded up to multiples of 8.
struct QdctContainer {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  QuantTable quant{};
  std::vector<CoeffBlock> blocks;  // raster block order

  [[nodiscard]] std::size_t padded_width() const { return (width + 7) / 8 * 8; }
  [[nodiscard]] std::size_t padded_height() const { return (height + 7) / 8 * 8; }
  [[nodiscard]] std::size_t block_count() const {
    return (padded_width() / 8) * (padded_height() / 8);
  }
};

/// Orthonormal 2-D DCT-II of one block of samples in [0,255]; the samples
/// are level-shifted by -128 before the transform.
Block8 dct_forward(const Block8& samples);

/// Inverse transform back to [0,255]-range values (level shift reapplied,
/// no rounding or clamping).
Block8 dct_inverse(const Block8& coeffs);

/// Elementwise round-half-away-from-zero(c / q).
CoeffBlock quantize(const Block8& coeffs, const QuantTable& table);

/// Elementwise c * q.
Block8 dequantize(const CoeffBlock& block, const QuantTable& table);

/// Parity of a coefficient under floor-mod (result sign follows the
/// divisor): the bit a usable coefficient carries.
int coeff_parity(int value);

/// Writes a payload bit into a usable coefficient: c' = c - mod(c, 2) + bit
/// with floor-mod, nudged away from zero should it land on 0 or 1. Usable
/// inputs (outside {0,1}) always produce usable outputs.
int coeff_write_parity(int value, int bit);

/// Converts to single-channel by integer luma when needed.
PixelImage to_grayscale(const PixelImage& image);

/// Quantized-domain LSB embedding: pad to multiples of 8 by edge
/// replication, transform and quantize each block, then walk coefficients
/// in zigzag order — skipping the DC coefficient and any value in {0,1} —
/// writing one payload bit per usable coefficient. Capacity is
/// data-dependent; throws CapacityExceeded.
QdctContainer dct_embed(const PixelImage& cover,
                        std::span<const std::uint8_t> payload,
                        const QuantTable& table = kDefaultQuantTable);

/// Every usable-coefficient parity bit of the container, in walk order.
std::vector<std::uint8_t> dct_read_bits(const QdctContainer& container);

/// Usable-coefficient count of the container (its payload bit capacity).
std::size_t dct_capacity_bits(const QdctContainer& container);

/// Two-phase framed read: parses the frame header from the leading parity
/// bits, then returns the complete frame bytes as embedded. Throws BadMagic
/// when no frame is present, Truncated when the declared length exceeds the
/// container's capacity.
std::vector<std::uint8_t> dct_extract(const QdctContainer& container);

/// Dequantize, inverse transform, round, clamp, crop padding.
PixelImage dct_reconstruct(const QdctContainer& container);

/// Container file codec (magic "QDCT"). Quant entries must fit a byte.
std::vector<std::uint8_t> qdct_write(const QdctContainer& container);
QdctContainer qdct_read(std::span<const std::uint8_t> data);

}  // namespace stegkit
