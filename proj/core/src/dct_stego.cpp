#include "stegkit/dct_stego.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stegkit/bitcodec.hpp"
#include "stegkit/errors.hpp"

namespace stegkit {

const QuantTable kDefaultQuantTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

const std::array<std::uint8_t, 64> kZigzagOrder = {
    0,  1,  8,  16, 9,  2,  3,  10,  //
    17, 24, 32, 25, 18, 11, 4,  5,   //
    12, 19, 26, 33, 40, 48, 41, 34,  //
    27, 20, 13, 6,  7,  14, 21, 28,  //
    35, 42, 49, 56, 57, 50, 43, 36,  //
    29, 22, 15, 23, 30, 37, 44, 51,  //
    58, 59, 52, 45, 38, 31, 39, 46,  //
    53, 60, 61, 54, 47, 55, 62, 63};

namespace {

// cos((2x+1) u pi / 16) scaled by the orthonormal factor.
struct CosineTable {
  double c[8][8];
  CosineTable() {
    for (int u = 0; u < 8; ++u) {
      const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int x = 0; x < 8; ++x) {
        c[u][x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
      }
    }
  }
};

const CosineTable kCos;

double round_half_away(double v) {
  return v < 0.0 ? std::ceil(v - 0.5) : std::floor(v + 0.5);
}

int floor_mod2(int v) { return ((v % 2) + 2) % 2; }

void validate_table(const QuantTable& table) {
  for (auto q : table) {
    if (q < 1) throw std::invalid_argument("quantization entries must be >= 1");
  }
}

std::uint32_t read_u32le(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint32_t>(d[at]) | (static_cast<std::uint32_t>(d[at + 1]) << 8) |
         (static_cast<std::uint32_t>(d[at + 2]) << 16) |
         (static_cast<std::uint32_t>(d[at + 3]) << 24);
}

}  // namespace

Block8 dct_forward(const Block8& samples) {
  // Separable row-column transform over the level-shifted block.
  Block8 shifted;
  for (int i = 0; i < 64; ++i) shifted[i] = samples[i] - 128.0;

  Block8 rows{};
  for (int y = 0; y < 8; ++y) {
    for (int u = 0; u < 8; ++u) {
      double acc = 0.0;
      for (int x = 0; x < 8; ++x) acc += shifted[y * 8 + x] * kCos.c[u][x];
      rows[y * 8 + u] = acc;
    }
  }
  Block8 out{};
  for (int u = 0; u < 8; ++u) {
    for (int v = 0; v < 8; ++v) {
      double acc = 0.0;
      for (int y = 0; y < 8; ++y) acc += rows[y * 8 + u] * kCos.c[v][y];
      out[v * 8 + u] = acc;
    }
  }
  return out;
}

Block8 dct_inverse(const Block8& coeffs) {
  Block8 cols{};
  for (int u = 0; u < 8; ++u) {
    for (int y = 0; y < 8; ++y) {
      double acc = 0.0;
      for (int v = 0; v < 8; ++v) acc += coeffs[v * 8 + u] * kCos.c[v][y];
      cols[y * 8 + u] = acc;
    }
  }
  Block8 out{};
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (int u = 0; u < 8; ++u) acc += cols[y * 8 + u] * kCos.c[u][x];
      out[y * 8 + x] = acc + 128.0;
    }
  }
  return out;
}

CoeffBlock quantize(const Block8& coeffs, const QuantTable& table) {
  validate_table(table);
  CoeffBlock out{};
  for (int i = 0; i < 64; ++i) {
    out[i] = static_cast<std::int16_t>(round_half_away(coeffs[i] / table[i]));
  }
  return out;
}

Block8 dequantize(const CoeffBlock& block, const QuantTable& table) {
  validate_table(table);
  Block8 out{};
  for (int i = 0; i < 64; ++i) {
    out[i] = static_cast<double>(block[i]) * table[i];
  }
  return out;
}

int coeff_parity(int value) { return floor_mod2(value); }

int coeff_write_parity(int value, int bit) {
  int out = value - floor_mod2(value) + (bit & 1);
  if (out == 0 || out == 1) {
    out += out == 0 ? -2 : 2;
  }
  return out;
}

PixelImage to_grayscale(const PixelImage& image) {
  if (image.channels == 1) return image;
  PixelImage gray;
  gray.width = image.width;
  gray.height = image.height;
  gray.channels = 1;
  gray.samples.resize(image.width * image.height);
  for (std::size_t p = 0; p < gray.samples.size(); ++p) {
    const double r = image.samples[p * 3 + 0];
    const double g = image.samples[p * 3 + 1];
    const double b = image.samples[p * 3 + 2];
    gray.samples[p] =
        static_cast<std::uint8_t>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
  }
  return gray;
}

namespace {

// Gray image padded to multiples of 8 by edge replication.
std::vector<std::uint8_t> pad_replicate(const PixelImage& gray, std::size_t pw,
                                        std::size_t ph) {
  std::vector<std::uint8_t> out(pw * ph);
  for (std::size_t y = 0; y < ph; ++y) {
    const std::size_t sy = y < gray.height ? y : gray.height - 1;
    for (std::size_t x = 0; x < pw; ++x) {
      const std::size_t sx = x < gray.width ? x : gray.width - 1;
      out[y * pw + x] = gray.samples[sy * gray.width + sx];
    }
  }
  return out;
}

}  // namespace

QdctContainer dct_embed(const PixelImage& cover,
                        std::span<const std::uint8_t> payload,
                        const QuantTable& table) {
  validate_table(table);
  const PixelImage gray = to_grayscale(cover);
  if (gray.width == 0 || gray.height == 0 ||
      gray.samples.size() != gray.width * gray.height) {
    throw std::invalid_argument("cover image is empty or inconsistent");
  }

  QdctContainer container;
  container.width = static_cast<std::uint32_t>(gray.width);
  container.height = static_cast<std::uint32_t>(gray.height);
  container.quant = table;

  const std::size_t pw = container.padded_width();
  const std::size_t ph = container.padded_height();
  const auto padded = pad_replicate(gray, pw, ph);

  container.blocks.reserve(container.block_count());
  for (std::size_t by = 0; by < ph / 8; ++by) {
    for (std::size_t bx = 0; bx < pw / 8; ++bx) {
      Block8 block;
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          block[y * 8 + x] =
              static_cast<double>(padded[(by * 8 + y) * pw + (bx * 8 + x)]);
        }
      }
      container.blocks.push_back(quantize(dct_forward(block), table));
    }
  }

  auto bits = bits_of(payload);
  if (bits.size() > dct_capacity_bits(container)) {
    throw CapacityExceeded("not enough usable coefficients for payload");
  }
  for (auto& block : container.blocks) {
    if (bits.exhausted()) break;
    for (int z = 1; z < 64 && !bits.exhausted(); ++z) {
      std::int16_t& c = block[kZigzagOrder[z]];
      if (c == 0 || c == 1) continue;
      c = static_cast<std::int16_t>(coeff_write_parity(c, bits.next()));
    }
  }
  return container;
}

std::vector<std::uint8_t> dct_read_bits(const QdctContainer& container) {
  std::vector<std::uint8_t> bits;
  for (const auto& block : container.blocks) {
    for (int z = 1; z < 64; ++z) {
      const std::int16_t c = block[kZigzagOrder[z]];
      if (c == 0 || c == 1) continue;
      bits.push_back(static_cast<std::uint8_t>(coeff_parity(c)));
    }
  }
  return bits;
}

std::size_t dct_capacity_bits(const QdctContainer& container) {
  std::size_t count = 0;
  for (const auto& block : container.blocks) {
    for (int z = 1; z < 64; ++z) {
      const std::int16_t c = block[kZigzagOrder[z]];
      if (c != 0 && c != 1) ++count;
    }
  }
  return count;
}

std::vector<std::uint8_t> dct_extract(const QdctContainer& container) {
  const auto bits = dct_read_bits(container);
  if (bits.size() < SecretFrame::kHeaderBits) {
    throw BadMagic("container holds no frame header");
  }
  const auto header = bytes_of(
      std::span<const std::uint8_t>(bits.data(), SecretFrame::kHeaderBits));
  const std::uint32_t length = frame_peek_length(header);
  const std::size_t need = SecretFrame::kHeaderBits + 8 * static_cast<std::size_t>(length);
  if (need > bits.size()) {
    throw Truncated("declared payload length exceeds container capacity");
  }
  return bytes_of(std::span<const std::uint8_t>(bits.data(), need));
}

PixelImage dct_reconstruct(const QdctContainer& container) {
  if (container.blocks.size() != container.block_count()) {
    throw Malformed("block count does not match container dimensions");
  }
  const std::size_t pw = container.padded_width();
  const std::size_t ph = container.padded_height();
  std::vector<std::uint8_t> padded(pw * ph);
  std::size_t index = 0;
  for (std::size_t by = 0; by < ph / 8; ++by) {
    for (std::size_t bx = 0; bx < pw / 8; ++bx) {
      const Block8 spatial =
          dct_inverse(dequantize(container.blocks[index++], container.quant));
      for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) {
          const double v = round_half_away(spatial[y * 8 + x]);
          padded[(by * 8 + y) * pw + (bx * 8 + x)] =
              static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
        }
      }
    }
  }
  PixelImage out;
  out.width = container.width;
  out.height = container.height;
  out.channels = 1;
  out.samples.resize(out.width * out.height);
  for (std::size_t y = 0; y < out.height; ++y) {
    for (std::size_t x = 0; x < out.width; ++x) {
      out.samples[y * out.width + x] = padded[y * pw + x];
    }
  }
  return out;
}

std::vector<std::uint8_t> qdct_write(const QdctContainer& container) {
  validate_table(container.quant);
  if (container.blocks.size() != container.block_count()) {
    throw Malformed("block count does not match container dimensions");
  }
  for (auto q : container.quant) {
    if (q > 255) throw Malformed("quantization entry does not fit the container format");
  }
  std::vector<std::uint8_t> out;
  out.reserve(13 + 64 + container.blocks.size() * 128);
  out.insert(out.end(), {'Q', 'D', 'C', 'T', 1});
  for (std::uint32_t v : {container.width, container.height}) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
  }
  for (int z = 0; z < 64; ++z) {
    out.push_back(static_cast<std::uint8_t>(container.quant[kZigzagOrder[z]]));
  }
  for (const auto& block : container.blocks) {
    for (int z = 0; z < 64; ++z) {
      const auto v = static_cast<std::uint16_t>(block[kZigzagOrder[z]]);
      out.push_back(static_cast<std::uint8_t>(v));
      out.push_back(static_cast<std::uint8_t>(v >> 8));
    }
  }
  return out;
}

QdctContainer qdct_read(std::span<const std::uint8_t> data) {
  if (data.size() < 13 + 64) {
    throw Malformed("qdct container shorter than its header");
  }
  if (data[0] != 'Q' || data[1] != 'D' || data[2] != 'C' || data[3] != 'T') {
    throw Malformed("missing QDCT signature");
  }
  if (data[4] != 1) {
    throw Malformed("unsupported QDCT version");
  }
  QdctContainer container;
  container.width = read_u32le(data, 5);
  container.height = read_u32le(data, 9);
  if (container.width == 0 || container.height == 0) {
    throw Malformed("container dimensions must be positive");
  }
  for (int z = 0; z < 64; ++z) {
    const std::uint8_t q = data[13 + z];
    if (q < 1) throw Malformed("quantization entries must be >= 1");
    container.quant[kZigzagOrder[z]] = q;
  }
  const std::size_t blocks = container.block_count();
  if (data.size() != 13 + 64 + blocks * 128) {
    throw Malformed("container size does not match its dimensions");
  }
  container.blocks.resize(blocks);
  std::size_t at = 13 + 64;
  for (auto& block : container.blocks) {
    for (int z = 0; z < 64; ++z) {
      const auto v = static_cast<std::uint16_t>(data[at] | (data[at + 1] << 8));
      block[kZigzagOrder[z]] = static_cast<std::int16_t>(v);
      at += 2;
    }
  }
  return container;
}

}  // namespace stegkit
