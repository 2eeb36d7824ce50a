#include "stegkit/image_stego.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "stegkit/bitcodec.hpp"
#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

constexpr std::size_t kFileHeaderSize = 14;
constexpr std::size_t kInfoHeaderSize = 40;

std::uint16_t read_u16le(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint16_t>(d[at] | (d[at + 1] << 8));
}

std::uint32_t read_u32le(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint32_t>(d[at]) | (static_cast<std::uint32_t>(d[at + 1]) << 8) |
         (static_cast<std::uint32_t>(d[at + 2]) << 16) |
         (static_cast<std::uint32_t>(d[at + 3]) << 24);
}

void put_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::size_t row_stride(std::size_t width, int bytes_per_pixel) {
  return (width * bytes_per_pixel + 3) / 4 * 4;
}

void validate(const PixelImage& img) {
  if (img.width == 0 || img.height == 0) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels");
  }
  if (img.samples.size() != img.width * img.height * img.channels) {
    throw std::invalid_argument("sample count does not match dimensions");
  }
}

}  // namespace

PixelImage bmp_read(std::span<const std::uint8_t> data) {
  if (data.size() < kFileHeaderSize + kInfoHeaderSize) {
    throw Malformed("bmp shorter than its headers");
  }
  if (data[0] != 'B' || data[1] != 'M') {
    throw Malformed("missing BM signature");
  }
  if (read_u32le(data, 2) != data.size()) {
    throw Malformed("declared file size does not match actual size");
  }
  const std::uint32_t pixel_offset = read_u32le(data, 10);
  if (read_u32le(data, 14) != kInfoHeaderSize) {
    throw UnsupportedBmp("only BITMAPINFOHEADER bitmaps are supported");
  }
  const auto width_raw = static_cast<std::int32_t>(read_u32le(data, 18));
  const auto height_raw = static_cast<std::int32_t>(read_u32le(data, 22));
  if (width_raw <= 0 || height_raw <= 0) {
    throw UnsupportedBmp("only bottom-up bitmaps with positive dimensions are supported");
  }
  const std::uint16_t bpp = read_u16le(data, 28);
  if (read_u32le(data, 30) != 0) {
    throw UnsupportedBmp("compressed bitmaps are not supported");
  }
  if (bpp != 8 && bpp != 24) {
    throw UnsupportedBmp("only 8- and 24-bit bitmaps are supported");
  }

  const auto width = static_cast<std::size_t>(width_raw);
  const auto height = static_cast<std::size_t>(height_raw);
  const int channels = bpp == 24 ? 3 : 1;
  const std::size_t stride = row_stride(width, bpp / 8);
  if (pixel_offset > data.size() || stride * height > data.size() - pixel_offset) {
    throw Malformed("pixel data extends past end of file");
  }

  PixelImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.samples.resize(width * height * channels);
  for (std::size_t y = 0; y < height; ++y) {
    // Rows are stored bottom-up on disk.
    const std::size_t src_row = pixel_offset + (height - 1 - y) * stride;
    for (std::size_t x = 0; x < width; ++x) {
      if (channels == 3) {
        const std::size_t src = src_row + x * 3;
        const std::size_t dst = (y * width + x) * 3;
        img.samples[dst + 0] = data[src + 2];  // disk BGR -> memory RGB
        img.samples[dst + 1] = data[src + 1];
        img.samples[dst + 2] = data[src + 0];
      } else {
        img.samples[y * width + x] = data[src_row + x];
      }
    }
  }
  return img;
}

std::vector<std::uint8_t> bmp_write(const PixelImage& image) {
  validate(image);
  const int bpp = image.channels == 3 ? 24 : 8;
  const std::size_t palette_size = image.channels == 1 ? 256 * 4 : 0;
  const std::size_t stride = row_stride(image.width, bpp / 8);
  const std::size_t pixel_offset = kFileHeaderSize + kInfoHeaderSize + palette_size;
  const std::size_t file_size = pixel_offset + stride * image.height;

  std::vector<std::uint8_t> out;
  out.reserve(file_size);
  out.push_back('B');
  out.push_back('M');
  put_u32le(out, static_cast<std::uint32_t>(file_size));
  put_u16le(out, 0);
  put_u16le(out, 0);
  put_u32le(out, static_cast<std::uint32_t>(pixel_offset));

  put_u32le(out, kInfoHeaderSize);
  put_u32le(out, static_cast<std::uint32_t>(image.width));
  put_u32le(out, static_cast<std::uint32_t>(image.height));
  put_u16le(out, 1);
  put_u16le(out, static_cast<std::uint16_t>(bpp));
  put_u32le(out, 0);  // BI_RGB
  put_u32le(out, static_cast<std::uint32_t>(stride * image.height));
  put_u32le(out, 2835);
  put_u32le(out, 2835);
  put_u32le(out, image.channels == 1 ? 256 : 0);
  put_u32le(out, 0);

  if (image.channels == 1) {
    for (int i = 0; i < 256; ++i) {
      out.push_back(static_cast<std::uint8_t>(i));
      out.push_back(static_cast<std::uint8_t>(i));
      out.push_back(static_cast<std::uint8_t>(i));
      out.push_back(0);
    }
  }

  const std::size_t row_bytes = image.width * image.channels;
  for (std::size_t y = 0; y < image.height; ++y) {
    const std::size_t src_row = (image.height - 1 - y) * row_bytes;
    if (image.channels == 3) {
      for (std::size_t x = 0; x < image.width; ++x) {
        const std::size_t src = src_row + x * 3;
        out.push_back(image.samples[src + 2]);
        out.push_back(image.samples[src + 1]);
        out.push_back(image.samples[src + 0]);
      }
    } else {
      out.insert(out.end(), image.samples.begin() + static_cast<std::ptrdiff_t>(src_row),
                 image.samples.begin() + static_cast<std::ptrdiff_t>(src_row + row_bytes));
    }
    for (std::size_t pad = row_bytes % 4 ? 4 - row_bytes % 4 : 0; pad > 0; --pad) {
      out.push_back(0);
    }
  }
  return out;
}

PixelImage lsb_embed(const PixelImage& cover,
                     std::span<const std::uint8_t> payload) {
  validate(cover);
  if (payload.size() * 8 > cover.sample_count()) {
    throw CapacityExceeded("payload exceeds one bit per sample");
  }
  PixelImage stego = cover;
  auto bits = bits_of(payload);
  for (std::size_t i = 0; !bits.exhausted(); ++i) {
    stego.samples[i] = static_cast<std::uint8_t>((stego.samples[i] & ~1u) | bits.next());
  }
  return stego;
}

std::vector<std::uint8_t> lsb_extract(const PixelImage& stego,
                                      std::size_t bit_count) {
  validate(stego);
  if (bit_count > stego.sample_count()) {
    throw CapacityExceeded("bit count exceeds sample count");
  }
  BitStream bits;
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits.push(stego.samples[i] & 1u);
  }
  return bytes_of(bits);
}

double psnr(const PixelImage& a, const PixelImage& b) {
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    throw DimensionMismatch("psnr requires matching dimensions");
  }
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    sq_sum += d * d;
  }
  if (sq_sum == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double mse = sq_sum / static_cast<double>(a.samples.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace stegkit
