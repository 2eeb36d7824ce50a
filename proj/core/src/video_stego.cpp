#include "stegkit/video_stego.hpp"

#include <algorithm>
#include <stdexcept>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

void validate(const FrameSequence& seq) {
  if (seq.width == 0 || seq.height == 0 || seq.frames.empty()) {
    throw std::invalid_argument("frame sequence must be non-empty with positive dimensions");
  }
  for (const auto& frame : seq.frames) {
    if (frame.size() != seq.width * seq.height) {
      throw std::invalid_argument("frame size does not match sequence dimensions");
    }
  }
}

std::uint8_t margin_clamp(std::uint8_t v, int alpha) {
  const int lo = alpha;
  const int hi = 255 - alpha;
  return static_cast<std::uint8_t>(std::clamp(static_cast<int>(v), lo, hi));
}

std::uint32_t read_u32le(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint32_t>(d[at]) | (static_cast<std::uint32_t>(d[at + 1]) << 8) |
         (static_cast<std::uint32_t>(d[at + 2]) << 16) |
         (static_cast<std::uint32_t>(d[at + 3]) << 24);
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 24));
}

}  // namespace

MessagePlane MessagePlane::tile(std::span<const std::uint8_t> bits, std::size_t width,
                                std::size_t height, std::size_t frame_count) {
  MessagePlane plane;
  plane.width = width;
  plane.height = height;
  plane.bit_count = bits.size();
  plane.frames.assign(frame_count, std::vector<std::uint8_t>(width * height, 0));
  const std::size_t per_frame = width * height;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    plane.frames[i / per_frame][i % per_frame] = bits[i] & 1u;
  }
  return plane;
}

FrameSequence video_embed(const FrameSequence& cover,
                          std::span<const std::uint8_t> bits, int alpha) {
  validate(cover);
  if (alpha < 1 || alpha > 127) {
    throw BadAlpha("alpha must lie in [1, 127]");
  }
  if (bits.size() > cover.pixel_capacity()) {
    throw CapacityExceeded("bit count exceeds pixel capacity");
  }
  FrameSequence stego = cover;
  const std::size_t per_frame = cover.width * cover.height;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    std::uint8_t& pixel = stego.frames[i / per_frame][i % per_frame];
    const int base = margin_clamp(pixel, alpha);
    pixel = static_cast<std::uint8_t>(bits[i] ? base + alpha : base - alpha);
  }
  return stego;
}

std::vector<std::uint8_t> video_extract_known(const FrameSequence& stego,
                                              const FrameSequence& cover, int alpha,
                                              std::size_t bit_count) {
  validate(stego);
  validate(cover);
  if (alpha < 1 || alpha > 127) {
    throw BadAlpha("alpha must lie in [1, 127]");
  }
  if (stego.width != cover.width || stego.height != cover.height ||
      stego.frames.size() != cover.frames.size()) {
    throw DimensionMismatch("stego and cover sequences differ in geometry");
  }
  if (bit_count > cover.pixel_capacity()) {
    throw CapacityExceeded("bit count exceeds pixel capacity");
  }
  std::vector<std::uint8_t> bits;
  bits.reserve(bit_count);
  const std::size_t per_frame = cover.width * cover.height;
  for (std::size_t i = 0; i < bit_count; ++i) {
    const int clamped = margin_clamp(cover.frames[i / per_frame][i % per_frame], alpha);
    const int observed = stego.frames[i / per_frame][i % per_frame];
    bits.push_back(observed - clamped > 0 ? 1 : 0);
  }
  return bits;
}

std::vector<std::uint8_t> frsq_write(const FrameSequence& seq) {
  validate(seq);
  std::vector<std::uint8_t> out;
  out.reserve(16 + seq.frames.size() * seq.width * seq.height);
  out.push_back('F');
  out.push_back('R');
  out.push_back('S');
  out.push_back('Q');
  put_u32le(out, static_cast<std::uint32_t>(seq.width));
  put_u32le(out, static_cast<std::uint32_t>(seq.height));
  put_u32le(out, static_cast<std::uint32_t>(seq.frames.size()));
  for (const auto& frame : seq.frames) {
    out.insert(out.end(), frame.begin(), frame.end());
  }
  return out;
}

FrameSequence frsq_read(std::span<const std::uint8_t> data) {
  if (data.size() < 16) {
    throw Malformed("frame container shorter than its header");
  }
  if (data[0] != 'F' || data[1] != 'R' || data[2] != 'S' || data[3] != 'Q') {
    throw Malformed("missing FRSQ signature");
  }
  FrameSequence seq;
  seq.width = read_u32le(data, 4);
  seq.height = read_u32le(data, 8);
  const std::uint32_t count = read_u32le(data, 12);
  if (seq.width == 0 || seq.height == 0 || count == 0) {
    throw Malformed("frame container dimensions must be positive");
  }
  const std::size_t per_frame = seq.width * seq.height;
  if (data.size() - 16 != per_frame * count) {
    throw Malformed("frame data does not match declared dimensions");
  }
  seq.frames.reserve(count);
  std::size_t at = 16;
  for (std::uint32_t f = 0; f < count; ++f) {
    seq.frames.emplace_back(data.begin() + static_cast<std::ptrdiff_t>(at),
                            data.begin() + static_cast<std::ptrdiff_t>(at + per_frame));
    at += per_frame;
  }
  return seq;
}

}  // namespace stegkit
