#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "stegkit/audio_stego.hpp"
#include "stegkit/image_stego.hpp"

namespace testsupport {

inline std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(dist(rng));
  return out;
}

inline std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<int> dist(0, 1);
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(dist(rng));
  return out;
}

inline stegkit::PixelImage random_image(std::mt19937_64& rng, std::size_t w, std::size_t h,
                                        int channels) {
  stegkit::PixelImage img;
  img.width = w;
  img.height = h;
  img.channels = channels;
  img.samples = random_bytes(rng, w * h * static_cast<std::size_t>(channels));
  return img;
}

inline stegkit::PcmClip random_clip(std::mt19937_64& rng, std::size_t samples,
                                    int amplitude = 20000) {
  std::uniform_int_distribution<int> dist(-amplitude, amplitude);
  stegkit::PcmClip clip;
  clip.samples.resize(samples);
  for (auto& s : clip.samples) s = static_cast<std::int16_t>(dist(rng));
  return clip;
}

/// Textured gradient-plus-noise image that behaves like a photograph for
/// the histogram detectors: skewed value pairs, plenty of nonzero DCT
/// coefficients.
inline stegkit::PixelImage synthetic_photo(std::uint64_t seed, std::size_t w = 128,
                                           std::size_t h = 128) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 9.0);
  std::uniform_real_distribution<double> phase(0.0, 6.28318);
  const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
  stegkit::PixelImage img;
  img.width = w;
  img.height = h;
  img.channels = 1;
  img.samples.resize(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = static_cast<double>(x), fy = static_cast<double>(y);
      double v = 128.0 + 52.0 * std::sin(fx / 9.7 + p1) * std::cos(fy / 13.3 + p2) +
                 26.0 * std::sin((fx + fy) / 23.1 + p3) + noise(rng);
      v = std::lround(v);
      img.samples[y * w + x] =
          static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
  }
  return img;
}

/// One-pole lowpassed noise, a speech-shaped test signal.
inline stegkit::PcmClip filtered_noise_clip(std::uint64_t seed, std::size_t samples,
                                            double pole = 0.9, double gain = 4000.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  stegkit::PcmClip clip;
  clip.samples.resize(samples);
  double state = 0.0;
  for (auto& s : clip.samples) {
    state = pole * state + noise(rng);
    double v = std::lround(gain * (1.0 - pole) * state * 3.0);
    if (v > 28000.0) v = 28000.0;
    if (v < -28000.0) v = -28000.0;
    s = static_cast<std::int16_t>(v);
  }
  return clip;
}

}  // namespace testsupport
