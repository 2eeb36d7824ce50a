#include "stegkit/audio_stego.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "stegkit/bitcodec.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/fft.hpp"

namespace stegkit {

namespace {

constexpr std::uint64_t kPnMultiplier = 6364136223846793005ULL;
constexpr std::uint64_t kPnIncrement = 1442695040888963407ULL;

std::int16_t clamp_sample(double v) {
  const double r = v < 0.0 ? std::ceil(v - 0.5) : std::floor(v + 0.5);
  if (r < -32768.0) return -32768;
  if (r > 32767.0) return 32767;
  return static_cast<std::int16_t>(r);
}

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

void validate_clip(const PcmClip& clip) {
  if (clip.samples.empty()) {
    throw std::invalid_argument("clip must hold at least one sample");
  }
}

}  // namespace

std::vector<std::int8_t> PnSequence::chips(std::size_t count) const {
  std::vector<std::int8_t> out;
  out.reserve(count);
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < count; ++i) {
    state = state * kPnMultiplier + kPnIncrement;
    out.push_back((state >> 63) == 0 ? std::int8_t{1} : std::int8_t{-1});
  }
  return out;
}

PcmClip wav_read(std::span<const std::uint8_t> data) {
  if (data.size() < 12 || data[0] != 'R' || data[1] != 'I' || data[2] != 'F' ||
      data[3] != 'F' || data[8] != 'W' || data[9] != 'A' || data[10] != 'V' ||
      data[11] != 'E') {
    throw Malformed("not a RIFF/WAVE file");
  }
  if (read_u32le(data, 4) != data.size() - 8) {
    throw Malformed("RIFF size does not match file size");
  }

  bool have_fmt = false;
  std::uint32_t sample_rate = 0;
  std::span<const std::uint8_t> pcm;
  bool have_data = false;

  std::size_t at = 12;
  while (at + 8 <= data.size()) {
    const std::uint32_t chunk_size = read_u32le(data, at + 4);
    if (chunk_size > data.size() - at - 8) {
      throw Malformed("chunk size exceeds file size");
    }
    const auto body = data.subspan(at + 8, chunk_size);
    if (data[at] == 'f' && data[at + 1] == 'm' && data[at + 2] == 't' &&
        data[at + 3] == ' ') {
      if (chunk_size < 16) throw Malformed("fmt chunk too short");
      const std::uint16_t format = read_u16le(body, 0);
      const std::uint16_t channels = read_u16le(body, 2);
      const std::uint16_t bits = read_u16le(body, 14);
      if (format != 1) throw UnsupportedWav("only PCM format 1 is supported");
      if (channels != 1) throw UnsupportedWav("only mono clips are supported");
      if (bits != 16) throw UnsupportedWav("only 16-bit samples are supported");
      sample_rate = read_u32le(body, 4);
      have_fmt = true;
    } else if (data[at] == 'd' && data[at + 1] == 'a' && data[at + 2] == 't' &&
               data[at + 3] == 'a') {
      pcm = body;
      have_data = true;
    }
    at += 8 + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }
  if (at != data.size()) throw Malformed("trailing bytes after final chunk");
  if (!have_fmt || !have_data) throw Malformed("missing fmt or data chunk");
  if (pcm.empty() || pcm.size() % 2 != 0) {
    throw Malformed("data chunk is empty or odd-sized");
  }

  PcmClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(pcm.size() / 2);
  for (std::size_t i = 0; i < clip.samples.size(); ++i) {
    clip.samples[i] =
        static_cast<std::int16_t>(static_cast<std::uint16_t>(pcm[2 * i] | (pcm[2 * i + 1] << 8)));
  }
  return clip;
}

std::vector<std::uint8_t> wav_write(const PcmClip& clip) {
  validate_clip(clip);
  const std::uint32_t data_size = static_cast<std::uint32_t>(clip.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32le(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32le(out, 16);
  put_u16le(out, 1);  // PCM
  put_u16le(out, 1);  // mono
  put_u32le(out, clip.sample_rate);
  put_u32le(out, clip.sample_rate * 2);
  put_u16le(out, 2);
  put_u16le(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32le(out, data_size);
  for (std::int16_t s : clip.samples) {
    const auto u = static_cast<std::uint16_t>(s);
    out.push_back(static_cast<std::uint8_t>(u));
    out.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  return out;
}

PcmClip audio_lsb_embed(const PcmClip& cover, std::span<const std::uint8_t> payload) {
  validate_clip(cover);
  if (payload.size() * 8 > cover.samples.size()) {
    throw CapacityExceeded("payload exceeds one bit per sample");
  }
  PcmClip stego = cover;
  auto bits = bits_of(payload);
  for (std::size_t i = 0; !bits.exhausted(); ++i) {
    stego.samples[i] = static_cast<std::int16_t>(
        (static_cast<std::uint16_t>(stego.samples[i]) & ~std::uint16_t{1}) | bits.next());
  }
  return stego;
}

std::vector<std::uint8_t> audio_lsb_extract(const PcmClip& stego, std::size_t bit_count) {
  validate_clip(stego);
  if (bit_count > stego.samples.size()) {
    throw CapacityExceeded("bit count exceeds sample count");
  }
  BitStream bits;
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits.push(static_cast<std::uint8_t>(static_cast<std::uint16_t>(stego.samples[i]) & 1u));
  }
  return bytes_of(bits);
}

PcmClip phase_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                    std::size_t segment_len, std::size_t bins) {
  validate_clip(cover);
  if (!is_pow2(segment_len) || segment_len < 4) {
    throw std::invalid_argument("segment length must be a power of two >= 4");
  }
  if (bins < 1 || bins > segment_len / 2 - 1) {
    throw std::invalid_argument("bins must lie in [1, segment_len/2 - 1]");
  }
  if (cover.samples.size() < segment_len) {
    throw ClipTooShort("clip shorter than one segment");
  }
  if (bits.size() > bins) {
    throw CapacityExceeded("bit count exceeds first-segment capacity");
  }

  const std::size_t n = cover.samples.size();
  const std::size_t segments = (n + segment_len - 1) / segment_len;

  // Transform every segment (the last one zero-padded).
  std::vector<std::vector<std::complex<double>>> spectra(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    auto& seg = spectra[s];
    seg.assign(segment_len, {0.0, 0.0});
    const std::size_t base = s * segment_len;
    for (std::size_t i = 0; i < segment_len && base + i < n; ++i) {
      seg[i] = {static_cast<double>(cover.samples[base + i]), 0.0};
    }
    fft(seg, false);
  }

  // New absolute phases for the carrier bins, propagated through the original
  // inter-segment phase differences so later segments stay consistent.
  std::vector<double> prev_orig(bins + 1), prev_new(bins + 1);
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t k = 1; k <= bins; ++k) {
      const double orig = std::arg(spectra[s][k]);
      double updated;
      if (s == 0) {
        const std::uint8_t bit = k - 1 < bits.size() ? bits[k - 1] : 0;
        updated = bit == 0 ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0;
      } else {
        updated = prev_new[k] + (orig - prev_orig[k]);
      }
      const double mag = std::abs(spectra[s][k]);
      spectra[s][k] = std::polar(mag, updated);
      spectra[s][segment_len - k] = std::conj(spectra[s][k]);
      prev_orig[k] = orig;
      prev_new[k] = updated;
    }
  }

  PcmClip stego = cover;
  for (std::size_t s = 0; s < segments; ++s) {
    fft(spectra[s], true);
    const std::size_t base = s * segment_len;
    for (std::size_t i = 0; i < segment_len && base + i < n; ++i) {
      stego.samples[base + i] = clamp_sample(spectra[s][i].real());
    }
  }
  return stego;
}

std::vector<std::uint8_t> phase_extract(const PcmClip& stego, std::size_t segment_len,
                                        std::size_t bins, std::size_t bit_count) {
  validate_clip(stego);
  if (!is_pow2(segment_len) || segment_len < 4) {
    throw std::invalid_argument("segment length must be a power of two >= 4");
  }
  if (stego.samples.size() < segment_len) {
    throw ClipTooShort("clip shorter than one segment");
  }
  if (bit_count > bins || bins > segment_len / 2 - 1) {
    throw CapacityExceeded("bit count exceeds first-segment capacity");
  }
  std::vector<std::complex<double>> seg(segment_len);
  for (std::size_t i = 0; i < segment_len; ++i) {
    seg[i] = {static_cast<double>(stego.samples[i]), 0.0};
  }
  fft(seg, false);
  std::vector<std::uint8_t> bits;
  bits.reserve(bit_count);
  for (std::size_t k = 1; k <= bit_count; ++k) {
    bits.push_back(std::arg(seg[k]) > 0.0 ? 0 : 1);
  }
  return bits;
}

PcmClip dsss_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                   const PnSequence& pn, std::size_t chips_per_bit, double strength) {
  validate_clip(cover);
  if (chips_per_bit == 0) {
    throw std::invalid_argument("chips_per_bit must be positive");
  }
  const auto amplitude = static_cast<long>(std::lround(strength * 32767.0));
  if (amplitude < 1) {
    throw StrengthTooSmall("strength rounds to zero quantization steps");
  }
  if (bits.size() * chips_per_bit > cover.samples.size()) {
    throw CapacityExceeded("chip stream exceeds sample count");
  }
  PcmClip stego = cover;
  const auto chips = pn.chips(bits.size() * chips_per_bit);
  for (std::size_t j = 0; j < chips.size(); ++j) {
    const int symbol = bits[j / chips_per_bit] ? 1 : -1;
    stego.samples[j] = clamp_sample(static_cast<double>(stego.samples[j]) +
                                    static_cast<double>(amplitude * symbol * chips[j]));
  }
  return stego;
}

std::vector<std::uint8_t> dsss_extract_known(const PcmClip& stego, const PcmClip& cover,
                                             const PnSequence& pn,
                                             std::size_t chips_per_bit,
                                             std::size_t bit_count) {
  validate_clip(stego);
  validate_clip(cover);
  if (stego.samples.size() != cover.samples.size()) {
    throw DimensionMismatch("stego and cover clips differ in length");
  }
  if (chips_per_bit == 0) {
    throw std::invalid_argument("chips_per_bit must be positive");
  }
  if (bit_count * chips_per_bit > stego.samples.size()) {
    throw CapacityExceeded("bit count exceeds clip capacity");
  }
  const auto chips = pn.chips(bit_count * chips_per_bit);
  std::vector<std::uint8_t> bits;
  bits.reserve(bit_count);
  for (std::size_t b = 0; b < bit_count; ++b) {
    double correlation = 0.0;
    for (std::size_t k = 0; k < chips_per_bit; ++k) {
      const std::size_t j = b * chips_per_bit + k;
      const double delta =
          static_cast<double>(stego.samples[j]) - static_cast<double>(cover.samples[j]);
      correlation += delta * chips[j];
    }
    bits.push_back(correlation > 0.0 ? 1 : 0);
  }
  return bits;
}

namespace {

void validate_echo_params(const EchoParams& p) {
  if (!(p.amplitude > 0.0 && p.amplitude < 1.0)) {
    throw std::invalid_argument("echo amplitude must lie in (0, 1)");
  }
  if (!(p.delay_zero > 0 && p.delay_zero < p.delay_one &&
        p.delay_one < p.segment_len)) {
    throw std::invalid_argument("echo delays must satisfy 0 < d0 < d1 < segment_len");
  }
}

}  // namespace

PcmClip echo_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                   const EchoParams& params) {
  validate_clip(cover);
  validate_echo_params(params);
  if (bits.size() * params.segment_len > cover.samples.size()) {
    throw CapacityExceeded("bit count exceeds segment capacity");
  }
  PcmClip stego = cover;
  for (std::size_t b = 0; b < bits.size(); ++b) {
    const std::size_t delay = bits[b] ? params.delay_one : params.delay_zero;
    const std::size_t base = b * params.segment_len;
    for (std::size_t i = 0; i < params.segment_len; ++i) {
      const std::size_t n = base + i;
      if (n < delay) continue;  // echo source before clip start
      const double echo = params.amplitude * static_cast<double>(cover.samples[n - delay]);
      stego.samples[n] =
          clamp_sample(static_cast<double>(cover.samples[n]) + std::round(echo));
    }
  }
  return stego;
}

std::vector<std::uint8_t> echo_extract(const PcmClip& stego, const EchoParams& params,
                                       std::size_t bit_count) {
  validate_clip(stego);
  validate_echo_params(params);
  if (bit_count * params.segment_len > stego.samples.size()) {
    throw CapacityExceeded("bit count exceeds segment capacity");
  }
  const std::size_t nfft = next_pow2(params.segment_len);
  std::vector<std::uint8_t> bits;
  bits.reserve(bit_count);
  std::vector<std::complex<double>> buf;
  for (std::size_t b = 0; b < bit_count; ++b) {
    buf.assign(nfft, {0.0, 0.0});
    const std::size_t base = b * params.segment_len;
    for (std::size_t i = 0; i < params.segment_len; ++i) {
      buf[i] = {static_cast<double>(stego.samples[base + i]), 0.0};
    }
    fft(buf, false);
    for (auto& x : buf) {
      x = {std::log(std::norm(x) + 1e-10), 0.0};
    }
    fft(buf, true);  // real cepstrum
    bits.push_back(buf[params.delay_zero].real() > buf[params.delay_one].real() ? 0 : 1);
  }
  return bits;
}

}  // namespace stegkit
