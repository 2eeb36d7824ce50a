#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stegkit {

/// Mono 16-bit PCM clip.
struct PcmClip {
  std::uint32_t sample_rate = 44100;
  std::vector<std::int16_t> samples;

  bool operator==(const PcmClip&) const = default;
};

/// Deterministic +-1 chip source. Chip i is a pure function of (seed, i):
/// the state advances through a fixed 64-bit linear congruential step and
/// the chip is the sign picked from the new state's top bit.
struct PnSequence {
  std::uint64_t seed = 0;

  /// First `count` chips.
  [[nodiscard]] std::vector<std::int8_t> chips(std::size_t count) const;
};

/// Echo-hiding parameters; delays in samples, amplitude as a fraction of
/// the cover sample. Requires 0 < amplitude < 1 and
/// 0 < delay_zero < delay_one < segment_len.
struct EchoParams {
  double amplitude = 0.4;
  std::size_t delay_zero = 40;
  std::size_t delay_one = 80;
  std::size_t segment_len = 4096;
};

/// RIFF/WAVE PCM codec, 16-bit little-endian mono only. Stereo and float
/// files are rejected with UnsupportedWav; size inconsistencies with
/// Malformed.
PcmClip wav_read(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> wav_write(const PcmClip& clip);

/// Sample i LSB <- payload bit i, MSB-first.
PcmClip audio_lsb_embed(const PcmClip& cover, std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> audio_lsb_extract(const PcmClip& stego, std::size_t bit_count);

/// Phase coding over segments of length segment_len (a power of two).
/// Bits are written into the first segment only: bin k (1-based, k <= bins)
/// gets phase +pi/2 for bit 0 and -pi/2 for bit 1, bins beyond the payload
/// default to the bit-0 phase. Later segments keep their original
/// inter-segment phase differences; magnitudes are untouched.
PcmClip phase_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                    std::size_t segment_len, std::size_t bins);
std::vector<std::uint8_t> phase_extract(const PcmClip& stego, std::size_t segment_len,
                                        std::size_t bins, std::size_t bit_count);

/// Direct-sequence spread spectrum at strength beta (fraction of full
/// scale, quantized to at least one step): sample j moves by
/// amplitude * symbol(bit at j / chips_per_bit) * chip j.
PcmClip dsss_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                   const PnSequence& pn, std::size_t chips_per_bit, double strength);

/// Known-carrier de-spreading: correlates the stego-minus-cover residual
/// with the chip sequence per bit block and takes the sign.
std::vector<std::uint8_t> dsss_extract_known(const PcmClip& stego, const PcmClip& cover,
                                             const PnSequence& pn,
                                             std::size_t chips_per_bit,
                                             std::size_t bit_count);

/// Per-segment single echo at a bit-dependent delay.
PcmClip echo_embed(const PcmClip& cover, std::span<const std::uint8_t> bits,
                   const EchoParams& params);

/// Real-cepstrum detector: the echo shows up as a peak at its delay.
std::vector<std::uint8_t> echo_extract(const PcmClip& stego, const EchoParams& params,
                                       std::size_t bit_count);

}  // namespace stegkit
