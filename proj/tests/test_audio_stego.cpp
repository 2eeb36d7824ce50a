#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "stegkit/audio_stego.hpp"
#include "stegkit/bitcodec.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/fft.hpp"
#include "support/helpers.hpp"

using namespace stegkit;
using testsupport::filtered_noise_clip;
using testsupport::random_bits;
using testsupport::random_bytes;
using testsupport::random_clip;

namespace {

PcmClip clip_of(std::initializer_list<int> samples, std::uint32_t rate = 44100) {
  PcmClip clip;
  clip.sample_rate = rate;
  for (int s : samples) clip.samples.push_back(static_cast<std::int16_t>(s));
  return clip;
}

std::int16_t from_bits(std::uint16_t pattern) { return static_cast<std::int16_t>(pattern); }

}  // namespace

TEST_CASE("wav round-trips byte-exactly") {
  const auto clip = clip_of({0, 1, -1, 32767, -32768, 100, -100, 12345}, 8000);
  const auto bytes = wav_write(clip);
  CHECK(wav_read(bytes) == clip);
  CHECK(wav_write(wav_read(bytes)) == bytes);
}

TEST_CASE("wav rejects unsupported formats") {
  auto bytes = wav_write(clip_of({1, 2, 3, 4}));

  auto float_fmt = bytes;
  float_fmt[20] = 3;  // IEEE float
  CHECK_THROWS_AS((void)wav_read(float_fmt), UnsupportedWav);

  auto stereo = bytes;
  stereo[22] = 2;
  CHECK_THROWS_AS((void)wav_read(stereo), UnsupportedWav);

  auto bits8 = bytes;
  bits8[34] = 8;
  CHECK_THROWS_AS((void)wav_read(bits8), UnsupportedWav);
}

TEST_CASE("wav rejects size mismatches") {
  auto bytes = wav_write(clip_of({1, 2, 3, 4}));

  auto riff_lies = bytes;
  riff_lies[4] ^= 0x01;
  CHECK_THROWS_AS((void)wav_read(riff_lies), Malformed);

  auto data_lies = bytes;
  data_lies[40] = 0xFF;  // data chunk claims more than the file holds
  CHECK_THROWS_AS((void)wav_read(data_lies), Malformed);
}

TEST_CASE("audio_lsb_embed reproduces the eight-sample worked table") {
  const PcmClip cover{
      .sample_rate = 44100,
      .samples = {from_bits(0b1001100000111100), from_bits(0b1101101100111000),
                  from_bits(0b1011110000111101), from_bits(0b1011111100111100),
                  from_bits(0b1011101001111111), from_bits(0b1111100000111100),
                  from_bits(0b1101110001111000), from_bits(0b1000100000011111)}};
  const std::vector<std::uint8_t> payload{0b01100101};
  const auto stego = audio_lsb_embed(cover, payload);
  const std::vector<std::int16_t> expected{
      from_bits(0b1001100000111100), from_bits(0b1101101100111001),
      from_bits(0b1011110000111101), from_bits(0b1011111100111100),
      from_bits(0b1011101001111110), from_bits(0b1111100000111101),
      from_bits(0b1101110001111000), from_bits(0b1000100000011111)};
  CHECK(stego.samples == expected);
  CHECK(audio_lsb_extract(stego, 8) == payload);
}

TEST_CASE("audio_lsb on silence") {
  PcmClip silence{.sample_rate = 44100, .samples = std::vector<std::int16_t>(16, 0)};
  const auto stego = audio_lsb_embed(silence, std::vector<std::uint8_t>{0b10000000});
  CHECK(stego.samples[0] == 1);
  for (std::size_t i = 1; i < 16; ++i) CHECK(stego.samples[i] == 0);
}

TEST_CASE("audio_lsb round-trips random clips") {
  std::mt19937_64 rng(0xA0D10);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> len(8, 4096);
    const auto cover = random_clip(rng, len(rng));
    std::uniform_int_distribution<std::size_t> bytes(0, cover.samples.size() / 8);
    const auto payload = random_bytes(rng, bytes(rng));
    const auto stego = audio_lsb_embed(cover, payload);
    CHECK(audio_lsb_extract(stego, payload.size() * 8) == payload);
    for (std::size_t i = 0; i < cover.samples.size(); ++i) {
      CHECK(std::abs(stego.samples[i] - cover.samples[i]) <= 1);
    }
  }
  CHECK_THROWS_AS(
      (void)audio_lsb_embed(random_clip(rng, 7), std::vector<std::uint8_t>{1}),
      CapacityExceeded);
}

TEST_CASE("phase coding round-trips within first-segment capacity") {
  std::mt19937_64 rng(0xF43E);
  constexpr std::size_t kSegment = 1024;
  constexpr std::size_t kBins = 16;
  for (int trial = 0; trial < 200; ++trial) {
    const auto cover = random_clip(rng, 4 * kSegment + trial, 10000);
    std::uniform_int_distribution<std::size_t> nbits(0, kBins);
    const auto bits = random_bits(rng, nbits(rng));
    const auto stego = phase_embed(cover, bits, kSegment, kBins);
    CHECK(phase_extract(stego, kSegment, kBins, bits.size()) == bits);
  }
}

TEST_CASE("phase coding with no payload still writes the bin phases") {
  std::mt19937_64 rng(0xF44E);
  const auto cover = random_clip(rng, 4096, 10000);
  const auto stego = phase_embed(cover, {}, 1024, 16);
  std::vector<std::complex<double>> seg(1024);
  for (std::size_t i = 0; i < 1024; ++i) {
    seg[i] = {static_cast<double>(stego.samples[i]), 0.0};
  }
  fft(seg, false);
  for (std::size_t k = 1; k <= 16; ++k) {
    CHECK(std::arg(seg[k]) > 0.0);  // every carrier bin carries the bit-0 phase
  }
}

TEST_CASE("phase coding preserves the magnitude spectrum") {
  std::mt19937_64 rng(0xF45E);
  constexpr std::size_t kSegment = 1024;
  const auto cover = random_clip(rng, 4 * kSegment, 10000);
  const auto bits = random_bits(rng, 16);
  const auto stego = phase_embed(cover, bits, kSegment, 16);

  std::vector<std::complex<double>> a(kSegment), b(kSegment);
  for (std::size_t i = 0; i < kSegment; ++i) {
    a[i] = {static_cast<double>(cover.samples[i]), 0.0};
    b[i] = {static_cast<double>(stego.samples[i]), 0.0};
  }
  fft(a, false);
  fft(b, false);
  for (std::size_t k = 0; k < kSegment; ++k) {
    // Normalized per-bin magnitude moves less than one quantization step.
    CHECK(std::abs(std::abs(a[k]) - std::abs(b[k])) / kSegment < 1.0);
  }
}

TEST_CASE("phase coding error cases") {
  std::mt19937_64 rng(0xF46E);
  const auto cover = random_clip(rng, 512);
  CHECK_THROWS_AS((void)phase_embed(cover, {}, 1024, 16), ClipTooShort);
  const auto bits = random_bits(rng, 17);
  CHECK_THROWS_AS((void)phase_embed(random_clip(rng, 4096), bits, 1024, 16),
                  CapacityExceeded);
}

TEST_CASE("dsss correlation math on a hand example") {
  // bit 1 spreads as +A along the chips; correlating recovers it.
  PcmClip zero{.sample_rate = 44100, .samples = std::vector<std::int16_t>(4, 0)};
  const PnSequence pn{.seed = 7};
  const auto chips = pn.chips(4);
  const auto stego = dsss_embed(zero, std::vector<std::uint8_t>{0}, pn, 4, 0.005);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(stego.samples[j] == -164 * chips[j]);  // bit 0 maps to -1, A = round(.005*32767)
  }
  CHECK(dsss_extract_known(stego, zero, pn, 4, 1) == std::vector<std::uint8_t>{0});
}

TEST_CASE("dsss round-trips with headroom covers") {
  std::mt19937_64 rng(0xD555);
  constexpr std::size_t kChipsPerBit = 1024;
  const auto cover = random_clip(rng, 64 * kChipsPerBit, 20000);
  const auto bits = random_bits(rng, 64);
  const PnSequence pn{.seed = 42};
  const auto stego = dsss_embed(cover, bits, pn, kChipsPerBit, 0.005);
  CHECK(dsss_extract_known(stego, cover, pn, kChipsPerBit, bits.size()) == bits);
  for (std::size_t i = 0; i < cover.samples.size(); ++i) {
    CHECK(std::abs(stego.samples[i] - cover.samples[i]) <= 164);
  }
}

TEST_CASE("dsss rejects a strength that rounds to zero") {
  std::mt19937_64 rng(0xD556);
  const auto cover = random_clip(rng, 64);
  CHECK_THROWS_AS(
      (void)dsss_embed(cover, std::vector<std::uint8_t>{1}, PnSequence{}, 8, 1e-6),
      StrengthTooSmall);
}

TEST_CASE("pn sequence is deterministic and matches the pinned generator") {
  const PnSequence pn{.seed = 0};
  const auto chips = pn.chips(10);
  // Oracle: step the 64-bit LCG by hand and take the new state's top bit.
  std::uint64_t state = 0;
  for (int i = 0; i < 10; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    CHECK(chips[static_cast<std::size_t>(i)] == ((state >> 63) == 0 ? 1 : -1));
  }
  CHECK(pn.chips(5) == std::vector<std::int8_t>(chips.begin(), chips.begin() + 5));
}

TEST_CASE("echo hiding recovers bits from impulse covers") {
  const EchoParams params{.amplitude = 0.5, .delay_zero = 40, .delay_one = 80,
                          .segment_len = 512};
  PcmClip cover{.sample_rate = 44100,
                .samples = std::vector<std::int16_t>(8 * 512, 0)};
  for (int s = 0; s < 8; ++s) cover.samples[static_cast<std::size_t>(s) * 512] = 16000;

  const std::vector<std::uint8_t> bits{0, 1, 1, 0, 0, 1, 0, 1};
  const auto stego = echo_embed(cover, bits, params);
  // The echo is a half-height copy at the chosen offset.
  CHECK(stego.samples[40] == 8000);
  CHECK(stego.samples[512 + 80] == 8000);
  CHECK(echo_extract(stego, params, bits.size()) == bits);
}

TEST_CASE("echo hiding with no payload leaves the cover untouched") {
  std::mt19937_64 rng(0xEC0);
  const auto cover = random_clip(rng, 4096);
  CHECK(echo_embed(cover, {}, EchoParams{}) == cover);
}

TEST_CASE("echo hiding achieves zero BER on filtered noise") {
  const EchoParams params{};  // defaults: 0.4, 40/80, 4096
  std::mt19937_64 rng(0xEC1);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto cover = filtered_noise_clip(seed, 32 * params.segment_len);
    const auto bits = random_bits(rng, 32);
    const auto stego = echo_embed(cover, bits, params);
    CHECK(echo_extract(stego, params, bits.size()) == bits);
  }
}

TEST_CASE("echo capacity check") {
  PcmClip cover{.sample_rate = 44100, .samples = std::vector<std::int16_t>(4096, 0)};
  const std::vector<std::uint8_t> bits{1, 0};
  CHECK_THROWS_AS((void)echo_embed(cover, bits, EchoParams{}), CapacityExceeded);
}
