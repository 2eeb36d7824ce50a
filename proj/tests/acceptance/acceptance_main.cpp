// Acceptance suite: one pass/fail line per criterion, exit code = failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "stegkit/audio_stego.hpp"
#include "stegkit/bitcodec.hpp"
#include "stegkit/dct_stego.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/image_stego.hpp"
#include "stegkit/net_covert.hpp"
#include "stegkit/steganalysis.hpp"
#include "stegkit/text_stego.hpp"
#include "stegkit/video_stego.hpp"
#include "support/helpers.hpp"

using namespace stegkit;
using testsupport::filtered_noise_clip;
using testsupport::random_bits;
using testsupport::random_bytes;
using testsupport::random_clip;
using testsupport::random_image;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

std::vector<std::uint8_t> load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing test data file: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<PixelImage> bundled_covers() {
  std::vector<PixelImage> covers;
  for (const char* name : {"cover1.bmp", "cover2.bmp", "cover3.bmp"}) {
    covers.push_back(bmp_read(load_file(std::string(STEGKIT_TEST_DATA_DIR "/") + name)));
  }
  return covers;
}

std::string bundled_prose() {
  const auto bytes = load_file(STEGKIT_TEST_DATA_DIR "/prose.txt");
  return {bytes.begin(), bytes.end()};
}

// ---- criterion 1: paper worked examples, bit-exact ------------------------

void criterion_1a_image_lsb_example() {
  const PixelImage cover{.width = 8, .height = 1, .channels = 1,
                         .samples = {0b00100111, 0b11101001, 0b11001000, 0b00100111,
                                     0b11001000, 0b11101001, 0b11001000, 0b00100111}};
  const auto stego = lsb_embed(cover, std::vector<std::uint8_t>{0b01100101});
  const std::vector<std::uint8_t> expected{0b00100110, 0b11101001, 0b11001001,
                                           0b00100110, 0b11001000, 0b11101001,
                                           0b11001000, 0b00100111};
  const bool pass = stego.samples == expected &&
                    lsb_extract(stego, 8) == std::vector<std::uint8_t>{0b01100101};
  report("1a image LSB eight-pixel example, bit-exact", pass);
}

void criterion_1b_audio_lsb_example() {
  auto s16 = [](std::uint16_t v) { return static_cast<std::int16_t>(v); };
  const PcmClip cover{.sample_rate = 44100,
                      .samples = {s16(0b1001100000111100), s16(0b1101101100111000),
                                  s16(0b1011110000111101), s16(0b1011111100111100),
                                  s16(0b1011101001111111), s16(0b1111100000111100),
                                  s16(0b1101110001111000), s16(0b1000100000011111)}};
  const auto stego = audio_lsb_embed(cover, std::vector<std::uint8_t>{0b01100101});
  const std::vector<std::int16_t> expected{
      s16(0b1001100000111100), s16(0b1101101100111001), s16(0b1011110000111101),
      s16(0b1011111100111100), s16(0b1011101001111110), s16(0b1111100000111101),
      s16(0b1101110001111000), s16(0b1000100000011111)};
  report("1b audio LSB eight-sample table, all rows exact", stego.samples == expected);
}

void criterion_1c_text_example() {
  const auto hidden = charkey_extract("A team of five men joined today",
                                      CharKeySeries{.positions = {1, 1, 2, 3, 4, 2, 4}});
  report("1c selected-character example extracts \"Atfvoa\"", hidden == "Atfvoa",
         "got \"" + hidden + "\"");
}

void criterion_1d_df_flags() {
  Ipv4Header tmpl;
  tmpl.total_length = 40;
  tmpl.header_checksum = ipv4_compute_checksum(tmpl);
  const auto headers = df_channel_encode(std::vector<std::uint8_t>{1, 0}, tmpl, 1500);
  const auto wire1 = ipv4_serialize(headers[0]);
  const auto wire0 = ipv4_serialize(headers[1]);
  const bool pass = wire1[6] == 0x40 && wire1[7] == 0x00 &&  // flags 010, offset 0
                    wire0[6] == 0x00 && wire0[7] == 0x00;    // flags 000, offset 0
  report("1d DF channel flag encodings match the datagram table", pass);
}

void criterion_1e_isn_acks() {
  std::mt19937_64 rng(0xACCE55);
  bool pass = true;
  for (int i = 0; i < 1000 && pass; ++i) {
    const auto secret = static_cast<std::uint32_t>(rng());
    const auto server_isn = static_cast<std::uint32_t>(rng());
    HandshakeState client(HandshakeRole::Client);
    HandshakeState server(HandshakeRole::Server);
    const auto t = isn_channel_connect(secret, client, server, server_isn);
    pass = t[1].ack_number == static_cast<std::uint32_t>(secret + 1) &&
           t[2].ack_number == static_cast<std::uint32_t>(server_isn + 1) &&
           isn_channel_observe(t) == secret;
  }
  report("1e ISN handshake acknowledgement arithmetic over 1000 random ISNs", pass);
}

// ---- criterion 2: randomized round-trip suites ----------------------------

bool frame_codec_suite() {
  std::mt19937_64 rng(201);
  std::uniform_int_distribution<std::size_t> len(0, 4096);
  for (int i = 0; i < 200; ++i) {
    const auto message = random_bytes(rng, len(rng));
    MaybeKey key;
    if (i % 2) key = StegoKey{.bytes = random_bytes(rng, 1 + i % 13)};
    if (frame_decode(frame_encode(message, key), key) != message) return false;
  }
  return true;
}

bool image_lsb_suite() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<std::size_t> side(1, 256);
  for (int i = 0; i < 200; ++i) {
    const auto cover = random_image(rng, side(rng), side(rng), i % 2 ? 3 : 1);
    std::uniform_int_distribution<std::size_t> len(0, cover.sample_count() / 8);
    const auto payload = random_bytes(rng, len(rng));
    if (lsb_extract(lsb_embed(cover, payload), payload.size() * 8) != payload)
      return false;
  }
  return true;
}

bool dct_suite() {
  std::mt19937_64 rng(203);
  for (int i = 0; i < 200; ++i) {
    const auto cover = testsupport::synthetic_photo(300 + static_cast<std::uint64_t>(i),
                                                    64, 64);
    std::uniform_int_distribution<std::size_t> len(0, 24);
    const auto framed = frame_encode(random_bytes(rng, len(rng)));
    if (dct_extract(dct_embed(cover, framed)) != framed) return false;
  }
  return true;
}

bool audio_lsb_suite() {
  std::mt19937_64 rng(204);
  std::uniform_int_distribution<std::size_t> len(8, 1 << 15);
  for (int i = 0; i < 200; ++i) {
    const auto cover = random_clip(rng, len(rng));
    std::uniform_int_distribution<std::size_t> bytes(0, cover.samples.size() / 8);
    const auto payload = random_bytes(rng, bytes(rng));
    if (audio_lsb_extract(audio_lsb_embed(cover, payload), payload.size() * 8) !=
        payload)
      return false;
  }
  return true;
}

bool phase_suite() {
  std::mt19937_64 rng(205);
  constexpr std::size_t kSegment = 1024;
  constexpr std::size_t kBins = 16;
  for (int i = 0; i < 200; ++i) {
    const auto cover = random_clip(rng, 4 * kSegment + static_cast<std::size_t>(i) * 7,
                                   12000);
    std::uniform_int_distribution<std::size_t> nbits(0, kBins);
    const auto bits = random_bits(rng, nbits(rng));
    if (phase_extract(phase_embed(cover, bits, kSegment, kBins), kSegment, kBins,
                      bits.size()) != bits)
      return false;
  }
  return true;
}

bool dsss_suite() {
  std::mt19937_64 rng(206);
  for (int i = 0; i < 200; ++i) {
    const std::size_t chips = 256;
    const std::size_t nbits = 1 + static_cast<std::size_t>(i) % 32;
    const auto cover = random_clip(rng, chips * nbits + 64, 20000);  // headroom
    const auto bits = random_bits(rng, nbits);
    const PnSequence pn{.seed = static_cast<std::uint64_t>(i)};
    const auto stego = dsss_embed(cover, bits, pn, chips, 0.005);
    if (dsss_extract_known(stego, cover, pn, chips, nbits) != bits) return false;
  }
  return true;
}

bool echo_impulse_suite() {
  std::mt19937_64 rng(207);
  const EchoParams params{.amplitude = 0.5, .delay_zero = 40, .delay_one = 80,
                          .segment_len = 512};
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<std::size_t> nbits(1, 16);
    const std::size_t count = nbits(rng);
    PcmClip cover{.sample_rate = 44100,
                  .samples = std::vector<std::int16_t>(count * params.segment_len, 0)};
    for (std::size_t s = 0; s < count; ++s) {
      cover.samples[s * params.segment_len] = 16000;
    }
    const auto bits = random_bits(rng, count);
    if (echo_extract(echo_embed(cover, bits, params), params, count) != bits)
      return false;
  }
  return true;
}

bool video_suite() {
  std::mt19937_64 rng(208);
  std::uniform_int_distribution<std::size_t> dim(1, 32);
  std::uniform_int_distribution<int> alpha_dist(1, 127);
  for (int i = 0; i < 200; ++i) {
    FrameSequence cover;
    cover.width = dim(rng);
    cover.height = dim(rng);
    const std::size_t frames = 1 + dim(rng) % 5;
    for (std::size_t f = 0; f < frames; ++f) {
      cover.frames.push_back(random_bytes(rng, cover.width * cover.height));
    }
    const int alpha = alpha_dist(rng);
    std::uniform_int_distribution<std::size_t> nbits(0, cover.pixel_capacity());
    const auto bits = random_bits(rng, nbits(rng));
    if (video_extract_known(video_embed(cover, bits, alpha), cover, alpha,
                            bits.size()) != bits)
      return false;
  }
  return true;
}

bool network_channels_suite() {
  std::mt19937_64 rng(209);
  Ipv4Header tmpl;
  tmpl.total_length = 40;
  tmpl.protocol = 6;
  tmpl.header_checksum = ipv4_compute_checksum(tmpl);
  const PathConfig lossless{.mtu = 1500};

  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<std::size_t> nbits(1, 64);
    const auto bits = random_bits(rng, nbits(rng));
    const auto df = path_transmit(df_channel_encode(bits, tmpl, 1500), lossless);
    if (df_channel_decode(df.delivered) != bits) return false;

    std::uniform_int_distribution<std::size_t> nbytes(2, 64);
    auto payload = random_bytes(rng, nbytes(rng) & ~std::size_t{1});
    const auto id = path_transmit(id_channel_encode(payload, tmpl), lossless);
    if (id_channel_decode(id.delivered) != payload) return false;

    const auto word = static_cast<std::uint32_t>(rng());
    HandshakeState client(HandshakeRole::Client);
    HandshakeState server(HandshakeRole::Server);
    const auto transcript =
        isn_channel_connect(word, client, server, static_cast<std::uint32_t>(rng()));
    if (isn_channel_observe(transcript) != word) return false;

    const auto udp_payload = random_bytes(rng, nbytes(rng) & ~std::size_t{1});
    if (udp_port_channel_decode(udp_port_channel_encode(udp_payload, UdpHeader{})) !=
        udp_payload)
      return false;

    const auto icmp_payload = random_bytes(rng, nbytes(rng));
    if (icmp_code_channel_decode(icmp_code_channel_encode(icmp_payload, IcmpHeader{})) !=
        icmp_payload)
      return false;
  }
  return true;
}

void criterion_2_round_trips() {
  report("2a frame codec round-trip suite (200 cases)", frame_codec_suite());
  report("2b image LSB round-trip suite (200 cases)", image_lsb_suite());
  report("2c DCT embed/extract round-trip suite (200 cases)", dct_suite());
  report("2d audio LSB round-trip suite (200 cases)", audio_lsb_suite());
  report("2e phase coding round-trip suite (200 cases)", phase_suite());
  report("2f DSSS known-carrier round-trip suite (200 cases)", dsss_suite());
  report("2g echo hiding on impulse covers (200 cases)", echo_impulse_suite());
  report("2h video embed/extract round-trip suite (200 cases)", video_suite());
  report("2i all five network channels over a lossless path (200 cases)",
         network_channels_suite());
}

// ---- criterion 3: quality bounds ------------------------------------------

void criterion_3_quality() {
  const auto covers = bundled_covers();
  std::mt19937_64 rng(301);

  bool lsb_ok = true;
  double worst = 1e9;
  for (const auto& cover : covers) {
    const auto payload = random_bytes(rng, cover.sample_count() / 8);
    const double value = psnr(cover, lsb_embed(cover, payload));
    worst = std::min(worst, value);
    lsb_ok = lsb_ok && value >= 48.0;
  }
  for (int i = 0; i < 10; ++i) {
    const auto cover = random_image(rng, 128, 128, 3);
    const auto payload = random_bytes(rng, cover.sample_count() / 8);
    const double value = psnr(cover, lsb_embed(cover, payload));
    worst = std::min(worst, value);
    lsb_ok = lsb_ok && value >= 48.0;
  }
  report("3a full-capacity image-LSB PSNR >= 48 dB on every cover", lsb_ok,
         "worst " + std::to_string(worst) + " dB");

  bool dct_ok = true;
  std::string detail;
  for (const auto& cover : covers) {
    const double base = psnr(cover, dct_reconstruct(dct_embed(cover, {})));
    const auto framed = frame_encode(random_bytes(rng, 96));
    const double loaded = psnr(cover, dct_reconstruct(dct_embed(cover, framed)));
    detail += std::to_string(base - loaded) + " dB; ";
    dct_ok = dct_ok && (base - loaded <= 1.0);
  }
  report("3b DCT embedding degrades reconstruction PSNR by <= 1 dB", dct_ok, detail);
}

// ---- criterion 4: serializer conformance -----------------------------------

void criterion_4_serializer() {
  std::mt19937_64 rng(401);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> word(0, 65535);
  std::uniform_int_distribution<int> opt_words(0, 10);
  std::uniform_int_distribution<int> flag(0, 1);

  bool identity = true;
  bool corruption = true;
  for (int i = 0; i < 10000; ++i) {
    Ipv4Header h;
    h.tos = static_cast<std::uint8_t>(byte(rng));
    h.identification = static_cast<std::uint16_t>(word(rng));
    h.flag_reserved = flag(rng) != 0;
    h.flag_df = flag(rng) != 0;
    h.flag_mf = flag(rng) != 0;
    h.fragment_offset = static_cast<std::uint16_t>(word(rng) % 8192);
    h.ttl = static_cast<std::uint8_t>(byte(rng));
    h.protocol = static_cast<std::uint8_t>(byte(rng));
    h.src_addr = static_cast<std::uint32_t>(rng());
    h.dst_addr = static_cast<std::uint32_t>(rng());
    h.options = random_bytes(rng, static_cast<std::size_t>(opt_words(rng)) * 4);
    h.header_length = static_cast<std::uint8_t>(5 + h.options.size() / 4);
    const int min_len = 4 * h.header_length;
    h.total_length = static_cast<std::uint16_t>(min_len + word(rng) % (65536 - min_len));
    h.header_checksum = ipv4_compute_checksum(h);

    const auto bytes_out = ipv4_serialize(h);
    if (!(ipv4_parse(bytes_out) == h)) {
      identity = false;
      break;
    }
    for (std::size_t pos = 0; pos < bytes_out.size() && corruption; ++pos) {
      for (int bit = 0; bit < 8; ++bit) {
        auto corrupted = bytes_out;
        corrupted[pos] ^= static_cast<std::uint8_t>(1 << bit);
        try {
          (void)ipv4_parse(corrupted);
          corruption = false;
          break;
        } catch (const StegoError&) {
          // rejected, as required
        }
      }
    }
    if (!corruption) break;
  }
  report("4a IPv4 parse-serialize identity on 10000 random headers", identity);
  report("4b every single-bit corruption of a serialized header is rejected",
         corruption);
}

// ---- criterion 5: channel fragility ----------------------------------------

void criterion_5_fragility() {
  Ipv4Header big;
  big.total_length = 2000;
  big.flag_df = true;
  big.header_checksum = ipv4_compute_checksum(big);
  Ipv4Header small;
  small.total_length = 40;
  small.flag_df = true;
  small.header_checksum = ipv4_compute_checksum(small);

  const auto result = path_transmit(std::vector<Ipv4Header>{big, small},
                                    PathConfig{.mtu = 1500});
  const bool df_ok = result.delivered.size() == 1 &&
                     result.count_events(PathEventKind::FragmentationNeeded) == 1 &&
                     result.events[0].datagram_index == 0;
  report("5a oversized DF=1 datagrams are dropped with FragmentationNeeded", df_ok);

  std::mt19937_64 rng(501);
  bool id_ok = true;
  for (int i = 0; i < 10 && id_ok; ++i) {
    const auto payload = random_bytes(rng, 16 + static_cast<std::size_t>(i) * 2);
    Ipv4Header tmpl;
    tmpl.total_length = 40;
    tmpl.flag_df = true;
    tmpl.header_checksum = ipv4_compute_checksum(tmpl);
    const auto headers = id_channel_encode(payload, tmpl);
    const auto normalized = path_transmit(
        headers, PathConfig{.normalize_identification = true,
                            .seed = static_cast<std::uint64_t>(i)});
    id_ok = normalized.count_events(PathEventKind::IdRewritten) == headers.size() &&
            id_channel_decode(normalized.delivered) != payload;
  }
  report("5b identification normalization destroys the id channel", id_ok);
}

// ---- criterion 6: detection separations -------------------------------------

void criterion_6_detection() {
  const auto covers = bundled_covers();
  std::mt19937_64 rng(601);
  bool chi_ok = true;
  std::string chi_detail;
  for (const auto& cover : covers) {
    const auto payload = random_bytes(rng, cover.sample_count() / 8);
    const auto stego = lsb_embed(cover, payload);
    const double clean_p = lsb_chi_square(cover).p_value;
    const double stego_p = lsb_chi_square(stego).p_value;
    chi_detail += "clean " + std::to_string(clean_p) + " vs stego " +
                  std::to_string(stego_p) + "; ";
    chi_ok = chi_ok && stego_p > clean_p;
  }
  report("6a chi-square p: full-capacity stego exceeds clean, per cover", chi_ok,
         chi_detail);

  const auto prose = bundled_prose();
  const bool prose_clear = !whitespace_scan(prose).flagged;
  GapTable table{.entries = {"", "a", "b", "c"}};
  const std::string cover_text =
      "the courier waits by the north gate until the second bell";
  std::vector<std::size_t> indices(split_words(cover_text).size() - 1);
  std::mt19937_64 gap_rng(602);
  std::uniform_int_distribution<std::size_t> ix(1, table.entries.size() - 1);
  for (auto& v : indices) v = ix(gap_rng);
  const bool stego_flagged =
      whitespace_scan(gap_embed(cover_text, indices, table)).flagged;
  report("6b whitespace scan flags full-density gap stego and clears prose",
         prose_clear && stego_flagged);

  Ipv4Header tmpl;
  tmpl.total_length = 40;
  tmpl.header_checksum = ipv4_compute_checksum(tmpl);
  const auto covert_payload = random_bytes(rng, 128);  // 64 datagrams
  const auto covert_headers = id_channel_encode(covert_payload, tmpl);
  const auto covert_report = header_anomaly_scan(covert_headers);
  const auto* uniformity = covert_report.find("id_uniformity");

  std::vector<Ipv4Header> counter_stream;
  for (int i = 0; i < 64; ++i) {
    auto h = tmpl;
    h.identification = static_cast<std::uint16_t>(7000 + i);
    h.header_checksum = ipv4_compute_checksum(h);
    counter_stream.push_back(h);
  }
  const auto counter_report = header_anomaly_scan(counter_stream);
  const bool net_ok = uniformity != nullptr && uniformity->evaluated &&
                      uniformity->flagged && !counter_report.any_flagged();
  report("6c anomaly scan flags the random-id stream and clears the counter stream",
         net_ok,
         uniformity ? "covert uniformity p " + std::to_string(uniformity->statistic)
                    : "");
}

// ---- criterion 7: scrub efficacy ---------------------------------------------

void criterion_7_scrub() {
  std::mt19937_64 rng(701);
  const auto cover = testsupport::synthetic_photo(700, 128, 128);
  const auto message = random_bytes(rng, 64);
  const auto stego = lsb_embed(cover, frame_encode(message));
  bool pass = true;
  for (std::uint64_t seed = 0; seed < 50 && pass; ++seed) {
    const auto scrubbed = lsb_scrub(stego, seed);
    try {
      (void)extract_framed(
          [&](std::size_t n) { return lsb_extract(scrubbed, n); },
          scrubbed.sample_count());
      pass = false;  // anything but BadMagic is a failure
    } catch (const BadMagic&) {
    } catch (const StegoError&) {
      pass = false;
    }
  }
  report("7 scrub leaves BadMagic behind, 50 seeded trials", pass);
}

// ---- criterion 8: echo hiding statistical criterion ----------------------------

void criterion_8_echo() {
  const EchoParams params{.amplitude = 0.4, .delay_zero = 40, .delay_one = 80,
                          .segment_len = 4096};
  bool pass = true;
  std::size_t errors = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cover = filtered_noise_clip(seed, 32 * params.segment_len);
    std::mt19937_64 rng(800 + seed);
    const auto bits = random_bits(rng, 32);
    const auto decoded = echo_extract(echo_embed(cover, bits, params), params, 32);
    for (std::size_t i = 0; i < 32; ++i) {
      if (decoded[i] != bits[i]) ++errors;
    }
  }
  pass = errors == 0;
  report("8 echo hiding BER = 0 over 32 bits x 10 seeded trials", pass,
         std::to_string(errors) + " bit errors");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  try {
    criterion_1a_image_lsb_example();
    criterion_1b_audio_lsb_example();
    criterion_1c_text_example();
    criterion_1d_df_flags();
    criterion_1e_isn_acks();
    criterion_2_round_trips();
    criterion_3_quality();
    criterion_4_serializer();
    criterion_5_fragility();
    criterion_6_detection();
    criterion_7_scrub();
    criterion_8_echo();
  } catch (const std::exception& e) {
    std::cout << "[FAIL] acceptance aborted: " << e.what() << "\n";
    ++g_failures;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
            << g_failures << " failures, " << elapsed.count() << " ms)\n";
  return g_failures == 0 ? 0 : 1;
}
