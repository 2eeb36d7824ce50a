// stegkit: multi-cover steganography embed/extract/analyze/covert/scrub tool.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stegkit/audio_stego.hpp"
#include "stegkit/bitcodec.hpp"
#include "stegkit/dct_stego.hpp"
#include "stegkit/errors.hpp"
#include "stegkit/image_stego.hpp"
#include "stegkit/net_covert.hpp"
#include "stegkit/steganalysis.hpp"
#include "stegkit/text_stego.hpp"
#include "stegkit/video_stego.hpp"

namespace {

using namespace stegkit;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot create " + path);
  }
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
}

std::string read_text(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw std::runtime_error("cannot write " + path);
  }
}

MaybeKey key_of(const std::string& key) {
  if (key.empty()) return std::nullopt;
  return StegoKey{.bytes = std::vector<std::uint8_t>(key.begin(), key.end())};
}

std::vector<std::size_t> parse_index_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

GapTable read_gap_table(const std::string& path) {
  GapTable table;
  std::stringstream ss(read_text(path));
  std::string line;
  while (std::getline(ss, line)) {
    table.entries.push_back(line);
  }
  if (table.entries.empty()) {
    throw Malformed("gap table file holds no entries");
  }
  return table;
}

struct MediumOptions {
  std::string medium;
  std::string cover_path;
  std::string in_path;
  std::string message_path;
  std::string out_path;
  std::string key;
  std::string series_path;
  std::string table_path;
  std::string indices_csv;
  // audio / video knobs
  std::size_t segment_len = 1024;
  std::size_t bins = 256;
  std::size_t chips_per_bit = 1024;
  double strength = 0.005;
  double amplitude = 0.4;
  std::size_t delay0 = 40;
  std::size_t delay1 = 80;
  std::size_t echo_segment = 4096;
  int alpha = 3;
  std::uint64_t seed = 0;
};

void run_embed(const MediumOptions& opt) {
  const auto key = key_of(opt.key);
  if (opt.medium == "text-key") {
    const auto series = charkey_generate(read_text(opt.cover_path),
                                         read_text(opt.message_path));
    std::ostringstream out;
    for (std::size_t i = 0; i < series.positions.size(); ++i) {
      if (i) out << ' ';
      out << series.positions[i];
    }
    out << '\n';
    write_text(opt.out_path, out.str());
    std::cout << "key series entries: " << series.positions.size() << "\n";
    return;
  }
  if (opt.medium == "text-gap") {
    const auto table = read_gap_table(opt.table_path);
    const auto indices = parse_index_list(opt.indices_csv);
    write_text(opt.out_path, gap_embed(read_text(opt.cover_path), indices, table));
    std::cout << "gaps used: " << indices.size() << "\n";
    return;
  }

  const auto message = read_file(opt.message_path);
  const auto framed = frame_encode(message, key);

  if (opt.medium == "image-lsb") {
    const auto cover = bmp_read(read_file(opt.cover_path));
    write_file(opt.out_path, bmp_write(lsb_embed(cover, framed)));
  } else if (opt.medium == "image-dct") {
    const auto cover = bmp_read(read_file(opt.cover_path));
    write_file(opt.out_path, qdct_write(dct_embed(cover, framed)));
  } else if (opt.medium == "audio-lsb") {
    const auto cover = wav_read(read_file(opt.cover_path));
    write_file(opt.out_path, wav_write(audio_lsb_embed(cover, framed)));
  } else if (opt.medium == "audio-phase") {
    const auto cover = wav_read(read_file(opt.cover_path));
    const auto bits = bits_of(framed).bits();
    write_file(opt.out_path,
               wav_write(phase_embed(cover, bits, opt.segment_len, opt.bins)));
  } else if (opt.medium == "audio-dsss") {
    const auto cover = wav_read(read_file(opt.cover_path));
    const auto bits = bits_of(framed).bits();
    write_file(opt.out_path,
               wav_write(dsss_embed(cover, bits, PnSequence{.seed = opt.seed},
                                    opt.chips_per_bit, opt.strength)));
  } else if (opt.medium == "audio-echo") {
    const auto cover = wav_read(read_file(opt.cover_path));
    const auto bits = bits_of(framed).bits();
    const EchoParams params{.amplitude = opt.amplitude, .delay_zero = opt.delay0,
                            .delay_one = opt.delay1, .segment_len = opt.echo_segment};
    write_file(opt.out_path, wav_write(echo_embed(cover, bits, params)));
  } else if (opt.medium == "video") {
    const auto cover = frsq_read(read_file(opt.cover_path));
    const auto bits = bits_of(framed).bits();
    write_file(opt.out_path, frsq_write(video_embed(cover, bits, opt.alpha)));
  } else {
    throw CLI::ValidationError("unknown medium " + opt.medium);
  }
  std::cout << "embedded " << message.size() << " bytes\n";
}

void run_extract(const MediumOptions& opt) {
  const auto key = key_of(opt.key);
  if (opt.medium == "text-key") {
    CharKeySeries series;
    std::stringstream ss(read_text(opt.series_path));
    std::size_t value = 0;
    while (ss >> value) series.positions.push_back(value);
    write_text(opt.out_path, charkey_extract(read_text(opt.in_path), series));
    return;
  }
  if (opt.medium == "text-gap") {
    const auto table = read_gap_table(opt.table_path);
    std::ostringstream out;
    for (const auto& entry : gap_extract(read_text(opt.in_path), table)) {
      out << entry << '\n';
    }
    write_text(opt.out_path, out.str());
    return;
  }

  std::vector<std::uint8_t> message;
  if (opt.medium == "image-lsb") {
    const auto stego = bmp_read(read_file(opt.in_path));
    message = extract_framed(
        [&](std::size_t n) { return lsb_extract(stego, n); }, stego.sample_count(),
        key);
  } else if (opt.medium == "image-dct") {
    const auto container = qdct_read(read_file(opt.in_path));
    message = frame_decode(dct_extract(container), key);
  } else if (opt.medium == "audio-lsb") {
    const auto stego = wav_read(read_file(opt.in_path));
    message = extract_framed(
        [&](std::size_t n) { return audio_lsb_extract(stego, n); },
        stego.samples.size(), key);
  } else if (opt.medium == "audio-phase") {
    const auto stego = wav_read(read_file(opt.in_path));
    message = extract_framed(
        [&](std::size_t n) {
          return bytes_of(phase_extract(stego, opt.segment_len, opt.bins, n));
        },
        opt.bins, key);
  } else if (opt.medium == "audio-dsss") {
    const auto stego = wav_read(read_file(opt.in_path));
    const auto cover = wav_read(read_file(opt.cover_path));
    const PnSequence pn{.seed = opt.seed};
    message = extract_framed(
        [&](std::size_t n) {
          return bytes_of(dsss_extract_known(stego, cover, pn, opt.chips_per_bit, n));
        },
        stego.samples.size() / opt.chips_per_bit, key);
  } else if (opt.medium == "audio-echo") {
    const auto stego = wav_read(read_file(opt.in_path));
    const EchoParams params{.amplitude = opt.amplitude, .delay_zero = opt.delay0,
                            .delay_one = opt.delay1, .segment_len = opt.echo_segment};
    message = extract_framed(
        [&](std::size_t n) { return bytes_of(echo_extract(stego, params, n)); },
        stego.samples.size() / params.segment_len, key);
  } else if (opt.medium == "video") {
    const auto stego = frsq_read(read_file(opt.in_path));
    const auto cover = frsq_read(read_file(opt.cover_path));
    message = extract_framed(
        [&](std::size_t n) {
          return bytes_of(video_extract_known(stego, cover, opt.alpha, n));
        },
        cover.pixel_capacity(), key);
  } else {
    throw CLI::ValidationError("unknown medium " + opt.medium);
  }
  write_file(opt.out_path, message);
  std::cout << "recovered " << message.size() << " bytes\n";
}

struct AnalyzeOptions {
  std::string medium;
  std::string suspect_path;
  std::string cover_path;
  std::string message_path;
  std::string algorithm;
  std::string out_path;
  double chi_threshold = 0.95;
  double whitespace_threshold = 0.05;
};

void run_analyze(const AnalyzeOptions& opt) {
  const AvailableInputs inputs{.stego = !opt.suspect_path.empty(),
                               .cover = !opt.cover_path.empty(),
                               .message = !opt.message_path.empty(),
                               .algorithm = !opt.algorithm.empty()};
  const auto classification = classify_attack(inputs);
  std::cout << "attack class: " << to_string(classification.attack_class) << "\n";
  std::cout << "runnable detectors:";
  for (const auto& d : classification.runnable_detectors) std::cout << ' ' << d;
  std::cout << "\n";

  AnalysisReport report;
  if (opt.medium == "image") {
    const auto suspect_bytes = read_file(opt.suspect_path);
    const auto suspect = bmp_read(suspect_bytes);
    try {
      const auto chi = lsb_chi_square(suspect);
      report.rows.push_back({.name = "lsb_chi_square", .statistic = chi.p_value,
                             .threshold = opt.chi_threshold,
                             .flagged = chi.p_value > opt.chi_threshold,
                             .inputs = "suspect"});
    } catch (const InsufficientSamples&) {
      report.rows.push_back({.name = "lsb_chi_square", .statistic = 0.0,
                             .threshold = opt.chi_threshold, .flagged = false,
                             .inputs = "suspect (insufficient samples)"});
    }
    report.rows.push_back({.name = "unique_color_count",
                           .statistic = static_cast<double>(unique_color_count(suspect)),
                           .threshold = 0.0, .flagged = false, .inputs = "suspect"});
    if (inputs.cover) {
      const auto cover_bytes = read_file(opt.cover_path);
      const auto cover = bmp_read(cover_bytes);
      const auto diff = visual_diff(cover, suspect);
      const double fraction = cover.sample_count() == 0
                                  ? 0.0
                                  : static_cast<double>(diff.changed_count) /
                                        static_cast<double>(cover.sample_count());
      report.rows.push_back({.name = "visual_diff", .statistic = fraction,
                             .threshold = 0.0, .flagged = diff.changed_count > 0,
                             .inputs = "cover,suspect"});
      report.rows.push_back(
          {.name = "file_size_delta",
           .statistic = static_cast<double>(file_size_delta(cover_bytes, suspect_bytes)),
           .threshold = 0.0,
           .flagged = file_size_delta(cover_bytes, suspect_bytes) != 0,
           .inputs = "cover,suspect"});
    }
  } else if (opt.medium == "text") {
    const auto scan = whitespace_scan(read_text(opt.suspect_path),
                                      opt.whitespace_threshold);
    report.rows.push_back({.name = "whitespace_scan",
                           .statistic = scan.multi_gap_fraction,
                           .threshold = opt.whitespace_threshold,
                           .flagged = scan.flagged, .inputs = "suspect"});
  } else if (opt.medium == "net") {
    std::vector<Ipv4Header> headers;
    for (const auto& record : pkts_read(read_file(opt.suspect_path))) {
      headers.push_back(ipv4_parse(record));
    }
    const auto scan = header_anomaly_scan(headers);
    for (const auto& check : scan.checks) {
      report.rows.push_back({.name = check.name, .statistic = check.statistic,
                             .threshold = check.threshold,
                             .flagged = check.flagged,
                             .inputs = check.evaluated ? "suspect"
                                                       : "suspect (insufficient data)"});
    }
  } else {
    throw CLI::ValidationError("unknown analyze medium " + opt.medium);
  }

  const auto text = report.to_text();
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_text(opt.out_path, text);
  }
}

struct CovertOptions {
  std::string channel;
  std::string message_path;
  std::string in_path;
  std::string out_path;
  std::string recovered_path;
  std::string key;
  std::uint32_t mtu = 1500;
  std::uint16_t template_length = 40;
  bool normalize_id = false;
  bool no_fragment = false;
  std::uint64_t seed = 0;
};

Ipv4Header covert_template(const CovertOptions& opt, std::uint8_t protocol) {
  Ipv4Header tmpl;
  tmpl.total_length = opt.template_length;
  tmpl.protocol = protocol;
  tmpl.src_addr = 0x0A000001;
  tmpl.dst_addr = 0x0A000002;
  tmpl.header_checksum = ipv4_compute_checksum(tmpl);
  return tmpl;
}

void print_report(const AnomalyReport& report) {
  std::cout << "anomaly report:\n";
  for (const auto& check : report.checks) {
    std::cout << "  " << check.name << '\t' << check.statistic << '\t'
              << check.threshold << '\t'
              << (check.evaluated ? (check.flagged ? "flagged" : "clear")
                                  : "insufficient-data")
              << "\n";
  }
}

void print_events(const PathResult& result) {
  std::cout << "events: " << result.events.size() << "\n";
  for (const auto& event : result.events) {
    const char* kind = event.kind == PathEventKind::FragmentationNeeded
                           ? "FragmentationNeeded"
                           : event.kind == PathEventKind::Fragmented ? "Fragmented"
                                                                     : "IdRewritten";
    std::cout << "  datagram " << event.datagram_index << ": " << kind << "\n";
  }
}

void run_covert_encode(const CovertOptions& opt) {
  const auto key = key_of(opt.key);
  const auto message = read_file(opt.message_path);
  const auto framed = frame_encode(message, key);

  std::vector<std::vector<std::uint8_t>> records;
  if (opt.channel == "df" || opt.channel == "id") {
    std::vector<Ipv4Header> datagrams;
    if (opt.channel == "df") {
      datagrams = df_channel_encode(bits_of(framed).bits(),
                                    covert_template(opt, 6), opt.mtu);
    } else {
      datagrams = id_channel_encode(framed, covert_template(opt, 6));
    }
    const PathConfig config{.mtu = opt.mtu,
                            .normalize_identification = opt.normalize_id,
                            .fragment_when_needed = !opt.no_fragment,
                            .seed = opt.seed};
    const auto result = path_transmit(datagrams, config);
    std::cout << "sent datagrams: " << datagrams.size() << "\n";
    std::cout << "delivered datagrams: " << result.delivered.size() << "\n";
    print_events(result);

    if (opt.channel == "df") {
      const auto bits = df_channel_decode(result.delivered);
      std::cout << "delivered bits: ";
      for (auto b : bits) std::cout << int(b);
      std::cout << "\n";
    }
    print_report(header_anomaly_scan(result.delivered));

    // Decode what actually crossed the path.
    try {
      const auto decoded = opt.channel == "df"
                               ? bytes_of(df_channel_decode(result.delivered))
                               : id_channel_decode(result.delivered);
      const auto recovered = frame_decode(decoded, key);
      std::cout << "payload survived the path: " << recovered.size() << " bytes\n";
      if (!opt.recovered_path.empty()) write_file(opt.recovered_path, recovered);
    } catch (const StegoError& e) {
      std::cout << "payload destroyed by the path: " << e.name() << ": " << e.what()
                << "\n";
    }
    for (const auto& h : result.delivered) records.push_back(ipv4_serialize(h));
  } else if (opt.channel == "isn") {
    const auto transcripts = isn_channel_encode(framed, opt.seed);
    std::cout << "handshakes: " << transcripts.size() << "\n";
    for (const auto& t : transcripts) {
      for (const auto& segment : t) {
        records.push_back(tcp_serialize(segment, 0x0A000001, 0x0A000002));
      }
    }
  } else if (opt.channel == "udp-port") {
    const auto headers = udp_port_channel_encode(framed, UdpHeader{.dst_port = 53},
                                                 0x0A000001, 0x0A000002);
    std::cout << "packets: " << headers.size() << "\n";
    for (const auto& h : headers) {
      records.push_back(udp_serialize(h, 0x0A000001, 0x0A000002));
    }
  } else if (opt.channel == "icmp-code") {
    const auto headers = icmp_code_channel_encode(framed, IcmpHeader{});
    std::cout << "packets: " << headers.size() << "\n";
    for (const auto& h : headers) records.push_back(icmp_serialize(h));
  } else {
    throw CLI::ValidationError("unknown channel " + opt.channel);
  }

  if (!opt.out_path.empty()) {
    write_file(opt.out_path, pkts_write(records));
    std::cout << "transcript records: " << records.size() << "\n";
  }
}

void run_covert_decode(const CovertOptions& opt) {
  const auto key = key_of(opt.key);
  const auto records = pkts_read(read_file(opt.in_path));

  std::vector<std::uint8_t> channel_bytes;
  if (opt.channel == "df") {
    std::vector<std::uint8_t> bits;
    for (const auto& r : records) bits.push_back(ipv4_parse(r).flag_df ? 1 : 0);
    channel_bytes = bytes_of(bits);
  } else if (opt.channel == "id") {
    std::vector<Ipv4Header> headers;
    for (const auto& r : records) headers.push_back(ipv4_parse(r));
    channel_bytes = id_channel_decode(headers);
  } else if (opt.channel == "isn") {
    if (records.size() % 3 != 0) {
      throw ProtocolViolation("transcript does not hold whole handshakes");
    }
    std::vector<HandshakeTranscript> transcripts;
    for (std::size_t i = 0; i < records.size(); i += 3) {
      transcripts.push_back({tcp_parse(records[i]), tcp_parse(records[i + 1]),
                             tcp_parse(records[i + 2])});
    }
    channel_bytes = isn_channel_decode(transcripts);
  } else if (opt.channel == "udp-port") {
    std::vector<UdpHeader> headers;
    for (const auto& r : records) headers.push_back(udp_parse(r));
    channel_bytes = udp_port_channel_decode(headers);
  } else if (opt.channel == "icmp-code") {
    std::vector<IcmpHeader> headers;
    for (const auto& r : records) headers.push_back(icmp_parse(r));
    channel_bytes = icmp_code_channel_decode(headers);
  } else {
    throw CLI::ValidationError("unknown channel " + opt.channel);
  }

  const auto message = frame_decode(channel_bytes, key);
  write_file(opt.out_path, message);
  std::cout << "recovered " << message.size() << " bytes\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-cover steganography toolkit"};
  app.require_subcommand(1);

  MediumOptions medium_opt;
  AnalyzeOptions analyze_opt;
  CovertOptions covert_opt;
  std::string scrub_in, scrub_out;
  std::uint64_t scrub_seed = 0;

  const std::vector<std::string> media{"text-key",  "text-gap",  "image-lsb",
                                       "image-dct", "audio-lsb", "audio-phase",
                                       "audio-dsss", "audio-echo", "video"};

  auto add_medium_flags = [&](CLI::App* cmd) {
    cmd->add_option("--medium", medium_opt.medium, "carrier medium")
        ->required()
        ->check(CLI::IsMember(media));
    cmd->add_option("--key", medium_opt.key, "stego key (repeating-key XOR)");
    cmd->add_option("--segment-len", medium_opt.segment_len, "phase-coding segment length");
    cmd->add_option("--bins", medium_opt.bins, "phase-coding carrier bins");
    cmd->add_option("--chips-per-bit", medium_opt.chips_per_bit, "DSSS chips per bit");
    cmd->add_option("--strength", medium_opt.strength, "DSSS strength (fraction of full scale)");
    cmd->add_option("--amplitude", medium_opt.amplitude, "echo amplitude");
    cmd->add_option("--delay0", medium_opt.delay0, "echo delay for bit 0 (samples)");
    cmd->add_option("--delay1", medium_opt.delay1, "echo delay for bit 1 (samples)");
    cmd->add_option("--echo-segment", medium_opt.echo_segment, "echo segment length");
    cmd->add_option("--alpha", medium_opt.alpha, "video modulation strength");
    cmd->add_option("--seed", medium_opt.seed, "PN / generator seed");
    cmd->add_option("--table", medium_opt.table_path, "gap lookup table file");
  };

  auto* embed = app.add_subcommand("embed", "hide a message in a cover");
  add_medium_flags(embed);
  embed->add_option("--cover", medium_opt.cover_path, "cover file")->required();
  embed->add_option("--message", medium_opt.message_path, "message file");
  embed->add_option("--out", medium_opt.out_path, "output file")->required();
  embed->add_option("--indices", medium_opt.indices_csv, "gap indices, comma separated");

  auto* extract = app.add_subcommand("extract", "recover a hidden message");
  add_medium_flags(extract);
  extract->add_option("--in", medium_opt.in_path, "stego file")->required();
  extract->add_option("--out", medium_opt.out_path, "recovered message file")->required();
  extract->add_option("--cover", medium_opt.cover_path,
                      "original cover (known-carrier media)");
  extract->add_option("--series", medium_opt.series_path, "character key series file");

  auto* analyze = app.add_subcommand("analyze", "run the steganalysis battery");
  analyze->add_option("--medium", analyze_opt.medium, "image | text | net")
      ->required()
      ->check(CLI::IsMember({"image", "text", "net"}));
  analyze->add_option("--suspect", analyze_opt.suspect_path, "suspect file")->required();
  analyze->add_option("--cover", analyze_opt.cover_path, "original cover, if available");
  analyze->add_option("--message", analyze_opt.message_path, "known message, if available");
  analyze->add_option("--algorithm", analyze_opt.algorithm, "known algorithm, if any");
  analyze->add_option("--out", analyze_opt.out_path, "report file (stdout otherwise)");
  analyze->add_option("--chi-threshold", analyze_opt.chi_threshold,
                      "chi-square p-value flag threshold");
  analyze->add_option("--whitespace-threshold", analyze_opt.whitespace_threshold,
                      "multi-space gap fraction flag threshold");

  auto* covert = app.add_subcommand("covert", "header covert channels over a simulated path");
  covert->add_option("--channel", covert_opt.channel, "df | id | isn | udp-port | icmp-code")
      ->required()
      ->check(CLI::IsMember({"df", "id", "isn", "udp-port", "icmp-code"}));
  covert->add_option("--message", covert_opt.message_path, "message to send");
  covert->add_option("--in", covert_opt.in_path, "transcript to decode");
  covert->add_option("--out", covert_opt.out_path,
                     "transcript file (encode) or message file (decode)");
  covert->add_option("--recovered", covert_opt.recovered_path,
                     "write the payload recovered after the path");
  covert->add_option("--key", covert_opt.key, "stego key");
  covert->add_option("--mtu", covert_opt.mtu, "path MTU");
  covert->add_option("--template-length", covert_opt.template_length,
                     "datagram total length used by the ipv4 channels");
  covert->add_flag("--normalize-id", covert_opt.normalize_id,
                   "path rewrites identification fields");
  covert->add_flag("--no-fragment", covert_opt.no_fragment,
                   "path refuses to fragment oversized datagrams");
  covert->add_option("--seed", covert_opt.seed, "path / ISN seed");

  auto* scrub = app.add_subcommand("scrub", "randomize every LSB of a bitmap");
  scrub->add_option("--in", scrub_in, "input bitmap")->required();
  scrub->add_option("--out", scrub_out, "output bitmap")->required();
  scrub->add_option("--seed", scrub_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (embed->parsed()) {
      if ((medium_opt.medium != "text-gap") && medium_opt.message_path.empty()) {
        std::cerr << "error: --message is required for this medium\n";
        return 1;
      }
      run_embed(medium_opt);
    } else if (extract->parsed()) {
      run_extract(medium_opt);
    } else if (analyze->parsed()) {
      run_analyze(analyze_opt);
    } else if (covert->parsed()) {
      if (!covert_opt.message_path.empty()) {
        run_covert_encode(covert_opt);
      } else if (!covert_opt.in_path.empty()) {
        run_covert_decode(covert_opt);
      } else {
        std::cerr << "error: covert needs --message (encode) or --in (decode)\n";
        return 1;
      }
    } else if (scrub->parsed()) {
      const auto image = bmp_read(read_file(scrub_in));
      write_file(scrub_out, bmp_write(lsb_scrub(image, scrub_seed)));
      std::cout << "scrubbed " << image.sample_count() << " samples\n";
    }
  } catch (const StegoError& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
