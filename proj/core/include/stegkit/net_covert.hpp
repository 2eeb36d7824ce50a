#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stegkit {

/// Bit-exact IPv4 header record. Serialization is network byte order;
/// options must be a multiple of 4 bytes, at most 40.
struct Ipv4Header {
  std::uint8_t version = 4;
  std::uint8_t header_length = 5;  // 32-bit words
  std::uint8_t tos = 0;
  std::uint16_t total_length = 20;
  std::uint16_t identification = 0;
  bool flag_reserved = false;
  bool flag_df = false;
  bool flag_mf = false;
  std::uint16_t fragment_offset = 0;  // 13 bits, 8-byte units
  std::uint8_t ttl = 64;
  std::uint8_t protocol = 0;
  std::uint16_t header_checksum = 0;
  std::uint32_t src_addr = 0;
  std::uint32_t dst_addr = 0;
  std::vector<std::uint8_t> options;

  bool operator==(const Ipv4Header&) const = default;
};

struct TcpHeader {
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t sequence_number = 0;
  std::uint32_t ack_number = 0;
  std::uint8_t data_offset = 5;  // 32-bit words
  bool flag_urg = false;
  bool flag_ack = false;
  bool flag_psh = false;
  bool flag_rst = false;
  bool flag_syn = false;
  bool flag_fin = false;
  std::uint16_t window = 65535;
  std::uint16_t checksum = 0;
  std::uint16_t urgent_pointer = 0;

  bool operator==(const TcpHeader&) const = default;
};

struct UdpHeader {
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint16_t length = 8;
  std::uint16_t checksum = 0;

  bool operator==(const UdpHeader&) const = default;
};

struct IcmpHeader {
  std::uint8_t type = 8;
  std::uint8_t code = 0;
  std::uint16_t checksum = 0;
  std::uint32_t rest = 0;

  bool operator==(const IcmpHeader&) const = default;
};

/// One's-complement sum over 16-bit big-endian words (odd tail zero-padded),
/// returned complemented — the value a header stores.
std::uint16_t internet_checksum(std::span<const std::uint8_t> data);

/// Checksum the header would carry on the wire.
std::uint16_t ipv4_compute_checksum(const Ipv4Header& header);

/// Serializes with a freshly computed checksum; the input checksum field is
/// not trusted.
std::vector<std::uint8_t> ipv4_serialize(const Ipv4Header& header);

/// Parses and verifies: Truncated when the buffer cannot hold the declared
/// header, ChecksumMismatch when the one's-complement sum fails, BadVersion
/// for non-IPv4. Trailing payload bytes are ignored.
Ipv4Header ipv4_parse(std::span<const std::uint8_t> data);

/// TCP serialization with the checksum computed over the declared
/// pseudo-header and a zero payload (channels here are header-only).
std::vector<std::uint8_t> tcp_serialize(const TcpHeader& header,
                                        std::uint32_t src_addr = 0,
                                        std::uint32_t dst_addr = 0);

/// Parse without checksum verification (the pseudo-header addresses are not
/// part of the segment).
TcpHeader tcp_parse(std::span<const std::uint8_t> data);

std::vector<std::uint8_t> udp_serialize(const UdpHeader& header,
                                        std::uint32_t src_addr = 0,
                                        std::uint32_t dst_addr = 0);
UdpHeader udp_parse(std::span<const std::uint8_t> data);

std::vector<std::uint8_t> icmp_serialize(const IcmpHeader& header);
IcmpHeader icmp_parse(std::span<const std::uint8_t> data);

/// DF-flag covert channel: datagram i carries bits[i] in its DF flag, with
/// MF = 0 and offset = 0; identification counts up from the template's.
/// Throws TemplateTooLarge when the template exceeds the agreed MTU.
std::vector<Ipv4Header> df_channel_encode(std::span<const std::uint8_t> bits,
                                          const Ipv4Header& tmpl, std::uint32_t mtu);
std::vector<std::uint8_t> df_channel_decode(std::span<const Ipv4Header> headers);

/// Identification-field channel: 16 payload bits per datagram, big-endian
/// within the field; an odd tail byte is zero-padded.
std::vector<Ipv4Header> id_channel_encode(std::span<const std::uint8_t> payload,
                                          const Ipv4Header& tmpl);
std::vector<std::uint8_t> id_channel_decode(std::span<const Ipv4Header> headers);

enum class HandshakeRole { Client, Server, Observer };
enum class TcpConnState { Closed, SynSent, SynReceived, Established };

/// Three-way handshake state machine. Single-owner; transitions only along
/// the SYN / SYN+ACK / ACK sequence, anything else throws ProtocolViolation.
class HandshakeState {
 public:
  explicit HandshakeState(HandshakeRole role) : role_(role) {}

  /// Client: CLOSED -> SYN_SENT, emitting segment 1 with the chosen ISN.
  TcpHeader send_syn(std::uint32_t isn, std::uint16_t src_port, std::uint16_t dst_port);

  /// Server: CLOSED -> SYN_RECEIVED, emitting segment 2 (SYN+ACK with
  /// ack = client ISN + 1).
  TcpHeader on_syn(const TcpHeader& syn, std::uint32_t own_isn);

  /// Client: SYN_SENT -> ESTABLISHED, emitting segment 3 (ack = server
  /// ISN + 1).
  TcpHeader on_syn_ack(const TcpHeader& syn_ack);

  /// Server: SYN_RECEIVED -> ESTABLISHED.
  void on_ack(const TcpHeader& ack);

  [[nodiscard]] HandshakeRole role() const { return role_; }
  [[nodiscard]] TcpConnState state() const { return state_; }
  [[nodiscard]] std::uint32_t client_isn() const { return client_isn_; }
  [[nodiscard]] std::uint32_t server_isn() const { return server_isn_; }

 private:
  HandshakeRole role_;
  TcpConnState state_ = TcpConnState::Closed;
  std::uint32_t client_isn_ = 0;
  std::uint32_t server_isn_ = 0;
};

using HandshakeTranscript = std::array<TcpHeader, 3>;

/// Runs one covert handshake: the client's ISN is the 32-bit secret word.
/// Both machines must start CLOSED and end ESTABLISHED.
HandshakeTranscript isn_channel_connect(std::uint32_t secret_word,
                                        HandshakeState& client, HandshakeState& server,
                                        std::uint32_t server_isn,
                                        std::uint16_t client_port = 49152,
                                        std::uint16_t server_port = 80);

/// Passive observer: validates the three-segment structure and returns the
/// client ISN. Throws ProtocolViolation for anything but a clean handshake.
std::uint32_t isn_channel_observe(std::span<const TcpHeader> transcript);

/// Multi-word wrapper: one handshake per 32-bit big-endian word, server
/// ISNs drawn from the seed. The tail word is zero-padded.
std::vector<HandshakeTranscript> isn_channel_encode(std::span<const std::uint8_t> payload,
                                                    std::uint64_t seed = 0);
std::vector<std::uint8_t> isn_channel_decode(std::span<const HandshakeTranscript> transcripts);

/// UDP source-port channel: 16 bits per packet. Checksums are computed
/// against the given pseudo-header addresses.
std::vector<UdpHeader> udp_port_channel_encode(std::span<const std::uint8_t> payload,
                                               const UdpHeader& tmpl,
                                               std::uint32_t src_addr = 0,
                                               std::uint32_t dst_addr = 0);
std::vector<std::uint8_t> udp_port_channel_decode(std::span<const UdpHeader> headers);

/// ICMP code-field channel: 8 bits per packet, checksum recomputed.
std::vector<IcmpHeader> icmp_code_channel_encode(std::span<const std::uint8_t> payload,
                                                 const IcmpHeader& tmpl);
std::vector<std::uint8_t> icmp_code_channel_decode(std::span<const IcmpHeader> headers);

/// Simulated path properties between covert sender and receiver.
struct PathConfig {
  std::uint32_t mtu = 1500;  // >= 68
  bool normalize_identification = false;
  bool fragment_when_needed = true;
  std::uint64_t seed = 0;
};

enum class PathEventKind { FragmentationNeeded, Fragmented, IdRewritten };

struct PathEvent {
  PathEventKind kind;
  std::size_t datagram_index;

  bool operator==(const PathEvent&) const = default;
};

struct PathResult {
  std::vector<Ipv4Header> delivered;
  std::vector<PathEvent> events;

  [[nodiscard]] std::size_t count_events(PathEventKind kind) const;
};

/// Applies the path to each datagram in order: oversized datagrams with DF
/// set are dropped (FragmentationNeeded); oversized datagrams without DF
/// are split into RFC-correct fragments when the config allows; the
/// identification normalizer overwrites the field from a seeded counter.
/// Checksums are recomputed on every mutation. Input datagrams must be
/// checksum-valid.
PathResult path_transmit(std::span<const Ipv4Header> datagrams, const PathConfig& config);

struct AnomalyThresholds {
  std::uint16_t small_packet_cutoff = 576;   // "far below typical MTU"
  double df_small_fraction = 0.5;            // DF=1 share among small datagrams
  double id_step_score = 512.0;              // circular mean |successive id delta|
  double uniformity_p = 0.01;                // chi-square significance
  std::size_t uniformity_min_datagrams = 64;
};

struct AnomalyCheck {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool evaluated = false;  // false: not enough data for a verdict
  bool flagged = false;
};

struct AnomalyReport {
  std::vector<AnomalyCheck> checks;

  [[nodiscard]] bool any_flagged() const;
  [[nodiscard]] const AnomalyCheck* find(std::string_view name) const;
};

/// Pattern-based IDS-style scan of a header stream: suspicious DF usage on
/// small datagrams, identification-field sequentiality, and a chi-square
/// uniformity check over identification bytes. OS stacks count upward and
/// produce strongly non-uniform bytes (the uniform hypothesis is rejected,
/// p below the significance threshold); a stream whose identification bytes
/// survive the uniformity test looks like covert random payload and is
/// flagged.
AnomalyReport header_anomaly_scan(std::span<const Ipv4Header> headers,
                                  const AnomalyThresholds& thresholds = {});

/// Transcript container (magic "PKTS"): length-prefixed raw header images.
std::vector<std::uint8_t> pkts_write(const std::vector<std::vector<std::uint8_t>>& records);
std::vector<std::vector<std::uint8_t>> pkts_read(std::span<const std::uint8_t> data);

}  // namespace stegkit
