#include "stegkit/net_covert.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "stegkit/errors.hpp"
#include "stegkit/stats.hpp"

namespace stegkit {

namespace {

void put_u16be(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t read_u16be(std::span<const std::uint8_t> d, std::size_t at) {
  return static_cast<std::uint16_t>((d[at] << 8) | d[at + 1]);
}

std::uint32_t read_u32be(std::span<const std::uint8_t> d, std::size_t at) {
  return (static_cast<std::uint32_t>(d[at]) << 24) |
         (static_cast<std::uint32_t>(d[at + 1]) << 16) |
         (static_cast<std::uint32_t>(d[at + 2]) << 8) |
         static_cast<std::uint32_t>(d[at + 3]);
}

void validate_ipv4_fields(const Ipv4Header& h) {
  if (h.version != 4) {
    throw std::invalid_argument("version must be 4");
  }
  if (h.options.size() > 40 || h.options.size() % 4 != 0) {
    throw std::invalid_argument("options must be a multiple of 4 bytes, at most 40");
  }
  if (h.header_length != 5 + h.options.size() / 4) {
    throw std::invalid_argument("header_length inconsistent with options size");
  }
  if (h.total_length < 4u * h.header_length) {
    throw std::invalid_argument("total_length smaller than the header itself");
  }
  if (h.fragment_offset >= 8192) {
    throw std::invalid_argument("fragment offset exceeds 13 bits");
  }
}

std::vector<std::uint8_t> ipv4_serialize_with(const Ipv4Header& h, std::uint16_t checksum) {
  std::vector<std::uint8_t> out;
  out.reserve(4u * h.header_length);
  out.push_back(static_cast<std::uint8_t>((h.version << 4) | h.header_length));
  out.push_back(h.tos);
  put_u16be(out, h.total_length);
  put_u16be(out, h.identification);
  const std::uint16_t flags_and_offset = static_cast<std::uint16_t>(
      (h.flag_reserved ? 0x8000 : 0) | (h.flag_df ? 0x4000 : 0) |
      (h.flag_mf ? 0x2000 : 0) | h.fragment_offset);
  put_u16be(out, flags_and_offset);
  out.push_back(h.ttl);
  out.push_back(h.protocol);
  put_u16be(out, checksum);
  put_u32be(out, h.src_addr);
  put_u32be(out, h.dst_addr);
  out.insert(out.end(), h.options.begin(), h.options.end());
  return out;
}

// Pseudo-header + segment checksum shared by TCP and UDP.
std::uint16_t transport_checksum(std::uint32_t src, std::uint32_t dst,
                                 std::uint8_t protocol,
                                 std::span<const std::uint8_t> segment) {
  std::vector<std::uint8_t> buf;
  buf.reserve(12 + segment.size());
  put_u32be(buf, src);
  put_u32be(buf, dst);
  buf.push_back(0);
  buf.push_back(protocol);
  put_u16be(buf, static_cast<std::uint16_t>(segment.size()));
  buf.insert(buf.end(), segment.begin(), segment.end());
  return internet_checksum(buf);
}

}  // namespace

std::uint16_t internet_checksum(std::span<const std::uint8_t> data) {
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i + 1 < data.size(); i += 2) {
    sum += static_cast<std::uint32_t>((data[i] << 8) | data[i + 1]);
  }
  if (data.size() % 2 != 0) {
    sum += static_cast<std::uint32_t>(data.back() << 8);
  }
  while (sum >> 16) {
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  return static_cast<std::uint16_t>(~sum & 0xFFFF);
}

std::uint16_t ipv4_compute_checksum(const Ipv4Header& header) {
  validate_ipv4_fields(header);
  return internet_checksum(ipv4_serialize_with(header, 0));
}

std::vector<std::uint8_t> ipv4_serialize(const Ipv4Header& header) {
  validate_ipv4_fields(header);
  auto bytes = ipv4_serialize_with(header, 0);
  const std::uint16_t checksum = internet_checksum(bytes);
  bytes[10] = static_cast<std::uint8_t>(checksum >> 8);
  bytes[11] = static_cast<std::uint8_t>(checksum);
  return bytes;
}

Ipv4Header ipv4_parse(std::span<const std::uint8_t> data) {
  if (data.size() < 20) {
    throw Truncated("fewer than 20 bytes");
  }
  const std::uint8_t ihl = data[0] & 0x0F;
  if (ihl < 5) {
    throw Malformed("header length below minimum");
  }
  const std::size_t header_bytes = 4u * ihl;
  if (data.size() < header_bytes) {
    throw Truncated("declared header length exceeds buffer");
  }
  // Verify before trusting any field: a valid header sums to 0xFFFF.
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i < header_bytes; i += 2) {
    sum += static_cast<std::uint32_t>((data[i] << 8) | data[i + 1]);
  }
  while (sum >> 16) {
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  if (sum != 0xFFFF) {
    throw ChecksumMismatch("header checksum does not verify");
  }
  if ((data[0] >> 4) != 4) {
    throw BadVersion("not an IPv4 header");
  }

  Ipv4Header h;
  h.version = 4;
  h.header_length = ihl;
  h.tos = data[1];
  h.total_length = read_u16be(data, 2);
  h.identification = read_u16be(data, 4);
  const std::uint16_t flags_and_offset = read_u16be(data, 6);
  h.flag_reserved = (flags_and_offset & 0x8000) != 0;
  h.flag_df = (flags_and_offset & 0x4000) != 0;
  h.flag_mf = (flags_and_offset & 0x2000) != 0;
  h.fragment_offset = flags_and_offset & 0x1FFF;
  h.ttl = data[8];
  h.protocol = data[9];
  h.header_checksum = read_u16be(data, 10);
  h.src_addr = read_u32be(data, 12);
  h.dst_addr = read_u32be(data, 16);
  h.options.assign(data.begin() + 20, data.begin() + static_cast<std::ptrdiff_t>(header_bytes));
  if (h.total_length < header_bytes) {
    throw Malformed("total_length smaller than the header itself");
  }
  return h;
}

std::vector<std::uint8_t> tcp_serialize(const TcpHeader& header, std::uint32_t src_addr,
                                        std::uint32_t dst_addr) {
  if (header.data_offset < 5 || header.data_offset > 15) {
    throw std::invalid_argument("data offset must lie in [5, 15]");
  }
  std::vector<std::uint8_t> out;
  out.reserve(4u * header.data_offset);
  put_u16be(out, header.src_port);
  put_u16be(out, header.dst_port);
  put_u32be(out, header.sequence_number);
  put_u32be(out, header.ack_number);
  out.push_back(static_cast<std::uint8_t>(header.data_offset << 4));
  std::uint8_t flags = 0;
  if (header.flag_urg) flags |= 0x20;
  if (header.flag_ack) flags |= 0x10;
  if (header.flag_psh) flags |= 0x08;
  if (header.flag_rst) flags |= 0x04;
  if (header.flag_syn) flags |= 0x02;
  if (header.flag_fin) flags |= 0x01;
  out.push_back(flags);
  put_u16be(out, header.window);
  put_u16be(out, 0);
  put_u16be(out, header.urgent_pointer);
  out.resize(4u * header.data_offset, 0);  // zeroed options region
  const std::uint16_t checksum = transport_checksum(src_addr, dst_addr, 6, out);
  out[16] = static_cast<std::uint8_t>(checksum >> 8);
  out[17] = static_cast<std::uint8_t>(checksum);
  return out;
}

TcpHeader tcp_parse(std::span<const std::uint8_t> data) {
  if (data.size() < 20) {
    throw Truncated("fewer than 20 bytes");
  }
  const std::uint8_t offset = data[12] >> 4;
  if (offset < 5) {
    throw Malformed("data offset below minimum");
  }
  if (data.size() < 4u * offset) {
    throw Truncated("declared data offset exceeds buffer");
  }
  TcpHeader h;
  h.src_port = read_u16be(data, 0);
  h.dst_port = read_u16be(data, 2);
  h.sequence_number = read_u32be(data, 4);
  h.ack_number = read_u32be(data, 8);
  h.data_offset = offset;
  h.flag_urg = (data[13] & 0x20) != 0;
  h.flag_ack = (data[13] & 0x10) != 0;
  h.flag_psh = (data[13] & 0x08) != 0;
  h.flag_rst = (data[13] & 0x04) != 0;
  h.flag_syn = (data[13] & 0x02) != 0;
  h.flag_fin = (data[13] & 0x01) != 0;
  h.window = read_u16be(data, 14);
  h.checksum = read_u16be(data, 16);
  h.urgent_pointer = read_u16be(data, 18);
  return h;
}

std::vector<std::uint8_t> udp_serialize(const UdpHeader& header, std::uint32_t src_addr,
                                        std::uint32_t dst_addr) {
  if (header.length < 8) {
    throw std::invalid_argument("UDP length must be at least 8");
  }
  std::vector<std::uint8_t> out;
  out.reserve(8);
  put_u16be(out, header.src_port);
  put_u16be(out, header.dst_port);
  put_u16be(out, header.length);
  put_u16be(out, 0);
  std::uint16_t checksum = transport_checksum(src_addr, dst_addr, 17, out);
  if (checksum == 0) checksum = 0xFFFF;  // 0 means "no checksum" on the wire
  out[6] = static_cast<std::uint8_t>(checksum >> 8);
  out[7] = static_cast<std::uint8_t>(checksum);
  return out;
}

UdpHeader udp_parse(std::span<const std::uint8_t> data) {
  if (data.size() < 8) {
    throw Truncated("fewer than 8 bytes");
  }
  UdpHeader h;
  h.src_port = read_u16be(data, 0);
  h.dst_port = read_u16be(data, 2);
  h.length = read_u16be(data, 4);
  h.checksum = read_u16be(data, 6);
  if (h.length < 8) {
    throw Malformed("UDP length below header size");
  }
  return h;
}

std::vector<std::uint8_t> icmp_serialize(const IcmpHeader& header) {
  std::vector<std::uint8_t> out;
  out.reserve(8);
  out.push_back(header.type);
  out.push_back(header.code);
  put_u16be(out, 0);
  put_u32be(out, header.rest);
  const std::uint16_t checksum = internet_checksum(out);
  out[2] = static_cast<std::uint8_t>(checksum >> 8);
  out[3] = static_cast<std::uint8_t>(checksum);
  return out;
}

IcmpHeader icmp_parse(std::span<const std::uint8_t> data) {
  if (data.size() < 8) {
    throw Truncated("fewer than 8 bytes");
  }
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i < 8; i += 2) {
    sum += static_cast<std::uint32_t>((data[i] << 8) | data[i + 1]);
  }
  while (sum >> 16) {
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  if (sum != 0xFFFF) {
    throw ChecksumMismatch("ICMP checksum does not verify");
  }
  IcmpHeader h;
  h.type = data[0];
  h.code = data[1];
  h.checksum = read_u16be(data, 2);
  h.rest = read_u32be(data, 4);
  return h;
}

namespace {

void validate_unfragmented_template(const Ipv4Header& tmpl) {
  validate_ipv4_fields(tmpl);
  if (tmpl.flag_mf || tmpl.fragment_offset != 0) {
    throw std::invalid_argument("channel template must describe an unfragmented datagram");
  }
}

Ipv4Header finalize(Ipv4Header h) {
  h.header_checksum = ipv4_compute_checksum(h);
  return h;
}

}  // namespace

std::vector<Ipv4Header> df_channel_encode(std::span<const std::uint8_t> bits,
                                          const Ipv4Header& tmpl, std::uint32_t mtu) {
  validate_unfragmented_template(tmpl);
  if (tmpl.total_length > mtu) {
    throw TemplateTooLarge("datagram length must not exceed the path MTU");
  }
  std::vector<Ipv4Header> out;
  out.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    Ipv4Header h = tmpl;
    h.flag_df = (bits[i] & 1u) != 0;
    h.flag_mf = false;
    h.fragment_offset = 0;
    h.identification = static_cast<std::uint16_t>(tmpl.identification + i);
    out.push_back(finalize(std::move(h)));
  }
  return out;
}

std::vector<std::uint8_t> df_channel_decode(std::span<const Ipv4Header> headers) {
  std::vector<std::uint8_t> bits;
  bits.reserve(headers.size());
  for (const auto& h : headers) {
    bits.push_back(h.flag_df ? 1 : 0);
  }
  return bits;
}

std::vector<Ipv4Header> id_channel_encode(std::span<const std::uint8_t> payload,
                                          const Ipv4Header& tmpl) {
  validate_unfragmented_template(tmpl);
  std::vector<Ipv4Header> out;
  out.reserve((payload.size() + 1) / 2);
  for (std::size_t i = 0; i < payload.size(); i += 2) {
    Ipv4Header h = tmpl;
    const std::uint16_t high = payload[i];
    const std::uint16_t low = i + 1 < payload.size() ? payload[i + 1] : 0;
    h.identification = static_cast<std::uint16_t>((high << 8) | low);
    out.push_back(finalize(std::move(h)));
  }
  return out;
}

std::vector<std::uint8_t> id_channel_decode(std::span<const Ipv4Header> headers) {
  std::vector<std::uint8_t> payload;
  payload.reserve(headers.size() * 2);
  for (const auto& h : headers) {
    payload.push_back(static_cast<std::uint8_t>(h.identification >> 8));
    payload.push_back(static_cast<std::uint8_t>(h.identification));
  }
  return payload;
}

TcpHeader HandshakeState::send_syn(std::uint32_t isn, std::uint16_t src_port,
                                   std::uint16_t dst_port) {
  if (role_ != HandshakeRole::Client || state_ != TcpConnState::Closed) {
    throw ProtocolViolation("SYN may only open a closed client connection");
  }
  client_isn_ = isn;
  state_ = TcpConnState::SynSent;
  TcpHeader h;
  h.src_port = src_port;
  h.dst_port = dst_port;
  h.sequence_number = isn;
  h.flag_syn = true;
  return h;
}

TcpHeader HandshakeState::on_syn(const TcpHeader& syn, std::uint32_t own_isn) {
  if (role_ != HandshakeRole::Server || state_ != TcpConnState::Closed) {
    throw ProtocolViolation("unexpected SYN");
  }
  if (!syn.flag_syn || syn.flag_ack) {
    throw ProtocolViolation("segment 1 must be SYN without ACK");
  }
  client_isn_ = syn.sequence_number;
  server_isn_ = own_isn;
  state_ = TcpConnState::SynReceived;
  TcpHeader h;
  h.src_port = syn.dst_port;
  h.dst_port = syn.src_port;
  h.sequence_number = server_isn_;
  h.ack_number = client_isn_ + 1;  // wraps mod 2^32
  h.flag_syn = true;
  h.flag_ack = true;
  return h;
}

TcpHeader HandshakeState::on_syn_ack(const TcpHeader& syn_ack) {
  if (role_ != HandshakeRole::Client || state_ != TcpConnState::SynSent) {
    throw ProtocolViolation("unexpected SYN+ACK");
  }
  if (!syn_ack.flag_syn || !syn_ack.flag_ack) {
    throw ProtocolViolation("segment 2 must be SYN+ACK");
  }
  if (syn_ack.ack_number != client_isn_ + 1) {
    throw ProtocolViolation("segment 2 must acknowledge client ISN + 1");
  }
  server_isn_ = syn_ack.sequence_number;
  state_ = TcpConnState::Established;
  TcpHeader h;
  h.src_port = syn_ack.dst_port;
  h.dst_port = syn_ack.src_port;
  h.sequence_number = client_isn_ + 1;
  h.ack_number = server_isn_ + 1;
  h.flag_ack = true;
  return h;
}

void HandshakeState::on_ack(const TcpHeader& ack) {
  if (role_ != HandshakeRole::Server || state_ != TcpConnState::SynReceived) {
    throw ProtocolViolation("unexpected ACK");
  }
  if (!ack.flag_ack || ack.flag_syn) {
    throw ProtocolViolation("segment 3 must be ACK without SYN");
  }
  if (ack.ack_number != server_isn_ + 1) {
    throw ProtocolViolation("segment 3 must acknowledge server ISN + 1");
  }
  if (ack.sequence_number != client_isn_ + 1) {
    throw ProtocolViolation("segment 3 must continue at client ISN + 1");
  }
  state_ = TcpConnState::Established;
}

HandshakeTranscript isn_channel_connect(std::uint32_t secret_word, HandshakeState& client,
                                        HandshakeState& server, std::uint32_t server_isn,
                                        std::uint16_t client_port,
                                        std::uint16_t server_port) {
  HandshakeTranscript transcript;
  transcript[0] = client.send_syn(secret_word, client_port, server_port);
  transcript[1] = server.on_syn(transcript[0], server_isn);
  transcript[2] = client.on_syn_ack(transcript[1]);
  server.on_ack(transcript[2]);
  return transcript;
}

std::uint32_t isn_channel_observe(std::span<const TcpHeader> transcript) {
  if (transcript.size() != 3) {
    throw ProtocolViolation("handshake transcript must hold exactly three segments");
  }
  const TcpHeader& syn = transcript[0];
  const TcpHeader& syn_ack = transcript[1];
  const TcpHeader& ack = transcript[2];
  if (!syn.flag_syn || syn.flag_ack) {
    throw ProtocolViolation("segment 1 must be SYN without ACK");
  }
  if (!syn_ack.flag_syn || !syn_ack.flag_ack ||
      syn_ack.ack_number != syn.sequence_number + 1) {
    throw ProtocolViolation("segment 2 must be SYN+ACK of client ISN + 1");
  }
  if (ack.flag_syn || !ack.flag_ack ||
      ack.ack_number != syn_ack.sequence_number + 1) {
    throw ProtocolViolation("segment 3 must be ACK of server ISN + 1");
  }
  return syn.sequence_number;
}

std::vector<HandshakeTranscript> isn_channel_encode(std::span<const std::uint8_t> payload,
                                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HandshakeTranscript> out;
  out.reserve((payload.size() + 3) / 4);
  for (std::size_t i = 0; i < payload.size(); i += 4) {
    std::uint32_t word = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      word <<= 8;
      if (i + b < payload.size()) word |= payload[i + b];
    }
    HandshakeState client(HandshakeRole::Client);
    HandshakeState server(HandshakeRole::Server);
    out.push_back(isn_channel_connect(word, client, server,
                                      static_cast<std::uint32_t>(rng())));
  }
  return out;
}

std::vector<std::uint8_t> isn_channel_decode(std::span<const HandshakeTranscript> transcripts) {
  std::vector<std::uint8_t> payload;
  payload.reserve(transcripts.size() * 4);
  for (const auto& t : transcripts) {
    const std::uint32_t word = isn_channel_observe(t);
    payload.push_back(static_cast<std::uint8_t>(word >> 24));
    payload.push_back(static_cast<std::uint8_t>(word >> 16));
    payload.push_back(static_cast<std::uint8_t>(word >> 8));
    payload.push_back(static_cast<std::uint8_t>(word));
  }
  return payload;
}

std::vector<UdpHeader> udp_port_channel_encode(std::span<const std::uint8_t> payload,
                                               const UdpHeader& tmpl,
                                               std::uint32_t src_addr,
                                               std::uint32_t dst_addr) {
  std::vector<UdpHeader> out;
  out.reserve((payload.size() + 1) / 2);
  for (std::size_t i = 0; i < payload.size(); i += 2) {
    UdpHeader h = tmpl;
    const std::uint16_t high = payload[i];
    const std::uint16_t low = i + 1 < payload.size() ? payload[i + 1] : 0;
    h.src_port = static_cast<std::uint16_t>((high << 8) | low);
    // Store the checksum the packet would carry on the wire.
    const auto wire = udp_serialize(h, src_addr, dst_addr);
    h.checksum = static_cast<std::uint16_t>((wire[6] << 8) | wire[7]);
    out.push_back(h);
  }
  return out;
}

std::vector<std::uint8_t> udp_port_channel_decode(std::span<const UdpHeader> headers) {
  std::vector<std::uint8_t> payload;
  payload.reserve(headers.size() * 2);
  for (const auto& h : headers) {
    payload.push_back(static_cast<std::uint8_t>(h.src_port >> 8));
    payload.push_back(static_cast<std::uint8_t>(h.src_port));
  }
  return payload;
}

std::vector<IcmpHeader> icmp_code_channel_encode(std::span<const std::uint8_t> payload,
                                                 const IcmpHeader& tmpl) {
  std::vector<IcmpHeader> out;
  out.reserve(payload.size());
  for (std::uint8_t byte : payload) {
    IcmpHeader h = tmpl;
    h.code = byte;
    const auto wire = icmp_serialize(h);
    h.checksum = static_cast<std::uint16_t>((wire[2] << 8) | wire[3]);
    out.push_back(h);
  }
  return out;
}

std::vector<std::uint8_t> icmp_code_channel_decode(std::span<const IcmpHeader> headers) {
  std::vector<std::uint8_t> payload;
  payload.reserve(headers.size());
  for (const auto& h : headers) {
    payload.push_back(h.code);
  }
  return payload;
}

std::size_t PathResult::count_events(PathEventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(),
                    [kind](const PathEvent& e) { return e.kind == kind; }));
}

PathResult path_transmit(std::span<const Ipv4Header> datagrams, const PathConfig& config) {
  if (config.mtu < 68) {
    throw std::invalid_argument("mtu must be at least 68");
  }
  PathResult result;
  std::uint16_t id_counter = static_cast<std::uint16_t>(config.seed);
  for (std::size_t i = 0; i < datagrams.size(); ++i) {
    Ipv4Header h = datagrams[i];
    if (ipv4_compute_checksum(h) != h.header_checksum) {
      throw ChecksumMismatch("datagram entered the path with an invalid checksum");
    }
    if (config.normalize_identification) {
      h.identification = id_counter++;
      h.header_checksum = ipv4_compute_checksum(h);
      result.events.push_back({PathEventKind::IdRewritten, i});
    }
    if (h.total_length <= config.mtu) {
      result.delivered.push_back(std::move(h));
      continue;
    }
    if (h.flag_df || !config.fragment_when_needed) {
      result.events.push_back({PathEventKind::FragmentationNeeded, i});
      continue;
    }
    // RFC-style split: payload in 8-byte units, identification shared,
    // MF set on every fragment but the last.
    const std::size_t header_bytes = 4u * h.header_length;
    const std::size_t payload_bytes = h.total_length - header_bytes;
    const std::size_t chunk = (config.mtu - header_bytes) / 8 * 8;
    std::size_t sent = 0;
    while (sent < payload_bytes) {
      const std::size_t piece = std::min(chunk, payload_bytes - sent);
      Ipv4Header frag = h;
      frag.fragment_offset = static_cast<std::uint16_t>(h.fragment_offset + sent / 8);
      frag.flag_mf = sent + piece < payload_bytes ? true : h.flag_mf;
      frag.total_length = static_cast<std::uint16_t>(header_bytes + piece);
      frag.header_checksum = ipv4_compute_checksum(frag);
      result.delivered.push_back(std::move(frag));
      sent += piece;
    }
    result.events.push_back({PathEventKind::Fragmented, i});
  }
  return result;
}

bool AnomalyReport::any_flagged() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const AnomalyCheck& c) { return c.flagged; });
}

const AnomalyCheck* AnomalyReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AnomalyReport header_anomaly_scan(std::span<const Ipv4Header> headers,
                                  const AnomalyThresholds& thresholds) {
  AnomalyReport report;

  // DF set on datagrams far below the typical MTU is semantically redundant.
  {
    AnomalyCheck check{.name = "df_on_small_datagrams",
                       .threshold = thresholds.df_small_fraction};
    std::size_t small = 0, small_df = 0;
    for (const auto& h : headers) {
      if (h.total_length < thresholds.small_packet_cutoff) {
        ++small;
        if (h.flag_df) ++small_df;
      }
    }
    if (small > 0) {
      check.evaluated = true;
      check.statistic = static_cast<double>(small_df) / static_cast<double>(small);
      check.flagged = check.statistic > check.threshold;
    }
    report.checks.push_back(std::move(check));
  }

  // OS stacks increment the identification field; covert payload jumps
  // around. Circular distance keeps the counter wrap small.
  {
    AnomalyCheck check{.name = "id_sequentiality", .threshold = thresholds.id_step_score};
    if (headers.size() >= 2) {
      double total = 0.0;
      for (std::size_t i = 1; i < headers.size(); ++i) {
        const int d = std::abs(static_cast<int>(headers[i].identification) -
                               static_cast<int>(headers[i - 1].identification));
        total += std::min(d, 65536 - d);
      }
      check.evaluated = true;
      check.statistic = total / static_cast<double>(headers.size() - 1);
      check.flagged = check.statistic > check.threshold;
    }
    report.checks.push_back(std::move(check));
  }

  // Chi-square of identification bytes against the uniform distribution,
  // 16 coarse bins. Benign counters concentrate and reject uniformity
  // (p below the significance level); covert random payload survives it.
  {
    AnomalyCheck check{.name = "id_uniformity", .threshold = thresholds.uniformity_p};
    if (headers.size() >= thresholds.uniformity_min_datagrams) {
      std::array<double, 16> bins{};
      for (const auto& h : headers) {
        bins[(h.identification >> 8) / 16] += 1.0;
        bins[(h.identification & 0xFF) / 16] += 1.0;
      }
      const double expected = static_cast<double>(headers.size() * 2) / 16.0;
      double chi2 = 0.0;
      for (double observed : bins) {
        chi2 += (observed - expected) * (observed - expected) / expected;
      }
      check.evaluated = true;
      check.statistic = chi2_survival(chi2, bins.size() - 1);
      check.flagged = check.statistic >= check.threshold;
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

std::vector<std::uint8_t> pkts_write(const std::vector<std::vector<std::uint8_t>>& records) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'P', 'K', 'T', 'S'});
  const auto count = static_cast<std::uint32_t>(records.size());
  out.push_back(static_cast<std::uint8_t>(count));
  out.push_back(static_cast<std::uint8_t>(count >> 8));
  out.push_back(static_cast<std::uint8_t>(count >> 16));
  out.push_back(static_cast<std::uint8_t>(count >> 24));
  for (const auto& record : records) {
    if (record.size() > 0xFFFF) {
      throw Malformed("transcript record exceeds 16-bit length prefix");
    }
    out.push_back(static_cast<std::uint8_t>(record.size()));
    out.push_back(static_cast<std::uint8_t>(record.size() >> 8));
    out.insert(out.end(), record.begin(), record.end());
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> pkts_read(std::span<const std::uint8_t> data) {
  if (data.size() < 8 || data[0] != 'P' || data[1] != 'K' || data[2] != 'T' ||
      data[3] != 'S') {
    throw Malformed("missing PKTS signature");
  }
  const std::uint32_t count = static_cast<std::uint32_t>(data[4]) |
                              (static_cast<std::uint32_t>(data[5]) << 8) |
                              (static_cast<std::uint32_t>(data[6]) << 16) |
                              (static_cast<std::uint32_t>(data[7]) << 24);
  std::vector<std::vector<std::uint8_t>> records;
  records.reserve(count);
  std::size_t at = 8;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (at + 2 > data.size()) {
      throw Malformed("record length prefix extends past end of file");
    }
    const std::size_t len = data[at] | (data[at + 1] << 8);
    at += 2;
    if (at + len > data.size()) {
      throw Malformed("record extends past end of file");
    }
    records.emplace_back(data.begin() + static_cast<std::ptrdiff_t>(at),
                         data.begin() + static_cast<std::ptrdiff_t>(at + len));
    at += len;
  }
  if (at != data.size()) {
    throw Malformed("trailing bytes after final record");
  }
  return records;
}

}  // namespace stegkit
