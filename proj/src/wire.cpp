#include "rlnc/wire.hpp"

#include <algorithm>
#include <string>

#include "bitpack.hpp"

namespace rlnc {

namespace {

template <typename T>
void put_be(std::vector<std::uint8_t>& out, T value) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(value >> shift));
  }
}

template <typename T>
T get_be(std::span<const std::uint8_t> in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value = static_cast<T>((value << 8) | in[i]);
  return value;
}

void write_section(std::span<const Symbol> symbols, std::size_t expected, const Field& field,
                   std::vector<std::uint8_t>& out) {
  if (symbols.size() != expected) {
    throw std::invalid_argument("packet section length does not match generation parameters");
  }
  for (const Symbol x : symbols) {
    if (!field.contains(x)) throw std::invalid_argument("symbol outside the field");
  }
  const std::size_t start = out.size();
  out.resize(start + detail::packed_bytes(symbols.size(), field.bits()), 0);
  detail::pack_into(symbols, field.bits(), std::span(out).subspan(start));
}

std::vector<Symbol> read_section(std::span<const std::uint8_t> bytes, std::size_t count,
                                 unsigned s, const char* name) {
  if (!detail::padding_is_zero(bytes, count * s)) {
    throw IntegrityError(std::string("nonzero padding bits in ") + name);
  }
  std::vector<Symbol> symbols(count);
  detail::unpack_into(bytes, s, symbols);
  return symbols;
}

}  // namespace

std::size_t packed_size(std::size_t count, unsigned s) noexcept {
  return detail::packed_bytes(count, s);
}

std::size_t packet_size(const GenerationParams& params) noexcept {
  const unsigned s = params.field.bits();
  return packed_size(params.packets, s) + packed_size(params.symbols, s);
}

std::vector<std::uint8_t> write_packet(const CodedPacket& packet, const GenerationParams& params) {
  std::vector<std::uint8_t> out;
  out.reserve(packet_size(params));
  write_section(packet.coefficients, params.packets, params.field, out);
  write_section(packet.payload, params.symbols, params.field, out);
  return out;
}

CodedPacket read_packet(std::span<const std::uint8_t> bytes, const GenerationParams& params) {
  const std::size_t expected = packet_size(params);
  if (bytes.size() != expected) {
    throw FramingError("packet is " + std::to_string(bytes.size()) + " octets, expected " +
                       std::to_string(expected));
  }
  const unsigned s = params.field.bits();
  const std::size_t vector_bytes = packed_size(params.packets, s);
  CodedPacket packet;
  packet.coefficients =
      read_section(bytes.first(vector_bytes), params.packets, s, "encoding vector");
  packet.payload = read_section(bytes.subspan(vector_bytes), params.symbols, s, "payload");
  return packet;
}

std::vector<std::uint8_t> write_header(const ContainerHeader& header) {
  std::vector<std::uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
  out.reserve(kContainerHeaderSize);
  out.push_back(kContainerVersion);
  out.push_back(static_cast<std::uint8_t>(header.field_bits));
  put_be(out, header.packets);
  put_be(out, header.symbols);
  put_be(out, header.original_byte_len);
  return out;
}

ContainerHeader read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kContainerHeaderSize) throw FramingError("truncated container header");
  if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin())) {
    throw FramingError("not an NCP1 container");
  }
  if (bytes[4] != kContainerVersion) {
    throw FramingError("unsupported container version " + std::to_string(bytes[4]));
  }
  ContainerHeader header;
  header.field_bits = bytes[5];
  header.packets = get_be<std::uint16_t>(bytes.subspan(6));
  header.symbols = get_be<std::uint32_t>(bytes.subspan(8));
  header.original_byte_len = get_be<std::uint64_t>(bytes.subspan(12));

  if (!is_supported_width(header.field_bits)) {
    throw IntegrityError("unsupported field width " + std::to_string(header.field_bits));
  }
  if (header.packets == 0 || header.symbols == 0) {
    throw IntegrityError("container declares an empty generation");
  }
  // m * s >= 8 * len / n, kept in integers.
  const std::uint64_t capacity_bits =
      std::uint64_t{header.symbols} * header.field_bits * header.packets;
  if (header.original_byte_len > capacity_bits / 8) {
    throw IntegrityError("declared symbols cannot hold the original length");
  }
  return header;
}

GenerationParams Container::params() const {
  const unsigned s = header.field_bits;
  return {header.packets, header.symbols,
          Field(s, s <= kMaxTableWidth ? TableMode::kOn : TableMode::kOff)};
}

std::vector<std::uint8_t> write_container(const Container& container) {
  const GenerationParams params = container.params();
  std::vector<std::uint8_t> out = write_header(container.header);
  out.reserve(out.size() +
              container.packets.size() * (kRecordPrefixSize + packet_size(params)));
  for (const auto& packet : container.packets) {
    const auto record = write_packet(packet, params);
    put_be(out, static_cast<std::uint32_t>(record.size()));
    out.insert(out.end(), record.begin(), record.end());
  }
  return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
  Container container;
  container.header = read_header(bytes);
  const GenerationParams params = container.params();
  std::size_t pos = kContainerHeaderSize;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kRecordPrefixSize) throw FramingError("truncated record length");
    const auto length = get_be<std::uint32_t>(bytes.subspan(pos));
    pos += kRecordPrefixSize;
    if (bytes.size() - pos < length) throw FramingError("truncated packet record");
    container.packets.push_back(read_packet(bytes.subspan(pos, length), params));
    pos += length;
  }
  return container;
}

}  // namespace rlnc
