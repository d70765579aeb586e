#pragma once

// Binary format for coded packets and generation containers.
//
// Packet: the encoding vector then the payload, each a dense MSB-first
// bit-pack of s-bit symbols zero-padded to an octet boundary, so a packet
// occupies ceil(n*s/8) + ceil(m*s/8) octets.
//
// Container (all integers big-endian):
//   "NCP1" | version u8 = 1 | s u8 | n u16 | m u32 | original_byte_len u64
//   then per packet: length u32 | packet octets

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "rlnc/codec.hpp"

namespace rlnc {

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated, oversized or unrecognized input.
class FramingError : public WireError {
 public:
  using WireError::WireError;
};

/// Well-framed input with inconsistent contents (nonzero padding, bad field).
class IntegrityError : public WireError {
 public:
  using WireError::WireError;
};

inline constexpr std::array<char, 4> kContainerMagic{'N', 'C', 'P', '1'};
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kContainerHeaderSize = 20;
inline constexpr std::size_t kRecordPrefixSize = 4;

std::size_t packed_size(std::size_t count, unsigned s) noexcept;

/// Octets occupied by one serialized packet.
std::size_t packet_size(const GenerationParams& params) noexcept;

std::vector<std::uint8_t> write_packet(const CodedPacket& packet, const GenerationParams& params);

CodedPacket read_packet(std::span<const std::uint8_t> bytes, const GenerationParams& params);

struct ContainerHeader {
  unsigned field_bits = 8;
  std::uint16_t packets = 1;
  std::uint32_t symbols = 1;
  std::uint64_t original_byte_len = 0;

  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

std::vector<std::uint8_t> write_header(const ContainerHeader& header);

/// Checks magic, version, width and symbol capacity.
ContainerHeader read_header(std::span<const std::uint8_t> bytes);

struct Container {
  ContainerHeader header;
  std::vector<CodedPacket> packets;

  /// Generation parameters implied by the header; tables on for s <= 8.
  GenerationParams params() const;
};

std::vector<std::uint8_t> write_container(const Container& container);
Container read_container(std::span<const std::uint8_t> bytes);

}  // namespace rlnc
