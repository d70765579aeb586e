#pragma once

// Whole-buffer encode/decode through the container format, as used by the
// command-line tool.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rlnc/codec.hpp"
#include "rlnc/wire.hpp"

namespace rlnc {

struct EncodeOptions {
  unsigned field_bits = 8;
  std::size_t packets = 16;
  std::size_t redundancy = 20;
  std::uint64_t seed = 1;
};

/// Splits `data` into `packets` equal source packets (the last zero-padded)
/// and emits `redundancy` randomly coded packets. Throws std::invalid_argument
/// for empty input or bad options.
Container encode_bytes(std::span<const std::uint8_t> data, const EncodeOptions& options);

struct DecodeOutcome {
  bool complete = false;
  std::size_t rank = 0;
  std::size_t packets = 0;  // n
  std::size_t innovative = 0;
  std::size_t redundant = 0;
  std::vector<std::size_t> decodable;  // originals recoverable so far
  std::vector<std::uint8_t> data;      // de-padded original when complete
};

/// Feeds every packet to a decoder. `after_receive`, when set, sees the
/// decoder after each packet.
DecodeOutcome decode_container(const Container& container,
                               const std::function<void(const Decoder&)>& after_receive = {});

}  // namespace rlnc
