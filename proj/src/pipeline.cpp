#include "rlnc/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace rlnc {

namespace {

std::size_t packet_bytes(std::uint64_t total, std::size_t packets) {
  return static_cast<std::size_t>((total + packets - 1) / packets);
}

}  // namespace

Container encode_bytes(std::span<const std::uint8_t> data, const EncodeOptions& options) {
  if (data.empty()) throw std::invalid_argument("input is empty");
  if (options.packets == 0 || options.packets > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("packet count must be in [1, 65535]");
  }
  if (options.redundancy == 0) throw std::invalid_argument("redundancy must be positive");

  const unsigned s = options.field_bits;
  const Field field(s, s <= kMaxTableWidth ? TableMode::kOn : TableMode::kOff);
  const std::size_t chunk = packet_bytes(data.size(), options.packets);
  const std::size_t m = symbols_for_bytes(chunk, s);
  if (m > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("packets too large for the container format");
  }
  const GenerationParams params{options.packets, m, field};

  std::vector<SourcePacket> originals;
  originals.reserve(options.packets);
  for (std::size_t i = 0; i < options.packets; ++i) {
    const std::size_t begin = std::min(data.size(), i * chunk);
    const std::size_t end = std::min(data.size(), begin + chunk);
    originals.push_back(symbolize(data.subspan(begin, end - begin), params));
  }

  Container container;
  container.header = {s, static_cast<std::uint16_t>(options.packets),
                      static_cast<std::uint32_t>(m), data.size()};
  std::mt19937_64 rng(options.seed);
  container.packets.reserve(options.redundancy);
  for (std::size_t k = 0; k < options.redundancy; ++k) {
    const auto coefficients = random_coefficients(options.packets, field, rng);
    container.packets.push_back(encode(originals, coefficients, field));
  }
  return container;
}

DecodeOutcome decode_container(const Container& container,
                               const std::function<void(const Decoder&)>& after_receive) {
  const GenerationParams params = container.params();
  const unsigned s = params.field.bits();
  const std::size_t chunk = packet_bytes(container.header.original_byte_len, params.packets);
  if (params.symbols * s < chunk * 8) {
    throw IntegrityError("packets cannot hold their share of the original length");
  }

  Decoder decoder(params);
  for (const auto& packet : container.packets) {
    decoder.receive(packet);
    if (after_receive) after_receive(decoder);
  }

  DecodeOutcome outcome;
  outcome.complete = decoder.is_complete();
  outcome.rank = decoder.rank();
  outcome.packets = params.packets;
  outcome.innovative = decoder.innovative_count();
  outcome.redundant = decoder.redundant_count();
  const auto decoded = decoder.decoded_packets();
  for (const auto& d : decoded) outcome.decodable.push_back(d.index);

  if (outcome.complete) {
    const auto total = static_cast<std::size_t>(container.header.original_byte_len);
    outcome.data.reserve(total);
    for (const auto& d : decoded) {
      const std::size_t take = std::min(chunk, total - outcome.data.size());
      const auto bytes = desymbolize(d.payload, s, take);
      outcome.data.insert(outcome.data.end(), bytes.begin(), bytes.end());
    }
  }
  return outcome;
}

}  // namespace rlnc
