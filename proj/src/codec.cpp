#include "rlnc/codec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bitpack.hpp"

namespace rlnc {

namespace {

bool all_zero(std::span<const Symbol> v) {
  return std::all_of(v.begin(), v.end(), [](Symbol x) { return x == 0; });
}

void check_in_field(std::span<const Symbol> v, const Field& field, const char* what) {
  for (const Symbol x : v) {
    if (!field.contains(x)) {
      throw std::invalid_argument(std::string(what) + " holds a symbol outside GF(2^" +
                                  std::to_string(field.bits()) + ")");
    }
  }
}

}  // namespace

void GenerationParams::validate() const {
  if (packets == 0) throw std::invalid_argument("generation needs at least one packet");
  if (symbols == 0) throw std::invalid_argument("packets need at least one symbol");
}

std::size_t symbols_for_bytes(std::size_t byte_len, unsigned s) noexcept {
  return (byte_len * 8 + s - 1) / s;
}

SourcePacket symbolize(std::span<const std::uint8_t> bytes, const GenerationParams& params) {
  const unsigned s = params.field.bits();
  const std::size_t used = symbols_for_bytes(bytes.size(), s);
  if (used > params.symbols) {
    throw std::length_error(std::to_string(bytes.size()) + " bytes do not fit in " +
                            std::to_string(params.symbols) + " symbols of " +
                            std::to_string(s) + " bits");
  }
  SourcePacket packet;
  packet.payload.assign(params.symbols, 0);
  packet.pad_count = params.symbols - used;

  // The last used symbol may straddle the end of the input; widen the input
  // with zero octets so it reads cleanly.
  std::vector<std::uint8_t> padded(detail::packed_bytes(used, s), 0);
  std::copy(bytes.begin(), bytes.end(), padded.begin());
  detail::unpack_into(padded, s, std::span(packet.payload).first(used));
  return packet;
}

std::vector<std::uint8_t> desymbolize(std::span<const Symbol> symbols, unsigned s,
                                      std::size_t byte_len) {
  if (symbols.size() * s < byte_len * 8) {
    throw std::length_error("not enough symbols for the requested byte length");
  }
  const std::size_t used = symbols_for_bytes(byte_len, s);
  std::vector<std::uint8_t> out(detail::packed_bytes(used, s), 0);
  detail::pack_into(symbols.first(used), s, out);
  out.resize(byte_len);
  return out;
}

CodedPacket encode(std::span<const SourcePacket> originals,
                   std::span<const Symbol> coefficients, const Field& field) {
  if (originals.empty()) throw std::invalid_argument("nothing to encode");
  if (coefficients.size() != originals.size()) {
    throw std::invalid_argument("need one coefficient per original packet");
  }
  if (all_zero(coefficients)) throw std::invalid_argument("all-zero coefficient vector");
  check_in_field(coefficients, field, "coefficient vector");

  const std::size_t m = originals.front().payload.size();
  CodedPacket out;
  out.coefficients.assign(coefficients.begin(), coefficients.end());
  out.payload.assign(m, 0);
  for (std::size_t i = 0; i < originals.size(); ++i) {
    if (originals[i].payload.size() != m) {
      throw std::invalid_argument("original packets differ in length");
    }
    scale_add(out.payload, coefficients[i], originals[i].payload, field);
  }
  return out;
}

std::vector<Symbol> random_coefficients(std::size_t n, const Field& field,
                                        std::mt19937_64& rng, ZeroVector zeros) {
  if (n == 0) throw std::invalid_argument("coefficient vector must be nonempty");
  std::uniform_int_distribution<Symbol> draw(0, field.max_symbol());
  std::vector<Symbol> out(n);
  do {
    for (auto& x : out) x = draw(rng);
  } while (zeros == ZeroVector::kReject && all_zero(out));
  return out;
}

CodedPacket recode(std::span<const CodedPacket> received, std::span<const Symbol> weights,
                   const Field& field) {
  if (received.empty()) throw std::invalid_argument("nothing to recode");
  if (weights.size() != received.size()) {
    throw std::invalid_argument("need one weight per received packet");
  }
  if (all_zero(weights)) throw std::invalid_argument("all-zero weight vector");
  check_in_field(weights, field, "weight vector");

  const std::size_t n = received.front().coefficients.size();
  const std::size_t m = received.front().payload.size();
  CodedPacket out;
  out.coefficients.assign(n, 0);
  out.payload.assign(m, 0);
  for (std::size_t j = 0; j < received.size(); ++j) {
    const auto& in = received[j];
    if (in.coefficients.size() != n || in.payload.size() != m) {
      throw std::invalid_argument("received packets differ in dimensions");
    }
    scale_add(out.coefficients, weights[j], in.coefficients, field);
    scale_add(out.payload, weights[j], in.payload, field);
  }
  return out;
}

Decoder::Decoder(GenerationParams params) : params_(std::move(params)) {
  params_.validate();
  rows_.reserve(params_.packets);
  pivots_.reserve(params_.packets);
}

ReceiveStatus Decoder::receive(const CodedPacket& packet) {
  const std::size_t n = params_.packets;
  const std::size_t m = params_.symbols;
  const Field& field = params_.field;
  if (packet.coefficients.size() != n || packet.payload.size() != m) {
    throw std::invalid_argument("packet dimensions do not match the decoder");
  }
  check_in_field(packet.coefficients, field, "encoding vector");
  check_in_field(packet.payload, field, "payload");

  if (is_complete()) {
    ++redundant_;
    return ReceiveStatus::kRedundant;
  }

  std::vector<Symbol> row;
  row.reserve(n + m);
  row.insert(row.end(), packet.coefficients.begin(), packet.coefficients.end());
  row.insert(row.end(), packet.payload.begin(), packet.payload.end());

  // Stored rows are zero left of their pivot, so only the tail matters.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t p = pivots_[i];
    const Symbol c = row[p];
    if (c == 0) continue;
    scale_add(std::span(row).subspan(p), c, std::span<const Symbol>(rows_[i]).subspan(p),
              field);
  }

  const auto lead = std::find_if(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n),
                                 [](Symbol x) { return x != 0; });
  if (lead == row.begin() + static_cast<std::ptrdiff_t>(n)) {
    ++redundant_;
    return ReceiveStatus::kRedundant;
  }
  const auto pivot = static_cast<std::size_t>(lead - row.begin());
  scale(std::span(row).subspan(pivot), field.inv(*lead), field);

  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Symbol c = rows_[i][pivot];
    if (c == 0) continue;
    scale_add(std::span(rows_[i]).subspan(pivot), c,
              std::span<const Symbol>(row).subspan(pivot), field);
  }

  const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const auto offset = at - pivots_.begin();
  pivots_.insert(at, pivot);
  rows_.insert(rows_.begin() + offset, std::move(row));
  ++innovative_;
  return ReceiveStatus::kInnovative;
}

std::vector<DecodedPacket> Decoder::decoded_packets() const {
  const std::size_t n = params_.packets;
  std::vector<DecodedPacket> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    const auto coeffs = std::span<const Symbol>(row).first(n);
    const auto nonzero = std::count_if(coeffs.begin(), coeffs.end(),
                                       [](Symbol x) { return x != 0; });
    if (nonzero != 1) continue;
    out.push_back({pivots_[i], std::vector<Symbol>(row.begin() + static_cast<std::ptrdiff_t>(n),
                                                   row.end())});
  }
  return out;
}

}  // namespace rlnc
