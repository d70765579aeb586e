#pragma once

// Random linear network coding over GF(2^s): source encoding, recoding at
// intermediate nodes, and incremental decoding that keeps the received
// equations in reduced row echelon form.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rlnc/galois.hpp"

namespace rlnc {

struct GenerationParams {
  std::size_t packets = 1;  // n, number of original packets
  std::size_t symbols = 1;  // m, symbols per packet
  Field field{8};

  /// Throws std::invalid_argument if n or m is zero.
  void validate() const;
};

/// Symbols needed to hold `byte_len` octets at s bits per symbol (rounded up).
std::size_t symbols_for_bytes(std::size_t byte_len, unsigned s) noexcept;

struct SourcePacket {
  std::vector<Symbol> payload;
  std::size_t pad_count = 0;  // trailing zero symbols appended

  friend bool operator==(const SourcePacket&, const SourcePacket&) = default;
};

struct CodedPacket {
  std::vector<Symbol> coefficients;  // encoding vector, length n
  std::vector<Symbol> payload;       // information vector, length m

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

/// Splits octets MSB-first into s-bit symbols and zero-fills up to m symbols.
/// Throws std::length_error when the input needs more than m symbols.
SourcePacket symbolize(std::span<const std::uint8_t> bytes, const GenerationParams& params);

/// Inverse of symbolize for the first `byte_len` octets.
std::vector<std::uint8_t> desymbolize(std::span<const Symbol> symbols, unsigned s,
                                      std::size_t byte_len);

/// Linear combination of the originals, symbol by symbol. The coefficient
/// vector becomes the packet's encoding vector.
CodedPacket encode(std::span<const SourcePacket> originals,
                   std::span<const Symbol> coefficients, const Field& field);

enum class ZeroVector { kReject, kAllow };

/// Coefficients drawn uniformly from the field. With kReject an all-zero
/// draw is discarded and the whole vector drawn again.
std::vector<Symbol> random_coefficients(std::size_t n, const Field& field,
                                        std::mt19937_64& rng,
                                        ZeroVector zeros = ZeroVector::kReject);

/// New combination of already-coded packets. The encoding vector of the
/// result is weights x F, where row j of F is received[j].coefficients, so it
/// stays expressed in terms of the original packets.
CodedPacket recode(std::span<const CodedPacket> received, std::span<const Symbol> weights,
                   const Field& field);

enum class ReceiveStatus { kInnovative, kRedundant };

struct DecodedPacket {
  std::size_t index;
  std::vector<Symbol> payload;

  friend bool operator==(const DecodedPacket&, const DecodedPacket&) = default;
};

/// Receiver side. Each stored row is an augmented (coefficients | payload)
/// vector; rows are kept in reduced row echelon form, ordered by pivot.
/// Single writer: receive() must not run concurrently with anything else.
class Decoder {
 public:
  explicit Decoder(GenerationParams params);

  /// Eliminates the packet against the stored rows. If a pivot survives the
  /// row is normalized, back-substituted into the stored rows and kept.
  /// Throws std::invalid_argument on dimension mismatch or out-of-field symbols.
  ReceiveStatus receive(const CodedPacket& packet);

  std::size_t rank() const noexcept { return rows_.size(); }
  bool is_complete() const noexcept { return rank() == params_.packets; }

  /// Originals whose row has a single nonzero coefficient, by index.
  std::vector<DecodedPacket> decoded_packets() const;

  std::size_t innovative_count() const noexcept { return innovative_; }
  std::size_t redundant_count() const noexcept { return redundant_; }

  const GenerationParams& params() const noexcept { return params_; }

  /// Stored rows, n + m symbols each, in pivot order.
  const std::vector<std::vector<Symbol>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

 private:
  GenerationParams params_;
  std::vector<std::vector<Symbol>> rows_;
  std::vector<std::size_t> pivots_;
  std::size_t innovative_ = 0;
  std::size_t redundant_ = 0;
};

}  // namespace rlnc
