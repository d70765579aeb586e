#pragma once

// MSB-first packing of s-bit symbols into octets, shared by symbolization
// and the wire format.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rlnc/galois.hpp"

namespace rlnc::detail {

constexpr std::size_t packed_bytes(std::size_t count, unsigned s) noexcept {
  return (count * s + 7) / 8;
}

inline void pack_into(std::span<const Symbol> symbols, unsigned s,
                      std::span<std::uint8_t> out) {
  if (s == 8) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(symbols[i]);
    }
    return;
  }
  if (s == 16) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      out[2 * i] = static_cast<std::uint8_t>(symbols[i] >> 8);
      out[2 * i + 1] = static_cast<std::uint8_t>(symbols[i]);
    }
    return;
  }
  std::size_t bit = 0;
  for (const Symbol sym : symbols) {
    for (int b = static_cast<int>(s) - 1; b >= 0; --b, ++bit) {
      if ((sym >> b) & 1u) out[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    }
  }
}

/// Reads `count` symbols; `in` must hold at least packed_bytes(count, s).
inline void unpack_into(std::span<const std::uint8_t> in, unsigned s,
                        std::span<Symbol> symbols) {
  if (s == 8) {
    for (std::size_t i = 0; i < symbols.size(); ++i) symbols[i] = in[i];
    return;
  }
  if (s == 16) {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      symbols[i] = (Symbol{in[2 * i]} << 8) | in[2 * i + 1];
    }
    return;
  }
  std::size_t bit = 0;
  for (auto& sym : symbols) {
    Symbol value = 0;
    for (unsigned b = 0; b < s; ++b, ++bit) {
      value = (value << 1) | ((in[bit / 8] >> (7 - bit % 8)) & 1u);
    }
    sym = value;
  }
}

/// True when every bit past `used_bits` in the final octet is zero.
inline bool padding_is_zero(std::span<const std::uint8_t> bytes, std::size_t used_bits) {
  if (used_bits % 8 == 0 || bytes.empty()) return true;
  const std::uint8_t tail_mask = static_cast<std::uint8_t>(0xffu >> (used_bits % 8));
  return (bytes.back() & tail_mask) == 0;
}

}  // namespace rlnc::detail
