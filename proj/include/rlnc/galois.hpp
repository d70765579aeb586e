#pragma once

// Arithmetic over GF(2^s) for s in {1, 2, 4, 8, 16}.
//
// Elements are stored as 32-bit unsigned integers regardless of s. A field
// is described by its width and its reduced irreducible polynomial: the
// degree-s modulus with the x^s term removed, which is exactly what the
// shift-and-xor multiplier needs.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace rlnc {

using Symbol = std::uint32_t;

inline constexpr std::array<unsigned, 5> kSupportedWidths{1, 2, 4, 8, 16};

/// Widest field for which full multiplication tables may be built (64 KiB).
inline constexpr unsigned kMaxTableWidth = 8;

bool is_supported_width(unsigned s) noexcept;

/// Built-in reduced polynomial for a supported width.
Symbol builtin_reduced_polynomial(unsigned s);

/// Trial division of a full polynomial (bit i = coefficient of x^i) by every
/// polynomial of degree 1 .. deg/2.
bool is_irreducible(std::uint64_t full_polynomial) noexcept;

constexpr Symbol gf_add(Symbol a, Symbol b) noexcept { return a ^ b; }
constexpr Symbol gf_sub(Symbol a, Symbol b) noexcept { return a ^ b; }

enum class TableMode { kOff, kOn };

class Field {
 public:
  /// Throws std::invalid_argument for unsupported widths, or when tables
  /// are requested for s > kMaxTableWidth.
  explicit Field(unsigned s, TableMode mode = TableMode::kOff);

  unsigned bits() const noexcept { return bits_; }
  Symbol reduced_polynomial() const noexcept { return poly_; }
  std::uint32_t full_polynomial() const noexcept { return (1u << bits_) | poly_; }
  /// Number of elements, 2^s.
  std::uint32_t order() const noexcept { return mask_ + 1; }
  Symbol max_symbol() const noexcept { return mask_; }
  bool contains(Symbol a) const noexcept { return a <= mask_; }
  bool has_tables() const noexcept { return tables_ != nullptr; }

  /// Product through the table when present, otherwise on the fly.
  Symbol mul(Symbol a, Symbol b) const noexcept;

  /// Shift-and-xor multiplication: s rounds of conditional add, doubling and
  /// conditional reduction by the reduced polynomial.
  Symbol mul_on_the_fly(Symbol a, Symbol b) const noexcept {
    Symbol product = 0;
    for (unsigned i = 0; i < bits_; ++i) {
      if (b & 1u) product ^= a;
      const bool carry = (a & top_bit_) != 0;
      a = (a << 1) & mask_;
      if (carry) a ^= poly_;
      b >>= 1;
    }
    return product;
  }

  /// Throws std::domain_error for zero.
  Symbol inv(Symbol a) const;

  /// Itoh-Tsujii inversion: a^(2^s - 2) through the addition chain driven by
  /// the bits of s - 1. Never consults the tables.
  Symbol inv_addition_chain(Symbol a) const;

  /// Throws std::domain_error when b is zero.
  Symbol div(Symbol a, Symbol b) const;

  /// Row `a` of the multiplication table. Requires has_tables().
  std::span<const std::uint8_t> mul_table_row(Symbol a) const;

  friend bool operator==(const Field& lhs, const Field& rhs) noexcept {
    return lhs.bits_ == rhs.bits_ && lhs.poly_ == rhs.poly_;
  }

 private:
  struct Tables {
    std::vector<std::uint8_t> mul;  // order * order, row-major
    std::vector<std::uint8_t> inv;  // inv[0] unused
  };

  void build_tables();

  unsigned bits_;
  Symbol poly_;
  Symbol mask_;
  Symbol top_bit_;
  std::shared_ptr<const Tables> tables_;
};

// Row kernels. Lengths must match; both throw std::invalid_argument otherwise.

/// dst[i] += c * src[i]
void scale_add(std::span<Symbol> dst, Symbol c, std::span<const Symbol> src,
               const Field& field);

/// row[i] = c * row[i]
void scale(std::span<Symbol> row, Symbol c, const Field& field);

/// Field multiplications performed on the calling thread through mul(),
/// div() and the row kernels. Instrumentation only.
std::uint64_t multiplication_count() noexcept;
void reset_multiplication_count() noexcept;

}  // namespace rlnc
