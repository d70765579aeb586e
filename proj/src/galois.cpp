#include "rlnc/galois.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>

namespace rlnc {

namespace {

thread_local std::uint64_t g_multiplications = 0;

// Per-coefficient product lookup used by the row kernels when no full table
// exists: c * x == low[x & 0xff] ^ high[x >> 8] by linearity.
class ProductLookup {
 public:
  ProductLookup(const Field& field, Symbol c) {
    const std::uint32_t span = std::min<std::uint32_t>(field.order(), 256);
    for (std::uint32_t x = 0; x < span; ++x) {
      low_[x] = field.mul_on_the_fly(c, x);
    }
    if (field.bits() > 8) {
      for (std::uint32_t x = 0; x < 256; ++x) {
        high_[x] = field.mul_on_the_fly(c, x << 8);
      }
    }
  }

  Symbol operator()(Symbol x) const noexcept {
    return low_[x & 0xffu] ^ high_[(x >> 8) & 0xffu];
  }

 private:
  std::array<Symbol, 256> low_{};
  std::array<Symbol, 256> high_{};
};

constexpr std::size_t kLookupThreshold = 64;

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("row length mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

}  // namespace

bool is_supported_width(unsigned s) noexcept {
  return std::find(kSupportedWidths.begin(), kSupportedWidths.end(), s) !=
         kSupportedWidths.end();
}

Symbol builtin_reduced_polynomial(unsigned s) {
  switch (s) {
    case 1:
      return 0b1;  // x + 1
    case 2:
      return 0b11;  // x^2 + x + 1
    case 4:
      return 0b0011;  // x^4 + x + 1
    case 8:
      return 0b00011011;  // x^8 + x^4 + x^3 + x + 1
    case 16:
      return 0b0001000000001011;  // x^16 + x^12 + x^3 + x + 1
    default: {
      std::ostringstream msg;
      msg << "unsupported field width " << s << "; allowed widths are";
      for (unsigned w : kSupportedWidths) msg << ' ' << w;
      throw std::invalid_argument(msg.str());
    }
  }
}

bool is_irreducible(std::uint64_t full_polynomial) noexcept {
  if (full_polynomial < 2) return false;
  const int degree = static_cast<int>(std::bit_width(full_polynomial)) - 1;
  for (std::uint64_t divisor = 2; static_cast<int>(std::bit_width(divisor)) - 1 <= degree / 2;
       ++divisor) {
    const int divisor_degree = static_cast<int>(std::bit_width(divisor)) - 1;
    std::uint64_t rem = full_polynomial;
    for (int shift = degree - divisor_degree; shift >= 0; --shift) {
      if (rem & (std::uint64_t{1} << (shift + divisor_degree))) {
        rem ^= divisor << shift;
      }
    }
    if (rem == 0) return false;
  }
  return true;
}

Field::Field(unsigned s, TableMode mode)
    : bits_(s),
      poly_(builtin_reduced_polynomial(s)),
      mask_(static_cast<Symbol>((std::uint64_t{1} << s) - 1)),
      top_bit_(Symbol{1} << (s - 1)) {
  if (mode == TableMode::kOn) {
    if (s > kMaxTableWidth) {
      throw std::invalid_argument("multiplication tables are only offered for s <= " +
                                  std::to_string(kMaxTableWidth));
    }
    build_tables();
  }
}

void Field::build_tables() {
  auto tables = std::make_shared<Tables>();
  const std::uint32_t n = order();
  tables->mul.assign(std::size_t{n} * n, 0);
  tables->inv.assign(n, 0);

  // Rows are filled from the doubling sequence of `a` (linearity in b), an
  // independent route from the bit-serial multiplier they are checked against.
  for (std::uint32_t a = 0; a < n; ++a) {
    std::uint8_t* row = tables->mul.data() + std::size_t{a} * n;
    Symbol power = a;
    for (unsigned k = 0; k < bits_; ++k) {
      row[1u << k] = static_cast<std::uint8_t>(power);
      const bool carry = (power & top_bit_) != 0;
      power = (power << 1) & mask_;
      if (carry) power ^= poly_;
    }
    for (std::uint32_t b = 3; b < n; ++b) {
      if (std::has_single_bit(b)) continue;
      row[b] = row[b & (b - 1)] ^ row[b & (~b + 1)];
    }
    for (std::uint32_t b = 0; b < n; ++b) {
      if (row[b] != mul_on_the_fly(a, b)) {
        throw std::logic_error("multiplication table disagrees with on-the-fly product");
      }
    }
  }

  // Inverse of a: the column holding 1 in row a.
  for (std::uint32_t a = 1; a < n; ++a) {
    const std::uint8_t* row = tables->mul.data() + std::size_t{a} * n;
    const auto* hit = std::find(row, row + n, std::uint8_t{1});
    const auto inverse = static_cast<Symbol>(hit - row);
    if (hit == row + n || inverse != inv_addition_chain(a)) {
      throw std::logic_error("inverse table disagrees with addition-chain inversion");
    }
    tables->inv[a] = static_cast<std::uint8_t>(inverse);
  }
  tables_ = std::move(tables);
}

Symbol Field::mul(Symbol a, Symbol b) const noexcept {
  ++g_multiplications;
  if (tables_) return tables_->mul[std::size_t{a} * order() + b];
  return mul_on_the_fly(a, b);
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw std::domain_error("zero is not invertible");
  if (tables_) return tables_->inv[a];
  return inv_addition_chain(a);
}

Symbol Field::inv_addition_chain(Symbol a) const {
  if (a == 0) throw std::domain_error("zero is not invertible");
  // GF(2) has a single nonzero element and s - 1 == 0 has no leading bit.
  if (bits_ == 1) return 1;

  const unsigned exponent = bits_ - 1;
  const int top = std::bit_width(exponent) - 1;
  // Invariant: c == a^(2^k - 1).
  Symbol c = a;
  unsigned k = 1;
  for (int i = top - 1; i >= 0; --i) {
    Symbol b = c;
    for (unsigned j = 0; j < k; ++j) b = mul_on_the_fly(b, b);
    c = mul_on_the_fly(c, b);
    k *= 2;
    if ((exponent >> i) & 1u) {
      c = mul_on_the_fly(c, c);
      c = mul_on_the_fly(c, a);
      ++k;
    }
  }
  return mul_on_the_fly(c, c);
}

Symbol Field::div(Symbol a, Symbol b) const {
  if (b == 0) throw std::domain_error("division by zero");
  return mul(a, inv(b));
}

std::span<const std::uint8_t> Field::mul_table_row(Symbol a) const {
  if (!tables_) throw std::logic_error("field has no multiplication table");
  if (!contains(a)) throw std::out_of_range("symbol outside the field");
  return {tables_->mul.data() + std::size_t{a} * order(), order()};
}

void scale_add(std::span<Symbol> dst, Symbol c, std::span<const Symbol> src,
               const Field& field) {
  check_lengths(dst.size(), src.size());
  if (c == 0) return;
  g_multiplications += src.size();
  if (c == 1) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
  } else if (field.has_tables()) {
    const auto row = field.mul_table_row(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= row[src[i]];
  } else if (src.size() >= kLookupThreshold) {
    const ProductLookup product(field, c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= product(src[i]);
  } else {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] ^= field.mul_on_the_fly(c, src[i]);
    }
  }
}

void scale(std::span<Symbol> row, Symbol c, const Field& field) {
  if (c == 1) return;
  g_multiplications += row.size();
  if (c == 0) {
    std::fill(row.begin(), row.end(), 0);
  } else if (field.has_tables()) {
    const auto table = field.mul_table_row(c);
    for (auto& x : row) x = table[x];
  } else if (row.size() >= kLookupThreshold) {
    const ProductLookup product(field, c);
    for (auto& x : row) x = product(x);
  } else {
    for (auto& x : row) x = field.mul_on_the_fly(c, x);
  }
}

std::uint64_t multiplication_count() noexcept { return g_multiplications; }

void reset_multiplication_count() noexcept { g_multiplications = 0; }

}  // namespace rlnc
