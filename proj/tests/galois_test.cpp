#include "rlnc/galois.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace rlnc {
namespace {

TEST(FieldTest, BuiltinPolynomials) {
  EXPECT_EQ(Field(8).reduced_polynomial(), 0b00011011u);
  EXPECT_EQ(Field(8).full_polynomial(), 0b100011011u);
  EXPECT_EQ(Field(1).reduced_polynomial(), 1u);
  EXPECT_EQ(Field(4).reduced_polynomial(), 0b0011u);
  EXPECT_EQ(Field(2).reduced_polynomial(), 0b11u);
  EXPECT_EQ(Field(16).full_polynomial(), 0x1100Bu);
}

TEST(FieldTest, UnsupportedWidthNamesAllowedOnes) {
  for (unsigned s : {0u, 3u, 5u, 7u, 12u, 32u}) {
    try {
      Field f(s);
      FAIL() << "accepted s=" << s;
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find("1 2 4 8 16"), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(Field(16, TableMode::kOn), std::invalid_argument);
}

TEST(FieldTest, BuiltinPolynomialsAreIrreducible) {
  for (unsigned s : {1u, 2u, 4u, 8u}) {
    const Field f(s);
    EXPECT_TRUE(oracle::irreducible_by_products(f.full_polynomial(), s)) << "s=" << s;
    EXPECT_TRUE(is_irreducible(f.full_polynomial())) << "s=" << s;
  }
  // s = 16: trial division by every polynomial of degree 1..8.
  const std::uint32_t full = Field(16).full_polynomial();
  for (std::uint64_t d = 2; d < 512; ++d) {
    ASSERT_NE(oracle::poly_mod(full, d), 0u) << "divisor " << d;
  }
  EXPECT_TRUE(is_irreducible(full));
}

TEST(FieldTest, IrreducibilityCheckAgreesWithProductEnumeration) {
  for (unsigned degree = 1; degree <= 6; ++degree) {
    for (std::uint32_t low = 0; low < (1u << degree); ++low) {
      const std::uint32_t full = (1u << degree) | low;
      EXPECT_EQ(is_irreducible(full), oracle::irreducible_by_products(full, degree)) << full;
    }
  }
  EXPECT_FALSE(is_irreducible(0b10001)); // x^4 + 1 = (x + 1)^4
}

TEST(GaloisTest, AddAndSub) {
  EXPECT_EQ(gf_add(10, 41), 35u);
  EXPECT_EQ(gf_sub(35, 10), 41u);
  for (Symbol a = 0; a < 256; ++a) {
    EXPECT_EQ(gf_add(a, 0), a);
    EXPECT_EQ(gf_add(a, a), 0u);
    EXPECT_EQ(gf_sub(a, 0), a);
    for (Symbol b = 0; b < 256; b += 17) {
      EXPECT_EQ(gf_sub(gf_add(a, b), a), b);
      EXPECT_EQ(gf_sub(a, b), gf_add(a, b));
    }
  }
}

TEST(GaloisTest, WorkedExamples) {
  const Field f8(8);
  EXPECT_EQ(f8.mul(10, 41), 1u);
  EXPECT_EQ(f8.inv(10), 41u);
  EXPECT_EQ(f8.div(1, 10), 41u);
  EXPECT_EQ(Field(4).mul(9, 9), 13u);
  EXPECT_EQ(Field(4).inv(2), 9u);
  EXPECT_EQ(oracle::poly_mul_mod(9, 9, 0b10011, 4), 13u);
  EXPECT_EQ(oracle::brute_inverse(2, 0b10011, 4), 9u);
}

TEST(GaloisTest, BinaryFieldMultiplicationIsAnd) {
  const Field f(1);
  for (Symbol a = 0; a < 2; ++a) {
    for (Symbol b = 0; b < 2; ++b) EXPECT_EQ(f.mul(a, b), a & b);
  }
  EXPECT_EQ(f.inv(1), 1u);
}

TEST(GaloisTest, IdentityAndAnnihilator) {
  for (unsigned s : kSupportedWidths) {
    const Field f(s);
    for (Symbol a = 0; a <= std::min<Symbol>(f.max_symbol(), 1000); ++a) {
      EXPECT_EQ(f.mul(a, 1), a);
      EXPECT_EQ(f.mul(a, 0), 0u);
      if (a != 0) {
        EXPECT_EQ(f.div(a, a), 1u);
        EXPECT_EQ(f.div(0, a), 0u);
      }
    }
    EXPECT_EQ(f.inv(1), 1u);
  }
}

TEST(GaloisTest, ZeroHandling) {
  const Field f(8);
  EXPECT_THROW(f.inv(0), std::domain_error);
  EXPECT_THROW(f.inv_addition_chain(0), std::domain_error);
  EXPECT_THROW(f.div(3, 0), std::domain_error);
  try {
    f.inv(0);
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "zero is not invertible");
  }
}

TEST(GaloisTest, MultiplicationMatchesPolynomialOracle) {
  for (unsigned s : {1u, 2u, 4u, 8u}) {
    const Field f(s);
    for (Symbol a = 0; a < f.order(); ++a) {
      for (Symbol b = 0; b < f.order(); ++b) {
        ASSERT_EQ(f.mul_on_the_fly(a, b), oracle::poly_mul_mod(a, b, f.full_polynomial(), s))
            << "s=" << s << " a=" << a << " b=" << b;
      }
    }
  }
  const Field f16(16);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Symbol> draw(0, 0xffff);
  for (int i = 0; i < 100000; ++i) {
    const Symbol a = draw(rng);
    const Symbol b = draw(rng);
    const Symbol p = f16.mul(a, b);
    ASSERT_LE(p, 0xffffu);
    ASSERT_EQ(p, oracle::poly_mul_mod(a, b, f16.full_polynomial(), 16));
  }
}

TEST(GaloisTest, InversionMatchesExhaustiveSearch) {
  for (unsigned s : {2u, 4u, 8u}) {
    const Field f(s);
    for (Symbol a = 1; a < f.order(); ++a) {
      const Symbol inv = f.inv_addition_chain(a);
      ASSERT_EQ(inv, oracle::brute_inverse(a, f.full_polynomial(), s)) << "s=" << s << " a=" << a;
      ASSERT_EQ(f.mul(a, inv), 1u);
    }
  }
  const Field f16(16);
  for (Symbol a = 1; a < f16.order(); a += 97) {
    ASSERT_EQ(f16.mul(a, f16.inv(a)), 1u) << a;
  }
}

TEST(GaloisTest, TablesAgreeWithOnTheFly) {
  for (unsigned s : {1u, 2u, 4u, 8u}) {
    const Field tabled(s, TableMode::kOn);
    const Field plain(s);
    ASSERT_TRUE(tabled.has_tables());
    ASSERT_EQ(tabled, plain);
    for (Symbol a = 0; a < tabled.order(); ++a) {
      const auto row = tabled.mul_table_row(a);
      for (Symbol b = 0; b < tabled.order(); ++b) {
        ASSERT_EQ(row[b], plain.mul_on_the_fly(a, b));
        ASSERT_EQ(tabled.mul(a, b), plain.mul(a, b));
      }
      if (a != 0) {
        ASSERT_EQ(tabled.inv(a), plain.inv(a));
      }
    }
  }
  EXPECT_THROW(Field(8).mul_table_row(1), std::logic_error);
}

TEST(GaloisTest, FieldAxiomsExhaustiveGF16) {
  const Field f(4);
  for (Symbol a = 0; a < 16; ++a) {
    for (Symbol b = 0; b < 16; ++b) {
      ASSERT_EQ(f.mul(a, b), f.mul(b, a));
      ASSERT_EQ(gf_add(a, b), gf_add(b, a));
      for (Symbol c = 0; c < 16; ++c) {
        ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        ASSERT_EQ(gf_add(gf_add(a, b), c), gf_add(a, gf_add(b, c)));
        ASSERT_EQ(f.mul(a, gf_add(b, c)), gf_add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST(RowKernelTest, ScaleAddMatchesElementwise) {
  std::mt19937_64 rng(3);
  for (unsigned s : kSupportedWidths) {
    for (auto mode : {TableMode::kOff, TableMode::kOn}) {
      if (mode == TableMode::kOn && s > kMaxTableWidth) continue;
      const Field f(s, mode);
      std::uniform_int_distribution<Symbol> draw(0, f.max_symbol());
      for (std::size_t len : {1u, 5u, 63u, 64u, 300u}) {
        std::vector<Symbol> dst(len), src(len);
        for (auto& x : dst) x = draw(rng);
        for (auto& x : src) x = draw(rng);
        const Symbol c = draw(rng);
        auto expected = dst;
        for (std::size_t i = 0; i < len; ++i) expected[i] ^= f.mul_on_the_fly(c, src[i]);
        scale_add(dst, c, src, f);
        ASSERT_EQ(dst, expected) << "s=" << s << " len=" << len;

        auto scaled = src;
        scale(scaled, c, f);
        for (std::size_t i = 0; i < len; ++i) ASSERT_EQ(scaled[i], f.mul_on_the_fly(c, src[i]));
      }
    }
  }
  std::vector<Symbol> a(3), b(4);
  EXPECT_THROW(scale_add(a, 1, b, Field(8)), std::invalid_argument);
}

TEST(RowKernelTest, CountsMultiplications) {
  const Field f(8);
  reset_multiplication_count();
  std::vector<Symbol> a(10, 1), b(10, 2);
  scale_add(a, 3, b, f);
  EXPECT_EQ(multiplication_count(), 10u);
  scale_add(a, 0, b, f);
  EXPECT_EQ(multiplication_count(), 10u);
  f.mul(2, 3);
  EXPECT_EQ(multiplication_count(), 11u);
}

}  // namespace
}  // namespace rlnc
