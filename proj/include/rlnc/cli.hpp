#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rlnc/galois.hpp"

namespace rlnc::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kRankShortfall = 3,
  kFormatError = 4,
};

/// Runs the tool. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Full multiplication table with row and column labels. Requires tables.
void write_mul_table(std::ostream& out, const Field& field);

enum class BenchOp { kMul, kInv };

struct BenchResult {
  std::optional<double> table_ops_per_sec;  // absent for s > 8
  double on_the_fly_ops_per_sec = 0.0;
};

/// Single-threaded throughput of dependent chains of `iterations` operations.
BenchResult bench_field(unsigned s, BenchOp op, std::size_t iterations);

}  // namespace rlnc::cli
