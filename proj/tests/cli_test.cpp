#include "rlnc/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rlnc/wire.hpp"

namespace rlnc::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rlnc_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rlnc");
    out_.str({});
    err_.str({});
    return run(args, out_, err_);
  }

  static std::vector<std::uint8_t> slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  static void dump(const std::string& p, const std::vector<std::uint8_t>& data) {
    std::ofstream out(p, std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }

  std::vector<std::uint8_t> random_file(const std::string& p, std::size_t size,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::uint8_t> data(size);
    for (auto& b : data) b = static_cast<std::uint8_t>(byte(rng));
    dump(p, data);
    return data;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, EncodeDecodeIsIdentityForAllWidths) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(1, 64 * 1024);
  for (unsigned s : kSupportedWidths) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto data = random_file(path("in"), size(rng), rng());
      ASSERT_EQ(cli({"encode", path("in"), "-o", path("c"), "--field-bits", std::to_string(s),
                     "--packets", "8", "--redundancy", "24", "--seed", std::to_string(trial)}),
                kOk)
          << err_.str();
      ASSERT_EQ(cli({"decode", path("c"), "-o", path("out")}), kOk) << err_.str();
      ASSERT_EQ(slurp(path("out")), data) << "s=" << s;
    }
  }
}

TEST_F(CliTest, DefaultRedundancyRoundtrip) {
  const auto data = random_file(path("in"), 5000, 1);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c")}), kOk);
  const auto container = read_container(slurp(path("c")));
  EXPECT_EQ(container.header.field_bits, 8u);
  EXPECT_EQ(container.packets.size(), 20u);
  ASSERT_EQ(cli({"decode", path("c"), "-o", path("out")}), kOk) << err_.str();
  EXPECT_EQ(slurp(path("out")), data);
}

TEST_F(CliTest, InsufficientRedundancyFailsWithDistinctCode) {
  random_file(path("in"), 1000, 2);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c"), "--packets", "8", "--redundancy", "5"}),
            kOk);
  EXPECT_EQ(cli({"decode", path("c"), "-o", path("out")}), kRankShortfall);
  EXPECT_NE(err_.str().find("rank 5 of 8"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("out")));
}

TEST_F(CliTest, DuplicatedPacketIsRedundant) {
  const auto data = random_file(path("in"), 777, 3);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c"), "--packets", "4", "--redundancy", "6"}),
            kOk);
  auto container = read_container(slurp(path("c")));
  container.packets.insert(container.packets.begin() + 1, container.packets.front());
  dump(path("dup"), write_container(container));
  ASSERT_EQ(cli({"decode", path("dup"), "-o", path("out")}), kOk) << err_.str();
  EXPECT_NE(out_.str().find("redundant=3"), std::string::npos) << out_.str();
  EXPECT_EQ(slurp(path("out")), data);
}

TEST_F(CliTest, MissingPacketReportsRankAndDecodableSubset) {
  random_file(path("in"), 64, 4);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c"), "--packets", "4"}), kOk);
  auto container = read_container(slurp(path("c")));
  // Keep three independent packets and add a unit packet for original 3.
  Container partial{container.header, {}};
  const auto params = container.params();
  Decoder probe(params);
  for (const auto& p : container.packets) {
    if (partial.packets.size() == 2) break;
    if (probe.receive(p) == ReceiveStatus::kInnovative) partial.packets.push_back(p);
  }
  Decoder full(params);
  for (const auto& p : container.packets) full.receive(p);
  ASSERT_TRUE(full.is_complete());
  const auto originals = full.decoded_packets();
  CodedPacket unit{{0, 0, 0, 1}, originals[3].payload};
  partial.packets.push_back(unit);
  dump(path("partial"), write_container(partial));

  EXPECT_EQ(cli({"decode", path("partial"), "-o", path("out")}), kRankShortfall);
  EXPECT_NE(err_.str().find("rank 3 of 4"), std::string::npos) << err_.str();
  EXPECT_NE(err_.str().find("decodable originals: 3"), std::string::npos) << err_.str();
}

TEST_F(CliTest, PacketOrderDoesNotMatter) {
  const auto data = random_file(path("in"), 4321, 6);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c"), "--packets", "6", "--redundancy", "12",
                 "--field-bits", "4"}),
            kOk);
  ASSERT_EQ(cli({"decode", path("c"), "-o", path("sorted")}), kOk);
  auto container = read_container(slurp(path("c")));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(container.packets.begin(), container.packets.end(), rng);
    dump(path("shuffled"), write_container(container));
    ASSERT_EQ(cli({"decode", path("shuffled"), "-o", path("out")}), kOk);
    EXPECT_EQ(slurp(path("out")), slurp(path("sorted")));
  }
  EXPECT_EQ(slurp(path("sorted")), data);
}

TEST_F(CliTest, CorruptContainerIsFormatError) {
  random_file(path("in"), 100, 7);
  ASSERT_EQ(cli({"encode", path("in"), "-o", path("c")}), kOk);
  auto bytes = slurp(path("c"));
  bytes[0] = 'X';
  dump(path("bad"), bytes);
  EXPECT_EQ(cli({"decode", path("bad"), "-o", path("out")}), kFormatError);
  bytes = slurp(path("c"));
  bytes.pop_back();
  dump(path("bad"), bytes);
  EXPECT_EQ(cli({"decode", path("bad"), "-o", path("out")}), kFormatError);
}

TEST_F(CliTest, UsageAndInputErrors) {
  EXPECT_EQ(cli({}), kUsage);
  EXPECT_EQ(cli({"frobnicate"}), kUsage);
  EXPECT_EQ(cli({"encode", path("missing"), "-o", path("c")}), kIoError);
  random_file(path("in"), 10, 1);
  EXPECT_EQ(cli({"encode", path("in"), "-o", path("c"), "--field-bits", "3"}), kUsage);
  EXPECT_NE(err_.str().find("allowed widths"), std::string::npos);
  EXPECT_EQ(cli({"encode", path("in"), "-o", path("c"), "--packets", "0"}), kUsage);
  dump(path("empty"), {});
  EXPECT_NE(cli({"encode", path("empty"), "-o", path("c")}), kOk);
  EXPECT_EQ(cli({"sim", "--scenario", "ring"}), kUsage);
  EXPECT_EQ(cli({"sim", "--coding", "sometimes"}), kUsage);
  EXPECT_EQ(cli({"table", "--field-bits", "16"}), kUsage);
  EXPECT_EQ(cli({"--help"}), kOk);
}

TEST_F(CliTest, TableShowsInversePairs) {
  ASSERT_EQ(cli({"table", "--field-bits", "8"}), kOk);
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "GF(2^8) modulo x^8+x^4+x^3+x+1");
  std::getline(lines, line);  // column header
  for (int row = 0; row <= 10; ++row) std::getline(lines, line);
  std::istringstream cells(line);
  std::string label, bar;
  cells >> label >> bar;
  EXPECT_EQ(label, "10");
  std::vector<int> values;
  int v = 0;
  while (cells >> v) values.push_back(v);
  ASSERT_EQ(values.size(), 256u);
  EXPECT_EQ(values[41], 1);
  EXPECT_EQ(std::count(values.begin(), values.end(), 1), 1);
}

TEST_F(CliTest, BinaryTableIsAnd) {
  ASSERT_EQ(cli({"table", "--field-bits", "1"}), kOk);
  EXPECT_EQ(out_.str(),
            "GF(2^1) modulo x+1\n"
            " * |  0  1\n"
            " 0 |  0  0\n"
            " 1 |  0  1\n");
}

TEST_F(CliTest, BenchTableBeatsOnTheFly) {
  ASSERT_EQ(cli({"bench", "--field-bits", "8", "--iterations", "2000000"}), kOk);
  EXPECT_NE(out_.str().find("mode=table"), std::string::npos);
  EXPECT_NE(out_.str().find("mode=on-the-fly"), std::string::npos);
  const auto result = bench_field(8, BenchOp::kMul, 4'000'000);
  ASSERT_TRUE(result.table_ops_per_sec.has_value());
  EXPECT_GE(*result.table_ops_per_sec, result.on_the_fly_ops_per_sec);

  ASSERT_EQ(cli({"bench", "--field-bits", "16", "--op", "inv", "--iterations", "1000"}), kOk);
  EXPECT_EQ(out_.str().find("mode=table"), std::string::npos);
}

TEST_F(CliTest, SimSubcommand) {
  ASSERT_EQ(cli({"sim", "--scenario", "butterfly", "-o", path("slots.csv")}), kOk) << err_.str();
  EXPECT_NE(out_.str().find("scenario=butterfly coding=on"), std::string::npos);
  EXPECT_NE(out_.str().find("destination=D1"), std::string::npos);
  const auto csv = slurp(path("slots.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);

  const std::string first = out_.str();
  ASSERT_EQ(cli({"sim", "--scenario", "butterfly", "-o", path("slots.csv")}), kOk);
  EXPECT_EQ(out_.str(), first);

  std::ofstream(path("relay.cfg")) << "scenario = relay\nslots = 15\nloss = 0.1\n";
  ASSERT_EQ(cli({"sim", "--config", path("relay.cfg"), "--coding", "off", "--seed", "4"}), kOk)
      << err_.str();
  EXPECT_NE(out_.str().find("scenario=relay coding=off"), std::string::npos);
  EXPECT_NE(out_.str().find("slots=15"), std::string::npos);
}

TEST_F(CliTest, BinaryRunsEndToEnd) {
  const auto data = random_file(path("in"), 3000, 9);
  const std::string tool = RLNC_TOOL_PATH;
  ASSERT_EQ(std::system((tool + " encode " + path("in") + " -o " + path("c") + " > /dev/null").c_str()),
            0);
  ASSERT_EQ(std::system((tool + " decode " + path("c") + " -o " + path("out") + " > /dev/null").c_str()),
            0);
  EXPECT_EQ(slurp(path("out")), data);
  const int status = std::system((tool + " bogus 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), kUsage);
}

}  // namespace
}  // namespace rlnc::cli
