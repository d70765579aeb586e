#include "rlnc/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "rlnc/pipeline.hpp"
#include "rlnc/sim.hpp"
#include "rlnc/wire.hpp"

namespace rlnc::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path);
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("error writing " + path);
}

void check_width(unsigned s) {
  if (!is_supported_width(s)) builtin_reduced_polynomial(s);  // throws with the allowed list
}

template <typename Op>
double ops_per_second(std::size_t iterations, Op&& op) {
  const auto start = std::chrono::steady_clock::now();
  Symbol acc = 1;
  for (std::size_t i = 0; i < iterations; ++i) acc = op(acc, static_cast<Symbol>(i));
  const auto stop = std::chrono::steady_clock::now();
  static volatile Symbol sink;
  sink = acc;
  (void)sink;
  const double seconds = std::chrono::duration<double>(stop - start).count();
  return seconds > 0.0 ? static_cast<double>(iterations) / seconds : 0.0;
}

double run_bench(const Field& field, BenchOp op, bool use_tables, std::size_t iterations) {
  const Symbol mask = field.max_symbol();
  if (op == BenchOp::kMul) {
    return ops_per_second(iterations, [&](Symbol acc, Symbol i) {
      return field.mul((acc ^ i) & mask, (i | 1u) & mask);
    });
  }
  return ops_per_second(iterations, [&](Symbol acc, Symbol i) {
    Symbol x = (acc ^ i) & mask;
    if (x == 0) x = 1;
    return use_tables ? field.inv(x) : field.inv_addition_chain(x);
  });
}

std::string polynomial_text(const Field& field) {
  std::string text;
  const std::uint32_t full = field.full_polynomial();
  for (int d = static_cast<int>(field.bits()); d >= 0; --d) {
    if (!((full >> d) & 1u)) continue;
    if (!text.empty()) text += '+';
    text += d == 0 ? "1" : d == 1 ? "x" : "x^" + std::to_string(d);
  }
  return text;
}

int cmd_encode(const std::string& input, const std::string& output, const EncodeOptions& options,
               std::ostream& out) {
  const auto data = read_file(input);
  const Container container = encode_bytes(data, options);
  write_file(output, write_container(container));
  out << "encoded " << data.size() << " bytes into " << container.packets.size()
      << " packets (n=" << options.packets << ", m=" << container.header.symbols
      << ", GF(2^" << options.field_bits << "))\n";
  return kOk;
}

int cmd_decode(const std::string& input, const std::string& output, std::ostream& out,
               std::ostream& err) {
  const auto bytes = read_file(input);
  const Container container = read_container(bytes);
  const DecodeOutcome outcome = decode_container(container);
  out << "received=" << container.packets.size() << " innovative=" << outcome.innovative
      << " redundant=" << outcome.redundant << " rank=" << outcome.rank << "/"
      << outcome.packets << '\n';
  if (!outcome.complete) {
    err << "rank shortfall: rank " << outcome.rank << " of " << outcome.packets
        << "; decodable originals:";
    if (outcome.decodable.empty()) err << " none";
    for (const auto i : outcome.decodable) err << ' ' << i;
    err << '\n';
    return kRankShortfall;
  }
  write_file(output, outcome.data);
  out << "decoded " << outcome.data.size() << " bytes\n";
  return kOk;
}

int cmd_table(unsigned s, std::ostream& out) {
  check_width(s);
  if (s > kMaxTableWidth) {
    throw CLI::ValidationError("--field-bits", "tables are only available for s <= 8");
  }
  write_mul_table(out, Field(s, TableMode::kOn));
  return kOk;
}

int cmd_bench(unsigned s, BenchOp op, std::size_t iterations, std::ostream& out) {
  check_width(s);
  const BenchResult result = bench_field(s, op, iterations);
  const char* name = op == BenchOp::kMul ? "mul" : "inv";
  out << std::fixed << std::setprecision(0);
  if (result.table_ops_per_sec) {
    out << "field_bits=" << s << " op=" << name << " mode=table iterations=" << iterations
        << " ops_per_sec=" << *result.table_ops_per_sec << '\n';
  }
  out << "field_bits=" << s << " op=" << name << " mode=on-the-fly iterations=" << iterations
      << " ops_per_sec=" << result.on_the_fly_ops_per_sec << '\n';
  return kOk;
}

}  // namespace

void write_mul_table(std::ostream& out, const Field& field) {
  const std::uint32_t n = field.order();
  const int width = n > 16 ? 3 : 2;
  out << "GF(2^" << field.bits() << ") modulo " << polynomial_text(field) << '\n';
  out << std::setw(width) << '*' << " |";
  for (std::uint32_t b = 0; b < n; ++b) out << ' ' << std::setw(width) << b;
  out << '\n';
  for (std::uint32_t a = 0; a < n; ++a) {
    const auto row = field.mul_table_row(a);
    out << std::setw(width) << a << " |";
    for (std::uint32_t b = 0; b < n; ++b) out << ' ' << std::setw(width) << unsigned{row[b]};
    out << '\n';
  }
}

BenchResult bench_field(unsigned s, BenchOp op, std::size_t iterations) {
  BenchResult result;
  if (s <= kMaxTableWidth) {
    result.table_ops_per_sec = run_bench(Field(s, TableMode::kOn), op, true, iterations);
  }
  result.on_the_fly_ops_per_sec = run_bench(Field(s), op, false, iterations);
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random linear network coding over GF(2^s)", "rlnc"};
  app.require_subcommand(1);

  unsigned field_bits = 8;
  std::size_t packets = 16;
  std::size_t redundancy = 0;
  std::uint64_t seed = kDefaultSeed;
  std::string input;
  std::string output;

  auto* encode = app.add_subcommand("encode", "Encode a file into a coded-packet container");
  encode->add_option("input", input, "File to encode")->required();
  encode->add_option("-o,--output", output, "Container to write")->required();
  encode->add_option("--field-bits", field_bits, "Symbol width s")->capture_default_str();
  encode->add_option("--packets", packets, "Number of original packets n")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{65535}));
  encode->add_option("--redundancy", redundancy, "Coded packets to emit (default n + 4)");
  encode->add_option("--seed", seed, "RNG seed")->capture_default_str();

  auto* decode = app.add_subcommand("decode", "Decode a container back into the original file");
  decode->add_option("input", input, "Container to decode")->required();
  decode->add_option("-o,--output", output, "File to write")->required();

  auto* table = app.add_subcommand("table", "Print the multiplication table of GF(2^s)");
  table->add_option("--field-bits", field_bits, "Symbol width s (<= 8)")->capture_default_str();

  std::string op_name = "mul";
  std::size_t iterations = 1'000'000;
  auto* bench = app.add_subcommand("bench", "Measure table and on-the-fly arithmetic");
  bench->add_option("--field-bits", field_bits, "Symbol width s")->capture_default_str();
  bench->add_option("--op", op_name, "Operation")
      ->check(CLI::IsMember({"mul", "inv"}))
      ->capture_default_str();
  bench->add_option("--iterations", iterations, "Operations per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string scenario = "butterfly";
  std::string config_path;
  std::string coding = "on";
  std::size_t slots = 0;
  double loss = 0.0;
  auto* sim = app.add_subcommand("sim", "Run a network simulation");
  auto* sim_scenario = sim->add_option("--scenario", scenario, "butterfly, relay or point")
                           ->check(CLI::IsMember({"butterfly", "relay", "point"}));
  sim->add_option("--config", config_path, "Scenario file (key = value lines)");
  auto* sim_bits = sim->add_option("--field-bits", field_bits, "Symbol width s");
  auto* sim_packets = sim->add_option("--packets", packets, "Originals per source");
  auto* sim_redundancy = sim->add_option("--redundancy", redundancy, "Packets per source link");
  auto* sim_seed = sim->add_option("--seed", seed, "RNG seed");
  auto* sim_coding = sim->add_option("--coding", coding, "on or off")
                         ->check(CLI::IsMember({"on", "off"}));
  auto* sim_slots = sim->add_option("--slots", slots, "Number of time slots");
  auto* sim_loss = sim->add_option("--loss", loss, "Loss probability on every link")
                       ->check(CLI::Range(0.0, 1.0));
  sim->add_option("-o,--output", output, "Per-slot CSV summary to write");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) {
      check_width(field_bits);
      EncodeOptions options{field_bits, packets, redundancy ? redundancy : packets + 4, seed};
      return cmd_encode(input, output, options, out);
    }
    if (*decode) return cmd_decode(input, output, out, err);
    if (*table) return cmd_table(field_bits, out);
    if (*bench) {
      return cmd_bench(field_bits, op_name == "mul" ? BenchOp::kMul : BenchOp::kInv, iterations,
                       out);
    }
    if (*sim) {
      sim::ScenarioFile file;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open " + config_path);
        file = sim::read_scenario_file(in);
      }
      if (sim_scenario->count() > 0) {
        file.scenario = sim::parse_scenario(scenario);
        if (config_path.empty()) file.config = sim::default_config(file.scenario);
      }
      auto& config = file.config;
      if (sim_bits->count() > 0) {
        check_width(field_bits);
        config.field = Field(field_bits);
      }
      if (sim_packets->count() > 0) config.packets = packets;
      if (sim_redundancy->count() > 0) config.redundancy = redundancy;
      if (sim_seed->count() > 0) config.seed = seed;
      if (sim_coding->count() > 0) config.coding = coding == "on";
      if (sim_slots->count() > 0) config.slots = slots;
      if (sim_loss->count() > 0) file.loss = loss;
      config.validate();

      auto topology = sim::scenario_topology(file.scenario);
      topology.set_loss(file.loss);
      const sim::SimReport report = sim::run(topology, config);
      out << "scenario=" << sim::scenario_name(file.scenario)
          << " coding=" << (config.coding ? "on" : "off") << " field_bits=" << config.field.bits()
          << " seed=" << config.seed << '\n';
      sim::write_report_text(out, report);
      if (!output.empty()) {
        std::ofstream csv(output);
        if (!csv) throw IoError("cannot create " + output);
        sim::write_report_csv(csv, report);
      }
      return kOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const WireError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatError;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rlnc::cli
