#pragma once

// Deterministic time-slotted network simulator comparing random linear
// network coding with store-and-forward on small fixed topologies.
//
// Slot model: every node decides what to send from the state it had at the
// start of the slot; each link carries up to `capacity` packets, each lost
// independently with probability `loss`; surviving packets are delivered at
// the end of the slot and can be forwarded from the next slot on.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlnc/galois.hpp"

namespace rlnc::sim {

enum class NodeRole { kSource, kIntermediate, kDestination };

struct Node {
  std::string name;
  NodeRole role;
};

struct Link {
  std::size_t from;
  std::size_t to;
  std::size_t capacity = 1;
  double loss = 0.0;
};

struct Topology {
  std::vector<Node> nodes;
  std::vector<Link> links;

  std::size_t add_node(std::string name, NodeRole role);
  void add_link(std::size_t from, std::size_t to, std::size_t capacity = 1, double loss = 0.0);

  std::optional<std::size_t> find(std::string_view name) const;
  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> destinations() const;
  /// Destinations with no directed path from any source.
  std::vector<std::size_t> unreachable_destinations() const;
  void set_loss(double loss);
};

/// S1, S2 -> N -> H -> D1, D2 plus the side links S1 -> D1 and S2 -> D2.
Topology butterfly_topology();
/// S -> A, S -> D, A -> D.
Topology relay_topology();
/// S -> D.
Topology point_topology();

enum class Scenario { kButterfly, kRelay, kPoint };

Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario scenario);
Topology scenario_topology(Scenario scenario);

/// How local coefficients are drawn when coding is on.
enum class CoefficientPolicy {
  kUniform,  // uniform over the field, all-zero vectors redrawn
  kNonzero,  // each entry uniform over the nonzero elements
};

/// When a source's originals become available for sending.
enum class ReleasePolicy {
  kAllAtStart,  // all n from slot 1
  kOnePerSlot,  // original t becomes available in slot t
};

struct SimConfig {
  Field field{8};
  std::size_t packets = 4;  // originals per source
  std::size_t symbols = 8;  // payload symbols per packet
  bool coding = true;
  std::size_t slots = 20;
  std::uint64_t seed = 1;
  std::size_t redundancy = 4;  // packets each source emits per outgoing link
  CoefficientPolicy coefficients = CoefficientPolicy::kUniform;
  ReleasePolicy release = ReleasePolicy::kAllAtStart;

  /// Throws std::invalid_argument when slots or packets is zero.
  void validate() const;
};

/// Scenario defaults. The butterfly streams one original per slot per source
/// and mixes with nonzero weights, as in the XOR relay of the classic example.
SimConfig default_config(Scenario scenario);

struct DestinationReport {
  std::string name;
  std::optional<std::size_t> completion_slot;  // 1-based
  std::vector<std::size_t> decoded;             // cumulative originals, per slot
  std::size_t received = 0;
  std::size_t innovative = 0;
  std::size_t redundant = 0;
  bool payloads_match = true;  // every recovered original equals the source's

  /// Originals newly recovered during `slot` (1-based).
  std::size_t new_in_slot(std::size_t slot) const;

  friend bool operator==(const DestinationReport&, const DestinationReport&) = default;
};

struct SimReport {
  std::size_t total_originals = 0;
  std::vector<std::size_t> delivered;  // per slot, packets that crossed a link
  std::vector<std::size_t> dropped;    // per slot
  std::vector<std::string> nodes;      // node names, topology order
  std::vector<std::size_t> forwarded;  // per node, packets put on links
  std::vector<DestinationReport> destinations;
  std::vector<std::string> unreachable;
  std::uint64_t field_multiplications = 0;

  std::size_t total_decoded() const;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

SimReport run(const Topology& topology, const SimConfig& config);

/// `key = value` lines; `#` starts a comment.
struct ScenarioFile {
  Scenario scenario = Scenario::kButterfly;
  SimConfig config = default_config(Scenario::kButterfly);
  double loss = 0.0;
};

/// Keys: scenario, field_bits, packets, symbols, coding, slots, seed,
/// redundancy, loss, coefficients, release. The scenario key, when present,
/// must come first since it selects the defaults the other keys override.
ScenarioFile read_scenario_file(std::istream& in);

void write_report_text(std::ostream& out, const SimReport& report);
/// One CSV record per slot: slot, delivered, dropped, then the cumulative
/// decoded count for each destination.
void write_report_csv(std::ostream& out, const SimReport& report);

}  // namespace rlnc::sim
