#include "rlnc/sim.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>

#include "rlnc/codec.hpp"

namespace rlnc::sim {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Packet {
  CodedPacket body;
  std::size_t original = kNone;  // set for uncoded copies
};

struct SourceState {
  std::size_t first_index = 0;  // global index of this source's first original
  std::vector<SourcePacket> originals;
  std::size_t released = 0;
  std::vector<std::size_t> emitted;  // per outgoing link
};

struct RelayState {
  std::vector<CodedPacket> buffer;  // coding on: everything received so far
  // coding off, per outgoing link: one FIFO per source, served round-robin
  std::vector<std::vector<std::deque<Packet>>> queues;
  std::vector<std::size_t> next_queue;
};

struct SinkState {
  std::optional<Decoder> decoder;
  std::vector<std::optional<std::vector<Symbol>>> collected;
  std::size_t collected_count = 0;
  DestinationReport report;
};

class Simulation {
 public:
  Simulation(const Topology& topology, const SimConfig& config)
      : topology_(topology), config_(config), rng_(config.seed) {
    config_.validate();
    const auto sources = topology_.sources();
    const std::size_t n = config_.packets;
    total_ = sources.size() * n;

    out_links_.resize(topology_.nodes.size());
    for (std::size_t l = 0; l < topology_.links.size(); ++l) {
      out_links_[topology_.links[l].from].push_back(l);
    }

    std::uniform_int_distribution<Symbol> symbol(0, config_.field.max_symbol());
    source_of_node_.assign(topology_.nodes.size(), kNone);
    for (std::size_t k = 0; k < sources.size(); ++k) {
      const std::size_t node = sources[k];
      source_of_node_[node] = k;
      SourceState state;
      state.first_index = k * n;
      state.emitted.assign(out_links_[node].size(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        SourcePacket p;
        p.payload.resize(config_.symbols);
        for (auto& x : p.payload) x = symbol(rng_);
        state.originals.push_back(std::move(p));
      }
      sources_.push_back(std::move(state));
    }

    relays_.resize(topology_.nodes.size());
    for (std::size_t node = 0; node < topology_.nodes.size(); ++node) {
      if (topology_.nodes[node].role != NodeRole::kIntermediate) continue;
      auto& relay = relays_[node];
      relay.queues.assign(out_links_[node].size(),
                          std::vector<std::deque<Packet>>(sources.size()));
      relay.next_queue.assign(out_links_[node].size(), 0);
    }

    sink_of_node_.assign(topology_.nodes.size(), kNone);
    for (const std::size_t node : topology_.destinations()) {
      sink_of_node_[node] = sinks_.size();
      SinkState sink;
      sink.report.name = topology_.nodes[node].name;
      if (config_.coding) {
        sink.decoder.emplace(GenerationParams{total_, config_.symbols, config_.field});
      } else {
        sink.collected.resize(total_);
      }
      sinks_.push_back(std::move(sink));
    }
  }

  SimReport run() {
    SimReport report;
    report.total_originals = total_;
    report.forwarded.assign(topology_.nodes.size(), 0);
    for (const auto& node : topology_.nodes) report.nodes.push_back(node.name);
    for (const std::size_t node : topology_.unreachable_destinations()) {
      report.unreachable.push_back(topology_.nodes[node].name);
    }
    const std::uint64_t muls_before = multiplication_count();

    for (std::size_t slot = 1; slot <= config_.slots; ++slot) {
      for (auto& source : sources_) {
        source.released = config_.release == ReleasePolicy::kAllAtStart
                              ? config_.packets
                              : std::min(config_.packets, slot);
      }

      std::vector<std::pair<std::size_t, Packet>> sent;
      for (std::size_t node = 0; node < topology_.nodes.size(); ++node) {
        for (std::size_t k = 0; k < out_links_[node].size(); ++k) {
          const std::size_t link = out_links_[node][k];
          for (std::size_t c = 0; c < topology_.links[link].capacity; ++c) {
            auto packet = next_packet(node, k);
            if (!packet) break;
            sent.emplace_back(link, std::move(*packet));
            ++report.forwarded[node];
          }
        }
      }

      std::size_t delivered = 0;
      std::size_t dropped = 0;
      for (auto& [link, packet] : sent) {
        const double loss = topology_.links[link].loss;
        if (loss > 0.0 && std::bernoulli_distribution(loss)(rng_)) {
          ++dropped;
          continue;
        }
        ++delivered;
        deliver(topology_.links[link].to, std::move(packet));
      }
      report.delivered.push_back(delivered);
      report.dropped.push_back(dropped);

      for (auto& sink : sinks_) {
        const std::size_t decoded = decoded_count(sink);
        sink.report.decoded.push_back(decoded);
        if (!sink.report.completion_slot && decoded == total_) {
          sink.report.completion_slot = slot;
        }
      }
    }

    for (auto& sink : sinks_) {
      if (sink.decoder) {
        for (const auto& d : sink.decoder->decoded_packets()) {
          if (d.payload != original(d.index).payload) sink.report.payloads_match = false;
        }
      }
      report.destinations.push_back(std::move(sink.report));
    }
    report.field_multiplications = multiplication_count() - muls_before;
    return report;
  }

 private:
  const SourcePacket& original(std::size_t index) const {
    return sources_[index / config_.packets].originals[index % config_.packets];
  }

  std::vector<Symbol> draw_coefficients(std::size_t count) {
    if (config_.coefficients == CoefficientPolicy::kUniform) {
      return random_coefficients(count, config_.field, rng_);
    }
    std::uniform_int_distribution<Symbol> draw(1, config_.field.max_symbol());
    std::vector<Symbol> out(count);
    for (auto& x : out) x = draw(rng_);
    return out;
  }

  std::optional<Packet> next_packet(std::size_t node, std::size_t out_index) {
    switch (topology_.nodes[node].role) {
      case NodeRole::kSource:
        return from_source(sources_[source_of_node_[node]], out_index);
      case NodeRole::kIntermediate:
        return from_relay(relays_[node], out_index);
      case NodeRole::kDestination:
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<Packet> from_source(SourceState& source, std::size_t out_index) {
    std::size_t& emitted = source.emitted[out_index];
    if (emitted >= config_.redundancy || source.released == 0) return std::nullopt;

    Packet packet;
    if (config_.coding) {
      const auto released = std::span<const SourcePacket>(source.originals).first(source.released);
      const auto local = draw_coefficients(released.size());
      CodedPacket coded = encode(released, local, config_.field);
      packet.body.coefficients.assign(total_, 0);
      std::copy(local.begin(), local.end(),
                packet.body.coefficients.begin() + static_cast<std::ptrdiff_t>(source.first_index));
      packet.body.payload = std::move(coded.payload);
    } else {
      const std::size_t local = emitted % config_.packets;
      if (local >= source.released) return std::nullopt;
      packet.original = source.first_index + local;
      packet.body.coefficients.assign(total_, 0);
      packet.body.coefficients[packet.original] = 1;
      packet.body.payload = source.originals[local].payload;
    }
    ++emitted;
    return packet;
  }

  std::optional<Packet> from_relay(RelayState& relay, std::size_t out_index) {
    if (config_.coding) {
      if (relay.buffer.empty()) return std::nullopt;
      const auto weights = draw_coefficients(relay.buffer.size());
      return Packet{recode(relay.buffer, weights, config_.field)};
    }
    auto& queues = relay.queues[out_index];
    std::size_t& next = relay.next_queue[out_index];
    for (std::size_t tried = 0; tried < queues.size(); ++tried) {
      auto& queue = queues[(next + tried) % queues.size()];
      if (queue.empty()) continue;
      Packet packet = std::move(queue.front());
      queue.pop_front();
      next = (next + tried + 1) % queues.size();
      return packet;
    }
    return std::nullopt;
  }

  void deliver(std::size_t node, Packet packet) {
    switch (topology_.nodes[node].role) {
      case NodeRole::kSource:
        return;
      case NodeRole::kIntermediate: {
        auto& relay = relays_[node];
        if (config_.coding) {
          relay.buffer.push_back(std::move(packet.body));
        } else {
          const std::size_t origin = packet.original / config_.packets;
          for (auto& queues : relay.queues) queues[origin].push_back(packet);
        }
        return;
      }
      case NodeRole::kDestination: {
        auto& sink = sinks_[sink_of_node_[node]];
        ++sink.report.received;
        if (sink.decoder) {
          const auto status = sink.decoder->receive(packet.body);
          ++(status == ReceiveStatus::kInnovative ? sink.report.innovative
                                                  : sink.report.redundant);
          return;
        }
        auto& slot = sink.collected[packet.original];
        if (slot) {
          ++sink.report.redundant;
          return;
        }
        ++sink.report.innovative;
        ++sink.collected_count;
        if (packet.body.payload != original(packet.original).payload) {
          sink.report.payloads_match = false;
        }
        slot = std::move(packet.body.payload);
        return;
      }
    }
  }

  std::size_t decoded_count(const SinkState& sink) const {
    if (sink.decoder) return sink.decoder->decoded_packets().size();
    return sink.collected_count;
  }

  const Topology& topology_;
  SimConfig config_;
  std::mt19937_64 rng_;
  std::size_t total_ = 0;
  std::vector<std::vector<std::size_t>> out_links_;
  std::vector<std::size_t> source_of_node_;
  std::vector<std::size_t> sink_of_node_;
  std::vector<SourceState> sources_;
  std::vector<RelayState> relays_;
  std::vector<SinkState> sinks_;
};

}  // namespace

std::size_t Topology::add_node(std::string name, NodeRole role) {
  nodes.push_back({std::move(name), role});
  return nodes.size() - 1;
}

void Topology::add_link(std::size_t from, std::size_t to, std::size_t capacity, double loss) {
  if (from >= nodes.size() || to >= nodes.size()) {
    throw std::out_of_range("link endpoint is not a node");
  }
  if (capacity == 0) throw std::invalid_argument("link capacity must be positive");
  if (!(loss >= 0.0 && loss <= 1.0)) throw std::invalid_argument("loss must lie in [0, 1]");
  links.push_back({from, to, capacity, loss});
}

std::optional<std::size_t> Topology::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Topology::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == NodeRole::kSource) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Topology::destinations() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].role == NodeRole::kDestination) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Topology::unreachable_destinations() const {
  std::vector<bool> seen(nodes.size(), false);
  std::queue<std::size_t> frontier;
  for (const std::size_t s : sources()) {
    seen[s] = true;
    frontier.push(s);
  }
  while (!frontier.empty()) {
    const std::size_t node = frontier.front();
    frontier.pop();
    for (const auto& link : links) {
      if (link.from == node && !seen[link.to]) {
        seen[link.to] = true;
        frontier.push(link.to);
      }
    }
  }
  std::vector<std::size_t> out;
  for (const std::size_t d : destinations()) {
    if (!seen[d]) out.push_back(d);
  }
  return out;
}

void Topology::set_loss(double loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) throw std::invalid_argument("loss must lie in [0, 1]");
  for (auto& link : links) link.loss = loss;
}

Topology butterfly_topology() {
  Topology t;
  const auto s1 = t.add_node("S1", NodeRole::kSource);
  const auto s2 = t.add_node("S2", NodeRole::kSource);
  const auto n = t.add_node("N", NodeRole::kIntermediate);
  const auto hub = t.add_node("H", NodeRole::kIntermediate);
  const auto d1 = t.add_node("D1", NodeRole::kDestination);
  const auto d2 = t.add_node("D2", NodeRole::kDestination);
  t.add_link(s1, d1);
  t.add_link(s1, n);
  t.add_link(s2, n);
  t.add_link(s2, d2);
  t.add_link(n, hub);
  t.add_link(hub, d1);
  t.add_link(hub, d2);
  return t;
}

Topology relay_topology() {
  Topology t;
  const auto s = t.add_node("S", NodeRole::kSource);
  const auto a = t.add_node("A", NodeRole::kIntermediate);
  const auto d = t.add_node("D", NodeRole::kDestination);
  t.add_link(s, a);
  t.add_link(s, d);
  t.add_link(a, d);
  return t;
}

Topology point_topology() {
  Topology t;
  const auto s = t.add_node("S", NodeRole::kSource);
  const auto d = t.add_node("D", NodeRole::kDestination);
  t.add_link(s, d);
  return t;
}

Scenario parse_scenario(std::string_view name) {
  if (name == "butterfly") return Scenario::kButterfly;
  if (name == "relay") return Scenario::kRelay;
  if (name == "point") return Scenario::kPoint;
  throw std::invalid_argument("unknown scenario '" + std::string(name) +
                              "' (expected butterfly, relay or point)");
}

std::string_view scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kButterfly:
      return "butterfly";
    case Scenario::kRelay:
      return "relay";
    case Scenario::kPoint:
      return "point";
  }
  return "unknown";
}

Topology scenario_topology(Scenario scenario) {
  switch (scenario) {
    case Scenario::kButterfly:
      return butterfly_topology();
    case Scenario::kRelay:
      return relay_topology();
    case Scenario::kPoint:
      return point_topology();
  }
  throw std::invalid_argument("unknown scenario");
}

void SimConfig::validate() const {
  if (slots == 0) throw std::invalid_argument("simulation needs at least one slot");
  if (packets == 0) throw std::invalid_argument("generation needs at least one packet");
  if (symbols == 0) throw std::invalid_argument("packets need at least one symbol");
}

SimConfig default_config(Scenario scenario) {
  SimConfig config;
  switch (scenario) {
    case Scenario::kButterfly:
      config.packets = 20;
      config.redundancy = 20;
      config.slots = 20;
      config.coefficients = CoefficientPolicy::kNonzero;
      config.release = ReleasePolicy::kOnePerSlot;
      break;
    case Scenario::kRelay:
      config.slots = 20;
      break;
    case Scenario::kPoint:
      config.slots = 10;
      break;
  }
  return config;
}

std::size_t DestinationReport::new_in_slot(std::size_t slot) const {
  if (slot == 0 || slot > decoded.size()) throw std::out_of_range("slot outside the run");
  return decoded[slot - 1] - (slot == 1 ? 0 : decoded[slot - 2]);
}

std::size_t SimReport::total_decoded() const {
  std::size_t total = 0;
  for (const auto& d : destinations) total += d.decoded.empty() ? 0 : d.decoded.back();
  return total;
}

SimReport run(const Topology& topology, const SimConfig& config) {
  return Simulation(topology, config).run();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long parsed = 0;
  try {
    parsed = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || value.front() == '-') {
    throw std::invalid_argument("key '" + key + "' expects an unsigned integer, got '" +
                                value + "'");
  }
  return parsed;
}

}  // namespace

ScenarioFile read_scenario_file(std::istream& in) {
  ScenarioFile file;
  std::string line;
  std::size_t line_no = 0;
  bool seen_other_key = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    SimConfig& c = file.config;

    if (key == "scenario") {
      if (seen_other_key) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": scenario must precede other keys");
      }
      file.scenario = parse_scenario(value);
      file.config = default_config(file.scenario);
      continue;
    }
    seen_other_key = true;
    if (key == "field_bits") {
      c.field = Field(static_cast<unsigned>(parse_unsigned(key, value)));
    } else if (key == "packets") {
      c.packets = parse_unsigned(key, value);
    } else if (key == "symbols") {
      c.symbols = parse_unsigned(key, value);
    } else if (key == "slots") {
      c.slots = parse_unsigned(key, value);
    } else if (key == "seed") {
      c.seed = parse_unsigned(key, value);
    } else if (key == "redundancy") {
      c.redundancy = parse_unsigned(key, value);
    } else if (key == "coding") {
      if (value != "on" && value != "off") throw std::invalid_argument("coding must be on or off");
      c.coding = value == "on";
    } else if (key == "loss") {
      std::size_t used = 0;
      try {
        file.loss = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || !(file.loss >= 0.0 && file.loss <= 1.0)) {
        throw std::invalid_argument("loss must be a number in [0, 1]");
      }
    } else if (key == "coefficients") {
      if (value == "uniform") {
        c.coefficients = CoefficientPolicy::kUniform;
      } else if (value == "nonzero") {
        c.coefficients = CoefficientPolicy::kNonzero;
      } else {
        throw std::invalid_argument("coefficients must be uniform or nonzero");
      }
    } else if (key == "release") {
      if (value == "all") {
        c.release = ReleasePolicy::kAllAtStart;
      } else if (value == "stream") {
        c.release = ReleasePolicy::kOnePerSlot;
      } else {
        throw std::invalid_argument("release must be all or stream");
      }
    } else {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "'");
    }
  }
  file.config.validate();
  return file;
}

void write_report_text(std::ostream& out, const SimReport& report) {
  out << "slots=" << report.delivered.size() << '\n';
  out << "total_originals=" << report.total_originals << '\n';
  out << "delivered=" << std::accumulate(report.delivered.begin(), report.delivered.end(),
                                         std::size_t{0})
      << '\n';
  out << "dropped=" << std::accumulate(report.dropped.begin(), report.dropped.end(),
                                       std::size_t{0})
      << '\n';
  out << "field_multiplications=" << report.field_multiplications << '\n';
  for (const auto& d : report.destinations) {
    out << "destination=" << d.name << " completion_slot=";
    if (d.completion_slot) {
      out << *d.completion_slot;
    } else {
      out << "none";
    }
    out << " decoded=" << (d.decoded.empty() ? 0 : d.decoded.back())
        << " received=" << d.received << " innovative=" << d.innovative
        << " redundant=" << d.redundant
        << " payloads_match=" << (d.payloads_match ? "true" : "false") << '\n';
  }
  for (std::size_t i = 0; i < report.forwarded.size(); ++i) {
    out << "node=" << report.nodes[i] << " forwarded=" << report.forwarded[i] << '\n';
  }
  for (const auto& name : report.unreachable) out << "unreachable=" << name << '\n';
}

void write_report_csv(std::ostream& out, const SimReport& report) {
  out << "slot,delivered,dropped";
  for (const auto& d : report.destinations) out << ",decoded_" << d.name;
  out << '\n';
  for (std::size_t t = 0; t < report.delivered.size(); ++t) {
    out << t + 1 << ',' << report.delivered[t] << ',' << report.dropped[t];
    for (const auto& d : report.destinations) out << ',' << d.decoded[t];
    out << '\n';
  }
}

}  // namespace rlnc::sim
