#pragma once

#include "hsfroute/fault_model.hpp"
#include "hsfroute/ft_routing.hpp"
#include "hsfroute/routing_core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hsfroute {

struct Packet {
  PacketKind kind = PacketKind::Directive;
  Coord src;
  Coord dst;
  RoutingMode mode = RoutingMode::Normal;
  std::optional<Direction> incoming;
  Path path_so_far;
  long inject_time = -1;
  long deliver_time = -1;
  Coord directive_dest; // for ACKs: the destination being acknowledged

  bool delivered() const { return !path_so_far.empty() && path_so_far.back() == dst; }
};

/// Parameters echoed into RunMetrics so runs can be grouped later.
struct RunParams {
  FaultModel model = FaultModel::Random;
  double fault_pct = 0.0;
  std::uint64_t seed = 0;
  int fault_count = 0;

  friend bool operator==(const RunParams &, const RunParams &) = default;
};

struct RunMetrics {
  int width = 0;
  int height = 0;
  RunParams params;

  std::map<Coord, int> data_hops; // per destination
  std::map<Coord, int> ack_hops;  // per destination whose ACK was received
  std::size_t delivered = 0;
  std::size_t acks_received = 0;
  std::size_t faulty = 0;
  std::size_t unsafe = 0;
  std::size_t boundary = 0;
  std::size_t blocks = 0;
  std::size_t core_area = 0;
  std::size_t boundary_nodes = 0; // distinct frame nodes, equals `boundary`
  long ticks = 0;
  long wait_ticks = 0; // ticks any packet spent blocked by an occupied node

  double mean_hops() const;
  double mean_ack_hops() const;
  double spanned_fraction() const {
    return static_cast<double>(delivered) / (static_cast<double>(width) * height);
  }

  friend bool operator==(const RunMetrics &, const RunMetrics &) = default;
};

struct SimOptions {
  RunParams params;
  /// Destination order; row-major over Safe nodes when empty.
  std::vector<Coord> destination_order;
};

/// Sequential-injection run: a directive to every Safe node, injected at
/// (0,0) whenever that node is free, each answered by an ACK from the node
/// before the destination. Unit-latency hops, one packet per node. Routing
/// errors abort the run with the packet's path in the message.
RunMetrics run_simulation(const Network &net, const FaultConfiguration &cfg,
                          const SimOptions &options = {});

struct Summary {
  int width = 0;
  int height = 0;
  FaultModel model = FaultModel::Random;
  double fault_pct = 0.0;
  int fault_count = 0;
  std::size_t runs = 0;

  double mean_hops = 0.0; // mean of per-run means
  double stddev_hops = 0.0;
  double mean_ack_hops = 0.0;
  double stddev_ack_hops = 0.0;
  double mean_faulty = 0.0;
  double mean_unsafe = 0.0;
  double mean_boundary = 0.0;
  double mean_delivered = 0.0;
  double spanned_fraction = 0.0;
  double stddev_spanned = 0.0;
  std::map<int, std::size_t> hop_histogram; // data hop count -> packets
};

/// Throws HeterogeneousRuns when grids or fault parameters differ, Error on
/// an empty list.
Summary aggregate(std::span<const RunMetrics> runs);

/// Data hop count per destination on the fault-free grid.
std::map<Coord, int> baseline_hops(const Network &net);

/// Histogram of (hops - baseline hops) over every delivered directive.
std::map<int, std::size_t> path_length_histogram(std::span<const RunMetrics> runs,
                                                 const std::map<Coord, int> &baseline);

/// Share of the histogram mass in bucket 0.
double unaffected_fraction(const std::map<int, std::size_t> &histogram);

} // namespace hsfroute
