#pragma once

#include "hsfroute/fault_model.hpp"
#include "hsfroute/ft_routing.hpp"
#include "hsfroute/topology.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hsfroute {

/// What caused a dependency edge: the packet's destination, kind, and the
/// mode it carried while holding the first channel and requesting the second.
struct DependencyLabel {
  Coord dest;
  PacketKind kind;
  RoutingMode mode;
};

class ChannelDependencyGraph {
public:
  /// Returns the vertex id, adding the channel if new.
  int add_channel(const Channel &c);
  std::optional<int> find(const Channel &c) const;
  /// Adds a -> b; both channels are added as vertices if missing. The first
  /// label seen for an edge is kept.
  void add_dependency(const Channel &a, const Channel &b, const DependencyLabel &label);

  const std::vector<Channel> &channels() const { return channels_; }
  const std::vector<std::vector<int>> &successors() const { return succ_; }
  std::size_t edge_count() const { return labels_.size(); }
  const DependencyLabel *label(int from, int to) const;

private:
  std::vector<Channel> channels_;
  std::map<Channel, int> ids_;
  std::vector<std::vector<int>> succ_;
  std::map<std::pair<int, int>, DependencyLabel> labels_;
};

struct CycleWitness {
  std::vector<Channel> channels; // c0 -> c1 -> ... -> c0
  std::vector<DependencyLabel> labels;
};

/// Records every consecutive channel pair of a routed path.
void add_route_dependencies(ChannelDependencyGraph &g, const FtRoute &route, Coord dest,
                            PacketKind kind, const Network &net);

/// Vertices: every directed link between nodes outside block cores.
/// Edges: every channel pair used back to back by some packet, found by
/// routing a directive to every Safe node and an ACK from every resulting
/// ACK source. Routing errors propagate.
ChannelDependencyGraph build_cdg(const Network &net, const FaultConfiguration &cfg);

/// Empty iff the graph is acyclic; otherwise one explicit cycle.
std::optional<CycleWitness> has_cycle(const ChannelDependencyGraph &g);

/// Turn-model audit of a finished path, independent of the router: every hop
/// uses an interior link, never enters a block core, and every turn passes
/// is_turn_allowed. Returns one message per violation.
std::vector<std::string> audit_path(const Path &path, Coord dest,
                                    const FaultConfiguration &cfg, const Network &net);

/// BFS from (0,0) over non-wraparound links, passing through Safe and
/// Boundary nodes only.
std::set<Coord> brute_force_reachable(const Network &net, const FaultConfiguration &cfg);

struct RouteIssue {
  Coord dest;
  PacketKind kind;
  std::string what;
};

struct Report {
  int width = 0;
  int height = 0;
  std::string config_error; // set when the fault set could not be formed
  std::size_t destinations = 0;
  std::set<Coord> delivered;
  std::size_t acks_delivered = 0;
  std::size_t turn_violations = 0; // audit failures plus IllegalTurn refusals
  std::size_t core_entries = 0;
  std::size_t budget_violations = 0;
  std::size_t routing_errors = 0;
  int hop_budget = 0;
  int max_hops = 0;
  std::vector<RouteIssue> issues;
  std::vector<Coord> unreachable_healthy; // Safe/Boundary nodes outside BFS reach
  bool delivered_equals_safe = false;
  bool delivered_within_reachable = false;
  bool cdg_acyclic = false;
  std::size_t cdg_vertices = 0;
  std::size_t cdg_edges = 0;
  std::optional<CycleWitness> cycle;

  std::size_t violations() const;
  bool ok() const { return violations() == 0; }
};

/// Routes a directive to every Safe node and its ACK back, auditing each
/// path, and checks the resulting dependency graph for cycles. Violations
/// are data, never exceptions.
Report verify_all_routes(const Network &net, const FaultConfiguration &cfg);

/// Forms blocks from the fault set first; a BoundaryClash lands in
/// Report::config_error.
Report verify_fault_set(const Network &net, const FaultSet &faults,
                        FormOptions options = {});

std::string to_dot(const ChannelDependencyGraph &g);

} // namespace hsfroute
