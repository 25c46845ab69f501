#pragma once

#include "hsfroute/fault_model.hpp"
#include "hsfroute/routing_core.hpp"
#include "hsfroute/topology.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hsfroute {

/// Two-bit header flag. AbnormalWest: running west along the odd line of a
/// block's south frame. AbnormalNorth: climbing the even line of a block's
/// west frame toward its north-west corner.
enum class RoutingMode : unsigned char { Normal, AbnormalWest, AbnormalNorth };

const char *to_string(RoutingMode m);

/// South-last turn rule. South-west and south-east compositions are
/// forbidden, except East->South as the final hop into an OddOdd
/// destination. Reversals and any hop over a wraparound link are forbidden.
bool is_turn_allowed(Direction incoming, Direction outgoing, Coord at, Coord dest,
                     bool wraparound = false);

/// Two-letter turn name ("EN" = travelling East, leaving North), or
/// "straight".
std::string turn_name(Direction incoming, Direction outgoing);

struct FtDecision {
  Direction dir;
  RoutingMode mode; // mode carried by the packet on the next hop
  std::string_view rule;
};

/// One routing decision at `current`. Away from blocks this is plain XY-YX
/// (directives) or XY (ACKs). Blocks are circumnavigated clockwise:
/// directives meet them from the south and run west then north, ACKs meet
/// them from the west and run north; both resume normal routing at the
/// north-west corner. Throws UnexpectedApproach when a normal-mode hop would
/// enter a block core, IllegalTurn when no permitted move exists.
FtDecision next_hop_ft(Coord current, std::optional<Direction> incoming, Coord dest,
                       RoutingMode mode, const FaultConfiguration &cfg,
                       const Network &net, PacketKind kind);

/// (W+H+4) + sum over blocks of (2(w+h)+8), w and h being core dimensions.
int hop_budget(const Network &net, const FaultConfiguration &cfg);

struct HopRecord {
  int step;
  Coord coord;
  RoutingMode mode;
  std::optional<Direction> incoming;
  Direction outgoing;
  std::string turn;
  std::string rule;
};

struct FtRoute {
  Path path;
  std::vector<HopRecord> hops;
};

/// Full route with per-hop records. Directives must target a Safe node
/// (Unreachable otherwise); ACKs must target the ACK gateway corner.
/// Throws HopBudgetExceeded past hop_budget().
FtRoute trace_ft(Coord src, Coord dst, const FaultConfiguration &cfg,
                 const Network &net, PacketKind kind);

Path route_ft(Coord src, Coord dst, const FaultConfiguration &cfg,
              const Network &net, PacketKind kind);

/// JSON-lines form of a trace: one object per hop.
std::string trace_to_jsonl(const FtRoute &route, PacketKind kind);

} // namespace hsfroute
