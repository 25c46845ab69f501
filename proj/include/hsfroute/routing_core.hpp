#pragma once

#include "hsfroute/topology.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hsfroute {

/// Hop-by-hop node sequence, source and destination inclusive.
using Path = std::vector<Coord>;

enum class PacketKind : unsigned char { Directive, Ack };

const char *to_string(PacketKind k);

/// A routing decision together with the rule that produced it.
struct Decision {
  Direction dir;
  std::string_view rule;
};

/// Topology-agnostic XY-YX step for a directive travelling north-east.
///
/// Even-column destinations are approached East then North. Odd-column
/// destinations climb the even column one to their west; if the destination
/// row is even the last hop is East, otherwise the packet overshoots one row
/// north, runs East and drops one hop South. Throws NoLegalMove when the
/// destination lies west of or behind the packet.
Decision decide_agnostic(Coord current, Coord dest, const Network &net);

Direction next_hop_agnostic(Coord current, Coord dest, const Network &net);

/// Fault-free directive route. Throws NoLegalMove (propagated).
Path route_agnostic(Coord src, Coord dst, const Network &net);

/// ACK step toward the ACK gateway: odd rows climb North, even rows run East
/// to the last column, which then climbs North.
Decision decide_ack(Coord current, const Network &net);

/// Fault-free ACK route from src to the ACK gateway corner.
Path route_ack_agnostic(Coord src, const Network &net);

/// Node that originates the ACK for a delivered directive: the node before
/// the destination. Throws DegeneratePath for a single-node path.
Coord ack_origin(const Path &data_path);

/// Like ack_origin, but a single-node path (destination (0,0)) is its own
/// ACK source.
Coord ack_source(const Path &data_path);

/// Direction of the link a->b, honouring wraparound; throws NoLegalMove if
/// the grid has no such link.
Link link_between(Coord a, Coord b, const Network &net);

/// `[[x,y],...]`
std::string path_to_json(const Path &path);
Path path_from_json(std::string_view text);

} // namespace hsfroute
