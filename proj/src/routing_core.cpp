#include "hsfroute/routing_core.hpp"

#include "hsfroute/errors.hpp"

#include <json.hpp>

namespace hsfroute {

namespace {

bool is_even(int v) { return (v & 1) == 0; }

[[noreturn]] void no_move(Coord current, Coord dest, const char *why) {
  throw NoLegalMove("no agnostic move from " + to_string(current) + " to " +
                    to_string(dest) + ": " + why);
}

} // namespace

const char *to_string(PacketKind k) {
  return k == PacketKind::Directive ? "directive" : "ack";
}

Decision decide_agnostic(Coord current, Coord dest, const Network &net) {
  if (!net.contains(current) || !net.contains(dest)) {
    throw OutOfBounds("agnostic routing outside grid");
  }
  if (current == dest) no_move(current, dest, "already at destination");

  const bool odd_dest_col = !is_even(dest.x);
  const int turn_col = odd_dest_col ? dest.x - 1 : dest.x;
  const bool row_even = is_even(current.y);

  if (current.y < dest.y) {
    if (current.x < turn_col) {
      if (!row_even) no_move(current, dest, "eastward leg on a westbound row");
      return {Direction::East, "xy-east"};
    }
    if (current.x == turn_col) return {Direction::North, "xy-north"};
    no_move(current, dest, "destination column lies west");
  }

  if (current.y == dest.y) {
    if (current.x < dest.x && row_even) return {Direction::East, "rule3-east"};
    if (current.x == turn_col && odd_dest_col && !row_even) {
      return {Direction::North, "rule4-overshoot"};
    }
    no_move(current, dest, "cannot reach destination along its row");
  }

  // Only the overshoot row above an OddOdd destination lies north of it.
  if (current.y == dest.y + 1 && odd_dest_col && !is_even(dest.y)) {
    if (current.x < dest.x) return {Direction::East, "rule4-east"};
    if (current.x == dest.x) return {Direction::South, "rule4-south"};
  }
  no_move(current, dest, "destination lies south");
}

Direction next_hop_agnostic(Coord current, Coord dest, const Network &net) {
  return decide_agnostic(current, dest, net).dir;
}

Path route_agnostic(Coord src, Coord dst, const Network &net) {
  Path path{src};
  const int budget = net.width() + net.height() + 4;
  Coord cur = src;
  while (cur != dst) {
    const Direction d = next_hop_agnostic(cur, dst, net);
    const auto l = net.link(cur, d);
    if (!l || l->is_wraparound) {
      no_move(cur, dst, "chosen direction has no interior link");
    }
    cur = l->to;
    path.push_back(cur);
    if (static_cast<int>(path.size()) - 1 > budget) {
      throw HopBudgetExceeded("agnostic route exceeded W+H+4 hops");
    }
  }
  return path;
}

Decision decide_ack(Coord current, const Network &net) {
  if (!net.contains(current)) throw OutOfBounds("ack routing outside grid");
  const Coord gw = net.ack_gw();
  if (current == gw) throw NoLegalMove("ack already at ACK gateway corner");
  if (!is_even(current.y)) {
    if (!is_even(current.x)) {
      throw NoLegalMove("ack source " + to_string(current) +
                        " is OddOdd and has no north-east link");
    }
    return {Direction::North, "ack-north-to-even-row"};
  }
  if (current.x < gw.x) return {Direction::East, "ack-east"};
  return {Direction::North, "ack-north"};
}

Path route_ack_agnostic(Coord src, const Network &net) {
  Path path{src};
  const int budget = net.width() + net.height() + 4;
  Coord cur = src;
  while (cur != net.ack_gw()) {
    const Direction d = decide_ack(cur, net).dir;
    const auto l = net.link(cur, d);
    if (!l || l->is_wraparound) throw NoLegalMove("ack step leaves grid");
    cur = l->to;
    path.push_back(cur);
    if (static_cast<int>(path.size()) - 1 > budget) {
      throw HopBudgetExceeded("ack route exceeded W+H+4 hops");
    }
  }
  return path;
}

Coord ack_origin(const Path &data_path) {
  if (data_path.size() < 2) {
    throw DegeneratePath("path with fewer than two nodes has no predecessor");
  }
  return data_path[data_path.size() - 2];
}

Coord ack_source(const Path &data_path) {
  if (data_path.empty()) throw DegeneratePath("empty path");
  return data_path.size() == 1 ? data_path.front() : ack_origin(data_path);
}

Link link_between(Coord a, Coord b, const Network &net) {
  for (const Link &l : net.out_links(a)) {
    if (l.to == b) return l;
  }
  throw NoLegalMove("no link " + to_string(a) + "->" + to_string(b));
}

std::string path_to_json(const Path &path) {
  nlohmann::json j = nlohmann::json::array();
  for (Coord c : path) j.push_back({c.x, c.y});
  return j.dump();
}

Path path_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  Path path;
  for (const auto &p : j) path.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return path;
}

} // namespace hsfroute
