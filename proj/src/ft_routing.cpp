#include "hsfroute/ft_routing.hpp"

#include "hsfroute/errors.hpp"

#include <json.hpp>

namespace hsfroute {

namespace {

bool is_even(int v) { return (v & 1) == 0; }

bool is_south_turn(Direction a, Direction b) {
  return (a == Direction::South) != (b == Direction::South);
}

std::string describe(Coord at, Coord dest) {
  return "at " + to_string(at) + " toward " + to_string(dest);
}

// Block whose core sits directly above `at`, when `at` lies in that block's
// south frame.
const FaultyBlock *block_above(Coord at, const FaultConfiguration &cfg) {
  const FaultyBlock *best = nullptr;
  for (int b : cfg.frames_at(at)) {
    const FaultyBlock &blk = cfg.blocks()[static_cast<std::size_t>(b)];
    if (blk.in_south_frame(at) && at.x >= blk.core.x_min && at.x <= blk.core.x_max) {
      if (!best || blk.core.y_min < best->core.y_min) best = &blk;
    }
  }
  return best;
}

// Block whose core lies directly east of `at`, when `at` lies in that
// block's west frame.
const FaultyBlock *block_east(Coord at, const FaultConfiguration &cfg) {
  for (int b : cfg.frames_at(at)) {
    const FaultyBlock &blk = cfg.blocks()[static_cast<std::size_t>(b)];
    if (blk.in_west_frame(at) && at.y >= blk.core.y_min && at.y <= blk.core.y_max) {
      return &blk;
    }
  }
  return nullptr;
}

FtDecision directive_normal(Coord at, Coord dest, const FaultConfiguration &cfg,
                            const Network &net) {
  const Decision d = decide_agnostic(at, dest, net);
  if (d.dir != Direction::North) return {d.dir, RoutingMode::Normal, d.rule};
  const FaultyBlock *blk = block_above(at, cfg);
  if (!blk) return {d.dir, RoutingMode::Normal, d.rule};
  if (!is_even(at.y)) return {Direction::West, RoutingMode::AbnormalWest, "fb-south-west"};
  if (at.y == blk->core.y_min - 2) {
    return {Direction::North, RoutingMode::AbnormalWest, "fb-south-to-inner-line"};
  }
  // Eastbound inner line: going round clockwise would need a south-east turn.
  throw IllegalTurn("blocked on an eastbound inner south line " + describe(at, dest));
}

FtDecision ack_normal(Coord at, const FaultConfiguration &cfg, const Network &net) {
  const Decision d = decide_ack(at, net);
  if (d.dir != Direction::East) return {d.dir, RoutingMode::Normal, d.rule};
  if (!block_east(at, cfg)) return {d.dir, RoutingMode::Normal, d.rule};
  if (is_even(at.x)) return {Direction::North, RoutingMode::AbnormalNorth, "ack-fb-climb"};
  return {Direction::East, RoutingMode::AbnormalNorth, "ack-fb-to-even-column"};
}

FtDecision normal(Coord at, Coord dest, const FaultConfiguration &cfg,
                  const Network &net, PacketKind kind) {
  return kind == PacketKind::Directive ? directive_normal(at, dest, cfg, net)
                                       : ack_normal(at, cfg, net);
}

FtDecision climb(Coord at, Coord dest, const FaultConfiguration &cfg,
                 const Network &net, PacketKind kind) {
  if (!is_even(at.x)) {
    throw IllegalTurn("north climb on a southbound column " + describe(at, dest));
  }
  bool beside_core = false;
  for (int b : cfg.frames_at(at)) {
    const FaultyBlock &blk = cfg.blocks()[static_cast<std::size_t>(b)];
    if (blk.in_west_frame(at) && at.y <= blk.core.y_max) beside_core = true;
  }
  if (beside_core || !is_even(at.y)) {
    return {Direction::North, RoutingMode::AbnormalNorth, "fb-climb"};
  }
  FtDecision d = normal(at, dest, cfg, net, kind);
  if (d.mode == RoutingMode::Normal) d.rule = "fb-exit";
  return d;
}

} // namespace

const char *to_string(RoutingMode m) {
  switch (m) {
  case RoutingMode::Normal: return "normal";
  case RoutingMode::AbnormalWest: return "abnormal-west";
  case RoutingMode::AbnormalNorth: return "abnormal-north";
  }
  return "?";
}

bool is_turn_allowed(Direction incoming, Direction outgoing, Coord at, Coord dest,
                     bool wraparound) {
  if (wraparound) return false;
  if (incoming == outgoing) return true;
  if (incoming == opposite(outgoing)) return false;
  if (!is_south_turn(incoming, outgoing)) return true;
  if (incoming == Direction::East && outgoing == Direction::South) {
    return step(at, Direction::South) == dest &&
           parity_class(dest) == ParityClass::OddOdd;
  }
  return false;
}

std::string turn_name(Direction incoming, Direction outgoing) {
  if (incoming == outgoing) return "straight";
  return {to_char(incoming), to_char(outgoing)};
}

FtDecision next_hop_ft(Coord current, std::optional<Direction> incoming, Coord dest,
                       RoutingMode mode, const FaultConfiguration &cfg,
                       const Network &net, PacketKind kind) {
  if (!net.contains(current) || !net.contains(dest)) {
    throw OutOfBounds("routing outside grid " + describe(current, dest));
  }
  if (cfg.is_blocked(current)) {
    throw IllegalTurn("packet inside a block core " + describe(current, dest));
  }

  FtDecision d{Direction::North, mode, ""};
  switch (mode) {
  case RoutingMode::Normal:
    d = normal(current, dest, cfg, net, kind);
    break;
  case RoutingMode::AbnormalWest:
    if (kind != PacketKind::Directive || is_even(current.y)) {
      throw IllegalTurn("west detour off an odd south line " + describe(current, dest));
    }
    d = {Direction::West, RoutingMode::AbnormalWest, "fb-south-west"};
    if (is_even(current.x)) {
      for (int b : cfg.frames_at(current)) {
        if (cfg.blocks()[static_cast<std::size_t>(b)].in_south_west_corner(current)) {
          d = {Direction::North, RoutingMode::AbnormalNorth, "fb-corner-north"};
          break;
        }
      }
    }
    break;
  case RoutingMode::AbnormalNorth:
    d = climb(current, dest, cfg, net, kind);
    break;
  }

  const auto l = net.link(current, d.dir);
  if (!l || l->is_wraparound) {
    throw IllegalTurn(std::string("no interior ") + to_string(d.dir) + " link " +
                      describe(current, dest));
  }
  if (cfg.is_blocked(l->to)) {
    const std::string msg = std::string(to_string(d.dir)) + " hop into block core " +
                            describe(current, dest);
    if (mode == RoutingMode::Normal && d.mode == RoutingMode::Normal) {
      throw UnexpectedApproach(msg);
    }
    throw IllegalTurn(msg);
  }
  if (incoming && !is_turn_allowed(*incoming, d.dir, current, dest)) {
    throw IllegalTurn("turn " + turn_name(*incoming, d.dir) + " forbidden " +
                      describe(current, dest));
  }
  return d;
}

int hop_budget(const Network &net, const FaultConfiguration &cfg) {
  int budget = net.width() + net.height() + 4;
  for (const FaultyBlock &b : cfg.blocks()) {
    budget += 2 * (b.core.width() + b.core.height()) + 8;
  }
  return budget;
}

FtRoute trace_ft(Coord src, Coord dst, const FaultConfiguration &cfg,
                 const Network &net, PacketKind kind) {
  if (!net.contains(src) || !net.contains(dst)) throw OutOfBounds("route endpoint outside grid");
  if (kind == PacketKind::Directive && cfg.at(dst) != NodeClass::Safe) {
    throw Unreachable("destination " + to_string(dst) + " is " + to_string(cfg.at(dst)));
  }
  if (kind == PacketKind::Ack && dst != net.ack_gw()) {
    throw Unreachable("ACKs are routed to the ACK gateway corner only");
  }
  if (cfg.is_blocked(src)) throw Unreachable("source " + to_string(src) + " is in a block core");

  const int budget = hop_budget(net, cfg);
  FtRoute route;
  route.path.push_back(src);
  Coord cur = src;
  RoutingMode mode = RoutingMode::Normal;
  std::optional<Direction> incoming;
  while (cur != dst) {
    const FtDecision d = next_hop_ft(cur, incoming, dst, mode, cfg, net, kind);
    route.hops.push_back({static_cast<int>(route.hops.size()), cur, mode, incoming, d.dir,
                          incoming ? turn_name(*incoming, d.dir) : "inject",
                          std::string(d.rule)});
    cur = step(cur, d.dir);
    incoming = d.dir;
    mode = d.mode;
    route.path.push_back(cur);
    if (static_cast<int>(route.hops.size()) > budget) {
      throw HopBudgetExceeded("route " + to_string(src) + "->" + to_string(dst) +
                              " exceeded " + std::to_string(budget) + " hops");
    }
  }
  return route;
}

Path route_ft(Coord src, Coord dst, const FaultConfiguration &cfg,
              const Network &net, PacketKind kind) {
  return trace_ft(src, dst, cfg, net, kind).path;
}

std::string trace_to_jsonl(const FtRoute &route, PacketKind kind) {
  std::string out;
  for (const HopRecord &h : route.hops) {
    nlohmann::json j{{"kind", to_string(kind)},
                     {"step", h.step},
                     {"coord", {h.coord.x, h.coord.y}},
                     {"mode", to_string(h.mode)},
                     {"out", to_string(h.outgoing)},
                     {"turn", h.turn},
                     {"rule", h.rule}};
    out += j.dump();
    out += '\n';
  }
  if (!route.path.empty()) {
    const Coord last = route.path.back();
    nlohmann::json j{{"kind", to_string(kind)},
                     {"step", route.hops.size()},
                     {"coord", {last.x, last.y}},
                     {"mode", "normal"},
                     {"rule", "delivered"}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

} // namespace hsfroute
