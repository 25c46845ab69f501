#include "hsfroute/verification.hpp"

#include "hsfroute/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace hsfroute {

int ChannelDependencyGraph::add_channel(const Channel &c) {
  auto [it, inserted] = ids_.try_emplace(c, static_cast<int>(channels_.size()));
  if (inserted) {
    channels_.push_back(c);
    succ_.emplace_back();
  }
  return it->second;
}

std::optional<int> ChannelDependencyGraph::find(const Channel &c) const {
  auto it = ids_.find(c);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void ChannelDependencyGraph::add_dependency(const Channel &a, const Channel &b,
                                            const DependencyLabel &label) {
  const int ia = add_channel(a);
  const int ib = add_channel(b);
  if (labels_.try_emplace({ia, ib}, label).second) succ_[static_cast<std::size_t>(ia)].push_back(ib);
}

const DependencyLabel *ChannelDependencyGraph::label(int from, int to) const {
  auto it = labels_.find({from, to});
  return it == labels_.end() ? nullptr : &it->second;
}

void add_route_dependencies(ChannelDependencyGraph &g, const FtRoute &route, Coord dest,
                            PacketKind kind, const Network &net) {
  const Path &p = route.path;
  for (std::size_t i = 0; i + 2 < p.size(); ++i) {
    const Link first = link_between(p[i], p[i + 1], net);
    const Link second = link_between(p[i + 1], p[i + 2], net);
    g.add_dependency({p[i], p[i + 1], first.is_wraparound},
                     {p[i + 1], p[i + 2], second.is_wraparound},
                     {dest, kind, route.hops[i + 1].mode});
  }
}

namespace {

void add_healthy_channels(ChannelDependencyGraph &g, const Network &net,
                          const FaultConfiguration &cfg) {
  for (const Channel &c : net.channels(true)) {
    if (!cfg.is_blocked(c.from) && !cfg.is_blocked(c.to)) g.add_channel(c);
  }
}

} // namespace

ChannelDependencyGraph build_cdg(const Network &net, const FaultConfiguration &cfg) {
  ChannelDependencyGraph g;
  add_healthy_channels(g, net, cfg);
  std::set<Coord> ack_sources;
  for (Coord dest : cfg.classification().nodes_of(NodeClass::Safe)) {
    const FtRoute r = trace_ft(net.input_gw(), dest, cfg, net, PacketKind::Directive);
    add_route_dependencies(g, r, dest, PacketKind::Directive, net);
    ack_sources.insert(ack_source(r.path));
  }
  for (Coord src : ack_sources) {
    const FtRoute r = trace_ft(src, net.ack_gw(), cfg, net, PacketKind::Ack);
    add_route_dependencies(g, r, net.ack_gw(), PacketKind::Ack, net);
  }
  return g;
}

std::optional<CycleWitness> has_cycle(const ChannelDependencyGraph &g) {
  const auto &succ = g.successors();
  const std::size_t n = succ.size();
  enum : char { White, Grey, Black };
  std::vector<char> color(n, White);
  std::vector<int> parent(n, -1);

  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != White) continue;
    // Iterative DFS: (vertex, next successor index).
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto &[v, next] = stack.back();
      const auto &out = succ[static_cast<std::size_t>(v)];
      if (next == out.size()) {
        color[static_cast<std::size_t>(v)] = Black;
        stack.pop_back();
        continue;
      }
      const int w = out[next++];
      if (color[static_cast<std::size_t>(w)] == White) {
        color[static_cast<std::size_t>(w)] = Grey;
        parent[static_cast<std::size_t>(w)] = v;
        stack.push_back({w, 0});
      } else if (color[static_cast<std::size_t>(w)] == Grey) {
        std::vector<int> cyc{w};
        for (int u = v; u != w; u = parent[static_cast<std::size_t>(u)]) cyc.push_back(u);
        std::reverse(cyc.begin() + 1, cyc.end());
        CycleWitness witness;
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          const int a = cyc[i];
          const int b = cyc[(i + 1) % cyc.size()];
          witness.channels.push_back(g.channels()[static_cast<std::size_t>(a)]);
          if (const DependencyLabel *l = g.label(a, b)) witness.labels.push_back(*l);
        }
        return witness;
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> audit_path(const Path &path, Coord dest,
                                    const FaultConfiguration &cfg, const Network &net) {
  std::vector<std::string> issues;
  bool has_incoming = false;
  Direction incoming = Direction::North;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (cfg.is_blocked(path[i])) issues.push_back("core entry at " + to_string(path[i]));
    if (i + 1 == path.size()) break;
    std::optional<Link> hop;
    for (const Link &l : net.out_links(path[i])) {
      if (l.to == path[i + 1]) hop = l;
    }
    if (!hop) {
      issues.push_back("missing link " + to_string(path[i]) + "->" + to_string(path[i + 1]));
      has_incoming = false;
      continue;
    }
    if (hop->is_wraparound) issues.push_back("wraparound hop at " + to_string(path[i]));
    if (has_incoming && !is_turn_allowed(incoming, hop->dir, path[i], dest)) {
      issues.push_back("forbidden turn " + turn_name(incoming, hop->dir) + " at " +
                       to_string(path[i]));
    }
    incoming = hop->dir;
    has_incoming = true;
  }
  return issues;
}

std::set<Coord> brute_force_reachable(const Network &net, const FaultConfiguration &cfg) {
  std::set<Coord> seen;
  const Coord start = net.input_gw();
  if (cfg.is_blocked(start)) return seen;
  std::queue<Coord> q;
  q.push(start);
  seen.insert(start);
  while (!q.empty()) {
    const Coord c = q.front();
    q.pop();
    for (const Link &l : net.out_links(c)) {
      if (l.is_wraparound || cfg.is_blocked(l.to)) continue;
      if (seen.insert(l.to).second) q.push(l.to);
    }
  }
  return seen;
}

std::size_t Report::violations() const {
  return (config_error.empty() ? 0 : 1) + turn_violations + core_entries +
         budget_violations + routing_errors + (cycle ? 1 : 0) +
         (config_error.empty() && !delivered_equals_safe ? 1 : 0) +
         (config_error.empty() && !delivered_within_reachable ? 1 : 0);
}

namespace {

void audit_into(Report &rep, const Path &path, Coord dest, PacketKind kind,
                const FaultConfiguration &cfg, const Network &net) {
  for (std::string &msg : audit_path(path, dest, cfg, net)) {
    if (msg.starts_with("core entry")) {
      ++rep.core_entries;
    } else {
      ++rep.turn_violations;
    }
    rep.issues.push_back({dest, kind, std::move(msg)});
  }
  const int hops = static_cast<int>(path.size()) - 1;
  rep.max_hops = std::max(rep.max_hops, hops);
  if (hops > rep.hop_budget) {
    ++rep.budget_violations;
    rep.issues.push_back({dest, kind, "hop budget exceeded"});
  }
}

} // namespace

Report verify_all_routes(const Network &net, const FaultConfiguration &cfg) {
  Report rep;
  rep.width = net.width();
  rep.height = net.height();
  rep.hop_budget = hop_budget(net, cfg);

  ChannelDependencyGraph g;
  add_healthy_channels(g, net, cfg);

  const auto safe = cfg.classification().nodes_of(NodeClass::Safe);
  rep.destinations = safe.size();
  std::map<Coord, std::vector<Coord>> ack_sources; // source -> destinations it acks
  for (Coord dest : safe) {
    try {
      const FtRoute r = trace_ft(net.input_gw(), dest, cfg, net, PacketKind::Directive);
      audit_into(rep, r.path, dest, PacketKind::Directive, cfg, net);
      add_route_dependencies(g, r, dest, PacketKind::Directive, net);
      if (r.path.back() == dest) rep.delivered.insert(dest);
      ack_sources[ack_source(r.path)].push_back(dest);
    } catch (const IllegalTurn &e) {
      ++rep.turn_violations;
      rep.issues.push_back({dest, PacketKind::Directive, e.what()});
    } catch (const Error &e) {
      ++rep.routing_errors;
      rep.issues.push_back({dest, PacketKind::Directive, e.what()});
    }
  }
  for (const auto &[src, dests] : ack_sources) {
    try {
      const FtRoute r = trace_ft(src, net.ack_gw(), cfg, net, PacketKind::Ack);
      audit_into(rep, r.path, net.ack_gw(), PacketKind::Ack, cfg, net);
      add_route_dependencies(g, r, net.ack_gw(), PacketKind::Ack, net);
      rep.acks_delivered += dests.size();
    } catch (const IllegalTurn &e) {
      rep.turn_violations += dests.size();
      rep.issues.push_back({src, PacketKind::Ack, e.what()});
    } catch (const Error &e) {
      rep.routing_errors += dests.size();
      rep.issues.push_back({src, PacketKind::Ack, e.what()});
    }
  }

  const std::set<Coord> reach = brute_force_reachable(net, cfg);
  for (int y = 0; y < net.height(); ++y) {
    for (int x = 0; x < net.width(); ++x) {
      const Coord c{x, y};
      if (!cfg.is_blocked(c) && !reach.contains(c)) rep.unreachable_healthy.push_back(c);
    }
  }
  rep.delivered_equals_safe = rep.delivered == std::set<Coord>(safe.begin(), safe.end());
  rep.delivered_within_reachable =
      std::includes(reach.begin(), reach.end(), rep.delivered.begin(), rep.delivered.end());

  rep.cycle = has_cycle(g);
  rep.cdg_acyclic = !rep.cycle.has_value();
  rep.cdg_vertices = g.channels().size();
  rep.cdg_edges = g.edge_count();
  return rep;
}

Report verify_fault_set(const Network &net, const FaultSet &faults, FormOptions options) {
  try {
    return verify_all_routes(net, build_fault_configuration(net, faults, options));
  } catch (const BoundaryClash &e) {
    Report rep;
    rep.width = net.width();
    rep.height = net.height();
    rep.config_error = std::string("BoundaryClash: ") + e.what();
    return rep;
  }
}

std::string to_dot(const ChannelDependencyGraph &g) {
  std::ostringstream os;
  auto name = [](const Channel &c) {
    return "\"" + to_string(c.from) + "->" + to_string(c.to) + "\"";
  };
  os << "digraph cdg {\n";
  for (const Channel &c : g.channels()) {
    os << "  " << name(c);
    if (c.wraparound) os << " [style=dashed]";
    os << ";\n";
  }
  for (std::size_t a = 0; a < g.successors().size(); ++a) {
    for (int b : g.successors()[a]) {
      os << "  " << name(g.channels()[a]) << " -> "
         << name(g.channels()[static_cast<std::size_t>(b)]) << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace hsfroute
