#include "hsfroute/sim_engine.hpp"

#include "hsfroute/errors.hpp"

#include <cmath>
#include <deque>
#include <numeric>

namespace hsfroute {

double RunMetrics::mean_hops() const {
  if (data_hops.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &[c, h] : data_hops) sum += h;
  return sum / static_cast<double>(data_hops.size());
}

double RunMetrics::mean_ack_hops() const {
  if (ack_hops.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &[c, h] : ack_hops) sum += h;
  return sum / static_cast<double>(ack_hops.size());
}

namespace {

constexpr int kFree = -1;

class Simulator {
public:
  Simulator(const Network &net, const FaultConfiguration &cfg)
      : net_(net), cfg_(cfg), occupant_(net.node_count(), kFree) {}

  RunMetrics run(const SimOptions &options) {
    std::vector<Coord> order = options.destination_order;
    if (order.empty()) order = cfg_.classification().nodes_of(NodeClass::Safe);

    RunMetrics m;
    m.width = net_.width();
    m.height = net_.height();
    m.params = options.params;
    const auto &cls = cfg_.classification();
    m.faulty = cls.count(NodeClass::Faulty);
    m.unsafe = cls.count(NodeClass::Unsafe);
    m.boundary = cls.count(NodeClass::Boundary);
    m.boundary_nodes = m.boundary;
    m.blocks = cfg_.blocks().size();
    for (const FaultyBlock &b : cfg_.blocks()) m.core_area += static_cast<std::size_t>(b.core.area());

    std::size_t next_dest = 0;
    long idle = 0;
    const long stall_limit = 4L * static_cast<long>(net_.node_count()) + 64;
    while (next_dest < order.size() || live_ > 0 || !pending_acks_.empty()) {
      bool progressed = advance(m);
      progressed |= inject_acks(m);
      if (next_dest < order.size() && is_free(net_.input_gw())) {
        inject({PacketKind::Directive, net_.input_gw(), order[next_dest]}, m);
        ++next_dest;
        progressed = true;
      }
      ++now_;
      idle = progressed ? 0 : idle + 1;
      if (idle > stall_limit) throw Error("simulation stalled at tick " + std::to_string(now_));
    }
    m.ticks = now_;
    return m;
  }

private:
  struct NewPacket {
    PacketKind kind;
    Coord src;
    Coord dst;
    Coord directive_dest{};
  };

  bool is_free(Coord c) const { return occupant_[net_.index(c)] == kFree; }

  void inject(const NewPacket &np, RunMetrics &m) {
    Packet p;
    p.kind = np.kind;
    p.src = np.src;
    p.dst = np.dst;
    p.directive_dest = np.kind == PacketKind::Directive ? np.dst : np.directive_dest;
    p.path_so_far = {np.src};
    p.inject_time = now_;
    const int id = static_cast<int>(packets_.size());
    packets_.push_back(std::move(p));
    if (packets_[static_cast<std::size_t>(id)].delivered()) {
      arrive(id, m);
      return;
    }
    occupant_[net_.index(np.src)] = id;
    active_.push_back(id);
    ++live_;
  }

  bool inject_acks(RunMetrics &m) {
    bool any = false;
    for (auto it = pending_acks_.begin(); it != pending_acks_.end();) {
      if (is_free(it->src)) {
        inject(*it, m);
        it = pending_acks_.erase(it);
        any = true;
      } else {
        ++it;
      }
    }
    return any;
  }

  // Moves every active packet whose next node is free, oldest first.
  bool advance(RunMetrics &m) {
    bool any = false;
    std::vector<int> still;
    still.reserve(active_.size());
    for (int id : active_) {
      Packet &p = packets_[static_cast<std::size_t>(id)];
      const Coord cur = p.path_so_far.back();
      FtDecision d{};
      try {
        d = next_hop_ft(cur, p.incoming, p.dst, p.mode, cfg_, net_, p.kind);
      } catch (const Error &e) {
        throw Error(std::string(to_string(p.kind)) + " to " + to_string(p.dst) +
                    " failed after path " + path_to_json(p.path_so_far) + ": " + e.what());
      }
      const Coord next = step(cur, d.dir);
      if (!is_free(next)) {
        ++m.wait_ticks;
        still.push_back(id);
        continue;
      }
      occupant_[net_.index(cur)] = kFree;
      p.path_so_far.push_back(next);
      p.incoming = d.dir;
      p.mode = d.mode;
      any = true;
      if (p.delivered()) {
        arrive(id, m);
        --live_;
      } else {
        occupant_[net_.index(next)] = id;
        still.push_back(id);
      }
    }
    active_.swap(still);
    return any;
  }

  // Destination nodes consume directives; the ACK gateway drains ACKs.
  void arrive(int id, RunMetrics &m) {
    Packet &p = packets_[static_cast<std::size_t>(id)];
    p.deliver_time = now_;
    const int hops = static_cast<int>(p.path_so_far.size()) - 1;
    if (p.kind == PacketKind::Directive) {
      m.data_hops[p.dst] = hops;
      ++m.delivered;
      pending_acks_.push_back(
          {PacketKind::Ack, ack_source(p.path_so_far), net_.ack_gw(), p.dst});
    } else {
      m.ack_hops[p.directive_dest] = hops;
      ++m.acks_received;
    }
  }

  const Network &net_;
  const FaultConfiguration &cfg_;
  std::vector<int> occupant_;
  std::vector<Packet> packets_;
  std::vector<int> active_;
  std::deque<NewPacket> pending_acks_;
  long now_ = 0;
  long live_ = 0;
};

double mean_of(const std::vector<double> &v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double> &v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace

RunMetrics run_simulation(const Network &net, const FaultConfiguration &cfg,
                          const SimOptions &options) {
  return Simulator(net, cfg).run(options);
}

Summary aggregate(std::span<const RunMetrics> runs) {
  if (runs.empty()) throw Error("aggregate needs at least one run");
  const RunMetrics &first = runs.front();
  Summary s;
  s.width = first.width;
  s.height = first.height;
  s.model = first.params.model;
  s.fault_pct = first.params.fault_pct;
  s.fault_count = first.params.fault_count;
  s.runs = runs.size();

  std::vector<double> hops, ack_hops, spanned, faulty, unsafe, boundary, delivered;
  for (const RunMetrics &r : runs) {
    if (r.width != first.width || r.height != first.height ||
        r.params.model != first.params.model ||
        r.params.fault_pct != first.params.fault_pct ||
        r.params.fault_count != first.params.fault_count) {
      throw HeterogeneousRuns("runs differ in grid or fault parameters");
    }
    hops.push_back(r.mean_hops());
    ack_hops.push_back(r.mean_ack_hops());
    spanned.push_back(r.spanned_fraction());
    faulty.push_back(static_cast<double>(r.faulty));
    unsafe.push_back(static_cast<double>(r.unsafe));
    boundary.push_back(static_cast<double>(r.boundary));
    delivered.push_back(static_cast<double>(r.delivered));
    for (const auto &[c, h] : r.data_hops) ++s.hop_histogram[h];
  }
  s.mean_hops = mean_of(hops);
  s.stddev_hops = stddev_of(hops);
  s.mean_ack_hops = mean_of(ack_hops);
  s.stddev_ack_hops = stddev_of(ack_hops);
  s.spanned_fraction = mean_of(spanned);
  s.stddev_spanned = stddev_of(spanned);
  s.mean_faulty = mean_of(faulty);
  s.mean_unsafe = mean_of(unsafe);
  s.mean_boundary = mean_of(boundary);
  s.mean_delivered = mean_of(delivered);
  return s;
}

std::map<Coord, int> baseline_hops(const Network &net) {
  std::map<Coord, int> out;
  for (int y = 0; y < net.height(); ++y) {
    for (int x = 0; x < net.width(); ++x) {
      out[{x, y}] = static_cast<int>(route_agnostic(net.input_gw(), {x, y}, net).size()) - 1;
    }
  }
  return out;
}

std::map<int, std::size_t> path_length_histogram(std::span<const RunMetrics> runs,
                                                 const std::map<Coord, int> &baseline) {
  std::map<int, std::size_t> hist;
  for (const RunMetrics &r : runs) {
    for (const auto &[c, h] : r.data_hops) ++hist[h - baseline.at(c)];
  }
  return hist;
}

double unaffected_fraction(const std::map<int, std::size_t> &histogram) {
  std::size_t total = 0;
  for (const auto &[off, n] : histogram) total += n;
  if (total == 0) return 0.0;
  auto it = histogram.find(0);
  return it == histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

} // namespace hsfroute
