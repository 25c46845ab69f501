#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls the routing code; link rules are re-derived from row/column parity.

#include "hsfroute/fault_model.hpp"
#include "hsfroute/topology.hpp"

#include <deque>
#include <map>
#include <vector>

namespace hsfroute::testing {

/// Interior successors of (x,y): even rows east, odd rows west, even
/// columns north, odd columns south.
inline std::vector<Coord> oracle_successors(Coord c, int w, int h) {
  std::vector<Coord> out;
  const int nx = (c.y % 2 == 0) ? c.x + 1 : c.x - 1;
  const int ny = (c.x % 2 == 0) ? c.y + 1 : c.y - 1;
  if (nx >= 0 && nx < w) out.push_back({nx, c.y});
  if (ny >= 0 && ny < h) out.push_back({c.x, ny});
  return out;
}

/// BFS hop distance from `src` over interior links, skipping nodes for which
/// `blocked` holds. Unreached nodes are absent.
template <typename Blocked>
std::map<Coord, int> oracle_distances(Coord src, int w, int h, Blocked blocked) {
  std::map<Coord, int> dist{{src, 0}};
  std::deque<Coord> q{src};
  while (!q.empty()) {
    const Coord c = q.front();
    q.pop_front();
    for (Coord n : oracle_successors(c, w, h)) {
      if (blocked(n) || dist.count(n)) continue;
      dist[n] = dist[c] + 1;
      q.push_back(n);
    }
  }
  return dist;
}

inline std::map<Coord, int> oracle_distances(Coord src, int w, int h) {
  return oracle_distances(src, w, h, [](Coord) { return false; });
}

inline FaultSet faults_at(std::vector<Coord> cs) {
  FaultSet f;
  f.faults = std::move(cs);
  std::sort(f.faults.begin(), f.faults.end());
  return f;
}

inline bool is_dir_of(Coord a, Coord b, Direction d) { return step(a, d) == b; }

} // namespace hsfroute::testing
