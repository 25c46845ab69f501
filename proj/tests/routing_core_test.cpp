#include "hsfroute/errors.hpp"
#include "hsfroute/routing_core.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace hsfroute {
namespace {

Path P(std::initializer_list<Coord> cs) { return Path(cs); }

bool contains_in_order(const Path &path, const Path &waypoints) {
  std::size_t i = 0;
  for (Coord c : path) {
    if (i < waypoints.size() && c == waypoints[i]) ++i;
  }
  return i == waypoints.size();
}

TEST(AgnosticTest, FirstHops) {
  const Network net = build_network({5, 5});
  EXPECT_EQ(next_hop_agnostic({0, 0}, {1, 2}, net), Direction::North);
  EXPECT_EQ(next_hop_agnostic({1, 2}, {1, 1}, net), Direction::South);
  EXPECT_EQ(next_hop_agnostic({0, 0}, {2, 2}, net), Direction::East);
}

TEST(AgnosticTest, SmallGridExampleRoutes) {
  const Network net = build_network({5, 5});
  const Path orange = route_agnostic({0, 0}, {1, 2}, net);
  EXPECT_EQ(orange, P({{0, 0}, {0, 1}, {0, 2}, {1, 2}}));
  EXPECT_TRUE(contains_in_order(orange, P({{0, 0}, {0, 2}, {1, 2}})));

  const Path blue = route_agnostic({0, 0}, {1, 1}, net);
  EXPECT_EQ(blue, P({{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}}));
  EXPECT_EQ(blue.size() - 1, 4u);
}

TEST(AgnosticTest, IdentityRoute) {
  const Network net = build_network({5, 5});
  EXPECT_EQ(route_agnostic({0, 0}, {0, 0}, net), P({{0, 0}}));
}

TEST(AgnosticTest, EveryHopIsALegalInteriorLink) {
  for (int n : {5, 7, 11, 25}) {
    const Network net = build_network({n, n});
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const Path p = route_agnostic({0, 0}, {x, y}, net);
        ASSERT_EQ(p.back(), (Coord{x, y}));
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
          const auto succ = testing::oracle_successors(p[i], n, n);
          EXPECT_NE(std::find(succ.begin(), succ.end(), p[i + 1]), succ.end())
              << to_string(p[i]) << "->" << to_string(p[i + 1]);
        }
      }
    }
  }
}

TEST(AgnosticTest, PathLengthsEqualShortestPaths) {
  // c* = 0: the agnostic route is a shortest path for every destination.
  for (int n : {5, 9, 25}) {
    const Network net = build_network({n, n});
    const auto bfs = testing::oracle_distances({0, 0}, n, n);
    for (const auto &[dst, d] : bfs) {
      EXPECT_EQ(static_cast<int>(route_agnostic({0, 0}, dst, net).size()) - 1, d)
          << to_string(dst);
    }
  }
}

TEST(AgnosticTest, FaultFreeMeanOnTwentyFiveGrid) {
  const auto bfs = testing::oracle_distances({0, 0}, 25, 25);
  ASSERT_EQ(bfs.size(), 625u);
  const int total = std::accumulate(bfs.begin(), bfs.end(), 0,
                                    [](int s, const auto &kv) { return s + kv.second; });
  // Frozen from the BFS oracle above.
  EXPECT_EQ(total, 15288);
  EXPECT_DOUBLE_EQ(total / 625.0, 24.4608);

  const Network net = build_network({25, 25});
  int routed = 0;
  for (const auto &[dst, d] : bfs) routed += static_cast<int>(route_agnostic({0, 0}, dst, net).size()) - 1;
  EXPECT_EQ(routed, total);
}

TEST(AckTest, SmallGridAckPath) {
  const Network net = build_network({5, 5});
  const Path ack = route_ack_agnostic({1, 2}, net);
  EXPECT_EQ(ack.back(), (Coord{4, 4}));
  EXPECT_TRUE(contains_in_order(ack, P({{1, 2}, {4, 2}, {4, 4}})));
  EXPECT_EQ(route_ack_agnostic({4, 4}, net), P({{4, 4}}));
}

TEST(AckTest, EastNorthOnlyManhattanLength) {
  const Network net = build_network({5, 5});
  const Path ack = route_ack_agnostic({2, 1}, net);
  EXPECT_EQ(ack.back(), (Coord{4, 4}));
  EXPECT_EQ(ack.size() - 1, 5u);
  for (std::size_t i = 0; i + 1 < ack.size(); ++i) {
    const bool east = testing::is_dir_of(ack[i], ack[i + 1], Direction::East);
    const bool north = testing::is_dir_of(ack[i], ack[i + 1], Direction::North);
    EXPECT_TRUE(east || north);
  }
}

TEST(AckTest, EveryAckSourceReachesTheGateway) {
  const Network net = build_network({25, 25});
  for (int y = 0; y < 25; ++y) {
    for (int x = 0; x < 25; ++x) {
      const Path data = route_agnostic({0, 0}, {x, y}, net);
      const Path ack = route_ack_agnostic(ack_source(data), net);
      EXPECT_EQ(ack.back(), net.ack_gw());
      for (std::size_t i = 0; i + 1 < ack.size(); ++i) {
        EXPECT_FALSE(link_between(ack[i], ack[i + 1], net).is_wraparound);
      }
    }
  }
}

TEST(AckOriginTest, Examples) {
  EXPECT_EQ(ack_origin(P({{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}})), (Coord{1, 2}));
  EXPECT_EQ(ack_origin(P({{0, 0}, {1, 0}})), (Coord{0, 0}));
  EXPECT_THROW(ack_origin(P({{0, 0}})), DegeneratePath);
  EXPECT_EQ(ack_source(P({{0, 0}})), (Coord{0, 0}));
}

TEST(PathJsonTest, RoundTrip) {
  const Path p = P({{0, 0}, {0, 1}, {0, 2}, {1, 2}});
  const std::string text = path_to_json(p);
  EXPECT_EQ(text, "[[0,0],[0,1],[0,2],[1,2]]");
  EXPECT_EQ(path_from_json(text), p);
}

TEST(LinkBetweenTest, RejectsNonAdjacent) {
  const Network net = build_network({5, 5});
  EXPECT_EQ(link_between({0, 0}, {1, 0}, net).dir, Direction::East);
  EXPECT_THROW(link_between({0, 0}, {2, 0}, net), Error);
}

} // namespace
} // namespace hsfroute
