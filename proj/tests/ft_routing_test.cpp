#include "hsfroute/errors.hpp"
#include "hsfroute/ft_routing.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace hsfroute {
namespace {

using testing::faults_at;

Direction dir_of(Coord a, Coord b) {
  for (Direction d : kAllDirections)
    if (step(a, d) == b) return d;
  ADD_FAILURE() << "non-adjacent hop " << to_string(a) << "->" << to_string(b);
  return Direction::North;
}

// Independent south-last audit of a finished path.
void expect_south_last(const Path &p, Coord dest, int w, int h) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto succ = testing::oracle_successors(p[i], w, h);
    ASSERT_NE(std::find(succ.begin(), succ.end(), p[i + 1]), succ.end())
        << "no interior link " << to_string(p[i]) << "->" << to_string(p[i + 1]);
  }
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const Direction in = dir_of(p[i - 1], p[i]);
    const Direction out = dir_of(p[i], p[i + 1]);
    EXPECT_NE(out, opposite(in)) << "reversal at " << to_string(p[i]);
    const bool sw = (in == Direction::West && out == Direction::South) ||
                    (in == Direction::South && out == Direction::West);
    const bool se = (in == Direction::East && out == Direction::South) ||
                    (in == Direction::South && out == Direction::East);
    const bool final_odd_odd = in == Direction::East && out == Direction::South &&
                               i + 2 == p.size() && dest.x % 2 == 1 && dest.y % 2 == 1;
    EXPECT_FALSE(sw) << "SW turn at " << to_string(p[i]) << " towards " << to_string(dest);
    EXPECT_FALSE(se && !final_odd_odd) << "SE turn at " << to_string(p[i]);
  }
}

bool contains_in_order(const Path &path, const Path &waypoints) {
  std::size_t i = 0;
  for (Coord c : path)
    if (i < waypoints.size() && c == waypoints[i]) ++i;
  return i == waypoints.size();
}

TEST(TurnRuleTest, Examples) {
  EXPECT_FALSE(is_turn_allowed(Direction::East, Direction::South, {2, 2}, {5, 5}));
  EXPECT_TRUE(is_turn_allowed(Direction::East, Direction::South, {1, 2}, {1, 1}));
  EXPECT_TRUE(is_turn_allowed(Direction::North, Direction::East, {2, 2}, {5, 5}));
  EXPECT_FALSE(is_turn_allowed(Direction::West, Direction::South, {3, 3}, {3, 1}));
  EXPECT_FALSE(is_turn_allowed(Direction::South, Direction::West, {3, 3}, {1, 3}));
  EXPECT_FALSE(is_turn_allowed(Direction::South, Direction::East, {3, 3}, {5, 3}));
  EXPECT_FALSE(is_turn_allowed(Direction::East, Direction::West, {3, 2}, {1, 2}));
  EXPECT_FALSE(is_turn_allowed(Direction::North, Direction::North, {2, 2}, {2, 5}, true));
  EXPECT_TRUE(is_turn_allowed(Direction::West, Direction::North, {2, 3}, {2, 6}));
  EXPECT_TRUE(is_turn_allowed(Direction::North, Direction::West, {2, 3}, {0, 3}));
  // East->South into an OddOdd node that is not the destination stays forbidden.
  EXPECT_FALSE(is_turn_allowed(Direction::East, Direction::South, {3, 4}, {3, 1}));
}

TEST(TurnRuleTest, Names) {
  EXPECT_EQ(turn_name(Direction::East, Direction::North), "EN");
  EXPECT_EQ(turn_name(Direction::North, Direction::North), "straight");
}

TEST(DelegationTest, NoBlocksMeansAgnosticRouting) {
  for (int n : {5, 9, 15}) {
    const Network net = build_network({n, n});
    const auto cfg = FaultConfiguration::fault_free(net);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const Coord dst{x, y};
        EXPECT_EQ(route_ft({0, 0}, dst, cfg, net, PacketKind::Directive),
                  route_agnostic({0, 0}, dst, net));
        for (int cy = 0; cy < n; ++cy)
          for (int cx = 0; cx < n; ++cx) {
            const Coord cur{cx, cy};
            if (cur == dst) continue;
            Direction agn;
            try {
              agn = next_hop_agnostic(cur, dst, net);
            } catch (const NoLegalMove &) {
              continue;
            }
            const auto ft = next_hop_ft(cur, std::nullopt, dst, RoutingMode::Normal, cfg, net,
                                        PacketKind::Directive);
            EXPECT_EQ(ft.dir, agn);
            EXPECT_EQ(ft.mode, RoutingMode::Normal);
          }
        const Path data = route_agnostic({0, 0}, dst, net);
        EXPECT_EQ(route_ft(ack_source(data), net.ack_gw(), cfg, net, PacketKind::Ack),
                  route_ack_agnostic(ack_source(data), net));
      }
    }
  }
}

class TwoBlockDetourTest : public ::testing::Test {
protected:
  Network net = build_network({11, 11});
  FaultConfiguration cfg = build_fault_configuration(net, faults_at({{2, 3}, {8, 6}}));
};

TEST_F(TwoBlockDetourTest, BlockGeometry) {
  ASSERT_EQ(cfg.blocks().size(), 2u);
  EXPECT_EQ(cfg.at({2, 1}), NodeClass::Boundary);
  EXPECT_EQ(cfg.at({6, 6}), NodeClass::Boundary);
  EXPECT_EQ(cfg.at({2, 0}), NodeClass::Safe);
  EXPECT_EQ(cfg.at({3, 6}), NodeClass::Safe);
}

TEST_F(TwoBlockDetourTest, DirectiveWaypoints) {
  const FtRoute r = trace_ft({0, 0}, {3, 6}, cfg, net, PacketKind::Directive);
  const Path expected{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}, {0, 2},
                      {0, 3}, {0, 4}, {1, 4}, {2, 4}, {2, 5}, {2, 6}, {3, 6}};
  EXPECT_EQ(r.path, expected);
  ASSERT_EQ(r.hops.size(), r.path.size() - 1);
  EXPECT_EQ(r.hops[2].coord, (Coord{2, 0}));
  EXPECT_EQ(r.hops[2].turn, "EN");
  EXPECT_EQ(r.hops[3].coord, (Coord{2, 1}));
  EXPECT_EQ(r.hops[3].outgoing, Direction::West);
  EXPECT_EQ(r.hops[3].mode, RoutingMode::Normal);
  EXPECT_EQ(r.hops[4].mode, RoutingMode::AbnormalWest);
  EXPECT_EQ(r.hops[10].coord, (Coord{2, 4}));
  EXPECT_EQ(r.hops[10].turn, "EN");
  expect_south_last(r.path, {3, 6}, 11, 11);
}

TEST_F(TwoBlockDetourTest, AckWaypoints) {
  const Path data = route_ft({0, 0}, {3, 6}, cfg, net, PacketKind::Directive);
  const Coord src = ack_source(data);
  EXPECT_EQ(src, (Coord{2, 6}));
  const FtRoute ack = trace_ft(src, net.ack_gw(), cfg, net, PacketKind::Ack);
  EXPECT_TRUE(contains_in_order(ack.path, {{2, 6}, {6, 6}, {6, 8}, {10, 8}, {10, 10}}));
  bool en_at_6_6 = false;
  for (const HopRecord &h : ack.hops) en_at_6_6 |= h.coord == Coord{6, 6} && h.turn == "EN";
  EXPECT_TRUE(en_at_6_6);
  expect_south_last(ack.path, net.ack_gw(), 11, 11);
}

TEST_F(TwoBlockDetourTest, JsonLinesTrace) {
  const FtRoute r = trace_ft({0, 0}, {3, 6}, cfg, net, PacketKind::Directive);
  const std::string text = trace_to_jsonl(r, PacketKind::Directive);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.hops.size() + 1);
  EXPECT_NE(text.find("\"coord\":[2,1]"), std::string::npos);
  EXPECT_NE(text.find("\"rule\":\"fb-south-west\""), std::string::npos);
}

TEST(FtRouteTest, UnreachableDestinations) {
  const Network net = build_network({11, 11});
  const auto cfg = build_fault_configuration(net, faults_at({{5, 5}}));
  EXPECT_THROW(trace_ft({0, 0}, {5, 5}, cfg, net, PacketKind::Directive), Unreachable);
  EXPECT_THROW(trace_ft({0, 0}, {4, 4}, cfg, net, PacketKind::Directive), Unreachable);
  EXPECT_THROW(trace_ft({0, 0}, {4, 4}, cfg, net, PacketKind::Ack), Error);
}

TEST(FtRouteTest, HopBudgetFormula) {
  const Network net = build_network({15, 15});
  EXPECT_EQ(hop_budget(net, FaultConfiguration::fault_free(net)), 34);
  const auto cfg = build_fault_configuration(net, faults_at({{6, 6}, {7, 7}}));
  EXPECT_EQ(hop_budget(net, cfg), 34 + 2 * (2 + 2) + 8);
}

// Exhaustive sweep: one random block per configuration on 15x15.
TEST(FtRouteTest, RandomSingleBlockSweep) {
  const Network net = build_network({15, 15});
  Rng rng(31);
  int configs = 0;
  for (int trial = 0; trial < 300 && configs < 100; ++trial) {
    const FaultSet f = sample_random_fault_count(net.config(), 1 + trial % 3, rng);
    FaultConfiguration cfg;
    try {
      cfg = build_fault_configuration(net, f);
    } catch (const BoundaryClash &) {
      continue;
    }
    if (cfg.blocks().size() != 1) continue;
    ++configs;
    const int budget = hop_budget(net, cfg);
    const auto reach = testing::oracle_distances({0, 0}, 15, 15,
                                                 [&](Coord c) { return cfg.is_blocked(c); });
    for (int y = 0; y < 15; ++y) {
      for (int x = 0; x < 15; ++x) {
        const Coord dst{x, y};
        if (cfg.at(dst) != NodeClass::Safe) continue;
        EXPECT_TRUE(reach.count(dst));
        const Path p = route_ft({0, 0}, dst, cfg, net, PacketKind::Directive);
        EXPECT_EQ(p.back(), dst);
        EXPECT_LE(static_cast<int>(p.size()) - 1, budget);
        for (Coord c : p) EXPECT_FALSE(cfg.is_blocked(c));
        expect_south_last(p, dst, 15, 15);
        const Path ack = route_ft(ack_source(p), net.ack_gw(), cfg, net, PacketKind::Ack);
        EXPECT_LE(static_cast<int>(ack.size()) - 1, budget);
        for (Coord c : ack) EXPECT_FALSE(cfg.is_blocked(c));
        expect_south_last(ack, net.ack_gw(), 15, 15);
      }
    }
  }
  EXPECT_EQ(configs, 100);
}

TEST(FtRouteTest, DetoursOnlyLengthenByEvenOffsets) {
  const Network net = build_network({15, 15});
  const auto cfg = build_fault_configuration(net, faults_at({{6, 6}, {7, 7}}));
  int detoured = 0;
  for (int y = 0; y < 15; ++y)
    for (int x = 0; x < 15; ++x) {
      if (cfg.at({x, y}) != NodeClass::Safe) continue;
      const int ft = static_cast<int>(route_ft({0, 0}, {x, y}, cfg, net, PacketKind::Directive).size());
      const int agn = static_cast<int>(route_agnostic({0, 0}, {x, y}, net).size());
      EXPECT_GE(ft - agn, 0);
      EXPECT_EQ((ft - agn) % 2, 0);
      detoured += ft > agn;
    }
  EXPECT_GT(detoured, 0);
}

TEST(ModeTest, Names) {
  EXPECT_STREQ(to_string(RoutingMode::Normal), "normal");
  EXPECT_STREQ(to_string(RoutingMode::AbnormalWest), "abnormal-west");
  EXPECT_STREQ(to_string(RoutingMode::AbnormalNorth), "abnormal-north");
}

} // namespace
} // namespace hsfroute
