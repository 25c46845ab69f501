#include "hsfroute/errors.hpp"
#include "hsfroute/experiment.hpp"
#include "hsfroute/sim_engine.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace hsfroute {
namespace {

using testing::faults_at;

TEST(SimulationTest, FaultFreeFiveByFive) {
  const Network net = build_network({5, 5});
  const RunMetrics m = run_simulation(net, FaultConfiguration::fault_free(net));
  EXPECT_EQ(m.delivered, 25u);
  EXPECT_EQ(m.acks_received, 25u);
  EXPECT_DOUBLE_EQ(m.spanned_fraction(), 1.0);
  const auto bfs = testing::oracle_distances({0, 0}, 5, 5);
  for (const auto &[dst, hops] : m.data_hops) EXPECT_EQ(hops, bfs.at(dst));
}

TEST(SimulationTest, FaultFreeTwentyFiveMean) {
  const Network net = build_network({25, 25});
  const RunMetrics m = run_simulation(net, FaultConfiguration::fault_free(net));
  EXPECT_EQ(m.delivered, 625u);
  EXPECT_DOUBLE_EQ(m.mean_hops(), 15288.0 / 625.0);
}

TEST(SimulationTest, SingleFaultConservation) {
  const Network net = build_network({11, 11});
  const auto cfg = build_fault_configuration(net, faults_at({{5, 5}}));
  const RunMetrics m = run_simulation(net, cfg);
  EXPECT_EQ(m.faulty, 1u);
  EXPECT_EQ(m.boundary, 24u);
  EXPECT_EQ(m.delivered, 121u - (m.faulty + m.unsafe + m.boundary));
  EXPECT_EQ(m.acks_received, m.delivered);
}

TEST(SimulationTest, HopCountsEqualRoutedPathLengths) {
  const Network net = build_network({25, 25});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const FaultSet f = sample_faults(net.config(), FaultModel::Random, 3, seed);
    const auto cfg = build_fault_configuration(net, f);
    const RunMetrics m = run_simulation(net, cfg);
    for (const auto &[dst, hops] : m.data_hops) {
      const Path p = route_ft({0, 0}, dst, cfg, net, PacketKind::Directive);
      EXPECT_EQ(hops, static_cast<int>(p.size()) - 1);
      const Path ack = route_ft(ack_source(p), net.ack_gw(), cfg, net, PacketKind::Ack);
      EXPECT_EQ(m.ack_hops.at(dst), static_cast<int>(ack.size()) - 1);
    }
  }
}

TEST(SimulationTest, DeterministicAcrossRuns) {
  const Network net = build_network({25, 25});
  const FaultSet f = sample_faults(net.config(), FaultModel::Correlated, 4, 77);
  const auto cfg = build_fault_configuration(net, f);
  SimOptions opts;
  opts.params = {FaultModel::Correlated, 4, 77, 25};
  EXPECT_EQ(run_simulation(net, cfg, opts), run_simulation(net, cfg, opts));
}

TEST(SimulationTest, DestinationOrderDoesNotChangeHopCounts) {
  const Network net = build_network({15, 15});
  const auto cfg = build_fault_configuration(net, faults_at({{6, 6}, {7, 7}}));
  const RunMetrics a = run_simulation(net, cfg);
  SimOptions opts;
  opts.destination_order = cfg.classification().nodes_of(NodeClass::Safe);
  std::reverse(opts.destination_order.begin(), opts.destination_order.end());
  const RunMetrics b = run_simulation(net, cfg, opts);
  EXPECT_EQ(a.data_hops, b.data_hops);
  EXPECT_EQ(a.ack_hops, b.ack_hops);
}

RunMetrics fake_run(double mean, std::size_t delivered, int width = 5) {
  RunMetrics m;
  m.width = width;
  m.height = 5;
  m.params = {FaultModel::Random, 2, 0, 1};
  m.delivered = delivered;
  m.acks_received = delivered;
  for (std::size_t i = 0; i < delivered; ++i) {
    m.data_hops[{static_cast<int>(i % 5), static_cast<int>(i / 5)}] = static_cast<int>(mean);
    m.ack_hops[{static_cast<int>(i % 5), static_cast<int>(i / 5)}] = 1;
  }
  return m;
}

TEST(AggregateTest, SingleRunEchoes) {
  const std::vector<RunMetrics> runs{fake_run(4, 10)};
  const Summary s = aggregate(runs);
  EXPECT_EQ(s.runs, 1u);
  EXPECT_DOUBLE_EQ(s.mean_hops, 4.0);
  EXPECT_DOUBLE_EQ(s.stddev_hops, 0.0);
  EXPECT_DOUBLE_EQ(s.spanned_fraction, 10.0 / 25.0);
  EXPECT_EQ(s.hop_histogram.at(4), 10u);
}

TEST(AggregateTest, MeanOfRunMeans) {
  const std::vector<RunMetrics> runs{fake_run(2, 10), fake_run(6, 20)};
  const Summary s = aggregate(runs);
  EXPECT_DOUBLE_EQ(s.mean_hops, 4.0);
  EXPECT_GT(s.stddev_hops, 0.0);
}

TEST(AggregateTest, Errors) {
  EXPECT_THROW(aggregate(std::vector<RunMetrics>{}), Error);
  const std::vector<RunMetrics> mixed{fake_run(2, 10), fake_run(2, 10, 7)};
  EXPECT_THROW(aggregate(mixed), HeterogeneousRuns);
}

TEST(HistogramTest, FaultFreeIsAllBucketZero) {
  const Network net = build_network({9, 9});
  const auto base = baseline_hops(net);
  const std::vector<RunMetrics> runs{run_simulation(net, FaultConfiguration::fault_free(net))};
  const auto hist = path_length_histogram(runs, base);
  ASSERT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.at(0), 81u);
  EXPECT_DOUBLE_EQ(unaffected_fraction(hist), 1.0);
}

TEST(HistogramTest, CentredBlockGivesEvenOffsets) {
  const Network net = build_network({15, 15});
  const auto cfg = build_fault_configuration(net, faults_at({{6, 6}, {7, 7}}));
  const std::vector<RunMetrics> runs{run_simulation(net, cfg)};
  const auto hist = path_length_histogram(runs, baseline_hops(net));
  std::size_t total = 0;
  for (const auto &[off, n] : hist) {
    EXPECT_GE(off, 0);
    EXPECT_EQ(off % 2, 0);
    total += n;
  }
  EXPECT_EQ(total, runs[0].delivered);
  EXPECT_GT(hist.size(), 1u);
}

TEST(HistogramTest, EmptyHistogram) {
  EXPECT_DOUBLE_EQ(unaffected_fraction({}), 0.0);
}

} // namespace
} // namespace hsfroute
