#include "hsfroute/errors.hpp"
#include "hsfroute/fault_model.hpp"

#include <algorithm>
#include <cmath>

namespace hsfroute {

std::vector<Coord> eligible_fault_nodes(const NetworkConfig &config) {
  std::vector<Coord> out;
  for (int y = 0; y < config.height; ++y)
    for (int x = 0; x < config.width; ++x)
      if (!is_forbidden_fault_location({x, y}, config)) out.push_back({x, y});
  return out;
}

FaultSet sample_random_faults(const NetworkConfig &config, double p_f, Rng &rng) {
  if (!(p_f >= 0.0 && p_f < 1.0)) throw ConfigError("p_f must lie in [0,1)");
  FaultSet set{{}, FaultModel::Random, p_f, 0};
  std::bernoulli_distribution fail(p_f);
  for (Coord c : eligible_fault_nodes(config)) {
    if (fail(rng)) set.faults.push_back(c);
  }
  std::sort(set.faults.begin(), set.faults.end());
  return set;
}

FaultSet sample_random_fault_count(const NetworkConfig &config, int count,
                                   Rng &rng) {
  auto nodes = eligible_fault_nodes(config);
  if (count < 0 || static_cast<std::size_t>(count) > nodes.size()) {
    throw InfeasibleTarget("cannot place " + std::to_string(count) + " faults on " +
                           std::to_string(nodes.size()) + " eligible nodes");
  }
  std::shuffle(nodes.begin(), nodes.end(), rng);
  nodes.resize(static_cast<std::size_t>(count));
  std::sort(nodes.begin(), nodes.end());
  const double p = nodes.empty() ? 0.0
                                 : static_cast<double>(count) /
                                       static_cast<double>(eligible_fault_nodes(config).size());
  return FaultSet{std::move(nodes), FaultModel::Random, p, 0};
}

double correlated_failure_probability(double distance, double p_f) {
  if (distance <= 0.0) return 1.0;
  return std::min(1.0, 5.0 * p_f / distance);
}

namespace {

double distance(Coord a, Coord b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

double expected_cluster_size(const std::vector<Coord> &nodes, Coord seed, double p_f) {
  double sum = 0.0;
  for (Coord c : nodes) {
    if (c != seed) sum += correlated_failure_probability(distance(c, seed), p_f);
  }
  return sum;
}

} // namespace

double equalizing_cf_probability(const NetworkConfig &config, Coord seed,
                                 int target_count) {
  const auto nodes = eligible_fault_nodes(config);
  if (target_count < 1 || static_cast<std::size_t>(target_count) > nodes.size()) {
    throw InfeasibleTarget("correlated target out of range");
  }
  if (target_count == 1) return 0.0;
  const double want = target_count - 1;
  double lo = 0.0;
  double hi = std::hypot(config.width, config.height) / 5.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (expected_cluster_size(nodes, seed, mid) < want ? lo : hi) = mid;
  }
  return hi;
}

FaultSet sample_correlated_faults(const NetworkConfig &config, int target_count,
                                  std::optional<double> p_f, Rng &rng) {
  if (target_count < 1) throw InfeasibleTarget("correlated target must be >= 1");
  const auto nodes = eligible_fault_nodes(config);
  if (static_cast<std::size_t>(target_count) > nodes.size()) {
    throw InfeasibleTarget("cannot place " + std::to_string(target_count) +
                           " faults on " + std::to_string(nodes.size()) +
                           " eligible nodes");
  }
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  const Coord seed = nodes[pick(rng)];
  const double prob = p_f ? *p_f : equalizing_cf_probability(config, seed, target_count);
  if (target_count > 1 && !(prob > 0.0)) {
    throw InfeasibleTarget("p_f = 0 cannot grow a correlated cluster");
  }

  std::vector<Coord> chosen{seed};
  std::vector<Coord> pending;
  for (Coord c : nodes)
    if (c != seed) pending.push_back(c);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(chosen.size()) < target_count) {
    std::shuffle(pending.begin(), pending.end(), rng);
    std::vector<Coord> survivors;
    survivors.reserve(pending.size());
    for (Coord c : pending) {
      if (static_cast<int>(chosen.size()) < target_count &&
          unit(rng) < correlated_failure_probability(distance(c, seed), prob)) {
        chosen.push_back(c);
      } else {
        survivors.push_back(c);
      }
    }
    pending.swap(survivors);
  }
  std::sort(chosen.begin(), chosen.end());
  return FaultSet{std::move(chosen), FaultModel::Correlated, prob, 0};
}

int fault_count_for_percent(const NetworkConfig &config, double percent) {
  const double total = static_cast<double>(config.width) * config.height;
  const int count = static_cast<int>(std::lround(percent / 100.0 * total));
  const int eligible = static_cast<int>(eligible_fault_nodes(config).size());
  return std::clamp(count, 0, eligible);
}

} // namespace hsfroute
