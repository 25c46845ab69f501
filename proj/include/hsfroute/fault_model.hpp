#pragma once

#include "hsfroute/topology.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hsfroute {

using Rng = std::mt19937_64;

enum class NodeClass : unsigned char { Safe, Faulty, Unsafe, Boundary };

const char *to_string(NodeClass c);

enum class FaultModel : unsigned char { Random, Correlated };

const char *to_string(FaultModel m);   // "rf" / "cf"
FaultModel parse_fault_model(const std::string &s);

struct FaultSet {
  std::vector<Coord> faults; // sorted, unique
  FaultModel model = FaultModel::Random;
  double p_f = 0.0;
  std::uint64_t seed = 0;

  bool contains(Coord c) const;
  std::size_t size() const { return faults.size(); }
};

/// Per-node class over the whole grid.
class NodeClassification {
public:
  NodeClassification() = default;
  NodeClassification(int width, int height)
      : width_(width), height_(height),
        classes_(static_cast<std::size_t>(width) * height, NodeClass::Safe) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(Coord c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }

  NodeClass at(Coord c) const { return classes_[index(c)]; }
  void set(Coord c, NodeClass k) { classes_[index(c)] = k; }

  /// Faulty or Unsafe: the node is inside a block core and carries nothing.
  bool is_blocked(Coord c) const {
    const NodeClass k = at(c);
    return k == NodeClass::Faulty || k == NodeClass::Unsafe;
  }

  std::size_t count(NodeClass k) const;
  std::vector<Coord> nodes_of(NodeClass k) const;

  friend bool operator==(const NodeClassification &,
                         const NodeClassification &) = default;

private:
  std::size_t index(Coord c) const {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<NodeClass> classes_;
};

/// Inclusive axis-aligned rectangle.
struct Rect {
  int x_min = 0;
  int y_min = 0;
  int x_max = -1;
  int y_max = -1;

  int width() const { return x_max - x_min + 1; }
  int height() const { return y_max - y_min + 1; }
  int area() const { return width() * height(); }
  bool contains(Coord c) const {
    return c.x >= x_min && c.x <= x_max && c.y >= y_min && c.y <= y_max;
  }
  bool intersects(const Rect &o) const {
    return x_min <= o.x_max && o.x_min <= x_max && y_min <= o.y_max &&
           o.y_min <= y_max;
  }
  Rect expanded(int n) const { return {x_min - n, y_min - n, x_max + n, y_max + n}; }
  static Rect hull(const Rect &a, const Rect &b);

  friend bool operator==(const Rect &, const Rect &) = default;
};

struct BoundaryLine {
  int index;     // row for north/south sides, column for east/west sides
  Direction dir; // direction of the links along that line
};

/// A side of the frame: `inner` touches the core, `outer` is one step out.
/// The two lines always run in opposite directions.
struct BoundarySide {
  BoundaryLine outer;
  BoundaryLine inner;
};

/// Convex fault region. The core holds every Faulty/Unsafe node of the group;
/// the two-line frame around it is healthy and forms the block boundary.
struct FaultyBlock {
  Rect core;
  BoundarySide north;
  BoundarySide south;
  BoundarySide east;
  BoundarySide west;

  explicit FaultyBlock(Rect core_rect);

  Rect region() const { return core.expanded(2); }
  bool in_frame(Coord c) const { return region().contains(c) && !core.contains(c); }

  /// Two rows directly below the core, spanning the full frame width.
  bool in_south_frame(Coord c) const;
  /// Two columns west of the core, spanning the full frame height.
  bool in_west_frame(Coord c) const;
  /// 2x2 south-west corner of the frame.
  bool in_south_west_corner(Coord c) const;

  friend bool operator==(const FaultyBlock &a, const FaultyBlock &b) {
    return a.core == b.core;
  }
};

/// Final node classes plus post-merge blocks. Each boundary node can look up
/// only the blocks whose frame it belongs to.
class FaultConfiguration {
public:
  FaultConfiguration() = default;
  FaultConfiguration(NodeClassification classification,
                     std::vector<FaultyBlock> blocks);

  static FaultConfiguration fault_free(const Network &net);

  const NodeClassification &classification() const { return classification_; }
  const std::vector<FaultyBlock> &blocks() const { return blocks_; }
  NodeClass at(Coord c) const { return classification_.at(c); }
  bool is_blocked(Coord c) const { return classification_.is_blocked(c); }

  /// Indices into blocks() of the frames containing c.
  std::span<const int> frames_at(Coord c) const;

private:
  NodeClassification classification_;
  std::vector<FaultyBlock> blocks_;
  std::vector<std::vector<int>> frame_index_;
};

/// Marks every fault, then applies the two victimization rules to a
/// fixpoint: a healthy node becomes Unsafe when (1) two of its 1-hop
/// neighbours are Faulty/Unsafe, or (2) it has a Faulty/Unsafe neighbour at
/// distance 1 or 2 along x and another at distance 1 or 2 along y.
NodeClassification classify_nodes(const Network &net, const FaultSet &faults);

/// Groups Faulty/Unsafe nodes into 4-connected components, fills each
/// bounding rectangle (victimizing Safe nodes inside), merges rectangles
/// whose frame would touch another core, and repeats with the victimization
/// rules until stable. Frame nodes are labelled Boundary. Throws
/// BoundaryClash if a frame leaves x in [0,W-1], y in [1,H-1].
FaultConfiguration form_faulty_blocks(const Network &net,
                                      const NodeClassification &cls);

/// True when the north frame of one block overlaps the south frame of the
/// other and the two do not span exactly the same columns.
bool is_problematic_overlap(const FaultyBlock &a, const FaultyBlock &b);

/// Replaces every problematic north/south frame overlap by one super block
/// covering both cores, re-forming until none remains.
FaultConfiguration merge_super_blocks(const Network &net, FaultConfiguration cfg);

struct FormOptions {
  bool merge_super_blocks = true;
};

/// classify -> form -> merge, the full pipeline from a fault set.
FaultConfiguration build_fault_configuration(const Network &net,
                                             const FaultSet &faults,
                                             FormOptions options = {});

// Sampling ------------------------------------------------------------------

/// Nodes where a fault may be placed, row-major.
std::vector<Coord> eligible_fault_nodes(const NetworkConfig &config);

/// Independent Bernoulli(p_f) per eligible node.
FaultSet sample_random_faults(const NetworkConfig &config, double p_f, Rng &rng);

/// Uniform random subset of exactly `count` eligible nodes (Bernoulli
/// sampling conditioned on the total). Throws InfeasibleTarget.
FaultSet sample_random_fault_count(const NetworkConfig &config, int count,
                                   Rng &rng);

/// Failure probability of a node at Euclidean distance d from the cluster
/// seed: min(1, 5 p_f / d).
double correlated_failure_probability(double distance, double p_f);

/// p_f for which one sweep over the eligible nodes is expected to place
/// target_count - 1 faults around `seed`.
double equalizing_cf_probability(const NetworkConfig &config, Coord seed,
                                 int target_count);

/// Spatially correlated faults: a uniformly chosen seed node, then sweeps in
/// shuffled order failing each remaining eligible node with
/// correlated_failure_probability until exactly target_count faults exist.
/// Without p_f the equalizing value for the drawn seed is used.
FaultSet sample_correlated_faults(const NetworkConfig &config, int target_count,
                                  std::optional<double> p_f, Rng &rng);

/// Fault count for a percentage of all W*H nodes, rounded to nearest and
/// capped at the eligible count.
int fault_count_for_percent(const NetworkConfig &config, double percent);

/// One character per node, north row first: '.' safe, 'X' faulty,
/// 'u' unsafe, 'b' boundary.
std::string render_ascii(const NodeClassification &cls);

} // namespace hsfroute
