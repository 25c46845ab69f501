#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hsfroute {

/// Node position: x is the column (0 = west edge), y the row (0 = south edge).
struct Coord {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Coord &, const Coord &) = default;
};

std::string to_string(Coord c);

enum class Direction : unsigned char { North, South, East, West };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::North, Direction::South, Direction::East, Direction::West};

constexpr Direction opposite(Direction d) {
  switch (d) {
  case Direction::North: return Direction::South;
  case Direction::South: return Direction::North;
  case Direction::East: return Direction::West;
  case Direction::West: return Direction::East;
  }
  return d;
}

constexpr bool is_horizontal(Direction d) {
  return d == Direction::East || d == Direction::West;
}

/// One grid step in direction d, without wraparound.
constexpr Coord step(Coord c, Direction d) {
  switch (d) {
  case Direction::North: return {c.x, c.y + 1};
  case Direction::South: return {c.x, c.y - 1};
  case Direction::East: return {c.x + 1, c.y};
  case Direction::West: return {c.x - 1, c.y};
  }
  return c;
}

const char *to_string(Direction d);
char to_char(Direction d);

/// (x mod 2, y mod 2). OddOdd nodes can only send West or South.
enum class ParityClass : unsigned char { EvenEven, OddEven, EvenOdd, OddOdd };

constexpr ParityClass parity_class(Coord c) {
  const bool odd_x = (c.x & 1) != 0;
  const bool odd_y = (c.y & 1) != 0;
  if (odd_x) return odd_y ? ParityClass::OddOdd : ParityClass::OddEven;
  return odd_y ? ParityClass::EvenOdd : ParityClass::EvenEven;
}

const char *to_string(ParityClass p);

// Row and column directions alternate. Even rows run east, odd rows west;
// even columns run north, odd columns south.
constexpr Direction row_direction(int y) {
  return (y & 1) == 0 ? Direction::East : Direction::West;
}
constexpr Direction column_direction(int x) {
  return (x & 1) == 0 ? Direction::North : Direction::South;
}

struct NetworkConfig {
  int width = 25;
  int height = 25;
  bool wraparound_enabled = true;

  /// Throws ConfigError unless width and height are odd and at least 5.
  void validate() const;
};

struct Link {
  Direction dir;
  Coord to;
  bool is_wraparound = false;

  friend bool operator==(const Link &, const Link &) = default;
};

/// Directed link between two nodes, used as a channel in dependency analysis.
struct Channel {
  Coord from;
  Coord to;
  bool wraparound = false;

  friend auto operator<=>(const Channel &, const Channel &) = default;
};

/// Immutable unidirectional near-Manhattan grid. The input gateway feeds
/// (0,0); the ACK gateway drains (W-1,H-1). Gateway links are not part of
/// the grid and are never counted as hops.
class Network {
public:
  explicit Network(NetworkConfig config);

  const NetworkConfig &config() const { return config_; }
  int width() const { return config_.width; }
  int height() const { return config_.height; }
  std::size_t node_count() const {
    return static_cast<std::size_t>(config_.width) * config_.height;
  }

  Coord input_gw() const { return {0, 0}; }
  Coord ack_gw() const { return {config_.width - 1, config_.height - 1}; }

  bool contains(Coord c) const {
    return c.x >= 0 && c.y >= 0 && c.x < config_.width && c.y < config_.height;
  }
  std::size_t index(Coord c) const {
    return static_cast<std::size_t>(c.y) * config_.width + c.x;
  }
  Coord coord(std::size_t index) const {
    return {static_cast<int>(index % config_.width),
            static_cast<int>(index / config_.width)};
  }

  /// Links leaving c: at most one horizontal and one vertical. Throws
  /// OutOfBounds.
  std::vector<Link> out_links(Coord c) const;

  /// The link from c in direction d, if the parity rules provide one.
  std::optional<Link> link(Coord c, Direction d) const;

  /// Every directed link of the grid, in row-major source order.
  std::vector<Channel> channels(bool include_wraparound = true) const;

private:
  NetworkConfig config_;
};

Network build_network(const NetworkConfig &config);

/// Fault placement is excluded from the periphery, from the row/column next
/// to the north, west and east edges, and from the two rows above the south
/// edge, so every faulty block keeps a two-line frame inside the grid.
bool is_forbidden_fault_location(Coord c, const NetworkConfig &config);

/// Graphviz digraph of the grid. Wraparound links are dashed.
std::string to_dot(const Network &net);

} // namespace hsfroute

template <> struct std::hash<hsfroute::Coord> {
  std::size_t operator()(const hsfroute::Coord &c) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(c.x) << 32) ^
                                  static_cast<unsigned>(c.y));
  }
};
