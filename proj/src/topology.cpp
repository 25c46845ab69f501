#include "hsfroute/topology.hpp"

#include "hsfroute/errors.hpp"

#include <sstream>

namespace hsfroute {

std::string to_string(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

const char *to_string(Direction d) {
  switch (d) {
  case Direction::North: return "North";
  case Direction::South: return "South";
  case Direction::East: return "East";
  case Direction::West: return "West";
  }
  return "?";
}

char to_char(Direction d) {
  switch (d) {
  case Direction::North: return 'N';
  case Direction::South: return 'S';
  case Direction::East: return 'E';
  case Direction::West: return 'W';
  }
  return '?';
}

const char *to_string(ParityClass p) {
  switch (p) {
  case ParityClass::EvenEven: return "EvenEven";
  case ParityClass::OddEven: return "OddEven";
  case ParityClass::EvenOdd: return "EvenOdd";
  case ParityClass::OddOdd: return "OddOdd";
  }
  return "?";
}

void NetworkConfig::validate() const {
  auto check = [](int v, const char *name) {
    if (v < 5 || v % 2 == 0) {
      throw ConfigError(std::string(name) + " must be odd and >= 5, got " +
                        std::to_string(v));
    }
  };
  check(width, "width");
  check(height, "height");
}

Network::Network(NetworkConfig config) : config_(config) { config_.validate(); }

std::optional<Link> Network::link(Coord c, Direction d) const {
  const bool horizontal = is_horizontal(d);
  if (horizontal ? row_direction(c.y) != d : column_direction(c.x) != d) {
    return std::nullopt;
  }
  Coord next = step(c, d);
  if (contains(next)) return Link{d, next, false};
  if (!config_.wraparound_enabled) return std::nullopt;
  // Each line wraps onto its own origin.
  switch (d) {
  case Direction::East: next.x = 0; break;
  case Direction::West: next.x = config_.width - 1; break;
  case Direction::North: next.y = 0; break;
  case Direction::South: next.y = config_.height - 1; break;
  }
  return Link{d, next, true};
}

std::vector<Link> Network::out_links(Coord c) const {
  if (!contains(c)) throw OutOfBounds("coordinate " + to_string(c) + " outside grid");
  std::vector<Link> links;
  if (auto h = link(c, row_direction(c.y))) links.push_back(*h);
  if (auto v = link(c, column_direction(c.x))) links.push_back(*v);
  return links;
}

std::vector<Channel> Network::channels(bool include_wraparound) const {
  std::vector<Channel> out;
  out.reserve(2 * node_count());
  for (int y = 0; y < config_.height; ++y) {
    for (int x = 0; x < config_.width; ++x) {
      for (const Link &l : out_links({x, y})) {
        if (l.is_wraparound && !include_wraparound) continue;
        out.push_back({{x, y}, l.to, l.is_wraparound});
      }
    }
  }
  return out;
}

Network build_network(const NetworkConfig &config) { return Network(config); }

bool is_forbidden_fault_location(Coord c, const NetworkConfig &config) {
  const int w = config.width;
  const int h = config.height;
  if (c.x <= 1 || c.x >= w - 2) return true;
  if (c.y <= 2 || c.y >= h - 2) return true;
  return false;
}

std::string to_dot(const Network &net) {
  std::ostringstream os;
  os << "digraph hsf {\n  node [shape=circle];\n";
  for (int y = 0; y < net.height(); ++y) {
    for (int x = 0; x < net.width(); ++x) {
      os << "  n" << x << '_' << y << " [label=\"" << x << ',' << y
         << "\", pos=\"" << x << ',' << y << "!\"];\n";
    }
  }
  for (const Channel &ch : net.channels(true)) {
    os << "  n" << ch.from.x << '_' << ch.from.y << " -> n" << ch.to.x << '_'
       << ch.to.y;
    if (ch.wraparound) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace hsfroute
