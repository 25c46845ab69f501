#include "hsfroute/fault_model.hpp"

#include "hsfroute/errors.hpp"

#include <algorithm>
#include <queue>

namespace hsfroute {

const char *to_string(NodeClass c) {
  switch (c) {
  case NodeClass::Safe: return "safe";
  case NodeClass::Faulty: return "faulty";
  case NodeClass::Unsafe: return "unsafe";
  case NodeClass::Boundary: return "boundary";
  }
  return "?";
}

const char *to_string(FaultModel m) {
  return m == FaultModel::Random ? "rf" : "cf";
}

FaultModel parse_fault_model(const std::string &s) {
  if (s == "rf" || s == "RF" || s == "random") return FaultModel::Random;
  if (s == "cf" || s == "CF" || s == "correlated") return FaultModel::Correlated;
  throw ConfigError("unknown fault model '" + s + "' (expected rf or cf)");
}

bool FaultSet::contains(Coord c) const {
  return std::binary_search(faults.begin(), faults.end(), c);
}

std::size_t NodeClassification::count(NodeClass k) const {
  return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), k));
}

std::vector<Coord> NodeClassification::nodes_of(NodeClass k) const {
  std::vector<Coord> out;
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (at({x, y}) == k) out.push_back({x, y});
  return out;
}

Rect Rect::hull(const Rect &a, const Rect &b) {
  return {std::min(a.x_min, b.x_min), std::min(a.y_min, b.y_min),
          std::max(a.x_max, b.x_max), std::max(a.y_max, b.y_max)};
}

FaultyBlock::FaultyBlock(Rect core_rect) : core(core_rect) {
  auto row_line = [](int y) { return BoundaryLine{y, row_direction(y)}; };
  auto col_line = [](int x) { return BoundaryLine{x, column_direction(x)}; };
  north = {row_line(core.y_max + 2), row_line(core.y_max + 1)};
  south = {row_line(core.y_min - 2), row_line(core.y_min - 1)};
  east = {col_line(core.x_max + 2), col_line(core.x_max + 1)};
  west = {col_line(core.x_min - 2), col_line(core.x_min - 1)};
}

bool FaultyBlock::in_south_frame(Coord c) const {
  return c.y >= core.y_min - 2 && c.y <= core.y_min - 1 &&
         c.x >= core.x_min - 2 && c.x <= core.x_max + 2;
}

bool FaultyBlock::in_west_frame(Coord c) const {
  return c.x >= core.x_min - 2 && c.x <= core.x_min - 1 &&
         c.y >= core.y_min - 2 && c.y <= core.y_max + 2;
}

bool FaultyBlock::in_south_west_corner(Coord c) const {
  return in_south_frame(c) && in_west_frame(c);
}

FaultConfiguration::FaultConfiguration(NodeClassification classification,
                                       std::vector<FaultyBlock> blocks)
    : classification_(std::move(classification)), blocks_(std::move(blocks)) {
  const int w = classification_.width();
  const int h = classification_.height();
  frame_index_.assign(static_cast<std::size_t>(w) * h, {});
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Rect r = blocks_[b].region();
    for (int y = std::max(0, r.y_min); y <= std::min(h - 1, r.y_max); ++y) {
      for (int x = std::max(0, r.x_min); x <= std::min(w - 1, r.x_max); ++x) {
        if (!blocks_[b].core.contains({x, y})) {
          frame_index_[static_cast<std::size_t>(y) * w + x].push_back(
              static_cast<int>(b));
        }
      }
    }
  }
}

FaultConfiguration FaultConfiguration::fault_free(const Network &net) {
  return FaultConfiguration(NodeClassification(net.width(), net.height()), {});
}

std::span<const int> FaultConfiguration::frames_at(Coord c) const {
  const auto &v =
      frame_index_[static_cast<std::size_t>(c.y) * classification_.width() + c.x];
  return {v.data(), v.size()};
}

namespace {

// Boolean grid of Faulty/Unsafe nodes used while forming blocks.
class BadGrid {
public:
  BadGrid(int w, int h) : w_(w), h_(h), cells_(static_cast<std::size_t>(w) * h, 0) {}

  bool operator()(int x, int y) const {
    return x >= 0 && y >= 0 && x < w_ && y < h_ &&
           cells_[static_cast<std::size_t>(y) * w_ + x] != 0;
  }
  void mark(int x, int y) { cells_[static_cast<std::size_t>(y) * w_ + x] = 1; }
  int width() const { return w_; }
  int height() const { return h_; }

private:
  int w_;
  int h_;
  std::vector<char> cells_;
};

bool violates_rules(const BadGrid &bad, int x, int y) {
  const int one_hop = bad(x - 1, y) + bad(x + 1, y) + bad(x, y - 1) + bad(x, y + 1);
  if (one_hop >= 2) return true;
  const bool x_witness =
      bad(x - 1, y) || bad(x + 1, y) || bad(x - 2, y) || bad(x + 2, y);
  const bool y_witness =
      bad(x, y - 1) || bad(x, y + 1) || bad(x, y - 2) || bad(x, y + 2);
  return x_witness && y_witness;
}

// Monotone marking; returns the nodes newly marked.
std::vector<Coord> apply_unsafe_rules(BadGrid &bad) {
  std::vector<Coord> marked;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < bad.height(); ++y) {
      for (int x = 0; x < bad.width(); ++x) {
        if (!bad(x, y) && violates_rules(bad, x, y)) {
          bad.mark(x, y);
          marked.push_back({x, y});
          changed = true;
        }
      }
    }
  }
  return marked;
}

std::vector<Rect> component_rects(const BadGrid &bad) {
  const int w = bad.width();
  const int h = bad.height();
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<Rect> rects;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      if (!bad(x0, y0) || seen[static_cast<std::size_t>(y0) * w + x0]) continue;
      Rect r{x0, y0, x0, y0};
      std::queue<Coord> q;
      q.push({x0, y0});
      seen[static_cast<std::size_t>(y0) * w + x0] = 1;
      while (!q.empty()) {
        const Coord c = q.front();
        q.pop();
        r = Rect::hull(r, {c.x, c.y, c.x, c.y});
        for (Direction d : kAllDirections) {
          const Coord n = step(c, d);
          if (!bad(n.x, n.y)) continue;
          auto &s = seen[static_cast<std::size_t>(n.y) * w + n.x];
          if (!s) {
            s = 1;
            q.push(n);
          }
        }
      }
      rects.push_back(r);
    }
  }
  return rects;
}

// Merge until no rectangle's frame reaches into another rectangle.
void merge_touching(std::vector<Rect> &rects) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < rects.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < rects.size(); ++j) {
        if (rects[i].expanded(2).intersects(rects[j]) ||
            rects[j].expanded(2).intersects(rects[i])) {
          rects[i] = Rect::hull(rects[i], rects[j]);
          rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
          break;
        }
      }
    }
  }
}

bool rect_order(const Rect &a, const Rect &b) {
  return std::tie(a.y_min, a.x_min, a.y_max, a.x_max) <
         std::tie(b.y_min, b.x_min, b.y_max, b.x_max);
}

} // namespace

NodeClassification classify_nodes(const Network &net, const FaultSet &faults) {
  BadGrid bad(net.width(), net.height());
  NodeClassification cls(net.width(), net.height());
  for (Coord c : faults.faults) {
    if (!net.contains(c)) throw OutOfBounds("fault " + to_string(c) + " outside grid");
    bad.mark(c.x, c.y);
    cls.set(c, NodeClass::Faulty);
  }
  for (Coord c : apply_unsafe_rules(bad)) cls.set(c, NodeClass::Unsafe);
  return cls;
}

FaultConfiguration form_faulty_blocks(const Network &net,
                                      const NodeClassification &cls_in) {
  const int w = net.width();
  const int h = net.height();
  BadGrid bad(w, h);
  NodeClassification cls(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const NodeClass k = cls_in.at({x, y});
      if (k == NodeClass::Faulty || k == NodeClass::Unsafe) {
        bad.mark(x, y);
        cls.set({x, y}, k);
      }
    }
  }

  std::vector<Rect> rects;
  for (;;) {
    for (Coord c : apply_unsafe_rules(bad)) cls.set(c, NodeClass::Unsafe);
    rects = component_rects(bad);
    merge_touching(rects);
    bool filled = false;
    for (const Rect &r : rects) {
      for (int y = r.y_min; y <= r.y_max; ++y) {
        for (int x = r.x_min; x <= r.x_max; ++x) {
          if (!bad(x, y)) {
            bad.mark(x, y);
            cls.set({x, y}, NodeClass::Unsafe);
            filled = true;
          }
        }
      }
    }
    if (!filled) break;
  }

  std::sort(rects.begin(), rects.end(), rect_order);
  std::vector<FaultyBlock> blocks;
  blocks.reserve(rects.size());
  for (const Rect &r : rects) {
    const Rect frame = r.expanded(2);
    if (frame.x_min < 0 || frame.x_max > w - 1 || frame.y_min < 1 ||
        frame.y_max > h - 1) {
      throw BoundaryClash("frame of block with core (" + std::to_string(r.x_min) +
                          "," + std::to_string(r.y_min) + ")-(" +
                          std::to_string(r.x_max) + "," + std::to_string(r.y_max) +
                          ") leaves the permitted region");
    }
    for (int y = frame.y_min; y <= frame.y_max; ++y)
      for (int x = frame.x_min; x <= frame.x_max; ++x)
        if (!bad(x, y)) cls.set({x, y}, NodeClass::Boundary);
    blocks.emplace_back(r);
  }
  return FaultConfiguration(std::move(cls), std::move(blocks));
}

bool is_problematic_overlap(const FaultyBlock &a, const FaultyBlock &b) {
  if (a.core.x_min == b.core.x_min && a.core.x_max == b.core.x_max) return false;
  auto north_over_south = [](const FaultyBlock &lower, const FaultyBlock &upper) {
    const Rect north_frame{lower.core.x_min - 2, lower.core.y_max + 1,
                           lower.core.x_max + 2, lower.core.y_max + 2};
    const Rect south_frame{upper.core.x_min - 2, upper.core.y_min - 2,
                           upper.core.x_max + 2, upper.core.y_min - 1};
    return north_frame.intersects(south_frame);
  };
  return north_over_south(a, b) || north_over_south(b, a);
}

FaultConfiguration merge_super_blocks(const Network &net, FaultConfiguration cfg) {
  for (;;) {
    const auto &blocks = cfg.blocks();
    std::optional<Rect> hull;
    for (std::size_t i = 0; i < blocks.size() && !hull; ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (is_problematic_overlap(blocks[i], blocks[j])) {
          hull = Rect::hull(blocks[i].core, blocks[j].core);
          break;
        }
      }
    }
    if (!hull) return cfg;

    NodeClassification cls = cfg.classification();
    for (int y = hull->y_min; y <= hull->y_max; ++y) {
      for (int x = hull->x_min; x <= hull->x_max; ++x) {
        if (cls.at({x, y}) != NodeClass::Faulty) cls.set({x, y}, NodeClass::Unsafe);
      }
    }
    cfg = form_faulty_blocks(net, cls);
  }
}

FaultConfiguration build_fault_configuration(const Network &net,
                                             const FaultSet &faults,
                                             FormOptions options) {
  FaultConfiguration cfg = form_faulty_blocks(net, classify_nodes(net, faults));
  if (options.merge_super_blocks) cfg = merge_super_blocks(net, std::move(cfg));
  return cfg;
}

std::string render_ascii(const NodeClassification &cls) {
  std::string out;
  for (int y = cls.height() - 1; y >= 0; --y) {
    for (int x = 0; x < cls.width(); ++x) {
      switch (cls.at({x, y})) {
      case NodeClass::Safe: out += '.'; break;
      case NodeClass::Faulty: out += 'X'; break;
      case NodeClass::Unsafe: out += 'u'; break;
      case NodeClass::Boundary: out += 'b'; break;
      }
    }
    out += '\n';
  }
  return out;
}

} // namespace hsfroute
