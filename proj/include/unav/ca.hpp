#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "unav/families.hpp"
#include "unav/population.hpp"

namespace unav {

// ---------------------------------------------------------------------------
// Cells and configurations (square lattice, x east-positive, y north-positive)

struct Cell {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Cell& a, const Cell& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Cell& a, const Cell& b) { return !(a == b); }
  // Row-major order: by y, then x. Used for every deterministic tie-break.
  friend bool operator<(const Cell& a, const Cell& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  }
};

inline constexpr std::array<Cell, 8> kNeighborOffsets{
    Cell{-1, -1}, Cell{0, -1}, Cell{1, -1}, Cell{-1, 0},
    Cell{1, 0},   Cell{-1, 1}, Cell{0, 1},  Cell{1, 1}};

inline bool adjacent(const Cell& a, const Cell& b) {
  return a != b && std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
}

// A finite set of live cells, stored sorted and deduplicated.
class CellConfig {
 public:
  CellConfig() = default;
  explicit CellConfig(std::vector<Cell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  }

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool contains(const Cell& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
  }

  CellConfig translated(std::int64_t dx, std::int64_t dy) const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (const Cell& c : cells_) out.push_back({c.x + dx, c.y + dy});
    return CellConfig(std::move(out));
  }

  struct Box {
    std::int64_t min_x, max_x, min_y, max_y;
  };
  Box bounding_box() const {
    if (cells_.empty()) throw error("bounding box of an empty configuration");
    Box b{cells_[0].x, cells_[0].x, cells_[0].y, cells_[0].y};
    for (const Cell& c : cells_) {
      b.min_x = std::min(b.min_x, c.x);
      b.max_x = std::max(b.max_x, c.x);
      b.min_y = std::min(b.min_y, c.y);
      b.max_y = std::max(b.max_y, c.y);
    }
    return b;
  }

  friend bool operator==(const CellConfig& a, const CellConfig& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<Cell> cells_;
};

// ---------------------------------------------------------------------------
// Rulesets

struct Ruleset {
  std::uint16_t birth_mask = 0;     // bit k: birth on k live neighbors
  std::uint16_t survival_mask = 0;  // bit k: survival on k live neighbors

  bool births(int count) const { return (birth_mask >> count) & 1; }
  bool survives(int count) const { return (survival_mask >> count) & 1; }

  // Conway's rule B3/S23.
  static Ruleset life() { return Ruleset{1 << 3, (1 << 2) | (1 << 3)}; }

  // Any sub-ruleset of B345678/S12345678: birth needs >= 3 neighbors and
  // survival needs >= 1.
  bool compliant() const {
    return (birth_mask & 0b111) == 0 && (survival_mask & 0b1) == 0;
  }

  static Ruleset parse(const std::string& text) {
    Ruleset r;
    std::size_t i = 0;
    auto digits_into = [&](std::uint16_t& mask) {
      while (i < text.size() && text[i] >= '0' && text[i] <= '8')
        mask |= static_cast<std::uint16_t>(1u << (text[i++] - '0'));
    };
    if (i < text.size() && (text[i] == 'B' || text[i] == 'b')) {
      ++i;
      digits_into(r.birth_mask);
      if (i >= text.size() || text[i] != '/') throw parse_error("ruleset needs B.../S...: " + text);
      ++i;
      if (i < text.size() && (text[i] == 'S' || text[i] == 's')) ++i;
      digits_into(r.survival_mask);
    } else {
      // S/B form ("23/3")
      digits_into(r.survival_mask);
      if (i >= text.size() || text[i] != '/') throw parse_error("ruleset needs B.../S...: " + text);
      ++i;
      digits_into(r.birth_mask);
    }
    if (i != text.size()) throw parse_error("trailing characters in ruleset: " + text);
    return r;
  }

  std::string to_string() const {
    std::string s = "B";
    for (int k = 0; k <= 8; ++k)
      if (births(k)) s.push_back(static_cast<char>('0' + k));
    s += "/S";
    for (int k = 0; k <= 8; ++k)
      if (survives(k)) s.push_back(static_cast<char>('0' + k));
    return s;
  }

  friend bool operator==(const Ruleset& a, const Ruleset& b) {
    return a.birth_mask == b.birth_mask && a.survival_mask == b.survival_mask;
  }
};

// One Moore-neighborhood step. B0 rules would make every far-away dead cell
// live and are rejected: configurations here are finite sets.
inline CellConfig step(const CellConfig& c, const Ruleset& r) {
  if (r.births(0)) throw precondition_error("step: B0 rules produce infinite configurations");
  std::vector<Cell> neighbors;
  neighbors.reserve(c.size() * 8);
  for (const Cell& cell : c.cells())
    for (const Cell& d : kNeighborOffsets) neighbors.push_back({cell.x + d.x, cell.y + d.y});
  std::sort(neighbors.begin(), neighbors.end());

  std::vector<Cell> next;
  for (std::size_t i = 0; i < neighbors.size();) {
    std::size_t j = i;
    while (j < neighbors.size() && neighbors[j] == neighbors[i]) ++j;
    int count = static_cast<int>(j - i);
    bool alive = c.contains(neighbors[i]);
    if (alive ? r.survives(count) : r.births(count)) next.push_back(neighbors[i]);
    i = j;
  }
  if (r.survives(0)) {
    for (const Cell& cell : c.cells())
      if (!std::binary_search(neighbors.begin(), neighbors.end(), cell)) next.push_back(cell);
  }
  return CellConfig(std::move(next));
}

// A played game: generations[0] is generation 1.
struct GameHistory {
  Ruleset rule;
  std::vector<CellConfig> generations;

  std::size_t length() const { return generations.size(); }
  const CellConfig& generation(std::size_t g) const {  // 1-based
    if (g < 1 || g > generations.size()) throw error("generation index out of range");
    return generations[g - 1];
  }

  static GameHistory simulate(const CellConfig& initial, const Ruleset& rule,
                              std::size_t n_generations) {
    if (n_generations < 1) throw precondition_error("simulate: need at least one generation");
    GameHistory h;
    h.rule = rule;
    h.generations.reserve(n_generations);
    h.generations.push_back(initial);
    for (std::size_t g = 1; g < n_generations; ++g)
      h.generations.push_back(step(h.generations.back(), rule));
    return h;
  }
};

// Conditions for the two-forbidden-directions construction: finite start,
// no extinct generation, birth >= 3 and survival >= 1.
struct HypothesesReport {
  bool ok = true;
  std::string message = "ok";
  std::size_t violation_index = 0;  // 1-based generation for condition 2
};

inline HypothesesReport check_hypotheses(const GameHistory& hist) {
  if (hist.generations.empty()) return {false, "history has no generations", 0};
  for (std::size_t g = 1; g <= hist.length(); ++g) {
    if (hist.generation(g).empty())
      return {false, "generation " + std::to_string(g) + " has no live cells", g};
  }
  if (!hist.rule.compliant())
    return {false, "ruleset " + hist.rule.to_string() +
                       " is not a sub-ruleset of B345678/S12345678",
            0};
  return {};
}

// ---------------------------------------------------------------------------
// Directions

enum class Direction { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Direction, 8> all_directions{
    Direction::N, Direction::NE, Direction::E, Direction::SE,
    Direction::S, Direction::SW, Direction::W, Direction::NW};

inline Cell direction_vector(Direction d) {
  switch (d) {
    case Direction::N:  return {0, 1};
    case Direction::NE: return {1, 1};
    case Direction::E:  return {1, 0};
    case Direction::SE: return {1, -1};
    case Direction::S:  return {0, -1};
    case Direction::SW: return {-1, -1};
    case Direction::W:  return {-1, 0};
    case Direction::NW: return {-1, 1};
  }
  throw error("unreachable direction");
}

inline std::string to_string(Direction d) {
  switch (d) {
    case Direction::N:  return "N";
    case Direction::NE: return "NE";
    case Direction::E:  return "E";
    case Direction::SE: return "SE";
    case Direction::S:  return "S";
    case Direction::SW: return "SW";
    case Direction::W:  return "W";
    case Direction::NW: return "NW";
  }
  throw error("unreachable direction");
}

inline Direction parse_direction(const std::string& s) {
  for (Direction d : all_directions)
    if (to_string(d) == s) return d;
  throw parse_error("unknown direction \"" + s + "\"");
}

// The compass direction from one cell to an adjacent cell.
inline Direction direction_between(const Cell& from, const Cell& to) {
  if (!adjacent(from, to)) throw error("direction_between: cells are not adjacent");
  Cell v{to.x - from.x, to.y - from.y};
  for (Direction d : all_directions)
    if (direction_vector(d) == v) return d;
  throw error("unreachable direction vector");
}

// ---------------------------------------------------------------------------
// The gameplay population and lifelines

namespace detail {

inline VertexId ca_vertex_id(const Cell& c, std::size_t g) {
  return std::to_string(c.x) + "," + std::to_string(c.y) + "@" + std::to_string(g);
}

// The unique male parent cell of `d` alive in generation g+1: the cell
// itself for survivors, otherwise the row-major least live neighbor from
// which d does not lie in a forbidden direction.
inline Cell male_parent_cell(const GameHistory& hist, const Cell& d, std::size_t g,
                             Direction fx, Direction fy) {
  const CellConfig& prev = hist.generation(g);
  if (prev.contains(d)) return d;
  for (const Cell& off : kNeighborOffsets) {
    Cell c{d.x + off.x, d.y + off.y};
    if (!prev.contains(c)) continue;
    Direction dir = direction_between(c, d);
    if (dir != fx && dir != fy) return c;
  }
  throw error("no valid male parent for a birth at (" + std::to_string(d.x) + "," +
              std::to_string(d.y) + ") into generation " + std::to_string(g + 1) +
              "; the hypotheses must be violated");
}

}  // namespace detail

// The 2-gendered population of a gameplay: vertices (c, i) for live cells,
// edges between consecutive generations for equal or adjacent cells. Every
// non-root gets exactly one male incoming edge: the self-edge for
// survivors, otherwise an edge from a live neighbor the step to which is
// not in a forbidden direction.
inline Population gameplay_population(const GameHistory& hist,
                                      std::pair<Direction, Direction> forbidden) {
  if (forbidden.first == forbidden.second)
    throw precondition_error("gameplay_population: forbidden directions must be distinct");
  HypothesesReport rep = check_hypotheses(hist);
  if (!rep.ok) throw precondition_error("gameplay_population: " + rep.message);

  PopulationBuilder b(2);
  std::int64_t t = 0;
  for (std::size_t g = 1; g <= hist.length(); ++g) {
    for (const Cell& c : hist.generation(g).cells())
      b.add_vertex(detail::ca_vertex_id(c, g), t++, std::nullopt, static_cast<int>(g));
  }
  for (std::size_t g = 1; g < hist.length(); ++g) {
    const CellConfig& prev = hist.generation(g);
    for (const Cell& d : hist.generation(g + 1).cells()) {
      Cell male = detail::male_parent_cell(hist, d, g, forbidden.first, forbidden.second);
      if (prev.contains(d))
        b.add_edge(detail::ca_vertex_id(d, g), detail::ca_vertex_id(d, g + 1), M);
      else
        b.add_edge(detail::ca_vertex_id(male, g), detail::ca_vertex_id(d, g + 1), M);
      for (const Cell& off : kNeighborOffsets) {
        Cell c{d.x + off.x, d.y + off.y};
        if (!prev.contains(c)) continue;
        if (!prev.contains(d) && c == male) continue;
        b.add_edge(detail::ca_vertex_id(c, g), detail::ca_vertex_id(d, g + 1), F);
      }
    }
  }
  for (const Cell& c : hist.generation(hist.length()).cells())
    b.mark_boundary(detail::ca_vertex_id(c, hist.length()));
  return b.build();
}

// The gameplay population as a lazily expandable family; expand(d) covers
// generations 1..d and cannot reach past the recorded history.
inline PopulationFamily gameplay_family(GameHistory hist,
                                        std::pair<Direction, Direction> forbidden) {
  int max_depth = static_cast<int>(hist.length());
  auto shared = std::make_shared<const GameHistory>(std::move(hist));
  return PopulationFamily::custom(
      "gameplay(" + shared->rule.to_string() + ")", max_depth, [shared, forbidden](int d) {
        GameHistory head;
        head.rule = shared->rule;
        head.generations.assign(shared->generations.begin(), shared->generations.begin() + d);
        return gameplay_population(head, forbidden);
      });
}

// One cell per generation; consecutive cells equal or adjacent.
struct Lifeline {
  std::vector<Cell> cells;  // cells[i] is alive in generation i+1
};

// Traces the unique male-edge ancestry of the row-major least cell of the
// final generation back to generation 1. The resulting lifeline never
// steps in either forbidden direction.
inline Lifeline extract_lifeline(const GameHistory& hist,
                                 std::pair<Direction, Direction> forbidden) {
  if (forbidden.first == forbidden.second)
    throw precondition_error("extract_lifeline: forbidden directions must be distinct");
  HypothesesReport rep = check_hypotheses(hist);
  if (!rep.ok) throw precondition_error("extract_lifeline: " + rep.message);

  Lifeline line;
  line.cells.resize(hist.length());
  Cell cur = hist.generation(hist.length()).cells().front();
  line.cells[hist.length() - 1] = cur;
  for (std::size_t g = hist.length() - 1; g >= 1; --g) {
    cur = detail::male_parent_cell(hist, cur, g, forbidden.first, forbidden.second);
    line.cells[g - 1] = cur;
  }
  return line;
}

// ---------------------------------------------------------------------------
// Speed measurement

// Exact rational, normalized with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Signed displacement of the bounding-box extreme toward `axis` between the
// first and last generation, divided by the elapsed generations. Diagonal
// axes take the minimum of their two orthogonal components: a pattern
// advances diagonally at speed v only if both components advance at v.
inline Rational measure_speed(const GameHistory& hist, Direction axis) {
  if (hist.length() < 2) throw precondition_error("measure_speed: need at least 2 generations");
  for (std::size_t g = 1; g <= hist.length(); ++g)
    if (hist.generation(g).empty())
      throw error("measure_speed: generation " + std::to_string(g) + " is empty");

  CellConfig::Box first = hist.generation(1).bounding_box();
  CellConfig::Box last = hist.generation(hist.length()).bounding_box();
  std::int64_t elapsed = static_cast<std::int64_t>(hist.length()) - 1;

  std::int64_t north = last.max_y - first.max_y;
  std::int64_t south = first.min_y - last.min_y;
  std::int64_t east = last.max_x - first.max_x;
  std::int64_t west = first.min_x - last.min_x;
  switch (axis) {
    case Direction::N:  return {north, elapsed};
    case Direction::S:  return {south, elapsed};
    case Direction::E:  return {east, elapsed};
    case Direction::W:  return {west, elapsed};
    case Direction::NE: return {std::min(north, east), elapsed};
    case Direction::NW: return {std::min(north, west), elapsed};
    case Direction::SE: return {std::min(south, east), elapsed};
    case Direction::SW: return {std::min(south, west), elapsed};
  }
  throw error("unreachable axis");
}

}  // namespace unav
