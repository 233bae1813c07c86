#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "unav/core.hpp"

namespace unav {

using VertexId = std::string;

struct Vertex {
  VertexId id;
  std::int64_t birthdate = 0;
  std::optional<Gender> gender;    // present in vertex-gendered populations
  std::optional<int> generation;   // layer index, present for layered families
};

struct Edge {
  VertexId src;
  VertexId dst;
  Gender gender;
};

// A finite, generation-layered truncation of an infinite n-gendered
// population. Vertices on the boundary may be missing children; parents of
// every present vertex are always present in the truncations produced by
// the generators in this library. A population with an empty boundary is
// "complete": it is a whole finite graph, not a prefix of a larger one.
class Population {
 public:
  Population() = default;

  int gender_count() const { return n_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::set<VertexId>& boundary() const { return boundary_; }
  bool complete() const { return boundary_.empty(); }

  // Max generation present, 0 if no vertex carries a generation.
  int truncation_depth() const { return depth_; }

  bool vertex_gendered() const { return vertex_gendered_; }

  std::size_t size() const { return vertices_.size(); }

  bool contains(const VertexId& id) const { return index_of_.count(id) != 0; }

  int index_of(const VertexId& id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end()) throw error("unknown vertex id: " + id);
    return it->second;
  }

  const Vertex& vertex(int idx) const { return vertices_[static_cast<std::size_t>(idx)]; }

  // Children/parents as (vertex index, edge gender), ordered by birthdate.
  const std::vector<std::pair<int, Gender>>& children(int idx) const {
    return children_[static_cast<std::size_t>(idx)];
  }
  const std::vector<std::pair<int, Gender>>& parents(int idx) const {
    return parents_[static_cast<std::size_t>(idx)];
  }

  bool is_boundary(int idx) const { return boundary_flag_[static_cast<std::size_t>(idx)]; }
  bool is_root(int idx) const { return parents_[static_cast<std::size_t>(idx)].empty(); }

  friend class PopulationBuilder;

 private:
  int n_ = 2;
  std::vector<Vertex> vertices_;  // sorted by (birthdate, id)
  std::vector<Edge> edges_;       // sorted by (src, dst, gender)
  std::set<VertexId> boundary_;
  std::unordered_map<VertexId, int> index_of_;
  std::vector<std::vector<std::pair<int, Gender>>> children_;
  std::vector<std::vector<std::pair<int, Gender>>> parents_;
  std::vector<char> boundary_flag_;
  int depth_ = 0;
  bool vertex_gendered_ = false;
};

// Assembles populations. Construction is permissive: axiom violations are
// tolerated here and reported later by validate(). Only structurally
// unusable input (duplicate ids, dangling edge endpoints) is rejected.
class PopulationBuilder {
 public:
  explicit PopulationBuilder(int gender_count) { pop_.n_ = gender_count; }

  PopulationBuilder& add_vertex(Vertex v) {
    pop_.vertices_.push_back(std::move(v));
    return *this;
  }
  PopulationBuilder& add_vertex(VertexId id, std::int64_t birthdate,
                                std::optional<Gender> gender = std::nullopt,
                                std::optional<int> generation = std::nullopt) {
    return add_vertex(Vertex{std::move(id), birthdate, gender, generation});
  }
  PopulationBuilder& add_edge(VertexId src, VertexId dst, Gender g) {
    pop_.edges_.push_back(Edge{std::move(src), std::move(dst), g});
    return *this;
  }
  PopulationBuilder& mark_boundary(VertexId id) {
    pop_.boundary_.insert(std::move(id));
    return *this;
  }

  Population build() {
    Population p = std::move(pop_);
    std::sort(p.vertices_.begin(), p.vertices_.end(), [](const Vertex& a, const Vertex& b) {
      return std::tie(a.birthdate, a.id) < std::tie(b.birthdate, b.id);
    });
    p.index_of_.clear();
    for (std::size_t i = 0; i < p.vertices_.size(); ++i) {
      if (!p.index_of_.emplace(p.vertices_[i].id, static_cast<int>(i)).second)
        throw parse_error("duplicate vertex id: " + p.vertices_[i].id);
    }
    for (const VertexId& id : p.boundary_) {
      if (!p.index_of_.count(id)) throw parse_error("boundary lists unknown vertex: " + id);
    }
    std::sort(p.edges_.begin(), p.edges_.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.src, a.dst, a.gender.value) < std::tie(b.src, b.dst, b.gender.value);
    });
    p.children_.assign(p.vertices_.size(), {});
    p.parents_.assign(p.vertices_.size(), {});
    for (const Edge& e : p.edges_) {
      auto si = p.index_of_.find(e.src);
      auto di = p.index_of_.find(e.dst);
      if (si == p.index_of_.end() || di == p.index_of_.end())
        throw parse_error("edge references unknown vertex: " + e.src + " -> " + e.dst);
      p.children_[static_cast<std::size_t>(si->second)].push_back({di->second, e.gender});
      p.parents_[static_cast<std::size_t>(di->second)].push_back({si->second, e.gender});
    }
    auto by_index = [](const std::pair<int, Gender>& a, const std::pair<int, Gender>& b) {
      return std::tie(a.first, a.second.value) < std::tie(b.first, b.second.value);
    };
    for (auto& v : p.children_) std::sort(v.begin(), v.end(), by_index);
    for (auto& v : p.parents_) std::sort(v.begin(), v.end(), by_index);
    p.boundary_flag_.assign(p.vertices_.size(), 0);
    for (const VertexId& id : p.boundary_)
      p.boundary_flag_[static_cast<std::size_t>(p.index_of_[id])] = 1;
    p.depth_ = 0;
    for (const Vertex& v : p.vertices_)
      if (v.generation) p.depth_ = std::max(p.depth_, *v.generation);
    p.vertex_gendered_ = !p.vertices_.empty();
    for (const Vertex& v : p.vertices_)
      if (!v.gender) p.vertex_gendered_ = false;
    if (p.vertex_gendered_) {
      for (const Edge& e : p.edges_) {
        const Vertex& s = p.vertices_[static_cast<std::size_t>(p.index_of_[e.src])];
        if (*s.gender != e.gender) {
          p.vertex_gendered_ = false;
          break;
        }
      }
    }
    return p;
  }

 private:
  Population pop_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string rule;     // "A3-edge-order", "n-gendered", "gender-range", ...
  std::string subject;  // offending vertex id or "src->dst"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the truncation for consistency with being a prefix of an infinite
// n-gendered population. A1/A2 are trivially satisfied by finite data and
// are not reported; A3 order, birthdate uniqueness, gender ranges, and the
// n-Gendered parent condition (relaxed on the boundary) are checked.
inline ValidationReport validate(const Population& p) {
  ValidationReport rep;
  const int n = p.gender_count();
  for (const Vertex& v : p.vertices()) {
    if (v.gender && (v.gender->value < 1 || v.gender->value > n))
      rep.violations.push_back({"gender-range", v.id,
                                "vertex gender " + std::to_string(v.gender->value) +
                                    " outside 1.." + std::to_string(n)});
  }
  for (std::size_t i = 1; i < p.vertices().size(); ++i) {
    if (p.vertices()[i].birthdate == p.vertices()[i - 1].birthdate)
      rep.violations.push_back({"birthdate-unique", p.vertices()[i].id,
                                "shares birthdate with " + p.vertices()[i - 1].id});
  }
  for (const Edge& e : p.edges()) {
    const Vertex& s = p.vertex(p.index_of(e.src));
    const Vertex& d = p.vertex(p.index_of(e.dst));
    if (e.gender.value < 1 || e.gender.value > n)
      rep.violations.push_back({"gender-range", e.src + "->" + e.dst,
                                "edge gender " + std::to_string(e.gender.value) +
                                    " outside 1.." + std::to_string(n)});
    if (s.birthdate >= d.birthdate)
      rep.violations.push_back({"A3-edge-order", e.src + "->" + e.dst,
                                "t(src)=" + std::to_string(s.birthdate) +
                                    " is not before t(dst)=" + std::to_string(d.birthdate)});
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    int idx = static_cast<int>(i);
    if (p.is_root(idx) || p.is_boundary(idx)) continue;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [pi, g] : p.parents(idx))
      if (g.value >= 1 && g.value <= n) seen[static_cast<std::size_t>(g.value)] = 1;
    for (int g = 1; g <= n; ++g) {
      if (!seen[static_cast<std::size_t>(g)])
        rep.violations.push_back({"n-gendered", p.vertex(idx).id,
                                  "interior non-root lacks a parent of gender " +
                                      std::to_string(g)});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Roots and the V_i sets

inline std::vector<VertexId> roots(const Population& p) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.is_root(static_cast<int>(i))) out.push_back(p.vertex(static_cast<int>(i)).id);
  return out;
}

// BFS distance (in edges) from the root set; -1 where unreachable.
inline std::vector<int> root_distances(const Population& p) {
  std::vector<int> dist(p.size(), -1);
  std::deque<int> queue;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.is_root(static_cast<int>(i))) {
      dist[i] = 0;
      queue.push_back(static_cast<int>(i));
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const auto& [c, g] : p.children(u)) {
      if (dist[static_cast<std::size_t>(c)] == -1) {
        dist[static_cast<std::size_t>(c)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(c);
      }
    }
  }
  return dist;
}

// V_i: vertices reachable from some root by a directed path of length <= i.
// Exact on complete populations, and on layered truncations where paths
// never decrease the generation (all families produced here). For a
// non-complete population the guardband i <= truncation_depth applies.
inline std::vector<VertexId> depth_set(const Population& p, int i) {
  if (i < 0) throw precondition_error("depth_set: i must be >= 0");
  if (!p.complete() && i > p.truncation_depth())
    throw depth_error("depth_set: V_" + std::to_string(i) +
                      " is not fully contained in a depth-" +
                      std::to_string(p.truncation_depth()) + " truncation");
  std::vector<int> dist = root_distances(p);
  std::vector<VertexId> out;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (dist[k] >= 0 && dist[k] <= i) out.push_back(p.vertex(static_cast<int>(k)).id);
  return out;
}

// Membership mask for V_i, index-aligned with the population's vertices.
inline std::vector<char> depth_mask(const Population& p, int i) {
  std::vector<int> dist = root_distances(p);
  std::vector<char> mask(p.size(), 0);
  for (std::size_t k = 0; k < p.size(); ++k) mask[k] = (dist[k] >= 0 && dist[k] <= i) ? 1 : 0;
  return mask;
}

// ---------------------------------------------------------------------------
// The i* maps and s-paths

// The i* map: the gender-i parent of u with least birthdate.
inline VertexId gendered_parent(const Population& p, const VertexId& u, Gender i) {
  int idx = p.index_of(u);
  if (p.is_root(idx)) throw no_parent_error("gendered_parent: " + u + " is a root");
  for (const auto& [pi, g] : p.parents(idx))  // parents are sorted by birthdate
    if (g == i) return p.vertex(pi).id;
  throw no_parent_error("gendered_parent: " + u + " has no parent of gender " +
                        std::string(1, gender_char(i)));
}

struct DirectedPath {
  std::vector<VertexId> vertices;
  GenderWord genders;  // edge genders; genders.size() == vertices.size() - 1
};

// The s-path to u for a periodic sequence s of period p'. Walks backward
// from u through the maps (s_{p'})*, (s_{p'-1})*, ..., keeps the longest
// whole number of periods, and reverses. The result starts in V_{p'-1},
// ends at u, and its edge genders match s position by position.
inline DirectedPath star_path(const Population& p, const GenderSequence& s, const VertexId& u) {
  if (s.kind != GenderSequence::Kind::periodic)
    throw precondition_error("star_path: sequence must be periodic");
  const std::size_t period = s.period();
  std::vector<char> low = depth_mask(p, static_cast<int>(period) - 1);

  int uidx = p.index_of(u);
  if (low[static_cast<std::size_t>(uidx)]) return DirectedPath{{u}, {}};

  // Backward chain from u; step t applies the map for s at position
  // (period*q - t + 1), which cycles s_{p'}, s_{p'-1}, ..., s_1 regardless
  // of the eventual q.
  std::vector<int> chain{uidx};
  int cur = uidx;
  std::size_t steps = 0;
  while (!p.is_root(cur)) {
    Gender want = s.period_word[(period - 1) - (steps % period)];
    int next = -1;
    for (const auto& [pi, g] : p.parents(cur)) {
      if (g == want) {
        next = pi;
        break;
      }
    }
    if (next == -1)
      throw no_parent_error("star_path: missing gender-" + std::string(1, gender_char(want)) +
                            " ancestor above " + p.vertex(cur).id);
    chain.push_back(next);
    cur = next;
    ++steps;
  }
  std::size_t q = steps / period;
  chain.resize(q * period + 1);
  std::reverse(chain.begin(), chain.end());

  DirectedPath out;
  out.vertices.reserve(chain.size());
  for (int idx : chain) out.vertices.push_back(p.vertex(idx).id);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) out.genders.push_back(s.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// Gender lift and restriction

// P |-> P ⊔ P' with gender-(n+1) cross edges (v',u) and (v,u') added for
// every gender-n edge (v,u). Copy ids carry a prime suffix; birthdates are
// doubled/offset to stay unique while preserving all edge orderings. The
// output is edge-gendered (vertex labels are kept as data).
inline Population gender_lift(const Population& p, const std::string& copy_suffix = "'") {
  const int n = p.gender_count();
  PopulationBuilder b(n + 1);
  for (const Vertex& v : p.vertices()) {
    b.add_vertex(v.id, 2 * v.birthdate, v.gender, v.generation);
    b.add_vertex(v.id + copy_suffix, 2 * v.birthdate + 1, v.gender, v.generation);
  }
  for (const Edge& e : p.edges()) {
    b.add_edge(e.src, e.dst, e.gender);
    b.add_edge(e.src + copy_suffix, e.dst + copy_suffix, e.gender);
    if (e.gender.value == n) {
      Gender lifted{n + 1};
      b.add_edge(e.src + copy_suffix, e.dst, lifted);
      b.add_edge(e.src, e.dst + copy_suffix, lifted);
    }
  }
  for (const VertexId& id : p.boundary()) {
    b.mark_boundary(id);
    b.mark_boundary(id + copy_suffix);
  }
  return b.build();
}

// Keeps only edges of gender <= n; the same vertices remain.
inline Population gender_restrict(const Population& p, int n) {
  if (n < 1 || n > p.gender_count())
    throw precondition_error("gender_restrict: n must be in 1..gender_count");
  PopulationBuilder b(n);
  for (const Vertex& v : p.vertices()) b.add_vertex(v);
  for (const Edge& e : p.edges())
    if (e.gender.value <= n) b.add_edge(e.src, e.dst, e.gender);
  for (const VertexId& id : p.boundary()) b.mark_boundary(id);
  return b.build();
}

}  // namespace unav
