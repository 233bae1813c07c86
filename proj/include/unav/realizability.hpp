#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "unav/families.hpp"
#include "unav/population.hpp"

namespace unav {

// Caps guarding the minimal-block and representability scans. The block
// searches also derive a constructive bound from the representability
// oracle, so the hard cap only fires on misuse (e.g. a non-divergent h
// passed with a wrong flag).
struct SearchCaps {
  std::int64_t hard_cap = 1'000'000;  // e-scan and representability scan
  std::int64_t height_scan_cap = 4096;  // builder height advance
};

// ---------------------------------------------------------------------------
// Exact path search for gender words

// Finds a directed path v_1..v_k with v_1 in `start` and vertex genders
// matching `word` position by position, or nullopt if none exists. The
// search is memoized on (vertex, position); a nullopt is an exact proof
// over the truncation. If the verdict would depend on children missing
// beyond the boundary, a depth_error is thrown instead.
inline std::optional<DirectedPath> find_realizing_path(const Population& p,
                                                       const GenderWord& word,
                                                       const std::vector<VertexId>& start) {
  if (word.empty()) throw precondition_error("find_realizing_path: word must be nonempty");
  if (!p.vertex_gendered())
    throw precondition_error("find_realizing_path: population must be vertex-gendered");

  const std::size_t k = word.size();
  // memo[pos][v]: 0 unknown, 1 reachable suffix, 2 dead
  std::vector<std::vector<std::uint8_t>> memo(k, std::vector<std::uint8_t>(p.size(), 0));
  bool boundary_cut = false;

  auto feasible = [&](auto&& self, int v, std::size_t pos) -> bool {
    if (*p.vertex(v).gender != word[pos]) return false;
    if (pos + 1 == k) return true;
    std::uint8_t& slot = memo[pos][static_cast<std::size_t>(v)];
    if (slot) return slot == 1;
    if (p.is_boundary(v)) boundary_cut = true;  // children may be missing
    bool ok = false;
    for (const auto& [c, g] : p.children(v)) {
      if (self(self, c, pos + 1)) {
        ok = true;
        break;
      }
    }
    slot = ok ? 1 : 2;
    return ok;
  };

  std::vector<int> start_idx;
  start_idx.reserve(start.size());
  for (const VertexId& id : start) start_idx.push_back(p.index_of(id));
  std::sort(start_idx.begin(), start_idx.end());

  for (int v : start_idx) {
    if (!feasible(feasible, v, 0)) continue;
    DirectedPath path;
    path.vertices.push_back(p.vertex(v).id);
    int cur = v;
    for (std::size_t pos = 1; pos < k; ++pos) {
      for (const auto& [c, g] : p.children(cur)) {
        if (feasible(feasible, c, pos)) {
          path.genders.push_back(g);
          path.vertices.push_back(p.vertex(c).id);
          cur = c;
          break;
        }
      }
    }
    return path;
  }
  if (boundary_cut)
    throw depth_error("find_realizing_path: search hit the truncation boundary mid-word");
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Impossibility at a height

// Truncation depth that makes the height-k query exact: paths never skip a
// generation, so |word| generations past the height's generation suffice.
inline int height_query_depth(const PopulationFamily& family, std::int64_t k,
                              std::size_t word_len) {
  return family.height(k).generation + static_cast<int>(word_len);
}

// A path gendered by `word` starting in H_k = {m-hat_k, f-hat_k}, if any.
inline std::optional<DirectedPath> height_witness(const PopulationFamily& family,
                                                  const GenderWord& word, std::int64_t k) {
  if (word.empty()) throw precondition_error("height query: word must be nonempty");
  HeightPair hk = family.height(k);
  Population p = family.expand(height_query_depth(family, k, word.size()));
  return find_realizing_path(p, word, {hk.male, hk.female});
}

// True iff no path of |word| vertices gendered by `word` starts in H_k.
// Exact: the truncation is expanded deep enough internally.
inline bool impossible_at_height(const PopulationFamily& family, const GenderWord& word,
                                 std::int64_t k) {
  return !height_witness(family, word, k).has_value();
}

// ---------------------------------------------------------------------------
// The sum-representability oracle

struct RepresentabilityQuery {
  std::int64_t e = 1;
  std::int64_t u = 0;
  GrowthFunction h = GrowthFunction::identity();
  bool half_scale = false;  // use h/2 instead of h (requires the even flag)
};

struct RepresentabilityWitness {
  std::int64_t a = 0, b = 0, c = 0;
};

// Decides whether e-1 = a + sum_{p=1}^{b} h'(c+p) for some naturals a,b,c
// with c <= u and a <= max{h'(1),...,h'(u)} (an empty max is 0), where
// h' = h or h/2. Returns the witness with least (c, b) when representable.
inline std::optional<RepresentabilityWitness> representable(const RepresentabilityQuery& q) {
  if (q.e < 1) throw precondition_error("representable: e must be >= 1");
  if (q.half_scale && !q.h.even())
    throw precondition_error("representable: half scale requires an even growth function");
  auto hp = [&](std::int64_t n) { return q.half_scale ? q.h(n) / 2 : q.h(n); };

  std::int64_t a_max = 0;
  for (std::int64_t n = 1; n <= q.u; ++n) a_max = std::max(a_max, hp(n));

  const std::int64_t target = q.e - 1;
  std::optional<RepresentabilityWitness> best;
  for (std::int64_t c = 0; c <= q.u; ++c) {
    std::int64_t sum = 0;
    for (std::int64_t b = 0;; ++b) {
      if (sum > target) break;
      std::int64_t a = target - sum;
      if (a <= a_max) {
        if (!best || std::tie(c, b) < std::tie(best->c, best->b))
          best = RepresentabilityWitness{a, b, c};
        break;  // smallest b for this c found; larger b only raise the sum
      }
      sum += hp(c + b + 1);
    }
    if (best && best->c == c) break;  // c ascends, so the first hit wins
  }
  return best;
}

// Least e >= 1 that is not representable. Terminates for divergent h; the
// cap guards against misuse with a wrongly-flagged h. Sieves representable
// values in growing windows rather than deciding each e separately.
inline std::int64_t least_nonrepresentable(std::int64_t u, const GrowthFunction& h,
                                           bool half_scale = false,
                                           const SearchCaps& caps = {}) {
  if (!h.diverges())
    throw precondition_error("least_nonrepresentable: growth function must diverge");
  if (half_scale && !h.even())
    throw precondition_error("least_nonrepresentable: half scale requires an even growth function");
  auto hp = [&](std::int64_t n) { return half_scale ? h(n) / 2 : h(n); };
  std::int64_t a_max = 0;
  for (std::int64_t n = 1; n <= u; ++n) a_max = std::max(a_max, hp(n));

  for (std::int64_t limit = 1024;; limit *= 4) {
    std::vector<char> value_seen(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t c = 0; c <= u; ++c) {
      std::int64_t sum = 0;
      for (std::int64_t b = 0; sum <= limit; ++b) {
        for (std::int64_t a = 0; a <= a_max && a + sum <= limit; ++a)
          value_seen[static_cast<std::size_t>(a + sum)] = 1;
        sum += hp(c + b + 1);
      }
    }
    for (std::int64_t v = 0; v <= limit && v + 1 <= caps.hard_cap; ++v)
      if (!value_seen[static_cast<std::size_t>(v)]) return v + 1;  // e - 1 == v
    if (limit >= caps.hard_cap)
      throw cap_error("least_nonrepresentable: cap " + std::to_string(caps.hard_cap) +
                      " exceeded");
  }
}

// ---------------------------------------------------------------------------
// Minimal impossible blocks

namespace detail {

inline GenderWord append_run(GenderWord w, Gender g, std::int64_t count) {
  w.insert(w.end(), static_cast<std::size_t>(count), g);
  return w;
}

// Constructive bound on the minimal block value, derived from the
// representability oracle at u = |prefix| + k (an empty prefix counts as
// the one-symbol seed the iteration conceptually starts from).
inline std::int64_t block_cap(const GenderWord& prefix, std::int64_t k, const GrowthFunction& h,
                              bool half_scale, const SearchCaps& caps) {
  std::int64_t u = static_cast<std::int64_t>(std::max<std::size_t>(prefix.size(), 1)) + k;
  return std::min(caps.hard_cap, least_nonrepresentable(u, h, half_scale, caps) + 2);
}

}  // namespace detail

// Minimal e > 0 such that prefix ⌢ M^e F is impossible in the chain-style
// family at height k.
inline std::int64_t minimal_block_carlson(const GenderWord& prefix, std::int64_t k,
                                          const GrowthFunction& h, const SearchCaps& caps = {}) {
  if (!h.diverges()) throw precondition_error("minimal_block_carlson: h must diverge");
  PopulationFamily family = PopulationFamily::carlson(h);
  std::int64_t cap = detail::block_cap(prefix, k, h, false, caps);
  for (std::int64_t e = 1; e <= cap; ++e) {
    GenderWord w = detail::append_run(prefix, M, e);
    w.push_back(F);
    if (impossible_at_height(family, w, k)) return e;
  }
  throw cap_error("minimal_block_carlson: no impossible block below cap " + std::to_string(cap));
}

// Minimal e > 0 such that prefix ⌢ (FM)^e M is impossible in the
// sweep-style family at height k. Requires even, divergent h.
inline std::int64_t minimal_block_hunts(const GenderWord& prefix, std::int64_t k,
                                        const GrowthFunction& h, const SearchCaps& caps = {}) {
  if (!h.diverges()) throw precondition_error("minimal_block_hunts: h must diverge");
  if (!h.even()) throw precondition_error("minimal_block_hunts: h must be even-valued");
  PopulationFamily family = PopulationFamily::hunts(h);
  std::int64_t cap = detail::block_cap(prefix, k, h, true, caps);
  for (std::int64_t e = 1; e <= cap; ++e) {
    GenderWord w = prefix;
    for (std::int64_t i = 0; i < e; ++i) {
      w.push_back(F);
      w.push_back(M);
    }
    w.push_back(M);
    if (impossible_at_height(family, w, k)) return e;
  }
  throw cap_error("minimal_block_hunts: no impossible block below cap " + std::to_string(cap));
}

// ---------------------------------------------------------------------------
// Iterated avoidable-sequence construction

enum class HeightPolicy { at_k, at_k_plus_1 };

inline std::string to_string(HeightPolicy p) { return p == HeightPolicy::at_k ? "k" : "k+1"; }

struct BlockRun {
  Gender gender;
  std::int64_t len = 1;
};

// An iteratively built finite word whose prefixes are impossible at
// recorded heights. `block_values` holds the chosen e per iteration and
// `heights_verified` the height each extended prefix was verified
// impossible at.
struct BlockSequence {
  std::string family;
  nlohmann::ordered_json family_descriptor;
  std::string policy;
  std::vector<BlockRun> blocks;  // canonical runs of the flattened word
  std::vector<std::int64_t> block_values;
  std::vector<std::int64_t> heights_verified;
  GenderWord word;

  std::string compact_text() const { return format_word_runs(word); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_descriptor;
    j["policy"] = policy;
    j["blocks"] = nlohmann::ordered_json::array();
    for (const BlockRun& r : blocks)
      j["blocks"].push_back(nlohmann::ordered_json{
          {"gender", std::string(1, gender_char(r.gender))}, {"len", r.len}});
    j["block_values"] = block_values;
    j["heights_verified"] = heights_verified;
    j["word"] = format_word(word);
    return j;
  }
};

namespace detail {

inline std::vector<BlockRun> canonical_runs(const GenderWord& w) {
  std::vector<BlockRun> runs;
  for (Gender g : w) {
    if (!runs.empty() && runs.back().gender == g)
      ++runs.back().len;
    else
      runs.push_back({g, 1});
  }
  return runs;
}

// The next height, after `from`, at which the prefix is still realizable.
// Heights where the prefix is already impossible need no new block: the
// existing prefix covers them, so the iteration advances past them.
inline std::int64_t next_open_height(const PopulationFamily& family, const GenderWord& prefix,
                                     std::int64_t from, const SearchCaps& caps) {
  for (std::int64_t k = from + 1; k <= from + caps.height_scan_cap; ++k) {
    if (prefix.empty() || !impossible_at_height(family, prefix, k)) return k;
  }
  throw cap_error("height scan: no realizable height within " +
                  std::to_string(caps.height_scan_cap) + " above " + std::to_string(from));
}

}  // namespace detail

// Iterates minimal chain-family blocks: each step finds the next height at
// which the word so far is still realizable (starting above 1 under the
// k+1 policy) and appends the minimal M^e F making it impossible there.
// Every height up to the last verified one ends up covered by some prefix.
inline BlockSequence avoidable_sequence_carlson(const GrowthFunction& h, int n_blocks,
                                                HeightPolicy policy,
                                                const SearchCaps& caps = {}) {
  if (n_blocks < 1) throw precondition_error("n_blocks must be >= 1");
  PopulationFamily family = PopulationFamily::carlson(h);
  BlockSequence out;
  out.family = family.name();
  out.family_descriptor = family.descriptor();
  out.policy = to_string(policy);
  std::int64_t height = (policy == HeightPolicy::at_k) ? 0 : 1;
  for (int j = 0; j < n_blocks; ++j) {
    height = detail::next_open_height(family, out.word, height, caps);
    std::int64_t e = minimal_block_carlson(out.word, height, h, caps);
    out.word = detail::append_run(std::move(out.word), M, e);
    out.word.push_back(F);
    out.block_values.push_back(e);
    out.heights_verified.push_back(height);
  }
  out.blocks = detail::canonical_runs(out.word);
  return out;
}

// Same iteration for the sweep family with (FM)^e M blocks. The flattened
// word never repeats a gender three times in a row; a junction violating
// that indicates mis-assembly and is a hard error.
inline BlockSequence avoidable_sequence_hunts(const GrowthFunction& h, int n_blocks,
                                              const SearchCaps& caps = {}) {
  if (n_blocks < 1) throw precondition_error("n_blocks must be >= 1");
  PopulationFamily family = PopulationFamily::hunts(h);
  BlockSequence out;
  out.family = family.name();
  out.family_descriptor = family.descriptor();
  out.policy = to_string(HeightPolicy::at_k);
  std::int64_t height = 0;
  for (int j = 0; j < n_blocks; ++j) {
    height = detail::next_open_height(family, out.word, height, caps);
    std::int64_t e = minimal_block_hunts(out.word, height, h, caps);
    for (std::int64_t i = 0; i < e; ++i) {
      out.word.push_back(F);
      out.word.push_back(M);
    }
    out.word.push_back(M);
    out.block_values.push_back(e);
    out.heights_verified.push_back(height);
  }
  out.blocks = detail::canonical_runs(out.word);
  for (const BlockRun& r : out.blocks) {
    if (r.len >= 3)
      throw error("avoidable_sequence_hunts: assembled word has a gender run of length " +
                  std::to_string(r.len));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructive realization of periodic and eventually periodic sequences

// A path of target_len vertices whose edge genders follow the periodic
// sequence s, starting at a vertex in V_{period-1}. The search is exact
// over the given truncation; a depth_error asks the caller to expand.
inline DirectedPath realize_periodic(const Population& p, const GenderSequence& s,
                                     std::size_t target_len) {
  if (s.kind != GenderSequence::Kind::periodic)
    throw precondition_error("realize_periodic: sequence must be periodic");
  if (target_len < 1) throw precondition_error("realize_periodic: target_len must be >= 1");

  std::vector<char> start_mask = depth_mask(p, static_cast<int>(s.period()) - 1);
  const std::size_t L = target_len;
  std::vector<std::vector<std::uint8_t>> memo(L, std::vector<std::uint8_t>(p.size(), 0));
  bool boundary_cut = false;

  auto feasible = [&](auto&& self, int v, std::size_t pos) -> bool {
    if (pos + 1 == L) return true;
    std::uint8_t& slot = memo[pos][static_cast<std::size_t>(v)];
    if (slot) return slot == 1;
    if (p.is_boundary(v)) boundary_cut = true;
    Gender want = s.at(pos);
    bool ok = false;
    for (const auto& [c, g] : p.children(v)) {
      if (g == want && self(self, c, pos + 1)) {
        ok = true;
        break;
      }
    }
    slot = ok ? 1 : 2;
    return ok;
  };

  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!start_mask[i]) continue;
    int v = static_cast<int>(i);
    if (!feasible(feasible, v, 0)) continue;
    DirectedPath path;
    path.vertices.push_back(p.vertex(v).id);
    int cur = v;
    for (std::size_t pos = 1; pos < L; ++pos) {
      Gender want = s.at(pos - 1);
      for (const auto& [c, g] : p.children(cur)) {
        if (g == want && feasible(feasible, c, pos)) {
          path.genders.push_back(g);
          path.vertices.push_back(p.vertex(c).id);
          cur = c;
          break;
        }
      }
    }
    return path;
  }
  if (boundary_cut) throw depth_error("realize_periodic: truncation too shallow");
  throw error("realize_periodic: no realizing path in this population");
}

inline DirectedPath realize_periodic(const PopulationFamily& family, const GenderSequence& s,
                                     std::size_t target_len) {
  int depth = static_cast<int>(s.period() + target_len);
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      return realize_periodic(family.expand(depth), s, target_len);
    } catch (const depth_error&) {
      depth += static_cast<int>(target_len) + 2;
    }
  }
  throw depth_error("realize_periodic: still unresolved at depth " + std::to_string(depth));
}

// Realizes an eventually periodic sequence t ⌢ t': the periodic tail is
// realized in the sub-population with V_{k-1} discarded (k = |t|), then the
// path is back-extended through the t*-maps, one map per prefix symbol.
inline DirectedPath realize_eventually_periodic(const PopulationFamily& family,
                                                const GenderSequence& s,
                                                std::size_t target_len) {
  if (s.kind == GenderSequence::Kind::periodic) return realize_periodic(family, s, target_len);
  if (s.kind != GenderSequence::Kind::eventually_periodic)
    throw precondition_error("realize_eventually_periodic: sequence must have a periodic tail");
  const std::size_t k = s.prefix.size();
  if (k == 0) return realize_periodic(family, GenderSequence::periodic(s.period_word), target_len);
  if (target_len <= k)
    throw precondition_error("realize_eventually_periodic: target_len must exceed the prefix");

  const std::size_t tail_len = target_len - k;
  GenderSequence tail = GenderSequence::periodic(s.period_word);
  int depth = static_cast<int>(k + tail.period() + target_len);

  for (int attempt = 0;; ++attempt) {
    Population p = family.expand(depth);
    std::vector<char> low = depth_mask(p, static_cast<int>(k) - 1);

    // The population with V_{k-1} discarded. Former children of discarded
    // vertices become roots of the remainder.
    PopulationBuilder b(p.gender_count());
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!low[i]) b.add_vertex(p.vertex(static_cast<int>(i)));
    for (const Edge& e : p.edges())
      if (!low[static_cast<std::size_t>(p.index_of(e.src))] &&
          !low[static_cast<std::size_t>(p.index_of(e.dst))])
        b.add_edge(e.src, e.dst, e.gender);
    for (const VertexId& id : p.boundary())
      if (!low[static_cast<std::size_t>(p.index_of(id))]) b.mark_boundary(id);
    Population remainder = b.build();

    try {
      DirectedPath tail_path = realize_periodic(remainder, tail, tail_len);
      std::vector<VertexId> vertices;
      VertexId cur = tail_path.vertices.front();
      for (std::size_t i = k; i >= 1; --i) {
        cur = gendered_parent(p, cur, s.prefix[i - 1]);
        vertices.push_back(cur);
      }
      std::reverse(vertices.begin(), vertices.end());
      vertices.insert(vertices.end(), tail_path.vertices.begin(), tail_path.vertices.end());
      DirectedPath out;
      out.vertices = std::move(vertices);
      out.genders = s.head(target_len - 1);
      return out;
    } catch (const depth_error&) {
      if (attempt >= 3) throw;
      depth += static_cast<int>(target_len) + 2;
    }
  }
}

}  // namespace unav
