#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "unav/growth.hpp"
#include "unav/population.hpp"

namespace unav {

// Structured ids for generated families: m3_2 is the second male of
// generation 3.
inline VertexId family_vertex_id(Gender g, int generation, std::int64_t index) {
  return std::string(1, g == M ? 'm' : 'f') + std::to_string(generation) + "_" +
         std::to_string(index);
}

namespace detail {

// Shared layering for both families: generation n holds h(n) males and h(n)
// females; birthdates run by (generation, pair index, male before female).
template <typename EdgeRule>
Population layered_population(const GrowthFunction& h, int depth, EdgeRule&& add_edges) {
  if (depth < 1) throw precondition_error("depth must be >= 1");
  PopulationBuilder b(2);
  std::int64_t t = 0;
  for (int n = 1; n <= depth; ++n) {
    std::int64_t size = h(n);
    for (std::int64_t i = 1; i <= size; ++i) {
      b.add_vertex(family_vertex_id(M, n, i), t++, M, n);
      b.add_vertex(family_vertex_id(F, n, i), t++, F, n);
    }
  }
  add_edges(b, depth);
  for (std::int64_t i = 1; i <= h(depth); ++i) {
    b.mark_boundary(family_vertex_id(M, depth, i));
    b.mark_boundary(family_vertex_id(F, depth, i));
  }
  return b.build();
}

}  // namespace detail

// The chain-style family: within generation n, m^n_{i+1} has parents m^n_i
// and f^n_1 (females mirrored), and m^{n+1}_1 has parents m^n_{h(n)} and
// f^n_1 (females mirrored). Edge genders are the source vertex genders.
inline Population carlson_population(const GrowthFunction& h, int depth) {
  return detail::layered_population(h, depth, [&](PopulationBuilder& b, int d) {
    auto mid = [](int n, std::int64_t i) { return family_vertex_id(M, n, i); };
    auto fid = [](int n, std::int64_t i) { return family_vertex_id(F, n, i); };
    for (int n = 1; n <= d; ++n) {
      std::int64_t size = h(n);
      for (std::int64_t i = 1; i < size; ++i) {
        b.add_edge(mid(n, i), mid(n, i + 1), M);
        b.add_edge(fid(n, 1), mid(n, i + 1), F);
        b.add_edge(fid(n, i), fid(n, i + 1), F);
        b.add_edge(mid(n, 1), fid(n, i + 1), M);
      }
      if (n < d) {
        b.add_edge(mid(n, size), mid(n + 1, 1), M);
        b.add_edge(fid(n, 1), mid(n + 1, 1), F);
        b.add_edge(fid(n, size), fid(n + 1, 1), F);
        b.add_edge(mid(n, 1), fid(n + 1, 1), M);
      }
    }
  });
}

// The sweep-style family: m^{n+1}_1 <- {m^n_1, f^n_{h(n)}},
// f^{n+1}_1 <- {m^n_{h(n)}, f^n_{h(n)}}, m^n_{i+1} <- {m^n_1, f^n_i},
// f^n_{i+1} <- {f^n_i, m^n_i}.
inline Population hunts_population(const GrowthFunction& h, int depth) {
  return detail::layered_population(h, depth, [&](PopulationBuilder& b, int d) {
    auto mid = [](int n, std::int64_t i) { return family_vertex_id(M, n, i); };
    auto fid = [](int n, std::int64_t i) { return family_vertex_id(F, n, i); };
    for (int n = 1; n <= d; ++n) {
      std::int64_t size = h(n);
      for (std::int64_t i = 1; i < size; ++i) {
        b.add_edge(mid(n, 1), mid(n, i + 1), M);
        b.add_edge(fid(n, i), mid(n, i + 1), F);
        b.add_edge(fid(n, i), fid(n, i + 1), F);
        b.add_edge(mid(n, i), fid(n, i + 1), M);
      }
      if (n < d) {
        b.add_edge(mid(n, 1), mid(n + 1, 1), M);
        b.add_edge(fid(n, size), mid(n + 1, 1), F);
        b.add_edge(mid(n, size), fid(n + 1, 1), M);
        b.add_edge(fid(n, size), fid(n + 1, 1), F);
      }
    }
  });
}

// The k-th male/female pair of a layered family, in birthdate order.
struct HeightPair {
  VertexId male;
  VertexId female;
  int generation;
  std::int64_t index_in_generation;
};

// Heights partition the family into pairs H_k = {m-hat_k, f-hat_k}, where
// m-hat_k is the k-th male by birthdate; its generation is the least n with
// h(1) + ... + h(n) >= k.
inline HeightPair height_pair(const GrowthFunction& h, std::int64_t k) {
  if (k < 1) throw precondition_error("height index must be >= 1");
  std::int64_t cumulative = 0;
  int generation = 0;
  for (int n = 1;; ++n) {
    std::int64_t next = cumulative + h(n);
    if (next >= k) {
      generation = n;
      break;
    }
    cumulative = next;
    if (n > 1'000'000) throw cap_error("height_pair: generation scan cap exceeded");
  }
  std::int64_t index = k - cumulative;
  return HeightPair{family_vertex_id(M, generation, index),
                    family_vertex_id(F, generation, index), generation, index};
}

// A lazily expandable population family. expand(d) is deterministic and
// expand(d) is an induced sub-population of expand(d+1) away from the
// boundary.
class PopulationFamily {
 public:
  enum class Kind { carlson, hunts, custom };

  static PopulationFamily carlson(GrowthFunction h) {
    PopulationFamily f;
    f.kind_ = Kind::carlson;
    f.h_ = std::move(h);
    return f;
  }
  static PopulationFamily hunts(GrowthFunction h) {
    PopulationFamily f;
    f.kind_ = Kind::hunts;
    f.h_ = std::move(h);
    return f;
  }
  // Any deterministic expander (used for gameplay-derived populations,
  // whose horizon is capped by the recorded history).
  static PopulationFamily custom(std::string name, int max_depth,
                                 std::function<Population(int)> expand) {
    PopulationFamily f;
    f.kind_ = Kind::custom;
    f.name_ = std::move(name);
    f.max_depth_ = max_depth;
    f.expand_ = std::move(expand);
    return f;
  }

  Population expand(int depth) const {
    switch (kind_) {
      case Kind::carlson:
        return carlson_population(h_, depth);
      case Kind::hunts:
        return hunts_population(h_, depth);
      case Kind::custom:
        if (depth > max_depth_)
          throw depth_error(name_ + ": cannot expand past recorded depth " +
                            std::to_string(max_depth_));
        return expand_(depth);
    }
    throw error("unreachable family kind");
  }

  Kind kind() const { return kind_; }
  const GrowthFunction& growth() const {
    if (kind_ == Kind::custom) throw precondition_error("custom families have no growth function");
    return h_;
  }
  HeightPair height(std::int64_t k) const { return height_pair(growth(), k); }

  std::string name() const {
    switch (kind_) {
      case Kind::carlson:
        return "carlson(" + h_.describe() + ")";
      case Kind::hunts:
        return "hunts(" + h_.describe() + ")";
      case Kind::custom:
        return name_;
    }
    return "?";
  }

  nlohmann::ordered_json descriptor(std::optional<int> depth = std::nullopt) const {
    nlohmann::ordered_json j;
    j["kind"] = kind_ == Kind::carlson ? "carlson" : kind_ == Kind::hunts ? "hunts" : "custom";
    if (kind_ != Kind::custom) j["h"] = nlohmann::ordered_json{{"kind", h_.describe()}};
    if (depth) j["depth"] = *depth;
    return j;
  }

 private:
  Kind kind_ = Kind::carlson;
  GrowthFunction h_ = GrowthFunction::identity();
  std::string name_;
  int max_depth_ = 0;
  std::function<Population(int)> expand_;
};

}  // namespace unav
