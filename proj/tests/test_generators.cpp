#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "support/oracles.hpp"
#include "unav/families.hpp"

using namespace unav;

namespace {

struct ParsedId {
  Gender gender;
  int generation;
  std::int64_t index;
};

ParsedId parse_family_id(const VertexId& id) {
  ParsedId out;
  out.gender = id[0] == 'm' ? M : F;
  auto us = id.find('_');
  out.generation = std::stoi(id.substr(1, us - 1));
  out.index = std::stoll(id.substr(us + 1));
  return out;
}

std::set<VertexId> parent_ids(const Population& p, const VertexId& id) {
  std::set<VertexId> out;
  for (const auto& [pi, g] : p.parents(p.index_of(id))) out.insert(p.vertex(pi).id);
  return out;
}

// All maximal simple paths through a filtered child relation, visited
// exhaustively (including every sub-path).
template <typename KeepVertex, typename KeepStep, typename Visit>
void enumerate_paths(const Population& p, KeepVertex keep_vertex, KeepStep keep_step,
                     Visit visit) {
  std::vector<int> path;
  auto walk = [&](auto&& self, int v) -> void {
    path.push_back(v);
    if (path.size() >= 2) visit(path);
    for (const auto& [c, g] : p.children(v)) {
      if (!keep_vertex(c)) continue;
      if (!keep_step(v, c)) continue;
      self(self, c);
    }
    path.pop_back();
  };
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (keep_vertex(static_cast<int>(i))) walk(walk, static_cast<int>(i));
  }
}

}  // namespace

TEST_CASE("chain family edges match the defining rules") {
  Population t = carlson_population(GrowthFunction::identity(), 3);
  CHECK(parent_ids(t, "m3_1") == std::set<VertexId>{"m2_2", "f2_1"});
  CHECK(parent_ids(t, "f3_1") == std::set<VertexId>{"f2_2", "m2_1"});
  CHECK(parent_ids(t, "m2_2") == std::set<VertexId>{"m2_1", "f2_1"});
  CHECK(parent_ids(t, "f2_2") == std::set<VertexId>{"f2_1", "m2_1"});
}

TEST_CASE("chain family depth 1 under identity growth is just the roots") {
  Population t = carlson_population(GrowthFunction::identity(), 1);
  REQUIRE(t.size() == 2);
  CHECK(t.edges().empty());
  CHECK(roots(t) == std::vector<VertexId>{"m1_1", "f1_1"});
}

TEST_CASE("family vertex counts are twice the growth sums") {
  for (int d = 1; d <= 9; ++d) {
    std::int64_t sum_id = 0, sum_2n = 0;
    for (int n = 1; n <= d; ++n) {
      sum_id += n;
      sum_2n += 2 * n;
    }
    CHECK(carlson_population(GrowthFunction::identity(), d).size() ==
          static_cast<std::size_t>(2 * sum_id));
    CHECK(hunts_population(GrowthFunction::doubling(), d).size() ==
          static_cast<std::size_t>(2 * sum_2n));
  }
}

TEST_CASE("sweep family edges match the defining rules") {
  Population h = hunts_population(GrowthFunction::doubling(), 2);
  CHECK(parent_ids(h, "m2_1") == std::set<VertexId>{"m1_1", "f1_2"});
  CHECK(parent_ids(h, "f2_1") == std::set<VertexId>{"m1_2", "f1_2"});
}

TEST_CASE("sweep family depth 1 keeps within-generation edges") {
  Population h = hunts_population(GrowthFunction::doubling(), 1);
  std::set<VertexId> ids;
  for (const Vertex& v : h.vertices()) ids.insert(v.id);
  CHECK(ids == std::set<VertexId>{"m1_1", "m1_2", "f1_1", "f1_2"});
  CHECK(parent_ids(h, "m1_2") == std::set<VertexId>{"m1_1", "f1_1"});
  CHECK(parent_ids(h, "f1_2") == std::set<VertexId>{"f1_1", "m1_1"});
}

TEST_CASE("chain family structural properties") {
  for (int depth : {6, 10}) {
    Population t = carlson_population(GrowthFunction::identity(), depth);
    CAPTURE(depth);

    // (1) a valid 2-gendered truncation with the expected roots
    CHECK(validate(t).ok());
    CHECK(roots(t) == std::vector<VertexId>{"m1_1", "f1_1"});

    // (2) cross-gender children only come from index-1 vertices
    for (const Edge& e : t.edges()) {
      ParsedId src = parse_family_id(e.src);
      ParsedId dst = parse_family_id(e.dst);
      if (src.gender != dst.gender) CHECK(src.index == 1);
    }

    // (3) no edge skips a generation
    for (const Edge& e : t.edges()) {
      int gi = parse_family_id(e.src).generation;
      int gj = parse_family_id(e.dst).generation;
      CHECK((gj == gi || gj == gi + 1));
    }
  }
}

TEST_CASE("all-male paths sweep every intermediate generation") {
  Population t = carlson_population(GrowthFunction::identity(), 6);
  std::map<int, std::set<VertexId>> males_by_generation;
  for (const Vertex& v : t.vertices()) {
    if (*v.gender == M) males_by_generation[*v.generation].insert(v.id);
  }
  auto is_male = [&](int idx) { return *t.vertex(idx).gender == M; };
  std::size_t paths_seen = 0;
  enumerate_paths(
      t, is_male, [](int, int) { return true; },
      [&](const std::vector<int>& path) {
        ++paths_seen;
        int gi = *t.vertex(path.front()).generation;
        int gj = *t.vertex(path.back()).generation;
        std::set<VertexId> on_path;
        for (int v : path) on_path.insert(t.vertex(v).id);
        for (int k = gi + 1; k < gj; ++k) {
          for (const VertexId& m : males_by_generation[k]) {
            INFO("path " << t.vertex(path.front()).id << " .. " << t.vertex(path.back()).id
                         << " must contain " << m);
            CHECK(on_path.count(m) == 1);
          }
        }
      });
  CHECK(paths_seen > 0);
}

TEST_CASE("sweep family structural properties") {
  for (int depth : {5, 8}) {
    Population h = hunts_population(GrowthFunction::doubling(), depth);
    CAPTURE(depth);

    CHECK(validate(h).ok());
    CHECK(roots(h) == std::vector<VertexId>{"m1_1", "f1_1"});

    // (2) males with sons have index 1
    for (const Edge& e : h.edges()) {
      ParsedId src = parse_family_id(e.src);
      ParsedId dst = parse_family_id(e.dst);
      if (src.gender == M && dst.gender == M) CHECK(src.index == 1);
    }

    // (3) no edge skips a generation
    for (const Edge& e : h.edges()) {
      int gi = parse_family_id(e.src).generation;
      int gj = parse_family_id(e.dst).generation;
      CHECK((gj == gi || gj == gi + 1));
    }
  }
}

TEST_CASE("alternating paths pick one vertex per height pair they cross") {
  Population h = hunts_population(GrowthFunction::doubling(), 6);
  auto keep_step = [&](int a, int b) {
    return *h.vertex(a).gender != *h.vertex(b).gender;
  };
  auto any_vertex = [](int) { return true; };
  std::size_t paths_seen = 0;
  enumerate_paths(h, any_vertex, keep_step, [&](const std::vector<int>& path) {
    ++paths_seen;
    int gi = *h.vertex(path.front()).generation;
    int gj = *h.vertex(path.back()).generation;
    if (gj <= gi + 1) return;
    std::set<VertexId> on_path;
    for (int v : path) on_path.insert(h.vertex(v).id);
    GrowthFunction growth = GrowthFunction::doubling();
    for (int p = gi + 1; p < gj; ++p) {
      for (std::int64_t k = 1; k <= growth(p); ++k) {
        int hits = static_cast<int>(on_path.count(family_vertex_id(M, p, k))) +
                   static_cast<int>(on_path.count(family_vertex_id(F, p, k)));
        INFO("generation " << p << " pair " << k);
        CHECK(hits == 1);
      }
    }
  });
  CHECK(paths_seen > 0);
}

TEST_CASE("expansion is monotone away from the boundary") {
  for (auto kind : {PopulationFamily::carlson(GrowthFunction::identity()),
                    PopulationFamily::hunts(GrowthFunction::doubling())}) {
    for (int d = 1; d <= 6; ++d) {
      Population small = kind.expand(d);
      Population big = kind.expand(d + 1);
      for (const Vertex& v : small.vertices()) {
        REQUIRE(big.contains(v.id));
        const Vertex& w = big.vertex(big.index_of(v.id));
        CHECK(w.birthdate == v.birthdate);
        CHECK(*w.gender == *v.gender);
        CHECK(*w.generation == *v.generation);
      }
      for (const Edge& e : small.edges()) CHECK(oracle::has_edge(big, e.src, e.dst, e.gender));
      for (const Edge& e : big.edges()) {
        if (parse_family_id(e.src).generation <= d && parse_family_id(e.dst).generation <= d)
          CHECK(oracle::has_edge(small, e.src, e.dst, e.gender));
      }
    }
  }
}

TEST_CASE("height pairs follow cumulative growth sums") {
  PopulationFamily t = PopulationFamily::carlson(GrowthFunction::identity());
  HeightPair h1 = t.height(1);
  CHECK(h1.male == "m1_1");
  CHECK(h1.female == "f1_1");
  CHECK(h1.generation == 1);

  HeightPair h2 = t.height(2);
  CHECK(h2.male == "m2_1");
  CHECK(h2.female == "f2_1");
  CHECK(h2.generation == 2);

  HeightPair h4 = t.height(4);
  CHECK(h4.male == "m3_1");
  CHECK(h4.female == "f3_1");
  CHECK(h4.generation == 3);

  // The k-th male by birthdate is exactly height(k)'s male.
  Population pop = t.expand(6);
  std::vector<VertexId> males;
  for (const Vertex& v : pop.vertices())
    if (*v.gender == M) males.push_back(v.id);
  for (std::size_t k = 1; k <= males.size(); ++k) CHECK(t.height(k).male == males[k - 1]);
}

TEST_CASE("growth function flags and parsing") {
  CHECK(GrowthFunction::identity()(7) == 7);
  CHECK(GrowthFunction::doubling()(7) == 14);
  CHECK(GrowthFunction::doubling().even());
  CHECK_FALSE(GrowthFunction::identity().even());
  CHECK(GrowthFunction::identity().diverges());

  GrowthFunction lin = GrowthFunction::parse("linear:2:4");
  CHECK(lin(3) == 10);
  CHECK(lin.even());
  CHECK(lin.diverges());
  CHECK_FALSE(GrowthFunction::linear(0, 5).diverges());

  GrowthFunction tab = GrowthFunction::parse("table:4,2;double");
  CHECK(tab(1) == 4);
  CHECK(tab(2) == 2);
  CHECK(tab(3) == 6);
  CHECK(tab.even());
  CHECK(GrowthFunction::table({3}, GrowthFunction::doubling()).even() == false);

  CHECK_THROWS_AS(GrowthFunction::parse("cubic"), parse_error);
  CHECK_THROWS_AS(GrowthFunction::identity()(0), precondition_error);
}
