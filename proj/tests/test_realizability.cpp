#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "unav/realizability.hpp"

using namespace unav;

namespace {

const GrowthFunction kId = GrowthFunction::identity();
const GrowthFunction kDouble = GrowthFunction::doubling();

std::vector<GenderWord> all_words_up_to(int max_len) {
  std::vector<GenderWord> words;
  for (int len = 1; len <= max_len; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      GenderWord w;
      for (int i = 0; i < len; ++i) w.push_back((bits >> i) & 1 ? F : M);
      words.push_back(w);
    }
  }
  return words;
}

}  // namespace

TEST_CASE("find_realizing_path basics") {
  Population t = carlson_population(kId, 4);

  SECTION("a single male symbol is realized at the first male") {
    auto path = find_realizing_path(t, parse_word("M"), {"m1_1", "f1_1"});
    REQUIRE(path);
    CHECK(path->vertices == std::vector<VertexId>{"m1_1"});
  }

  SECTION("MMF from the first height has a witness") {
    auto path = find_realizing_path(t, parse_word("MMF"), {"m1_1"});
    REQUIRE(path);
    CHECK(path->vertices.size() == 3);
    CHECK(oracle::is_directed_path(t, path->vertices));
    for (std::size_t i = 0; i < path->vertices.size(); ++i)
      CHECK(*t.vertex(t.index_of(path->vertices[i])).gender == parse_word("MMF")[i]);
  }

  SECTION("an empty start set realizes nothing") {
    CHECK_FALSE(find_realizing_path(t, parse_word("M"), {}));
  }

  SECTION("a verdict that would depend on missing children raises depth_error") {
    // The male chain of a depth-3 identity truncation has exactly 6
    // vertices; asking for 7 males runs off the boundary.
    Population shallow = carlson_population(kId, 3);
    CHECK(find_realizing_path(shallow, parse_word("M^6"), {"m1_1"}).has_value());
    CHECK_THROWS_AS(find_realizing_path(shallow, parse_word("M^7"), {"m1_1"}), depth_error);
  }

  SECTION("edge-gendered populations are rejected") {
    Population lifted = gender_lift(t);
    CHECK_THROWS_AS(find_realizing_path(lifted, parse_word("M"), {"m1_1"}),
                    precondition_error);
  }
}

TEST_CASE("impossibility at heights") {
  PopulationFamily t = PopulationFamily::carlson(kId);

  SECTION("M^2FM^5FM^8F is impossible at height 2") {
    CHECK(impossible_at_height(t, parse_word("M^2FM^5FM^8F"), 2));
  }

  SECTION("a single M is possible at every height") {
    for (std::int64_t k = 1; k <= 12; ++k) CHECK_FALSE(impossible_at_height(t, parse_word("M"), k));
  }

  SECTION("the 3n-1 block word is realizable from the first height pair") {
    // The chain vertex m^{3k+1}_1 is a son of f^{3k}_1 and first male of its
    // generation, which lets the word thread every block through the male
    // chain; exhaustive search confirms realizability for every prefix.
    auto witness = height_witness(t, parse_word("M^2FM^5FM^8F"), 1);
    REQUIRE(witness);
    Population pop = t.expand(12);
    CHECK(witness->vertices.front() == "m1_1");
    CHECK(oracle::is_directed_path(pop, witness->vertices));
    GenderWord expected = parse_word("M^2FM^5FM^8F");
    for (std::size_t i = 0; i < expected.size(); ++i)
      CHECK(*pop.vertex(pop.index_of(witness->vertices[i])).gender == expected[i]);
  }

  SECTION("empty words are rejected") {
    CHECK_THROWS_AS(impossible_at_height(t, {}, 1), precondition_error);
  }
}

TEST_CASE("memoized search agrees with naive enumeration") {
  for (auto family : {PopulationFamily::carlson(kId), PopulationFamily::hunts(kDouble)}) {
    for (const GenderWord& w : all_words_up_to(6)) {
      for (std::int64_t k = 1; k <= 3; ++k) {
        CAPTURE(family.name(), format_word(w), k);
        CHECK(impossible_at_height(family, w, k) == oracle::naive_impossible_at_height(family, w, k));
      }
    }
  }
}

TEST_CASE("impossibility verdicts are stable under deeper truncations") {
  PopulationFamily t = PopulationFamily::carlson(kId);
  for (const char* text : {"M^3F", "M^2FM^5F", "MFMF", "M^4", "FFM"}) {
    GenderWord w = parse_word(text);
    for (std::int64_t k = 1; k <= 3; ++k) {
      bool at_internal_depth = impossible_at_height(t, w, k);
      Population deeper = t.expand(height_query_depth(t, k, w.size()) + 3);
      HeightPair hk = t.height(k);
      bool at_extra_depth = !find_realizing_path(deeper, w, {hk.male, hk.female}).has_value();
      CAPTURE(text, k);
      CHECK(at_internal_depth == at_extra_depth);
    }
  }
}

TEST_CASE("sum representability oracle") {
  SECTION("for u = 0 only the bare sums from the start count") {
    CHECK_FALSE(representable({3, 0, kId, false}));
    auto w2 = representable({2, 0, kId, false});
    REQUIRE(w2);
    CHECK(w2->a == 0);
    CHECK(w2->b == 1);
    CHECK(w2->c == 0);
  }

  SECTION("e = 1 is always representable by the empty sum") {
    for (auto& h : {kId, kDouble}) {
      auto w = representable({1, 5, h, false});
      REQUIRE(w);
      CHECK(w->a == 0);
      CHECK(w->b == 0);
    }
  }

  SECTION("witnesses evaluate back to e - 1") {
    for (std::int64_t u : {0, 2, 7}) {
      for (std::int64_t e = 1; e <= 120; ++e) {
        auto w = representable({e, u, kDouble, true});
        if (!w) continue;
        std::int64_t sum = w->a;
        for (std::int64_t p = 1; p <= w->b; ++p) sum += kDouble(w->c + p) / 2;
        CHECK(sum == e - 1);
        CHECK(w->c <= u);
      }
    }
  }

  SECTION("agrees with the brute-force double loop") {
    for (auto& h : {kId, kDouble}) {
      for (std::int64_t u = 0; u <= 10; ++u) {
        for (std::int64_t e = 1; e <= 200; ++e) {
          CAPTURE(h.describe(), u, e);
          CHECK(representable({e, u, h, false}).has_value() ==
                oracle::brute_force_representable(e, u, h, false));
        }
      }
    }
    for (std::int64_t u = 0; u <= 10; ++u) {
      for (std::int64_t e = 1; e <= 200; ++e) {
        CHECK(representable({e, u, kDouble, true}).has_value() ==
              oracle::brute_force_representable(e, u, kDouble, true));
      }
    }
  }

  SECTION("half scale requires the even flag") {
    CHECK_THROWS_AS(representable({5, 2, kId, true}), precondition_error);
  }
}

TEST_CASE("least nonrepresentable value") {
  CHECK(least_nonrepresentable(0, kId) == 3);

  SECTION("matches the brute-force oracle") {
    for (auto& h : {kId, kDouble}) {
      for (std::int64_t u = 0; u <= 10; ++u) {
        CAPTURE(h.describe(), u);
        CHECK(least_nonrepresentable(u, h) ==
              oracle::brute_force_least_nonrepresentable(u, h, false));
      }
    }
    for (std::int64_t u = 0; u <= 8; ++u)
      CHECK(least_nonrepresentable(u, kDouble, true) ==
            oracle::brute_force_least_nonrepresentable(u, kDouble, true));
  }

  SECTION("the result is itself nonrepresentable, everything below is not") {
    for (std::int64_t u : {0, 3, 6}) {
      std::int64_t e = least_nonrepresentable(u, kId);
      CHECK_FALSE(representable({e, u, kId, false}));
      for (std::int64_t smaller = 1; smaller < e; ++smaller)
        CHECK(representable({smaller, u, kId, false}).has_value());
    }
  }

  SECTION("a non-divergent growth function is refused") {
    CHECK_THROWS_AS(least_nonrepresentable(2, GrowthFunction::linear(0, 4)), precondition_error);
  }
}

TEST_CASE("minimal chain-family blocks at fixed heights") {
  CHECK(minimal_block_carlson({}, 1, kId) == 3);
  CHECK(minimal_block_carlson(parse_word("M^3F"), 2, kId) == 5);
  CHECK(minimal_block_carlson({}, 2, kId) == 2);

  SECTION("minimality replays against the naive oracle") {
    PopulationFamily t = PopulationFamily::carlson(kId);
    GenderWord prefix = parse_word("M^3F");
    std::int64_t e = minimal_block_carlson(prefix, 2, kId);
    for (std::int64_t trial = 1; trial <= e; ++trial) {
      GenderWord w = prefix;
      w.insert(w.end(), static_cast<std::size_t>(trial), M);
      w.push_back(F);
      CHECK(oracle::naive_impossible_at_height(t, w, 2) == (trial == e));
    }
  }
}

TEST_CASE("iterated avoidable sequence, blocks verified at their own heights") {
  BlockSequence seq = avoidable_sequence_carlson(kId, 4, HeightPolicy::at_k);
  CHECK(seq.compact_text() == "M^3 F M^5 F M^8 F M^11 F");
  CHECK(seq.block_values == std::vector<std::int64_t>{3, 5, 8, 11});
  CHECK(seq.heights_verified == std::vector<std::int64_t>{1, 2, 5, 9});

  PopulationFamily t = PopulationFamily::carlson(kId);
  GenderWord prefix;
  for (std::size_t j = 0; j < seq.block_values.size(); ++j) {
    prefix.insert(prefix.end(), static_cast<std::size_t>(seq.block_values[j]), M);
    prefix.push_back(F);
    CHECK(oracle::naive_impossible_at_height(t, prefix, seq.heights_verified[j]));
  }

  SECTION("every height up to the block count is covered by some prefix") {
    for (std::int64_t k = 1; k <= 4; ++k) {
      bool covered = false;
      GenderWord w;
      for (std::size_t j = 0; j < seq.block_values.size() && !covered; ++j) {
        w.insert(w.end(), static_cast<std::size_t>(seq.block_values[j]), M);
        w.push_back(F);
        covered = impossible_at_height(t, w, k);
      }
      CAPTURE(k);
      CHECK(covered);
    }
  }
}

TEST_CASE("iterated avoidable sequence, blocks verified one height up") {
  BlockSequence seq = avoidable_sequence_carlson(kId, 4, HeightPolicy::at_k_plus_1);
  CHECK(seq.compact_text() == "M^2 F M^5 F M^8 F M^11 F");
  CHECK(seq.block_values == std::vector<std::int64_t>{2, 5, 8, 11});
  CHECK(seq.heights_verified == std::vector<std::int64_t>{2, 3, 6, 10});

  PopulationFamily t = PopulationFamily::carlson(kId);
  GenderWord prefix;
  for (std::size_t j = 0; j < seq.block_values.size(); ++j) {
    prefix.insert(prefix.end(), static_cast<std::size_t>(seq.block_values[j]), M);
    prefix.push_back(F);
    CHECK(oracle::naive_impossible_at_height(t, prefix, seq.heights_verified[j]));
  }

  SECTION("heights from 2 upward are covered; height 1 provably is not") {
    for (std::int64_t k = 2; k <= 5; ++k) {
      bool covered = false;
      GenderWord w;
      for (std::size_t j = 0; j < seq.block_values.size() && !covered; ++j) {
        w.insert(w.end(), static_cast<std::size_t>(seq.block_values[j]), M);
        w.push_back(F);
        covered = impossible_at_height(t, w, k);
      }
      CAPTURE(k);
      CHECK(covered);
    }
    // The whole emitted word stays realizable from H_1: the witness threads
    // the male chain through m^{3k+1}_1, so no prefix covers height 1.
    CHECK(height_witness(t, seq.word, 1).has_value());
  }

  SECTION("emitted sequences are deterministic") {
    BlockSequence again = avoidable_sequence_carlson(kId, 4, HeightPolicy::at_k_plus_1);
    CHECK(again.word == seq.word);
    CHECK(again.block_values == seq.block_values);
    CHECK(again.heights_verified == seq.heights_verified);
  }

  SECTION("JSON serialization carries blocks and verified heights") {
    auto j = seq.to_json();
    CHECK(j["family"]["kind"] == "carlson");
    CHECK(j["family"]["h"]["kind"] == "identity");
    CHECK(j["policy"] == "k+1");
    CHECK(j["word"] == format_word(seq.word));
    CHECK(j["blocks"][0]["gender"] == "M");
    CHECK(j["blocks"][0]["len"] == 2);
    CHECK(j["heights_verified"].size() == 4);
  }
}

TEST_CASE("minimal sweep-family blocks") {
  CHECK(minimal_block_hunts({}, 1, kDouble) == 1);
  CHECK_THROWS_AS(minimal_block_hunts({}, 1, kId), precondition_error);

  SECTION("minimality replays against the naive oracle") {
    PopulationFamily hf = PopulationFamily::hunts(kDouble);
    GenderWord prefix = parse_word("FMM");
    std::int64_t e = minimal_block_hunts(prefix, 2, kDouble);
    for (std::int64_t trial = 1; trial <= e; ++trial) {
      GenderWord w = prefix;
      for (std::int64_t i = 0; i < trial; ++i) {
        w.push_back(F);
        w.push_back(M);
      }
      w.push_back(M);
      CHECK(oracle::naive_impossible_at_height(hf, w, 2) == (trial == e));
    }
  }
}

TEST_CASE("sweep-family avoidable sequence never repeats a gender thrice") {
  BlockSequence seq = avoidable_sequence_hunts(kDouble, 3);
  CHECK(seq.compact_text() == "F M^2 F M F M^2 F M F M F M F M^2");
  CHECK(seq.block_values == std::vector<std::int64_t>{1, 2, 4});
  CHECK(seq.heights_verified == std::vector<std::int64_t>{1, 2, 6});
  for (const BlockRun& r : seq.blocks) CHECK(r.len <= 2);

  PopulationFamily hf = PopulationFamily::hunts(kDouble);
  GenderWord prefix;
  for (std::size_t j = 0; j < seq.block_values.size(); ++j) {
    for (std::int64_t i = 0; i < seq.block_values[j]; ++i) {
      prefix.push_back(F);
      prefix.push_back(M);
    }
    prefix.push_back(M);
    CHECK(oracle::naive_impossible_at_height(hf, prefix, seq.heights_verified[j]));
  }

  BlockSequence again = avoidable_sequence_hunts(kDouble, 3);
  CHECK(again.word == seq.word);
}

TEST_CASE("periodic realization") {
  PopulationFamily t = PopulationFamily::carlson(kId);

  SECTION("the all-male sequence rides the male chain from the root") {
    DirectedPath path = realize_periodic(t, GenderSequence::periodic({M}), 10);
    REQUIRE(path.vertices.size() == 10);
    CHECK(path.vertices.front() == "m1_1");
    Population pop = t.expand(11);
    CHECK(oracle::is_directed_path(pop, path.vertices));
    for (Gender g : path.genders) CHECK(g == M);
  }

  SECTION("an alternating period starts within V_1") {
    GenderSequence s = GenderSequence::periodic(parse_word("MF"));
    DirectedPath path = realize_periodic(t, s, 8);
    REQUIRE(path.vertices.size() == 8);
    Population pop = t.expand(10);
    std::vector<char> v1 = depth_mask(pop, 1);
    CHECK(v1[static_cast<std::size_t>(pop.index_of(path.vertices.front()))] == 1);
    for (std::size_t i = 0; i < path.genders.size(); ++i) {
      CHECK(path.genders[i] == s.at(i));
      CHECK(oracle::has_edge(pop, path.vertices[i], path.vertices[i + 1], s.at(i)));
    }
  }

  SECTION("gender word of the result is the head of the sequence") {
    GenderSequence s = GenderSequence::periodic(parse_word("MMF"));
    DirectedPath path = realize_periodic(t, s, 12);
    CHECK(path.genders == s.head(11));
  }
}

TEST_CASE("eventually periodic realization back-extends through the prefix maps") {
  PopulationFamily t = PopulationFamily::carlson(kId);

  SECTION("a one-symbol female prefix, then all male") {
    GenderSequence s = GenderSequence::eventually_periodic(parse_word("F"), parse_word("M"));
    DirectedPath path = realize_eventually_periodic(t, s, 10);
    REQUIRE(path.vertices.size() == 10);
    CHECK(path.genders[0] == F);
    for (std::size_t i = 1; i < path.genders.size(); ++i) CHECK(path.genders[i] == M);
    Population pop = t.expand(12);
    CHECK(oracle::is_directed_path(pop, path.vertices));
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
      CHECK(oracle::has_edge(pop, path.vertices[i], path.vertices[i + 1], s.at(i)));
    // The tail's first vertex avoids V_{k-1}.
    std::vector<char> low = depth_mask(pop, 0);
    CHECK(low[static_cast<std::size_t>(pop.index_of(path.vertices[1]))] == 0);
  }

  SECTION("an empty prefix degenerates to the periodic case") {
    GenderSequence s = GenderSequence::eventually_periodic({}, parse_word("MF"));
    DirectedPath direct = realize_periodic(t, GenderSequence::periodic(parse_word("MF")), 8);
    DirectedPath via = realize_eventually_periodic(t, s, 8);
    CHECK(via.vertices == direct.vertices);
  }

  SECTION("longer prefixes never re-enter the discarded shallow set") {
    GenderSequence s =
        GenderSequence::eventually_periodic(parse_word("FFM"), parse_word("M"));
    DirectedPath path = realize_eventually_periodic(t, s, 11);
    REQUIRE(path.vertices.size() == 11);
    Population pop = t.expand(16);
    CHECK(oracle::is_directed_path(pop, path.vertices));
    std::vector<char> low = depth_mask(pop, 2);
    for (std::size_t i = 3; i < path.vertices.size(); ++i)
      CHECK(low[static_cast<std::size_t>(pop.index_of(path.vertices[i]))] == 0);
    CHECK(path.genders == s.head(10));
  }

  SECTION("the discard construction can fail even when the word is realizable") {
    // Discarding V_2 strands vertices that kept one parent but lost the
    // other, so the remainder is not 2-gendered and an alternating tail has
    // nowhere to start in its shallow set. The construction reports that
    // honestly; a direct search still finds the word in the full population.
    GenderSequence s =
        GenderSequence::eventually_periodic(parse_word("FFM"), parse_word("MF"));
    CHECK_THROWS_AS(realize_eventually_periodic(t, s, 11), error);

    Population pop = t.expand(14);
    std::vector<VertexId> everyone;
    for (const Vertex& v : pop.vertices()) everyone.push_back(v.id);
    GenderWord vertex_word = s.head(11);  // vertex genders of an 11-vertex path
    CHECK(find_realizing_path(pop, vertex_word, everyone).has_value());
  }
}
