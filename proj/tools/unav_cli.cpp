// Command-line surface for the population, avoidability and lifeline
// machinery. Exit codes: 0 = computed (whatever the verdict), 1 = I/O
// failure, 2 = user error, 3 = search cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "unav/ca.hpp"
#include "unav/ca_io.hpp"
#include "unav/population_io.hpp"
#include "unav/realizability.hpp"

using namespace unav;

namespace {

SearchCaps caps_from_env() {
  SearchCaps caps;
  if (const char* cap = std::getenv("UNAV_CAP")) {
    try {
      caps.hard_cap = std::stoll(cap);
    } catch (const std::exception&) {
      throw parse_error("UNAV_CAP is not an integer: " + std::string(cap));
    }
    if (caps.hard_cap < 1) throw parse_error("UNAV_CAP must be positive");
  }
  return caps;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

PopulationFamily make_family(const std::string& kind, const GrowthFunction& h) {
  if (kind == "carlson") return PopulationFamily::carlson(h);
  if (kind == "hunts") return PopulationFamily::hunts(h);
  throw parse_error("unknown family \"" + kind + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GenerateArgs {
  std::string family = "carlson";
  std::string h = "identity";
  int depth = 0;
  std::string format = "json";
  std::string out = "-";
};

int cmd_generate(const GenerateArgs& a) {
  if (a.depth < 1) {
    std::cerr << "generate: --depth must be >= 1\n";
    return 2;
  }
  PopulationFamily family = make_family(a.family, GrowthFunction::parse(a.h));
  Population p = family.expand(a.depth);
  if (a.format == "json")
    write_output(a.out, population_to_json(p).dump(2));
  else if (a.format == "dot")
    write_output(a.out, population_to_dot(p, family.name()));
  else {
    std::cerr << "generate: unknown format \"" << a.format << "\"\n";
    return 2;
  }
  return 0;
}

struct CheckArgs {
  std::string family = "carlson";
  std::string h = "identity";
  std::string word;
  std::int64_t height = 0;
};

int cmd_check(const CheckArgs& a) {
  if (a.height < 1) {
    std::cerr << "check: --height must be >= 1\n";
    return 2;
  }
  GenderWord word = parse_word(a.word);
  if (word.empty()) {
    std::cerr << "check: --word must be nonempty\n";
    return 2;
  }
  PopulationFamily family = make_family(a.family, GrowthFunction::parse(a.h));
  auto witness = height_witness(family, word, a.height);
  if (!witness) {
    std::cout << "IMPOSSIBLE\n";
  } else {
    std::cout << "WITNESS:";
    for (const VertexId& id : witness->vertices) std::cout << " " << id;
    std::cout << "\n";
  }
  return 0;
}

struct AvoidableArgs {
  std::string family = "carlson";
  std::string h = "identity";
  int blocks = 0;
  std::string policy = "k";
  std::string format = "text";
  std::string out = "-";
};

int cmd_avoidable(const AvoidableArgs& a) {
  if (a.blocks < 1) {
    std::cerr << "avoidable: --blocks must be >= 1\n";
    return 2;
  }
  GrowthFunction h = GrowthFunction::parse(a.h);
  SearchCaps caps = caps_from_env();
  BlockSequence seq;
  if (a.family == "carlson") {
    HeightPolicy policy;
    if (a.policy == "k")
      policy = HeightPolicy::at_k;
    else if (a.policy == "k+1")
      policy = HeightPolicy::at_k_plus_1;
    else {
      std::cerr << "avoidable: --policy must be k or k+1\n";
      return 2;
    }
    seq = avoidable_sequence_carlson(h, a.blocks, policy, caps);
  } else if (a.family == "hunts") {
    seq = avoidable_sequence_hunts(h, a.blocks, caps);
  } else {
    std::cerr << "avoidable: unknown family \"" << a.family << "\"\n";
    return 2;
  }
  if (a.format == "json")
    write_output(a.out, seq.to_json().dump(2));
  else if (a.format == "text")
    write_output(a.out, seq.compact_text());
  else {
    std::cerr << "avoidable: unknown format \"" << a.format << "\"\n";
    return 2;
  }
  return 0;
}

struct RealizeArgs {
  std::string family = "carlson";
  std::string h = "identity";
  std::string period;
  std::string prefix;
  std::int64_t target_len = 0;
  std::string format = "text";
  std::string out = "-";
};

int cmd_realize(const RealizeArgs& a) {
  if (a.target_len < 1) {
    std::cerr << "realize: --target-len must be >= 1\n";
    return 2;
  }
  GenderWord period = parse_word(a.period);
  if (period.empty()) {
    std::cerr << "realize: --period must be nonempty\n";
    return 2;
  }
  PopulationFamily family = make_family(a.family, GrowthFunction::parse(a.h));
  GenderWord prefix = parse_word(a.prefix);
  DirectedPath path =
      prefix.empty()
          ? realize_periodic(family, GenderSequence::periodic(period),
                             static_cast<std::size_t>(a.target_len))
          : realize_eventually_periodic(family,
                                        GenderSequence::eventually_periodic(prefix, period),
                                        static_cast<std::size_t>(a.target_len));
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["vertices"] = path.vertices;
    j["genders"] = format_word(path.genders);
    write_output(a.out, j.dump(2));
  } else {
    std::ostringstream ss;
    ss << "vertices:";
    for (const VertexId& id : path.vertices) ss << " " << id;
    ss << "\ngenders: " << format_word(path.genders);
    write_output(a.out, ss.str());
  }
  return 0;
}

struct RepresentArgs {
  std::string h = "identity";
  std::int64_t u = 0;
  std::int64_t e = 0;
  bool least = false;
  std::string scale = "full";
};

int cmd_represent(const RepresentArgs& a) {
  GrowthFunction h = GrowthFunction::parse(a.h);
  bool half = a.scale == "half";
  if (!half && a.scale != "full") {
    std::cerr << "represent: --scale must be full or half\n";
    return 2;
  }
  SearchCaps caps = caps_from_env();
  if (a.least) {
    std::cout << least_nonrepresentable(a.u, h, half, caps) << "\n";
    return 0;
  }
  if (a.e < 1) {
    std::cerr << "represent: need --e >= 1 or --least\n";
    return 2;
  }
  auto w = representable({a.e, a.u, h, half});
  if (w)
    std::cout << "representable: a=" << w->a << " b=" << w->b << " c=" << w->c << "\n";
  else
    std::cout << "nonrepresentable\n";
  return 0;
}

struct CaArgs {
  std::string pattern;
  std::string rule;
  std::int64_t generations = 0;
  std::string forbidden;
  std::string out_history;
  std::string out_lifeline;
};

int cmd_ca(const CaArgs& a) {
  if (a.generations < 1) {
    std::cerr << "ca: --generations must be >= 1\n";
    return 2;
  }
  std::string text = read_file(a.pattern);
  PatternFile pf;
  if (a.pattern.size() >= 4 && a.pattern.substr(a.pattern.size() - 4) == ".rle")
    pf = parse_rle(text);
  else if (text.rfind("x", 0) == 0 || text.rfind("#", 0) == 0)
    pf = parse_rle(text);
  else
    pf.cells = parse_plaintext(text);

  Ruleset rule = Ruleset::life();
  if (!a.rule.empty())
    rule = Ruleset::parse(a.rule);
  else if (pf.rule)
    rule = *pf.rule;

  GameHistory hist = GameHistory::simulate(
      pf.cells, rule, static_cast<std::size_t>(a.generations) + 1);

  if (!a.out_history.empty()) write_output(a.out_history, history_to_json(hist).dump());

  if (!a.forbidden.empty()) {
    auto comma = a.forbidden.find(',');
    if (comma == std::string::npos) {
      std::cerr << "ca: --forbidden needs two directions, e.g. N,NE\n";
      return 2;
    }
    Direction fx = parse_direction(a.forbidden.substr(0, comma));
    Direction fy = parse_direction(a.forbidden.substr(comma + 1));
    HypothesesReport rep = check_hypotheses(hist);
    if (!rep.ok) {
      std::cerr << "ca: lifeline hypotheses violated: " << rep.message << "\n";
      return 2;
    }
    Lifeline line = extract_lifeline(hist, {fx, fy});
    if (!a.out_lifeline.empty()) write_output(a.out_lifeline, lifeline_to_json(line).dump());
    std::cout << "lifeline: " << line.cells.size() << " cells, forbidden " << to_string(fx)
              << "," << to_string(fy) << "\n";
  }

  Rational orth{0, 1}, diag{0, 1};
  for (Direction d : {Direction::N, Direction::S, Direction::E, Direction::W}) {
    Rational s = measure_speed(hist, d);
    if (orth < s) orth = s;
  }
  for (Direction d : {Direction::NE, Direction::NW, Direction::SE, Direction::SW}) {
    Rational s = measure_speed(hist, d);
    if (diag < s) diag = s;
  }
  Rational half{1, 2}, third{1, 3};
  std::cout << "orthogonal_speed: " << orth.to_string() << " <= 1/2: "
            << (orth <= half ? "PASS" : "FAIL") << "\n";
  std::cout << "diagonal_speed: " << diag.to_string() << " <= 1/3: "
            << (diag <= third ? "PASS" : "FAIL") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gendered genealogical populations, avoidable gender sequences, "
               "and Life-like lifelines"};
  app.require_subcommand(1);
  // --h is a real option (the growth function), so help is --help only.
  app.set_help_flag("--help", "print help");

  auto subcommand = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  GenerateArgs gen;
  CLI::App* generate = subcommand("generate", "write a population truncation");
  generate->add_option("--family", gen.family, "carlson or hunts");
  generate->add_option("--h", gen.h, "growth function (identity, double, linear:a:b)");
  generate->add_option("--depth", gen.depth, "generations to expand")->required();
  generate->add_option("--format", gen.format, "json or dot");
  generate->add_option("--out", gen.out, "output path, - for stdout");

  CheckArgs chk;
  CLI::App* check = subcommand("check", "test a word at a height");
  check->add_option("--family", chk.family, "carlson or hunts");
  check->add_option("--h", chk.h, "growth function");
  check->add_option("--word", chk.word, "gender word, e.g. MMF or M^3F")->required();
  check->add_option("--height", chk.height, "height index")->required();

  AvoidableArgs avd;
  CLI::App* avoidable = subcommand("avoidable", "build an avoidable sequence");
  avoidable->add_option("--family", avd.family, "carlson or hunts");
  avoidable->add_option("--h", avd.h, "growth function");
  avoidable->add_option("--blocks", avd.blocks, "number of iterated blocks")->required();
  avoidable->add_option("--policy", avd.policy, "k or k+1 (carlson only)");
  avoidable->add_option("--format", avd.format, "text or json");
  avoidable->add_option("--out", avd.out, "output path, - for stdout");

  RealizeArgs rlz;
  CLI::App* realize = subcommand("realize", "find a realizing path");
  realize->add_option("--family", rlz.family, "carlson or hunts");
  realize->add_option("--h", rlz.h, "growth function");
  realize->add_option("--period", rlz.period, "periodic part, e.g. MF")->required();
  realize->add_option("--prefix", rlz.prefix, "finite prefix for eventually periodic");
  realize->add_option("--target-len", rlz.target_len, "path length in vertices")->required();
  realize->add_option("--format", rlz.format, "text or json");
  realize->add_option("--out", rlz.out, "output path, - for stdout");

  RepresentArgs rep;
  CLI::App* represent = subcommand("represent", "sum representability oracle");
  represent->add_option("--h", rep.h, "growth function");
  represent->add_option("--u", rep.u, "bound on the shift c and on a via max h(1..u)");
  represent->add_option("--e", rep.e, "value to test");
  represent->add_flag("--least", rep.least, "print the least nonrepresentable value");
  represent->add_option("--scale", rep.scale, "full or half");

  CaArgs ca;
  CLI::App* ca_cmd = subcommand("ca", "simulate a Life-like game");
  ca_cmd->add_option("--pattern", ca.pattern, "RLE or plaintext pattern file")->required();
  ca_cmd->add_option("--rule", ca.rule, "B.../S... ruleset (default: pattern header)");
  ca_cmd->add_option("--generations", ca.generations, "steps to advance")->required();
  ca_cmd->add_option("--forbidden", ca.forbidden, "two directions, e.g. N,NE");
  ca_cmd->add_option("--out-history", ca.out_history, "history JSON path");
  ca_cmd->add_option("--out-lifeline", ca.out_lifeline, "lifeline JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(generate)) return cmd_generate(gen);
    if (app.got_subcommand(check)) return cmd_check(chk);
    if (app.got_subcommand(avoidable)) return cmd_avoidable(avd);
    if (app.got_subcommand(realize)) return cmd_realize(rlz);
    if (app.got_subcommand(represent)) return cmd_represent(rep);
    if (app.got_subcommand(ca_cmd)) return cmd_ca(ca);
  } catch (const cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
