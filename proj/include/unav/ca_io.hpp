#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "unav/ca.hpp"

namespace unav {

struct PatternFile {
  CellConfig cells;
  std::optional<Ruleset> rule;
};

// Run-length-encoded pattern input. Rows run south (decreasing y) from the
// top row at y = 0; columns run east from x = 0. '#' lines are comments;
// the "x = ..., y = ..." header is optional on input and its extents are
// not trusted. Body: runs of b (dead), o (alive), $ (end of row), '!' ends.
inline PatternFile parse_rle(const std::string& text) {
  PatternFile out;
  std::istringstream in(text);
  std::string line;
  std::string body;
  bool in_body = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    if (!in_body && line.find('=') != std::string::npos &&
        (line[0] == 'x' || line[0] == 'X')) {
      auto rule_pos = line.find("rule");
      if (rule_pos != std::string::npos) {
        auto eq = line.find('=', rule_pos);
        if (eq == std::string::npos) throw parse_error("RLE header: malformed rule entry");
        std::string rule_text = line.substr(eq + 1);
        rule_text.erase(0, rule_text.find_first_not_of(" \t"));
        auto end = rule_text.find_last_not_of(" \t");
        rule_text = rule_text.substr(0, end + 1);
        out.rule = Ruleset::parse(rule_text);
      }
      in_body = true;
      continue;
    }
    in_body = true;
    body += line;
  }

  std::vector<Cell> cells;
  std::int64_t x = 0, y = 0;
  std::int64_t run = 0;
  for (char c : body) {
    if (c >= '0' && c <= '9') {
      run = run * 10 + (c - '0');
      continue;
    }
    std::int64_t n = run == 0 ? 1 : run;
    run = 0;
    switch (c) {
      case 'b':
      case 'B':
      case '.':
        x += n;
        break;
      case 'o':
      case 'O':
        for (std::int64_t i = 0; i < n; ++i) cells.push_back({x++, y});
        break;
      case '$':
        y -= n;
        x = 0;
        break;
      case '!':
        out.cells = CellConfig(std::move(cells));
        return out;
      case ' ':
      case '\t':
        break;
      default:
        throw parse_error(std::string("RLE body: unexpected character '") + c + "'");
    }
  }
  throw parse_error("RLE body: missing terminating '!'");
}

// Canonical RLE writer: pattern rendered relative to its bounding box,
// top row first, runs collapsed, lines wrapped at 70 characters. Parsing
// the output reproduces the pattern translated so its north-west bounding
// corner sits at the origin.
inline std::string write_rle(const CellConfig& cells, const Ruleset& rule) {
  std::ostringstream body;
  std::string header;
  if (cells.empty()) {
    header = "x = 0, y = 0, rule = " + rule.to_string() + "\n";
    return header + "!\n";
  }
  CellConfig::Box box = cells.bounding_box();
  header = "x = " + std::to_string(box.max_x - box.min_x + 1) +
           ", y = " + std::to_string(box.max_y - box.min_y + 1) +
           ", rule = " + rule.to_string() + "\n";

  std::vector<std::string> tokens;
  auto emit = [&](std::int64_t count, char tag) {
    if (count <= 0) return;
    std::string t;
    if (count > 1) t = std::to_string(count);
    t.push_back(tag);
    tokens.push_back(std::move(t));
  };
  std::int64_t pending_rows = 0;
  for (std::int64_t y = box.max_y; y >= box.min_y; --y) {
    std::int64_t x = box.min_x;
    bool row_live = false;
    std::int64_t dead = 0;
    for (; x <= box.max_x; ++x) {
      if (cells.contains({x, y})) {
        if (!row_live && pending_rows > 0) emit(pending_rows, '$');
        if (!row_live) pending_rows = 0;
        row_live = true;
        emit(dead, 'b');
        dead = 0;
        std::int64_t run = 0;
        while (x <= box.max_x && cells.contains({x, y})) {
          ++run;
          ++x;
        }
        --x;
        emit(run, 'o');
      } else {
        ++dead;
      }
    }
    ++pending_rows;  // row finished (trailing dead cells are dropped)
  }
  tokens.push_back("!");

  // Wrap at 70 columns without splitting a run count from its tag.
  std::string wrapped;
  std::size_t col = 0;
  for (const std::string& t : tokens) {
    if (col + t.size() > 70 && col > 0) {
      wrapped.push_back('\n');
      col = 0;
    }
    wrapped += t;
    col += t.size();
  }
  return header + wrapped + "\n";
}

// Plaintext pattern: rows of '.' (dead) and 'O'/'*' (alive); '!' lines are
// comments. Same orientation as RLE.
inline CellConfig parse_plaintext(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Cell> cells;
  std::int64_t y = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '!') continue;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char c = line[i];
      if (c == 'O' || c == 'o' || c == '*')
        cells.push_back({static_cast<std::int64_t>(i), y});
      else if (c != '.' && c != ' ')
        throw parse_error(std::string("plaintext pattern: unexpected character '") + c + "'");
    }
    --y;
  }
  return CellConfig(std::move(cells));
}

// History export: one sorted [x, y] cell array per generation.
inline nlohmann::ordered_json history_to_json(const GameHistory& hist) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const CellConfig& gen : hist.generations) {
    nlohmann::ordered_json jg = nlohmann::ordered_json::array();
    for (const Cell& c : gen.cells()) jg.push_back(nlohmann::ordered_json::array({c.x, c.y}));
    j.push_back(std::move(jg));
  }
  return j;
}

// Lifeline export: a list of (x, y, generation) triples.
inline nlohmann::ordered_json lifeline_to_json(const Lifeline& line) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < line.cells.size(); ++i)
    j.push_back(nlohmann::ordered_json::array(
        {line.cells[i].x, line.cells[i].y, static_cast<std::int64_t>(i + 1)}));
  return j;
}

}  // namespace unav
