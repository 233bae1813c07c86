#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace unav {

// Errors thrown by library operations. Axiom violations are *not* errors;
// they are reported as data by validate().
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A truncation is not deep enough to answer the query exactly.
struct depth_error : error {
  using error::error;
};

// A configured search cap was exceeded.
struct cap_error : error {
  using error::error;
};

// Malformed textual input (gender words, RLE, JSON schemas, rulesets).
struct parse_error : error {
  using error::error;
};

// A required gendered parent does not exist.
struct no_parent_error : error {
  using error::error;
};

// A stated precondition does not hold (e.g. evenness flag missing).
struct precondition_error : error {
  using error::error;
};

// Gender of a vertex or edge: an integer in 1..n. In the 2-gendered case
// gender 1 is written M and gender 2 is written F.
struct Gender {
  int value = 1;

  friend bool operator==(Gender a, Gender b) { return a.value == b.value; }
  friend bool operator!=(Gender a, Gender b) { return a.value != b.value; }
  friend bool operator<(Gender a, Gender b) { return a.value < b.value; }
};

inline constexpr Gender M{1};
inline constexpr Gender F{2};

using GenderWord = std::vector<Gender>;

inline char gender_char(Gender g) {
  if (g == M) return 'M';
  if (g == F) return 'F';
  return static_cast<char>('0' + g.value);
}

// Renders a word as a flat string, e.g. "MMFMF" or "1213" for n > 2.
inline std::string format_word(const GenderWord& w) {
  std::string s;
  s.reserve(w.size());
  for (Gender g : w) s.push_back(gender_char(g));
  return s;
}

// Renders a word in run syntax, e.g. "M^3 F M^5 F".
inline std::string format_word_runs(const GenderWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!s.empty()) s.push_back(' ');
    s.push_back(gender_char(w[i]));
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

// Parses words over {M, F} with optional run syntax: "MMF", "M^3F",
// "M^2 F M^5 F". Whitespace is ignored.
inline GenderWord parse_word(const std::string& text) {
  GenderWord w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    Gender g;
    if (c == 'M' || c == 'm') {
      g = M;
    } else if (c == 'F' || c == 'f') {
      g = F;
    } else {
      throw parse_error("bad gender character '" + std::string(1, c) +
                        "' in word \"" + text + "\"");
    }
    ++i;
    long run = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw parse_error("'^' not followed by a count in \"" + text + "\"");
      run = std::stol(text.substr(start, i - start));
      if (run < 1) throw parse_error("run length must be >= 1 in \"" + text + "\"");
    }
    w.insert(w.end(), static_cast<std::size_t>(run), g);
  }
  return w;
}

// A finite, periodic, or eventually periodic gender sequence. Periodic and
// eventually periodic sequences have a nonempty period word; the prefix is
// empty unless the sequence is eventually periodic (or finite, in which
// case the prefix *is* the sequence).
struct GenderSequence {
  enum class Kind { finite, periodic, eventually_periodic };

  Kind kind = Kind::finite;
  GenderWord prefix;
  GenderWord period_word;

  static GenderSequence finite(GenderWord w) {
    return GenderSequence{Kind::finite, std::move(w), {}};
  }
  static GenderSequence periodic(GenderWord period) {
    if (period.empty()) throw precondition_error("periodic sequence needs a nonempty period word");
    return GenderSequence{Kind::periodic, {}, std::move(period)};
  }
  static GenderSequence eventually_periodic(GenderWord prefix, GenderWord period) {
    if (period.empty())
      throw precondition_error("eventually periodic sequence needs a nonempty period word");
    return GenderSequence{Kind::eventually_periodic, std::move(prefix), std::move(period)};
  }

  std::size_t period() const { return period_word.size(); }

  // Symbol at 0-based position i (finite sequences throw past the end).
  Gender at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (period_word.empty()) throw error("index past the end of a finite sequence");
    return period_word[(i - prefix.size()) % period_word.size()];
  }

  // First len symbols as a flat word.
  GenderWord head(std::size_t len) const {
    GenderWord w;
    w.reserve(len);
    for (std::size_t i = 0; i < len; ++i) w.push_back(at(i));
    return w;
  }
};

}  // namespace unav
