#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "unav/core.hpp"

namespace unav {

// A growth function h : N+ -> N+ prescribing per-generation sizes.
// Divergence and evenness cannot be decided from a black box, so they are
// carried as asserted flags derived from the constructor; operations that
// need them check the flags and refuse otherwise.
class GrowthFunction {
 public:
  enum class Kind { identity, linear, doubling, table };

  static GrowthFunction identity() {
    GrowthFunction h;
    h.kind_ = Kind::identity;
    h.diverges_ = true;
    h.even_ = false;
    return h;
  }
  // h(n) = a*n + b
  static GrowthFunction linear(std::int64_t a, std::int64_t b) {
    if (a < 0 || a + b < 1) throw precondition_error("linear growth must satisfy h(n) >= 1");
    GrowthFunction h;
    h.kind_ = Kind::linear;
    h.a_ = a;
    h.b_ = b;
    h.diverges_ = a >= 1;
    h.even_ = (a % 2 == 0) && (b % 2 == 0);
    return h;
  }
  // h(n) = 2n
  static GrowthFunction doubling() {
    GrowthFunction h;
    h.kind_ = Kind::doubling;
    h.diverges_ = true;
    h.even_ = true;
    return h;
  }
  // Finite overrides for n = 1..overrides.size(), then the tail rule.
  static GrowthFunction table(std::vector<std::int64_t> overrides, GrowthFunction tail) {
    for (std::int64_t v : overrides)
      if (v < 1) throw precondition_error("table growth values must be >= 1");
    GrowthFunction h;
    h.kind_ = Kind::table;
    h.overrides_ = std::move(overrides);
    h.tail_ = std::make_shared<GrowthFunction>(std::move(tail));
    h.diverges_ = h.tail_->diverges_;
    h.even_ = h.tail_->even_;
    for (std::int64_t v : h.overrides_)
      if (v % 2 != 0) h.even_ = false;
    return h;
  }

  std::int64_t operator()(std::int64_t n) const {
    if (n < 1) throw precondition_error("growth function evaluated at n < 1");
    switch (kind_) {
      case Kind::identity:
        return n;
      case Kind::linear:
        return a_ * n + b_;
      case Kind::doubling:
        return 2 * n;
      case Kind::table:
        if (static_cast<std::size_t>(n) <= overrides_.size())
          return overrides_[static_cast<std::size_t>(n - 1)];
        return (*tail_)(n);
    }
    throw error("unreachable growth kind");
  }

  Kind kind() const { return kind_; }
  bool diverges() const { return diverges_; }
  bool even() const { return even_; }
  std::int64_t linear_a() const { return a_; }
  std::int64_t linear_b() const { return b_; }
  const std::vector<std::int64_t>& overrides() const { return overrides_; }
  const GrowthFunction* tail() const { return tail_.get(); }

  std::string describe() const {
    switch (kind_) {
      case Kind::identity:
        return "identity";
      case Kind::doubling:
        return "double";
      case Kind::linear:
        return "linear:" + std::to_string(a_) + ":" + std::to_string(b_);
      case Kind::table: {
        std::string s = "table:";
        for (std::size_t i = 0; i < overrides_.size(); ++i)
          s += (i ? "," : "") + std::to_string(overrides_[i]);
        return s + ";" + tail_->describe();
      }
    }
    return "?";
  }

  // Parses "identity" | "double" | "linear:a:b" | "table:v1,v2,...;TAIL".
  static GrowthFunction parse(const std::string& text) {
    if (text == "identity" || text == "id" || text == "n") return identity();
    if (text == "double" || text == "2n") return doubling();
    if (text.rfind("linear:", 0) == 0) {
      std::string rest = text.substr(7);
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw parse_error("linear growth needs \"linear:a:b\"");
      return linear(std::stoll(rest.substr(0, colon)), std::stoll(rest.substr(colon + 1)));
    }
    if (text.rfind("table:", 0) == 0) {
      std::string rest = text.substr(6);
      auto semi = rest.find(';');
      if (semi == std::string::npos) throw parse_error("table growth needs \"table:v1,v2;TAIL\"");
      std::vector<std::int64_t> vals;
      std::string list = rest.substr(0, semi);
      std::size_t pos = 0;
      while (pos < list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        vals.push_back(std::stoll(list.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      return table(std::move(vals), parse(rest.substr(semi + 1)));
    }
    throw parse_error("unknown growth function \"" + text + "\"");
  }

 private:
  Kind kind_ = Kind::identity;
  std::int64_t a_ = 1, b_ = 0;
  std::vector<std::int64_t> overrides_;
  std::shared_ptr<const GrowthFunction> tail_;
  bool diverges_ = true;
  bool even_ = false;
};

}  // namespace unav
