#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "addcomb/error.hpp"
#include "addcomb/freiman.hpp"
#include "addcomb/int_set.hpp"
#include "addcomb/residue_set.hpp"

namespace addcomb {

/// A set read from text: "n=11:{0,3,4}" (Z_n), "{0,1,5}" (Z) or "{(0,0),(1,2)}" (Z^d).
struct ParsedSet {
  enum class Kind { Residue, Integer, Lattice };
  Kind kind = Kind::Integer;
  ResidueSet residue{2};
  IntSet integer;
  AdditiveSet lattice;

  AdditiveSet as_additive() const {
    switch (kind) {
      case Kind::Residue: return AdditiveSet::from(residue);
      case Kind::Integer: return AdditiveSet::from(integer);
      case Kind::Lattice: return lattice;
    }
    return lattice;
  }
};

namespace detail {

class LiteralReader {
 public:
  explicit LiteralReader(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
    }
  }

  bool done() const { return pos_ == s_.size(); }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void expect(char c) {
    require(peek(c), ErrorCode::ParseError, std::string("expected '") + c + "' at offset " + std::to_string(pos_) +
                                                " in \"" + s_ + "\"");
    ++pos_;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    if (s_.compare(pos_, word.size(), word) != 0) return false;
    pos_ += word.size();
    return true;
  }

  i64 integer() {
    i64 v = 0;
    const char* b = s_.data() + pos_;
    const char* e = s_.data() + s_.size();
    const auto [ptr, ec] = std::from_chars(b, e, v);
    require(ec == std::errc{} && ptr != b, ErrorCode::ParseError,
            "expected an integer at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    pos_ += static_cast<std::size_t>(ptr - b);
    return v;
  }

  /// "(x,y,...)"
  std::vector<i64> tuple() {
    expect('(');
    std::vector<i64> v{integer()};
    while (accept(',')) v.push_back(integer());
    expect(')');
    return v;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;
};

inline ResidueSet strict_residue_set(i64 n, const std::vector<i64>& el) {
  require(n >= 2, ErrorCode::ParseError, "modulus must be at least 2");
  for (i64 x : el) {
    require(x >= 0 && x < n, ErrorCode::RangeError,
            "element " + std::to_string(x) + " outside [0, " + std::to_string(n) + ")");
  }
  return ResidueSet::from_elements(n, el);
}

}  // namespace detail

inline ParsedSet parse_literal(std::string_view text) {
  detail::LiteralReader r(text);
  ParsedSet out;
  i64 n = 0;
  if (r.accept("n=")) {
    n = r.integer();
    r.expect(':');
    out.kind = ParsedSet::Kind::Residue;
  }
  r.expect('{');
  if (out.kind != ParsedSet::Kind::Residue && r.peek('(')) {
    std::vector<std::vector<i64>> pts{r.tuple()};
    while (r.accept(',')) pts.push_back(r.tuple());
    r.expect('}');
    require(r.done(), ErrorCode::ParseError, "trailing characters after set literal");
    const std::size_t d = pts[0].size();
    out.kind = ParsedSet::Kind::Lattice;
    out.lattice = AdditiveSet::from_points(std::move(pts), d);
    return out;
  }
  std::vector<i64> el;
  if (!r.peek('}')) {
    el.push_back(r.integer());
    while (r.accept(',')) el.push_back(r.integer());
  }
  r.expect('}');
  require(r.done(), ErrorCode::ParseError, "trailing characters after set literal");
  if (out.kind == ParsedSet::Kind::Residue) {
    out.residue = detail::strict_residue_set(n, el);
  } else {
    out.integer = IntSet::from_elements(el);
  }
  return out;
}

inline ResidueSet parse_residue_set(std::string_view text) {
  const auto p = parse_literal(text);
  require(p.kind == ParsedSet::Kind::Residue, ErrorCode::ParseError, "expected a set literal of the form n=<m>:{...}");
  return p.residue;
}

inline IntSet parse_int_set(std::string_view text) {
  const auto p = parse_literal(text);
  require(p.kind == ParsedSet::Kind::Integer, ErrorCode::ParseError, "expected an integer set literal {...}");
  return p.integer;
}

/// JSON forms: [0, 1, 5] (Z), {"n": 11, "elements": [...]} (Z_n), {"points": [[0,0], ...]} (Z^d).
inline ParsedSet parse_json_set(const nlohmann::json& j) {
  ParsedSet out;
  try {
    if (j.is_array()) {
      out.kind = ParsedSet::Kind::Integer;
      out.integer = IntSet::from_elements(j.get<std::vector<i64>>());
    } else if (j.is_object() && j.contains("points")) {
      auto pts = j.at("points").get<std::vector<std::vector<i64>>>();
      require(!pts.empty(), ErrorCode::ParseError, "empty point list");
      const std::size_t d = pts[0].size();
      out.kind = ParsedSet::Kind::Lattice;
      out.lattice = AdditiveSet::from_points(std::move(pts), d);
    } else if (j.is_object() && j.contains("n")) {
      out.kind = ParsedSet::Kind::Residue;
      out.residue = detail::strict_residue_set(j.at("n").get<i64>(), j.at("elements").get<std::vector<i64>>());
    } else {
      throw Error(ErrorCode::ParseError, "unrecognized JSON set");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON set: ") + e.what());
  }
  return out;
}

}  // namespace addcomb
