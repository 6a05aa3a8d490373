#ifndef SEMITOP_TEXT_HPP
#define SEMITOP_TEXT_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "semitop/point.hpp"

namespace semitop {

/// Error thrown by the text-form parsers; carries the input position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Tokenizer shared by the point, descriptor and expression grammars.
/// Delimiters ()[]{} are single tokens; commas count as whitespace, so both
/// `{1,3}` and `{1 3}` spellings parse.
class Tokens {
 public:
  explicit Tokens(const std::string& text) : text_(text) { tokenize(); }

  bool done() const { return idx_ >= toks_.size(); }

  const std::string& peek() const {
    static const std::string kEnd = "<end>";
    return done() ? kEnd : toks_[idx_].s;
  }

  std::size_t pos() const {
    return done() ? text_.size() : toks_[idx_].pos;
  }

  std::string next() {
    if (done()) throw ParseError("unexpected end of input", text_.size());
    return toks_[idx_++].s;
  }

  void expect(const std::string& tok) {
    if (peek() != tok)
      throw ParseError("expected '" + tok + "', got '" + peek() + "'", pos());
    ++idx_;
  }

  bool accept(const std::string& tok) {
    if (peek() == tok) {
      ++idx_;
      return true;
    }
    return false;
  }

  int next_int() {
    std::size_t p = pos();
    std::string t = next();
    try {
      std::size_t used = 0;
      int v = std::stoi(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected integer, got '" + t + "'", p);
    }
  }

  /// `{c1 c2 ...}` or `{c1,c2,...}`.
  Point next_point() {
    expect("{");
    std::vector<int> codes;
    while (!accept("}")) codes.push_back(next_int());
    return Point(std::move(codes));
  }

  /// `[v1 v2 ...]` of integers.
  std::vector<int> next_int_list() {
    expect("[");
    std::vector<int> out;
    while (!accept("]")) out.push_back(next_int());
    return out;
  }

  void expect_done() {
    if (!done())
      throw ParseError("trailing input '" + peek() + "'", pos());
  }

 private:
  struct Tok {
    std::string s;
    std::size_t pos;
  };

  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
        continue;
      }
      if (std::string("()[]{}").find(c) != std::string::npos) {
        toks_.push_back({std::string(1, c), i});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text_.size()) {
        char d = text_[j];
        if (std::isspace(static_cast<unsigned char>(d)) || d == ',' ||
            std::string("()[]{}").find(d) != std::string::npos)
          break;
        ++j;
      }
      toks_.push_back({text_.substr(i, j - i), i});
      i = j;
    }
  }

  std::string text_;
  std::vector<Tok> toks_;
  std::size_t idx_ = 0;
};

inline Point parse_point(const std::string& text) {
  Tokens t(text);
  Point p = t.next_point();
  t.expect_done();
  return p;
}

/// Point form used inside expression text: `{1 3}` with spaces.
inline std::string print_point_sexpr(const Point& p) {
  std::string s = "{";
  const auto& e = p.elems();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(e[i]);
  }
  s += '}';
  return s;
}

}  // namespace semitop

#endif  // SEMITOP_TEXT_HPP
