#ifndef SEMITOP_ALMOST_SET_HPP
#define SEMITOP_ALMOST_SET_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "semitop/config.hpp"
#include "semitop/text.hpp"

namespace semitop {

/// A decidable subset of the index universe: a named base (the distinguished
/// set A, its complement, everything, nothing) plus finite add/remove edits.
/// Edits are canonicalized against the base, so `added` is disjoint from the
/// base and `removed` is contained in it.
class AlmostSet {
 public:
  enum class Base { A, CoA, All, None };

  AlmostSet() = default;

  AlmostSet(Base base, std::vector<int> added, std::vector<int> removed,
            const UniverseConfig& cfg)
      : base_(base) {
    for (int c : added) {
      if (c < 0) throw std::invalid_argument("negative code in almost-set");
      if (!base_contains(c, cfg)) added_.insert(c);
    }
    for (int c : removed) {
      if (c < 0) throw std::invalid_argument("negative code in almost-set");
      if (base_contains(c, cfg)) removed_.insert(c);
    }
  }

  static AlmostSet a(const UniverseConfig& cfg) {
    return AlmostSet(Base::A, {}, {}, cfg);
  }
  static AlmostSet co_a(const UniverseConfig& cfg) {
    return AlmostSet(Base::CoA, {}, {}, cfg);
  }
  static AlmostSet all(const UniverseConfig& cfg) {
    return AlmostSet(Base::All, {}, {}, cfg);
  }
  static AlmostSet none(const UniverseConfig& cfg) {
    return AlmostSet(Base::None, {}, {}, cfg);
  }

  Base base() const { return base_; }
  const std::set<int>& added() const { return added_; }
  const std::set<int>& removed() const { return removed_; }

  bool contains(int code, const UniverseConfig& cfg) const {
    if (added_.count(code)) return true;
    if (removed_.count(code)) return false;
    return base_contains(code, cfg);
  }

  /// Finite symmetric difference with the configured A; the admissible B of
  /// the fc zero-neighborhoods.
  bool almost_equals_A() const { return base_ == Base::A; }

  /// Support codes: the edits only. Base membership is color data, not
  /// support data.
  std::vector<int> support_codes() const {
    std::vector<int> out(added_.begin(), added_.end());
    out.insert(out.end(), removed_.begin(), removed_.end());
    return out;
  }

  /// Set union; both sides must share a base. Used when refining two fc
  /// zero-neighborhoods: the union of two almost-A sets is almost-A.
  AlmostSet union_with(const AlmostSet& other,
                       const UniverseConfig& cfg) const {
    if (base_ != other.base_)
      throw std::invalid_argument("almost-set union across bases");
    AlmostSet out;
    out.base_ = base_;
    for (int c : added_) out.added_.insert(c);
    for (int c : other.added_) out.added_.insert(c);
    for (int c : removed_)
      if (other.removed_.count(c) && !out.added_.count(c))
        out.removed_.insert(c);
    (void)cfg;
    return out;
  }

  bool operator==(const AlmostSet& other) const = default;

  std::string str() const {
    std::string s = "(almost ";
    s += base_name(base_);
    s += " + [";
    bool first = true;
    for (int c : added_) {
      if (!first) s += ' ';
      s += std::to_string(c);
      first = false;
    }
    s += "] - [";
    first = true;
    for (int c : removed_) {
      if (!first) s += ' ';
      s += std::to_string(c);
      first = false;
    }
    s += "])";
    return s;
  }

  static AlmostSet parse_from(Tokens& t, const UniverseConfig& cfg) {
    t.expect("(");
    t.expect("almost");
    std::string tok = t.next();
    Base b;
    if (tok == "A")
      b = Base::A;
    else if (tok == "CoA")
      b = Base::CoA;
    else if (tok == "ALL")
      b = Base::All;
    else if (tok == "NONE")
      b = Base::None;
    else
      throw ParseError("unknown almost-set base '" + tok + "'", t.pos());
    t.expect("+");
    std::vector<int> added = t.next_int_list();
    t.expect("-");
    std::vector<int> removed = t.next_int_list();
    t.expect(")");
    return AlmostSet(b, std::move(added), std::move(removed), cfg);
  }

  static std::string base_name(Base b) {
    switch (b) {
      case Base::A: return "A";
      case Base::CoA: return "CoA";
      case Base::All: return "ALL";
      case Base::None: return "NONE";
    }
    return "?";
  }

 private:
  bool base_contains(int code, const UniverseConfig& cfg) const {
    switch (base_) {
      case Base::A: return cfg.in_A(code);
      case Base::CoA: return !cfg.in_A(code);
      case Base::All: return true;
      case Base::None: return false;
    }
    return false;
  }

  Base base_ = Base::None;
  std::set<int> added_;
  std::set<int> removed_;
};

}  // namespace semitop

#endif  // SEMITOP_ALMOST_SET_HPP
