#ifndef SEMITOP_PATTERN_HPP
#define SEMITOP_PATTERN_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semitop/config.hpp"
#include "semitop/point.hpp"
#include "semitop/set_expr.hpp"

namespace semitop {

/// A pattern is (S, fa, fn): the support codes a point contains plus counts
/// of fresh codes of each color. Membership of any instantiation with
/// distinct fresh codes depends only on the pattern, so the finite table of
/// all admissible patterns decides the denoted set.
class PatternTable {
 public:
  PatternTable(const Space& sp, const SetExpr& expr)
      : n_(sp.n()), supp_(to_vector(expr.support(sp))) {
    if (supp_.size() > 18)
      throw std::invalid_argument("expression support too large (" +
                                  std::to_string(supp_.size()) + " codes)");
    int floor = supp_.empty() ? -1 : supp_.back();
    fresh_a_.reserve(n_);
    fresh_n_.reserve(n_);
    int a = floor, b = floor;
    for (int i = 0; i < n_; ++i) {
      a = sp.cfg().fresh_A(a);
      b = sp.cfg().fresh_non_A(b);
      fresh_a_.push_back(a);
      fresh_n_.push_back(b);
    }

    SetExpr nf = expr.nnf();
    values_.assign((std::size_t{1} << supp_.size()) *
                       static_cast<std::size_t>((n_ + 1) * (n_ + 1)),
                   0);
    for (std::uint32_t mask = 0; mask < (1u << supp_.size()); ++mask) {
      int sz = std::popcount(mask);
      if (sz > n_) continue;
      for (int fa = 0; fa + sz <= n_; ++fa)
        for (int fn = 0; fa + fn + sz <= n_; ++fn) {
          Point p = instantiate(mask, fa, fn);
          values_[index(mask, fa, fn)] =
              nf.member(sp, p) ? kMember : kNonMember;
        }
    }
  }

  int n() const { return n_; }
  const std::vector<int>& support() const { return supp_; }

  bool admissible(std::uint32_t mask, int fa, int fn) const {
    return std::popcount(mask) + fa + fn <= n_;
  }

  bool member(std::uint32_t mask, int fa, int fn) const {
    return values_[index(mask, fa, fn)] == kMember;
  }

  /// Canonical instantiation with the smallest fresh codes of the requested
  /// colors above the support.
  Point instantiate(std::uint32_t mask, int fa, int fn) const {
    std::vector<int> codes;
    for (std::size_t i = 0; i < supp_.size(); ++i)
      if (mask & (1u << i)) codes.push_back(supp_[i]);
    for (int i = 0; i < fa; ++i) codes.push_back(fresh_a_[i]);
    for (int i = 0; i < fn; ++i) codes.push_back(fresh_n_[i]);
    return Point(std::move(codes));
  }

  std::uint32_t mask_of(const Point& p) const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < supp_.size(); ++i)
      if (p.contains(supp_[i])) m |= (1u << i);
    return m;
  }

  /// Pattern of an arbitrary point: support part plus fresh color counts.
  /// Only meaningful when the point's non-support codes really are fresh
  /// (distinct and outside the support), which holds for every valid point.
  std::uint32_t pattern_of(const Space& sp, const Point& p, int& fa,
                           int& fn) const {
    std::uint32_t m = 0;
    fa = fn = 0;
    for (int c : p.elems()) {
      bool in_supp = false;
      for (std::size_t i = 0; i < supp_.size(); ++i)
        if (supp_[i] == c) {
          m |= (1u << i);
          in_supp = true;
          break;
        }
      if (!in_supp) (sp.cfg().in_A(c) ? fa : fn)++;
    }
    return m;
  }

  /// Any member with at least one fresh coordinate; the denoted set is then
  /// infinite.
  bool has_fresh_member() const {
    for (std::uint32_t mask = 0; mask < (1u << supp_.size()); ++mask)
      for (int fa = 0; fa <= n_; ++fa)
        for (int fn = 0; fn <= n_; ++fn)
          if (fa + fn >= 1 && admissible(mask, fa, fn) &&
              member(mask, fa, fn))
            return true;
    return false;
  }

  std::optional<Point> first_member() const {
    for (std::uint32_t mask = 0; mask < (1u << supp_.size()); ++mask)
      for (int fa = 0; fa <= n_; ++fa)
        for (int fn = 0; fn <= n_; ++fn)
          if (admissible(mask, fa, fn) && member(mask, fa, fn))
            return instantiate(mask, fa, fn);
    return std::nullopt;
  }

  std::size_t mask_count() const { return std::size_t{1} << supp_.size(); }

 private:
  static std::vector<int> to_vector(const std::set<int>& s) {
    return std::vector<int>(s.begin(), s.end());
  }

  std::size_t index(std::uint32_t mask, int fa, int fn) const {
    return (static_cast<std::size_t>(mask) *
            static_cast<std::size_t>(n_ + 1) +
            static_cast<std::size_t>(fa)) *
               static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(fn);
  }

  static constexpr std::uint8_t kNonMember = 1;
  static constexpr std::uint8_t kMember = 2;

  int n_;
  std::vector<int> supp_;
  std::vector<int> fresh_a_;
  std::vector<int> fresh_n_;
  std::vector<std::uint8_t> values_;
};

struct Emptiness {
  bool empty = true;
  std::optional<Point> witness;
};

/// Empty iff the pattern table has no member entry; otherwise the canonical
/// instantiation of the first member pattern is returned.
inline Emptiness is_empty(const Space& sp, const SetExpr& s) {
  PatternTable table(sp, s);
  if (auto w = table.first_member()) return {false, w};
  return {true, std::nullopt};
}

/// Extensional equality of two expressions, decided by emptiness of both
/// difference directions.
inline bool ext_equal(const Space& sp, const SetExpr& a, const SetExpr& b) {
  if (!is_empty(sp, SetExpr::and_of({a, SetExpr::not_of(b)})).empty)
    return false;
  return is_empty(sp, SetExpr::and_of({b, SetExpr::not_of(a)})).empty;
}

inline bool ext_subset(const Space& sp, const SetExpr& a, const SetExpr& b) {
  return is_empty(sp, SetExpr::and_of({a, SetExpr::not_of(b)})).empty;
}

}  // namespace semitop

#endif  // SEMITOP_PATTERN_HPP
