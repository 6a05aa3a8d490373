#ifndef SEMITOP_CONFIG_HPP
#define SEMITOP_CONFIG_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "semitop/point.hpp"
#include "semitop/text.hpp"

namespace semitop {

/// The distinguished infinite set A of the index universe. A parity base
/// with finitely many edits keeps both A and its complement infinite, which
/// the limit tests require (a co-finite A is out of scope by design).
class ColorSet {
 public:
  enum class Base { Even, Odd };

  ColorSet() = default;

  ColorSet(Base base, std::vector<int> added, std::vector<int> removed)
      : base_(base) {
    for (int c : added) {
      if (c < 0) throw std::invalid_argument("negative code in A edits");
      if (!base_contains(c)) added_.insert(c);
    }
    for (int c : removed) {
      if (c < 0) throw std::invalid_argument("negative code in A edits");
      if (base_contains(c)) removed_.insert(c);
    }
  }

  static ColorSet even() { return ColorSet(Base::Even, {}, {}); }
  static ColorSet odd() { return ColorSet(Base::Odd, {}, {}); }

  bool contains(int code) const {
    if (added_.count(code)) return true;
    if (removed_.count(code)) return false;
    return base_contains(code);
  }

  Base base() const { return base_; }

  /// Codes below this bound may deviate from the parity base.
  int edit_bound() const {
    int b = 0;
    if (!added_.empty()) b = std::max(b, *added_.rbegin() + 1);
    if (!removed_.empty()) b = std::max(b, *removed_.rbegin() + 1);
    return b;
  }

  /// Smallest member strictly greater than `after`.
  int next_member(int after) const {
    for (int c = std::max(after + 1, 0);; ++c)
      if (contains(c)) return c;
  }

  /// Smallest non-member strictly greater than `after`.
  int next_nonmember(int after) const {
    for (int c = std::max(after + 1, 0);; ++c)
      if (!contains(c)) return c;
  }

  std::string str() const {
    std::string base = base_ == Base::Even ? "even" : "odd";
    if (added_.empty() && removed_.empty()) return base;
    std::string s = "(almost " + base + " + [";
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

  /// Accepts `even`, `odd`, or `(almost even + [..] - [..])`.
  static ColorSet parse(const std::string& text) {
    Tokens t(text);
    ColorSet out = parse_from(t);
    t.expect_done();
    return out;
  }

  static ColorSet parse_from(Tokens& t) {
    if (t.accept("even")) return even();
    if (t.accept("odd")) return odd();
    t.expect("(");
    t.expect("almost");
    Base b;
    std::string tok = t.next();
    if (tok == "even")
      b = Base::Even;
    else if (tok == "odd")
      b = Base::Odd;
    else
      throw ParseError("A base must be 'even' or 'odd', got '" + tok + "'",
                       t.pos());
    t.expect("+");
    std::vector<int> added = t.next_int_list();
    t.expect("-");
    std::vector<int> removed = t.next_int_list();
    t.expect(")");
    return ColorSet(b, std::move(added), std::move(removed));
  }

 private:
  bool base_contains(int code) const {
    return (code % 2 == 0) == (base_ == Base::Even);
  }

  Base base_ = Base::Even;
  std::set<int> added_;
  std::set<int> removed_;
};

/// Global universe parameters: the rank bound n and the distinguished set A.
struct UniverseConfig {
  int n = 2;
  ColorSet A = ColorSet::even();

  UniverseConfig() = default;
  UniverseConfig(int n_, ColorSet a) : n(n_), A(std::move(a)) {
    if (n < 1) throw std::invalid_argument("rank bound n must be >= 1");
  }

  bool in_A(int code) const { return A.contains(code); }

  int fresh_A(int after) const { return A.next_member(after); }
  int fresh_non_A(int after) const { return A.next_nonmember(after); }

  bool valid_point(const Point& p) const { return p.rank() <= n; }

  void check_point(const Point& p) const {
    if (!valid_point(p))
      throw std::invalid_argument("point " + p.str() + " exceeds rank bound " +
                                  std::to_string(n));
  }
};

enum class TopologyKind { Tau0, TauC, TauFc2, TauFcN };

inline std::string topology_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::Tau0: return "tau_0";
    case TopologyKind::TauC: return "tau_c";
    case TopologyKind::TauFc2: return "tau_fc2";
    case TopologyKind::TauFcN: return "tau_fcn";
  }
  return "?";
}

inline std::optional<TopologyKind> topology_from_name(const std::string& s) {
  if (s == "tau_0") return TopologyKind::Tau0;
  if (s == "tau_c") return TopologyKind::TauC;
  if (s == "tau_fc2") return TopologyKind::TauFc2;
  if (s == "tau_fcn") return TopologyKind::TauFcN;
  return std::nullopt;
}

/// Topology family selector. TauFcN carries the distinguished point x of
/// rank n-2; the up-set of x is carried to the two-free-coordinate space by
/// the order isomorphism h, and all fc structure lives in that copy.
struct TopologyId {
  TopologyKind kind = TopologyKind::TauC;
  Point xstar;  // TauFcN only

  static TopologyId tau0() { return {TopologyKind::Tau0, {}}; }
  static TopologyId tau_c() { return {TopologyKind::TauC, {}}; }
  static TopologyId tau_fc2() { return {TopologyKind::TauFc2, {}}; }
  static TopologyId tau_fcn(Point x) {
    return {TopologyKind::TauFcN, std::move(x)};
  }
};

/// A universe plus one topology family: the ambient context for every
/// descriptor, expression and certificate operation.
class Space {
 public:
  Space(UniverseConfig cfg, TopologyId topo)
      : cfg_(std::move(cfg)), topo_(std::move(topo)) {
    validate();
  }

  const UniverseConfig& cfg() const { return cfg_; }
  const TopologyId& topo() const { return topo_; }
  TopologyKind kind() const { return topo_.kind; }
  int n() const { return cfg_.n; }

  bool is_t1() const { return topo_.kind != TopologyKind::Tau0; }

  bool is_fc() const {
    return topo_.kind == TopologyKind::TauFc2 ||
           topo_.kind == TopologyKind::TauFcN;
  }

  /// The point whose neighborhood filter carries the fc refinement: zero for
  /// TauFc2, x of rank n-2 for TauFcN.
  const Point& local_zero() const {
    static const Point kZero;
    return topo_.kind == TopologyKind::TauFcN ? topo_.xstar : kZero;
  }

  /// h-coordinates: phi enumerates the universe minus x* in increasing
  /// order, so h(q) = x* union phi(q) for local points q of rank <= 2.
  int phi(int local_code) const {
    const auto& xs = local_zero().elems();
    int c = local_code;
    for (int z : xs) {
      if (z <= c) ++c;
      // xs ascending: once z > c no later element can shift c
      else
        break;
    }
    return c;
  }

  int phi_inv(int global_code) const {
    const auto& xs = local_zero().elems();
    int shift = 0;
    for (int z : xs) {
      if (z == global_code)
        throw std::invalid_argument("phi_inv of a code inside x*");
      if (z < global_code) ++shift;
    }
    return global_code - shift;
  }

  Point localize(const Point& global_above_xstar) const {
    const Point& xs = local_zero();
    if (!xs.subset_of(global_above_xstar))
      throw std::invalid_argument("point not above x*");
    std::vector<int> out;
    for (int c : diff_sets(global_above_xstar, xs).elems())
      out.push_back(phi_inv(c));
    return Point(std::move(out));
  }

  Point globalize(const Point& local) const {
    Point out = local_zero();
    for (int c : local.elems()) out = out.with(phi(c));
    return out;
  }

  /// All codes below this bound are treated as support when the transported
  /// fc structure is in play: beyond it phi shifts by a constant and colors
  /// follow the parity base, which is what pattern invariance needs.
  int fc_prefix_bound() const {
    if (topo_.kind != TopologyKind::TauFcN) return 0;
    const auto& xs = local_zero().elems();
    int mx = xs.empty() ? 0 : xs.back() + 1;
    return std::max(mx, cfg_.A.edit_bound()) + static_cast<int>(xs.size()) + 1;
  }

 private:
  void validate() const {
    switch (topo_.kind) {
      case TopologyKind::Tau0:
      case TopologyKind::TauC:
        break;
      case TopologyKind::TauFc2:
        if (cfg_.n != 2)
          throw std::invalid_argument("tau_fc2 requires n = 2");
        break;
      case TopologyKind::TauFcN:
        if (cfg_.n < 3) throw std::invalid_argument("tau_fcn requires n >= 3");
        if (topo_.xstar.rank() != cfg_.n - 2)
          throw std::invalid_argument("tau_fcn requires rank(x*) = n - 2");
        break;
    }
  }

  UniverseConfig cfg_;
  TopologyId topo_;
};

}  // namespace semitop

#endif  // SEMITOP_CONFIG_HPP
