#ifndef SEMITOP_CLOSURE_HPP
#define SEMITOP_CLOSURE_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semitop/pattern.hpp"
#include "semitop/set_expr.hpp"

namespace semitop {

/// Result of a topological operator, with sound lower and upper bounds in
/// the expression algebra. When `exact` is set the bounds coincide and
/// `set()` is the answer; consumers that require exactness check the flag.
struct Approx {
  SetExpr lower;
  SetExpr upper;
  bool exact = true;

  const SetExpr& set() const {
    if (!exact)
      throw std::logic_error("inexact result; consult lower/upper bounds");
    return lower;
  }
};

namespace detail {

/// The strongest basic neighborhood test at x against a set with the given
/// support: exclude every support extension of x (and, at the fc local
/// zero, remove the almost-A singleton layer plus non-A support edits).
/// Whatever meets this neighborhood off x meets every basic neighborhood.
inline OpenDescriptor worst_neighborhood(const Space& sp, const Point& x,
                                         const std::set<int>& supp) {
  std::vector<Point> excl;
  for (int c : supp) {
    if (x.contains(c)) continue;
    Point e = x.with(c);
    if (e.rank() <= sp.n()) excl.push_back(e);
  }
  if (sp.is_fc() && x == sp.local_zero()) {
    std::vector<Point> local;
    for (const Point& e : excl)
      local.push_back(sp.kind() == TopologyKind::TauFcN ? sp.localize(e) : e);
    return OpenDescriptor::fc_zero(
        OpenDescriptor::up_minus(Point{}, std::move(local)),
        AlmostSet::a(sp.cfg()));
  }
  return OpenDescriptor::up_minus(x, std::move(excl));
}

}  // namespace detail

/// Per-pattern limit verdicts for a set expression. A point x of rank < n
/// is a limit point iff its pattern extends by at least one fresh
/// coordinate to a member pattern; at the fc local zero fresh almost-A
/// singleton extensions do not count (they are removable by the B layer)
/// while fresh non-A singletons and all extensions of size >= 2 do.
class LimitAnalysis {
 public:
  LimitAnalysis(const Space& sp, const SetExpr& s)
      : table_(sp, s), space_(&sp), expr_(s) {
    if (!sp.is_t1())
      throw std::invalid_argument("limit analysis requires a T1 family");
    const auto& supp = table_.support();
    verdict_.assign(table_.mask_count() * static_cast<std::size_t>(
                                              (sp.n() + 1) * (sp.n() + 1)),
                    0);
    for (std::uint32_t mask = 0; mask < table_.mask_count(); ++mask) {
      int sz = std::popcount(mask);
      if (sz > sp.n()) continue;
      for (int fa = 0; sz + fa <= sp.n(); ++fa)
        for (int fn = 0; sz + fa + fn <= sp.n(); ++fn)
          verdict_[index(mask, fa, fn)] =
              tauc_limit(mask, fa, fn) ? 1 : 0;
    }
    if (sp.is_fc()) fc_verdict_ = fc_local_zero_limit();
    (void)supp;
  }

  const PatternTable& table() const { return table_; }

  bool pattern_is_limit(std::uint32_t mask, int fa, int fn) const {
    return verdict_[index(mask, fa, fn)] != 0;
  }

  /// Color-sensitive verdict at the fc local zero.
  bool fc_local_zero_is_limit() const { return fc_verdict_; }

  /// Limit verdict for a concrete point, fc adjustment included.
  bool is_limit(const Point& x) const {
    const Space& sp = *space_;
    if (x.rank() >= sp.n()) return false;
    if (sp.is_fc() && x == sp.local_zero()) return fc_verdict_;
    int fa = 0, fn = 0;
    std::uint32_t mask = table_.pattern_of(sp, x, fa, fn);
    return pattern_is_limit(mask, fa, fn);
  }

  /// A member of s meeting the strongest basic neighborhood of x off x;
  /// present exactly when x is a limit point.
  std::optional<Point> non_thin_witness(const Point& x) const {
    const Space& sp = *space_;
    if (!is_limit(x)) return std::nullopt;
    std::set<int> supp(table_.support().begin(), table_.support().end());
    OpenDescriptor nbhd = detail::worst_neighborhood(sp, x, supp);
    SetExpr survivors = SetExpr::and_of(
        {expr_, SetExpr::open(nbhd),
         SetExpr::not_of(SetExpr::pts({x})), SetExpr::up(x)});
    Emptiness e = is_empty(sp, survivors);
    return e.witness;
  }

 private:
  std::size_t index(std::uint32_t mask, int fa, int fn) const {
    int n = space_->n();
    return (static_cast<std::size_t>(mask) * static_cast<std::size_t>(n + 1) +
            static_cast<std::size_t>(fa)) *
               static_cast<std::size_t>(n + 1) +
           static_cast<std::size_t>(fn);
  }

  bool tauc_limit(std::uint32_t mask, int fa, int fn) const {
    int n = space_->n();
    int sz = std::popcount(mask) + fa + fn;
    for (int da = 0; sz + da <= n; ++da)
      for (int dn = 0; sz + da + dn <= n; ++dn) {
        if (da + dn < 1) continue;
        if (table_.member(mask, fa + da, fn + dn)) return true;
      }
    return false;
  }

  bool fc_local_zero_limit() const {
    const Space& sp = *space_;
    const Point& z = sp.local_zero();
    int floor = table_.support().empty() ? -1 : table_.support().back();
    for (int c : z.elems()) floor = std::max(floor, c);

    // Extensions by two fresh coordinates always count: the removal layer
    // only deletes local singletons.
    int a1 = sp.cfg().fresh_A(floor);
    int a2 = sp.cfg().fresh_A(a1);
    int n1 = sp.cfg().fresh_non_A(floor);
    int n2 = sp.cfg().fresh_non_A(n1);
    const Point z_aa = z.with(a1).with(a2);
    const Point z_an = z.with(a1).with(n1);
    const Point z_nn = z.with(n1).with(n2);
    if (expr_.member(sp, z_aa) || expr_.member(sp, z_an) ||
        expr_.member(sp, z_nn))
      return true;

    // A single fresh coordinate counts only when its transported color is
    // non-A: almost-A singletons are removable.
    int local_floor = floor;
    if (sp.kind() == TopologyKind::TauFcN)
      local_floor = std::max(local_floor, sp.fc_prefix_bound());
    int w = sp.cfg().fresh_non_A(local_floor);
    int c = sp.kind() == TopologyKind::TauFcN ? sp.phi(w) : w;
    return expr_.member(sp, z.with(c));
  }

  PatternTable table_;
  const Space* space_;
  SetExpr expr_;
};

/// The set of limit points of s, expressed in the same atom algebra.
///
/// Classes with no fresh coordinate are explicit points; classes with one
/// fresh coordinate are cylinders over the color classes; classes with two
/// or more fresh coordinates are color-blind in this algebra (no atom can
/// split colors past one free coordinate), so they assemble from up-sets
/// and rank pins. If a color split at size >= 2 ever disagreed the result
/// would degrade to sound bracketing approximations; the exact flag reports
/// it.
inline Approx limit_points(const Space& sp, const SetExpr& s) {
  LimitAnalysis la(sp, s);
  const PatternTable& table = la.table();
  const std::vector<int>& supp = table.support();
  const int n = sp.n();

  std::vector<Point> finite_part;
  std::vector<SetExpr> classes_lower;
  std::vector<SetExpr> classes_upper;
  bool exact = true;

  for (std::uint32_t mask = 0; mask < table.mask_count(); ++mask) {
    int sz = std::popcount(mask);
    if (sz > n) continue;
    Point s_part = table.instantiate(mask, 0, 0);

    // f = 0: the support point itself.
    if (la.pattern_is_limit(mask, 0, 0)) finite_part.push_back(s_part);

    // f = 1: cylinder atoms over the fresh color classes.
    if (sz + 1 <= n) {
      bool lim_a = la.pattern_is_limit(mask, 1, 0);
      bool lim_n = la.pattern_is_limit(mask, 0, 1);
      std::vector<int> removed(supp.begin(), supp.end());
      if (lim_a && lim_n) {
        SetExpr c = SetExpr::cyl(
            s_part, AlmostSet(AlmostSet::Base::All, {}, removed, sp.cfg()));
        classes_lower.push_back(c);
        classes_upper.push_back(c);
      } else if (lim_a || lim_n) {
        SetExpr c = SetExpr::cyl(
            s_part,
            AlmostSet(lim_a ? AlmostSet::Base::A : AlmostSet::Base::CoA, {},
                      removed, sp.cfg()));
        classes_lower.push_back(c);
        classes_upper.push_back(c);
      }
    }

    // f >= 2: one color-blind class per fresh size.
    for (int f = 2; sz + f <= n; ++f) {
      bool any = false, all = true;
      for (int fa = 0; fa <= f; ++fa) {
        bool v = la.pattern_is_limit(mask, fa, f - fa);
        any = any || v;
        all = all && v;
      }
      if (!any) continue;
      std::vector<SetExpr> parts;
      parts.push_back(SetExpr::up(s_part));
      for (int c : supp)
        if (!s_part.contains(c))
          parts.push_back(SetExpr::not_of(SetExpr::up(Point{c})));
      int k = sz + f;
      parts.push_back(SetExpr::lev(k));
      parts.push_back(SetExpr::not_of(SetExpr::lev(k - 1)));
      SetExpr cls = SetExpr::and_of(std::move(parts));
      classes_upper.push_back(cls);
      if (all) {
        classes_lower.push_back(cls);
      } else {
        exact = false;  // color split at >= 2 fresh coordinates
      }
    }
  }

  auto assemble = [&](const std::vector<SetExpr>& classes) {
    std::vector<SetExpr> parts;
    if (!finite_part.empty()) parts.push_back(SetExpr::pts(finite_part));
    for (const SetExpr& c : classes) parts.push_back(c);
    if (parts.empty()) return SetExpr::empty();
    return SetExpr::or_of(std::move(parts));
  };

  SetExpr lower = assemble(classes_lower);
  SetExpr upper = exact ? lower : assemble(classes_upper);

  // The fc local zero follows the color-sensitive rule instead of the
  // class it instantiates.
  if (sp.is_fc()) {
    const Point& z = sp.local_zero();
    bool fc_lim = la.fc_local_zero_is_limit();
    int fa = 0, fn = 0;
    std::uint32_t mask = la.table().pattern_of(sp, z, fa, fn);
    bool class_lim = z.rank() < n && la.pattern_is_limit(mask, fa, fn);
    if (fc_lim && !class_lim) {
      lower = SetExpr::or_of({lower, SetExpr::pts({z})});
      upper = exact ? lower : SetExpr::or_of({upper, SetExpr::pts({z})});
    } else if (!fc_lim && class_lim) {
      SetExpr cut = SetExpr::not_of(SetExpr::pts({z}));
      lower = SetExpr::and_of({lower, cut});
      upper = exact ? lower : SetExpr::and_of({upper, cut});
    }
  }

  return {lower, upper, exact};
}

/// cl(s) = s with its limit points; extensive, monotone, idempotent.
inline Approx closure(const Space& sp, const SetExpr& s) {
  Approx lp = limit_points(sp, s);
  return {SetExpr::or_of({s, lp.lower}), SetExpr::or_of({s, lp.upper}),
          lp.exact};
}

/// int(s) = complement of the closure of the complement.
inline Approx interior(const Space& sp, const SetExpr& s) {
  Approx cl = closure(sp, SetExpr::not_of(s));
  return {SetExpr::not_of(cl.upper), SetExpr::not_of(cl.lower), cl.exact};
}

struct RegularOpenDefect {
  bool is_open = false;              // precondition: u = int(u)
  std::optional<Point> witness;      // a point of int(cl(u)) \ u, if any
};

/// None when u is regular open; otherwise a witness of the defect.
inline RegularOpenDefect regular_open_defect(const Space& sp,
                                             const SetExpr& u) {
  RegularOpenDefect out;
  Approx iu = interior(sp, u);
  if (!ext_equal(sp, u, iu.set())) return out;  // not open
  out.is_open = true;
  Approx icl = interior(sp, closure(sp, u).set());
  Emptiness diff =
      is_empty(sp, SetExpr::and_of({icl.set(), SetExpr::not_of(u)}));
  if (!diff.empty) out.witness = diff.witness;
  return out;
}

inline RegularOpenDefect regular_open_defect(const Space& sp,
                                             const OpenDescriptor& u) {
  return regular_open_defect(sp, SetExpr::open(u));
}

}  // namespace semitop

#endif  // SEMITOP_CLOSURE_HPP
