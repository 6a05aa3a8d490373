#ifndef SEMITOP_BASE_OPS_HPP
#define SEMITOP_BASE_OPS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semitop/closure.hpp"
#include "semitop/descriptor.hpp"
#include "semitop/pattern.hpp"
#include "semitop/set_expr.hpp"

namespace semitop {

/// Left-translation image {meet(e, q) : q in u}. Every image point is below
/// e, so the result is a finite point set with at most 2^rank(e) members.
inline std::vector<Point> translate_points(const Space& sp, const Point& e,
                                           const OpenDescriptor& u) {
  sp.cfg().check_point(e);
  std::vector<Point> image;
  const auto& codes = e.elems();
  const std::uint32_t limit = 1u << codes.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<int> keep;
    std::vector<int> drop;
    for (std::size_t i = 0; i < codes.size(); ++i)
      ((mask & (1u << i)) ? keep : drop).push_back(codes[i]);
    Point d(keep);
    std::vector<SetExpr> parts{SetExpr::open(u), SetExpr::up(d)};
    for (int c : drop)
      parts.push_back(SetExpr::not_of(SetExpr::up(Point{c})));
    if (!is_empty(sp, SetExpr::and_of(std::move(parts))).empty)
      image.push_back(d);
  }
  return image;
}

inline SetExpr translate(const Space& sp, const Point& e,
                         const OpenDescriptor& u) {
  return SetExpr::pts(translate_points(sp, e, u));
}

struct Separation {
  bool ok = false;
  OpenDescriptor around_p = OpenDescriptor::whole();
  OpenDescriptor around_q = OpenDescriptor::whole();
  /// For tau_0: the pair witnessing failure of T1 separation.
  std::optional<std::pair<Point, Point>> t1_defect;
};

/// Disjoint basic neighborhoods of two distinct points in a T1 family.
/// tau_0 is rejected with the witness pair (0, p): the whole space is the
/// only neighborhood of zero.
inline Separation hausdorff_separate(const Space& sp, const Point& p,
                                     const Point& q) {
  if (p == q) throw std::invalid_argument("points must be distinct");
  sp.cfg().check_point(p);
  sp.cfg().check_point(q);
  Separation out;
  if (sp.kind() == TopologyKind::Tau0) {
    out.t1_defect = {Point{}, p.is_zero() ? q : p};
    return out;
  }
  out.ok = true;
  if (leq(p, q)) {
    out.around_p = canonical_base(sp, p, {q});
    out.around_q = canonical_base(sp, q, {});
  } else if (leq(q, p)) {
    out.around_p = canonical_base(sp, p, {});
    out.around_q = canonical_base(sp, q, {p});
  } else {
    Point u = join_sets(p, q);
    if (u.rank() <= sp.n()) {
      out.around_p = canonical_base(sp, p, {u});
      out.around_q = canonical_base(sp, q, {u});
    } else {
      out.around_p = canonical_base(sp, p, {});
      out.around_q = canonical_base(sp, q, {});
    }
  }
  return out;
}

struct BaseAxiomReport {
  bool bp1 = true;
  bool bp2 = true;
  bool bp3 = true;
  bool bp4 = true;
  bool t1 = true;
  std::optional<std::pair<Point, Point>> t1_witness;
  std::vector<std::string> failures;

  bool bp123() const { return bp1 && bp2 && bp3; }
  bool pass() const { return bp123() && bp4; }
};

namespace detail {

/// Candidate basic sets at p drawn from the sample, exclusion size capped
/// by the budget.
inline std::vector<OpenDescriptor> sample_basics(
    const Space& sp, const Point& p, const std::vector<Point>& sample,
    int max_excl) {
  std::vector<OpenDescriptor> out;
  if (sp.kind() == TopologyKind::Tau0) {
    out.push_back(canonical_base(sp, p));
    return out;
  }
  std::vector<Point> above;
  for (const Point& q : sample)
    if (p.subset_of(q) && q != p) above.push_back(q);

  std::vector<std::vector<Point>> excl_sets;
  excl_sets.push_back({});
  for (std::size_t i = 0; i < above.size(); ++i) {
    excl_sets.push_back({above[i]});
    if (max_excl >= 2)
      for (std::size_t j = i + 1; j < above.size(); ++j)
        excl_sets.push_back({above[i], above[j]});
  }
  const bool at_fc_zero = sp.is_fc() && p == sp.local_zero();
  for (auto& e : excl_sets) {
    out.push_back(canonical_base(sp, p, e));
    if (at_fc_zero) {
      // One edited removal set per exclusion choice exercises the B layer.
      int a0 = sp.cfg().fresh_A(-1);
      int n0 = sp.cfg().fresh_non_A(-1);
      out.push_back(canonical_base(
          sp, p, e, AlmostSet(AlmostSet::Base::A, {n0}, {a0}, sp.cfg())));
    }
  }
  return out;
}

}  // namespace detail

/// Verifies the base axioms on a point sample: BP1 (every point has a basic
/// set containing it), BP2 (a basic set inside any intersection, via
/// refine), BP3 (a basic set at every member inside the set), and the
/// Hausdorff-witnessing BP4 on all sample pairs. tau_0 fails BP4 and is
/// flagged non-T1 with a witness pair.
inline BaseAxiomReport check_base_axioms(const Space& sp,
                                         const std::vector<Point>& sample,
                                         int budget = 2) {
  BaseAxiomReport report;
  for (const Point& p : sample) {
    auto basics = detail::sample_basics(sp, p, sample, budget);
    if (basics.empty()) {
      report.bp1 = false;
      report.failures.push_back("BP1: no basic set at " + p.str());
      continue;
    }
    for (const auto& b : basics)
      if (!member_open(sp, b, p)) {
        report.bp1 = false;
        report.failures.push_back("BP1: " + b.str() + " misses its anchor " +
                                  p.str());
      }

    for (std::size_t i = 0; i < basics.size(); ++i)
      for (std::size_t j = i; j < basics.size(); ++j) {
        OpenDescriptor w = refine(sp, basics[i], basics[j], p);
        bool ok = member_open(sp, w, p) &&
                  is_empty(sp, SetExpr::and_of(
                                   {SetExpr::open(w),
                                    SetExpr::not_of(SetExpr::and_of(
                                        {SetExpr::open(basics[i]),
                                         SetExpr::open(basics[j])}))}))
                      .empty;
        if (!ok) {
          report.bp2 = false;
          report.failures.push_back("BP2: refine of " + basics[i].str() +
                                    " and " + basics[j].str() + " at " +
                                    p.str());
        }
      }

    for (const auto& u : basics)
      for (const Point& q : sample) {
        if (!member_open(sp, u, q)) continue;
        OpenDescriptor v = refine(sp, u, u, q);
        bool ok = member_open(sp, v, q) &&
                  ext_subset(sp, SetExpr::open(v), SetExpr::open(u));
        if (!ok) {
          report.bp3 = false;
          report.failures.push_back("BP3: no basic set at " + q.str() +
                                    " inside " + u.str());
        }
      }
  }

  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      Separation sep = hausdorff_separate(sp, sample[i], sample[j]);
      if (!sep.ok) {
        report.bp4 = false;
        report.t1 = false;
        if (!report.t1_witness) report.t1_witness = sep.t1_defect;
        continue;
      }
      bool ok =
          member_open(sp, sep.around_p, sample[i]) &&
          member_open(sp, sep.around_q, sample[j]) &&
          is_empty(sp, SetExpr::and_of({SetExpr::open(sep.around_p),
                                        SetExpr::open(sep.around_q)}))
              .empty;
      if (!ok) {
        report.bp4 = false;
        report.failures.push_back("BP4: separation of " + sample[i].str() +
                                  " and " + sample[j].str());
      }
    }
  return report;
}

}  // namespace semitop

#endif  // SEMITOP_BASE_OPS_HPP
