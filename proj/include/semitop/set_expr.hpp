#ifndef SEMITOP_SET_EXPR_HPP
#define SEMITOP_SET_EXPR_HPP

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semitop/almost_set.hpp"
#include "semitop/config.hpp"
#include "semitop/descriptor.hpp"
#include "semitop/point.hpp"
#include "semitop/text.hpp"

namespace semitop {

/// Finite Boolean combination of the atomic definable sets:
///
///   (up {x})      the up-set of x
///   (pts p1 ...)  a finite point set
///   (lev k)       points of rank <= k
///   (cyl {F} B)   one-free-coordinate cylinder: F plus one extra code in B
///   (open d)      a basic open set by descriptor
///
/// combined with (not e), (and e...), (or e...). Every expression has a
/// finite support, and membership outside the support depends only on the
/// fresh-coordinate colors; that pattern invariance is what makes the
/// emptiness and limit procedures total.
class SetExpr {
 public:
  enum class Kind { UpSet, Pts, Level, Cyl, Open, Not, And, Or };

  SetExpr() : SetExpr(pts({})) {}

  static SetExpr up(Point x) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::UpSet;
    n->x = std::move(x);
    return SetExpr(std::move(n));
  }

  static SetExpr pts(std::vector<Point> points) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Pts;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    n->points = std::move(points);
    return SetExpr(std::move(n));
  }

  static SetExpr lev(int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Level;
    n->level = k;
    return SetExpr(std::move(n));
  }

  static SetExpr cyl(Point base, AlmostSet b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cyl;
    n->x = std::move(base);
    n->b = std::move(b);
    return SetExpr(std::move(n));
  }

  static SetExpr open(OpenDescriptor d) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Open;
    n->desc = std::move(d);
    return SetExpr(std::move(n));
  }

  static SetExpr not_of(SetExpr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->kids.push_back(std::move(e));
    return SetExpr(std::move(n));
  }

  static SetExpr and_of(std::vector<SetExpr> kids) {
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->kids = std::move(kids);
    return SetExpr(std::move(n));
  }

  static SetExpr or_of(std::vector<SetExpr> kids) {
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->kids = std::move(kids);
    return SetExpr(std::move(n));
  }

  /// Canonical empty set and whole space.
  static SetExpr empty() { return pts({}); }
  static SetExpr whole(const Space& sp) { return lev(sp.n()); }

  Kind kind() const { return node_->kind; }
  const Point& point_arg() const { return node_->x; }
  const std::vector<Point>& points_arg() const { return node_->points; }
  int level_arg() const { return node_->level; }
  const AlmostSet& almost_arg() const { return node_->b; }
  const OpenDescriptor& descriptor_arg() const { return node_->desc; }
  const std::vector<SetExpr>& kids() const { return node_->kids; }

  bool member(const Space& sp, const Point& p) const {
    sp.cfg().check_point(p);
    return eval(sp, p);
  }

  std::set<int> support(const Space& sp) const {
    std::set<int> out;
    collect_support(sp, out);
    return out;
  }

  /// Negation normal form: negations pushed onto atoms.
  SetExpr nnf() const { return to_nnf(false); }

  std::string str() const {
    std::string s;
    print(s);
    return s;
  }

  bool operator==(const SetExpr& other) const { return str() == other.str(); }

  static SetExpr parse(const std::string& text, const Space& sp) {
    Tokens t(text);
    SetExpr e = parse_from(t, sp);
    t.expect_done();
    return e;
  }

  static SetExpr parse_from(Tokens& t, const Space& sp) {
    t.expect("(");
    std::string head = t.next();
    if (head == "up") {
      Point x = t.next_point();
      t.expect(")");
      return up(std::move(x));
    }
    if (head == "pts") {
      std::vector<Point> points;
      while (!t.accept(")")) {
        t.expect("{");
        if (t.peek() == "{") {
          // Set-of-points spelling {{1} {2 3}}: unwrap the outer braces.
          while (!t.accept("}")) points.push_back(t.next_point());
        } else {
          std::vector<int> codes;
          while (!t.accept("}")) codes.push_back(t.next_int());
          points.push_back(Point(std::move(codes)));
        }
      }
      return pts(std::move(points));
    }
    if (head == "lev") {
      int k = t.next_int();
      t.expect(")");
      return lev(k);
    }
    if (head == "cyl") {
      Point base = t.next_point();
      AlmostSet b = AlmostSet::parse_from(t, sp.cfg());
      t.expect(")");
      return cyl(std::move(base), std::move(b));
    }
    if (head == "open") {
      OpenDescriptor d = OpenDescriptor::parse_from(t, sp.cfg());
      t.expect(")");
      return open(std::move(d));
    }
    if (head == "not") {
      SetExpr e = parse_from(t, sp);
      t.expect(")");
      return not_of(std::move(e));
    }
    if (head == "and" || head == "or") {
      std::vector<SetExpr> kids;
      while (!t.accept(")")) kids.push_back(parse_from(t, sp));
      if (kids.size() == 1) return kids[0];
      return head == "and" ? and_of(std::move(kids)) : or_of(std::move(kids));
    }
    throw ParseError("unknown expression head '" + head + "'", t.pos());
  }

 private:
  struct Node {
    Kind kind = Kind::Pts;
    Point x;
    std::vector<Point> points;
    int level = 0;
    AlmostSet b;
    OpenDescriptor desc = OpenDescriptor::whole();
    std::vector<SetExpr> kids;
  };

  explicit SetExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  bool eval(const Space& sp, const Point& p) const {
    switch (node_->kind) {
      case Kind::UpSet:
        return node_->x.subset_of(p);
      case Kind::Pts:
        return std::binary_search(node_->points.begin(), node_->points.end(),
                                  p);
      case Kind::Level:
        return p.rank() <= node_->level;
      case Kind::Cyl: {
        if (p.rank() != node_->x.rank() + 1) return false;
        if (!node_->x.subset_of(p)) return false;
        int extra = diff_sets(p, node_->x).elems()[0];
        return node_->b.contains(extra, sp.cfg());
      }
      case Kind::Open:
        return member_open(sp, node_->desc, p);
      case Kind::Not:
        return !node_->kids[0].eval(sp, p);
      case Kind::And:
        for (const SetExpr& k : node_->kids)
          if (!k.eval(sp, p)) return false;
        return true;
      case Kind::Or:
        for (const SetExpr& k : node_->kids)
          if (k.eval(sp, p)) return true;
        return false;
    }
    return false;
  }

  void collect_support(const Space& sp, std::set<int>& out) const {
    switch (node_->kind) {
      case Kind::UpSet:
        for (int c : node_->x.elems()) out.insert(c);
        break;
      case Kind::Pts:
        for (const Point& p : node_->points)
          for (int c : p.elems()) out.insert(c);
        break;
      case Kind::Level:
        break;
      case Kind::Cyl:
        for (int c : node_->x.elems()) out.insert(c);
        for (int c : node_->b.support_codes()) out.insert(c);
        break;
      case Kind::Open: {
        for (int c : node_->desc.support(sp)) out.insert(c);
        break;
      }
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (const SetExpr& k : node_->kids) k.collect_support(sp, out);
        break;
    }
  }

  SetExpr to_nnf(bool negate) const {
    switch (node_->kind) {
      case Kind::Not:
        return node_->kids[0].to_nnf(!negate);
      case Kind::And:
      case Kind::Or: {
        std::vector<SetExpr> kids;
        kids.reserve(node_->kids.size());
        for (const SetExpr& k : node_->kids) kids.push_back(k.to_nnf(negate));
        bool make_and = (node_->kind == Kind::And) != negate;
        return make_and ? and_of(std::move(kids)) : or_of(std::move(kids));
      }
      default: {
        SetExpr self(node_);
        return negate ? not_of(self) : self;
      }
    }
  }

  void print(std::string& s) const {
    switch (node_->kind) {
      case Kind::UpSet:
        s += "(up " + print_point_sexpr(node_->x) + ")";
        break;
      case Kind::Pts: {
        s += "(pts";
        for (const Point& p : node_->points) s += " " + print_point_sexpr(p);
        s += ")";
        break;
      }
      case Kind::Level:
        s += "(lev " + std::to_string(node_->level) + ")";
        break;
      case Kind::Cyl:
        s += "(cyl " + print_point_sexpr(node_->x) + " " + node_->b.str() +
             ")";
        break;
      case Kind::Open:
        s += "(open " + node_->desc.str() + ")";
        break;
      case Kind::Not:
        s += "(not ";
        node_->kids[0].print(s);
        s += ")";
        break;
      case Kind::And:
      case Kind::Or: {
        s += node_->kind == Kind::And ? "(and" : "(or";
        for (const SetExpr& k : node_->kids) {
          s += ' ';
          k.print(s);
        }
        s += ")";
        break;
      }
    }
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace semitop

#endif  // SEMITOP_SET_EXPR_HPP
