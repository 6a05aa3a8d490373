#ifndef SEMITOP_POINT_HPP
#define SEMITOP_POINT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace semitop {

/// A point of the semilattice: a finite set of index codes, kept sorted and
/// deduplicated. The empty point is the semilattice zero. The global rank
/// bound n lives in UniverseConfig; points themselves are unbounded values.
class Point {
 public:
  Point() = default;

  Point(std::initializer_list<int> codes) : elems_(codes) { canonicalize(); }

  explicit Point(std::vector<int> codes) : elems_(std::move(codes)) {
    canonicalize();
  }

  const std::vector<int>& elems() const { return elems_; }

  int rank() const { return static_cast<int>(elems_.size()); }

  bool is_zero() const { return elems_.empty(); }

  bool contains(int code) const {
    return std::binary_search(elems_.begin(), elems_.end(), code);
  }

  /// Subset test: *this <= other in the natural partial order.
  bool subset_of(const Point& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
  }

  bool operator==(const Point& other) const = default;
  auto operator<=>(const Point& other) const = default;

  Point with(int code) const {
    std::vector<int> v = elems_;
    v.push_back(code);
    return Point(std::move(v));
  }

  Point without(int code) const {
    std::vector<int> v;
    v.reserve(elems_.size());
    for (int c : elems_)
      if (c != code) v.push_back(c);
    return Point(std::move(v));
  }

  /// Text form `{c1,c2,...}`; `{}` is zero.
  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(elems_[i]);
    }
    s += '}';
    return s;
  }

 private:
  void canonicalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (int c : elems_)
      if (c < 0) throw std::invalid_argument("point codes must be >= 0");
  }

  std::vector<int> elems_;
};

/// Semilattice operation: set intersection.
inline Point meet(const Point& p, const Point& q) {
  std::vector<int> out;
  std::set_intersection(p.elems().begin(), p.elems().end(), q.elems().begin(),
                        q.elems().end(), std::back_inserter(out));
  return Point(std::move(out));
}

/// Natural partial order: p <= q iff meet(p, q) == p iff p is a subset of q.
inline bool leq(const Point& p, const Point& q) { return p.subset_of(q); }

inline int rank(const Point& p) { return p.rank(); }

inline Point join_sets(const Point& p, const Point& q) {
  std::vector<int> out;
  std::set_union(p.elems().begin(), p.elems().end(), q.elems().begin(),
                 q.elems().end(), std::back_inserter(out));
  return Point(std::move(out));
}

/// Set difference p \ q (not a semilattice operation; plumbing).
inline Point diff_sets(const Point& p, const Point& q) {
  std::vector<int> out;
  std::set_difference(p.elems().begin(), p.elems().end(), q.elems().begin(),
                      q.elems().end(), std::back_inserter(out));
  return Point(std::move(out));
}

inline std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << p.str();
}

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int c : p.elems()) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace semitop

#endif  // SEMITOP_POINT_HPP
