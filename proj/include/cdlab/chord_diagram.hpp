#ifndef CDLAB_CHORD_DIAGRAM_HPP
#define CDLAB_CHORD_DIAGRAM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cdlab/trig_polynomial.hpp"

namespace cdlab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Tolerance for identifying two points of the circle.
inline constexpr double point_eps = 1e-9;

/// Point of S^1 stored as an angle in [0, 2pi).
class CirclePoint {
 public:
  CirclePoint() = default;
  CirclePoint(double angle) : angle_(canonical(angle)) {}  // NOLINT: angles convert implicitly

  double angle() const { return angle_; }

  static double canonical(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("angle must be finite");
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

  /// Arc distance in [0, pi].
  static double distance(CirclePoint x, CirclePoint y) {
    const double d = std::abs(x.angle_ - y.angle_);
    return std::min(d, two_pi - d);
  }

  bool same_as(CirclePoint o, double eps = point_eps) const { return distance(*this, o) <= eps; }

 private:
  double angle_ = 0.0;
};

/// Unordered pair of distinct points.
class Chord {
 public:
  Chord(CirclePoint x, CirclePoint y) : first_(x), second_(y) {
    if (x.same_as(y)) throw std::invalid_argument("chord endpoints coincide");
    if (second_.angle() < first_.angle()) std::swap(first_, second_);
  }
  CirclePoint first() const { return first_; }
  CirclePoint second() const { return second_; }

  bool same_as(const Chord& o, double eps = point_eps) const {
    return (first_.same_as(o.first_, eps) && second_.same_as(o.second_, eps)) ||
           (first_.same_as(o.second_, eps) && second_.same_as(o.first_, eps));
  }
  bool has_endpoint(CirclePoint p, double eps = point_eps) const {
    return first_.same_as(p, eps) || second_.same_as(p, eps);
  }

 private:
  CirclePoint first_;
  CirclePoint second_;
};

/// Set of pairwise distinct chords; each chord imposes f(x) = f(y).
class ChordDiagram {
 public:
  ChordDiagram() = default;
  ChordDiagram(std::vector<Chord> chords) : chords_(std::move(chords)) {  // NOLINT
    for (std::size_t i = 0; i < chords_.size(); ++i)
      for (std::size_t j = i + 1; j < chords_.size(); ++j)
        if (chords_[i].same_as(chords_[j])) throw std::invalid_argument("chord diagram lists the same chord twice");
  }
  ChordDiagram(std::initializer_list<std::pair<double, double>> chords) {
    std::vector<Chord> list;
    for (const auto& [x, y] : chords) list.emplace_back(x, y);
    *this = ChordDiagram(std::move(list));
  }

  const std::vector<Chord>& chords() const { return chords_; }
  std::size_t size() const { return chords_.size(); }

 private:
  std::vector<Chord> chords_;
};

/// Point (p : q) of the real projective line, alpha = p / q, (1 : 0) = infinity.
class ProjectiveReal {
 public:
  ProjectiveReal(double value) : p_(value), q_(1.0) {}  // NOLINT
  ProjectiveReal(double p, double q) : p_(p), q_(q) {
    if (p == 0.0 && q == 0.0) throw std::invalid_argument("(0 : 0) is not a projective point");
  }
  static ProjectiveReal infinity() { return {1.0, 0.0}; }

  double p() const { return p_; }
  double q() const { return q_; }
  bool is_infinite() const { return q_ == 0.0; }
  double value() const { return is_infinite() ? std::numeric_limits<double>::infinity() : p_ / q_; }
  ProjectiveReal inverse() const { return {q_, p_}; }
  /// Sign class: alpha in [0, +inf] versus [-inf, 0]. The endpoints 0 and
  /// infinity belong to both; this reports them as nonnegative.
  bool nonnegative() const { return p_ * q_ >= 0.0; }
  /// |alpha| / (|alpha| + 1), well defined at infinity.
  double weight() const { return std::abs(p_) / (std::abs(p_) + std::abs(q_)); }

  bool same_as(const ProjectiveReal& o, double tol = 0.0) const {
    const double cross = p_ * o.q_ - q_ * o.p_;
    return std::abs(cross) <= tol * std::hypot(p_, q_) * std::hypot(o.p_, o.q_);
  }

 private:
  double p_;
  double q_;
};

/// Subalgebra {f : f(phi) = f(psi), f'(phi) = alpha f'(psi)}.
struct GimelAlgebra {
  CirclePoint phi;
  CirclePoint psi;
  ProjectiveReal alpha;

  GimelAlgebra(CirclePoint a, CirclePoint b, ProjectiveReal ratio) : phi(a), psi(b), alpha(ratio) {
    if (phi.same_as(psi)) throw std::invalid_argument("gimel algebra needs two distinct points");
  }

  /// Equality under the identification (phi, psi; alpha) = (psi, phi; 1/alpha).
  bool same_as(const GimelAlgebra& o) const {
    return (phi.same_as(o.phi) && psi.same_as(o.psi) && alpha.same_as(o.alpha)) ||
           (phi.same_as(o.psi) && psi.same_as(o.phi) && alpha.same_as(o.alpha.inverse()));
  }
};

/// Subalgebra {f : f'(phi) = 0, f'''(phi) = alpha f''(phi)}.
struct StarAlgebra {
  CirclePoint phi;
  double alpha = 0.0;
};

/// Subalgebra {f : f'(phi) = f''(phi) = 0}.
struct DoubleStarAlgebra {
  CirclePoint phi;
};

using AlgebraDescriptor = std::variant<ChordDiagram, GimelAlgebra, StarAlgebra, DoubleStarAlgebra>;

/// Blocks of endpoints glued by chords; each block sorted by angle and the
/// blocks sorted by their first point.
struct Partition {
  std::vector<std::vector<CirclePoint>> blocks;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Distinct endpoints (up to point_eps) and, per chord, the indices of its two ends.
struct EndpointGraph {
  std::vector<CirclePoint> points;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

inline EndpointGraph endpoint_graph(const ChordDiagram& d) {
  EndpointGraph g;
  auto index = [&g](CirclePoint p) {
    for (std::size_t i = 0; i < g.points.size(); ++i)
      if (g.points[i].same_as(p)) return i;
    g.points.push_back(p);
    return g.points.size() - 1;
  };
  for (const auto& c : d.chords()) {
    const std::size_t a = index(c.first());
    const std::size_t b = index(c.second());
    g.edges.emplace_back(a, b);
  }
  return g;
}

}  // namespace detail

/// Codimension of the subalgebra cut out by the chords: number of distinct
/// endpoints minus number of connected components of the endpoint graph.
inline std::size_t rank(const ChordDiagram& d) {
  const auto g = detail::endpoint_graph(d);
  detail::DisjointSets sets(g.points.size());
  std::size_t merges = 0;
  for (const auto& [a, b] : g.edges)
    if (sets.unite(a, b)) ++merges;
  return merges;
}

inline Partition partition(const ChordDiagram& d) {
  const auto g = detail::endpoint_graph(d);
  detail::DisjointSets sets(g.points.size());
  for (const auto& [a, b] : g.edges) sets.unite(a, b);

  std::vector<std::vector<CirclePoint>> by_root(g.points.size());
  for (std::size_t i = 0; i < g.points.size(); ++i) by_root[sets.find(i)].push_back(g.points[i]);

  Partition p;
  for (auto& block : by_root) {
    if (block.size() < 2) continue;
    std::sort(block.begin(), block.end(), [](CirclePoint x, CirclePoint y) { return x.angle() < y.angle(); });
    p.blocks.push_back(std::move(block));
  }
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& x, const auto& y) { return x.front().angle() < y.front().angle(); });
  return p;
}

/// Two diagrams define the same subalgebra iff their endpoint partitions agree.
inline bool same_point(const ChordDiagram& d1, const ChordDiagram& d2) {
  const Partition p1 = partition(d1);
  const Partition p2 = partition(d2);
  if (p1.blocks.size() != p2.blocks.size()) return false;
  // Blocks may sort differently when first points differ by less than
  // point_eps across the 0 / 2pi seam, so match blocks as a set.
  std::vector<bool> used(p2.blocks.size(), false);
  for (const auto& b1 : p1.blocks) {
    bool matched = false;
    for (std::size_t j = 0; j < p2.blocks.size() && !matched; ++j) {
      const auto& b2 = p2.blocks[j];
      if (used[j] || b1.size() != b2.size()) continue;
      const bool all = std::all_of(b1.begin(), b1.end(), [&](CirclePoint x) {
        return std::any_of(b2.begin(), b2.end(), [&](CirclePoint y) { return x.same_as(y); });
      });
      if (all) used[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

inline bool contains(const ChordDiagram& d, const TrigPolynomial& f, double tol) {
  return std::all_of(d.chords().begin(), d.chords().end(), [&](const Chord& c) {
    return std::abs(f(c.first().angle()) - f(c.second().angle())) <= tol;
  });
}

inline bool contains(const GimelAlgebra& g, const TrigPolynomial& f, double tol) {
  const TrigPolynomial df = f.derivative();
  const double values = f(g.phi.angle()) - f(g.psi.angle());
  // q f'(phi) = p f'(psi), normalized by |(p, q)|.
  const double slopes = (g.alpha.q() * df(g.phi.angle()) - g.alpha.p() * df(g.psi.angle())) /
                        std::hypot(g.alpha.p(), g.alpha.q());
  return std::abs(values) <= tol && std::abs(slopes) <= tol;
}

inline bool contains(const StarAlgebra& s, const TrigPolynomial& f, double tol) {
  const TrigPolynomial d1 = f.derivative();
  const TrigPolynomial d2 = d1.derivative();
  const TrigPolynomial d3 = d2.derivative();
  const double x = s.phi.angle();
  return std::abs(d1(x)) <= tol && std::abs(d3(x) - s.alpha * d2(x)) <= tol;
}

inline bool contains(const DoubleStarAlgebra& s, const TrigPolynomial& f, double tol) {
  const TrigPolynomial d1 = f.derivative();
  const double x = s.phi.angle();
  return std::abs(d1(x)) <= tol && std::abs(d1.derivative()(x)) <= tol;
}

inline bool contains(const AlgebraDescriptor& a, const TrigPolynomial& f, double tol) {
  return std::visit([&](const auto& alg) { return contains(alg, f, tol); }, a);
}

/// Pair of chords resolving the limit algebra gimel(phi, phi + pi; alpha) into
/// a genuine two-chord diagram at scale eps. With a = |alpha|/(|alpha|+1) and
/// b = 1/(|alpha|+1): for alpha >= 0 the chords are (phi + eps a, phi + pi + eps b)
/// and (phi - eps a, phi + pi - eps b); for alpha <= 0 the second endpoints
/// swap signs.
inline std::pair<Chord, Chord> chords_for_gimel(CirclePoint phi, ProjectiveReal alpha, double eps) {
  if (!(eps > 0.0) || eps >= std::numbers::pi / 4.0) throw std::invalid_argument("eps must lie in (0, pi/4)");
  const double a = alpha.weight();
  const double b = 1.0 - a;
  const double x = phi.angle();
  const double y = x + std::numbers::pi;
  const double sign = alpha.nonnegative() ? 1.0 : -1.0;
  return {Chord(x + eps * a, y + sign * eps * b), Chord(x - eps * a, y - sign * eps * b)};
}

/// Unordered equality of chord pairs.
inline bool same_chord_pair(const std::pair<Chord, Chord>& x, const std::pair<Chord, Chord>& y,
                            double eps = point_eps) {
  return (x.first.same_as(y.first, eps) && x.second.same_as(y.second, eps)) ||
         (x.first.same_as(y.second, eps) && x.second.same_as(y.first, eps));
}

/// True iff the endpoints of c2 separate those of c1 on the circle.
inline bool crossing(const Chord& c1, const Chord& c2) {
  const CirclePoint ends[4] = {c1.first(), c1.second(), c2.first(), c2.second()};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (ends[i].same_as(ends[j])) throw std::invalid_argument("crossing needs four distinct endpoints");
  const double lo = c1.first().angle();
  const double hi = c1.second().angle();
  auto inside = [&](CirclePoint p) { return p.angle() > lo && p.angle() < hi; };
  return inside(c2.first()) != inside(c2.second());
}

/// Parses "x-y,x-y,..." (angles in radians) into a diagram.
inline ChordDiagram parse_diagram(const std::string& text) {
  std::vector<Chord> chords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // The separator is the first '-' that is not a leading sign or exponent sign.
    std::size_t sep = std::string::npos;
    for (std::size_t i = 1; i < item.size(); ++i)
      if (item[i] == '-' && item[i - 1] != 'e' && item[i - 1] != 'E' && item[i - 1] != ' ') {
        sep = i;
        break;
      }
    if (sep == std::string::npos) throw std::invalid_argument("chord '" + item + "' is not of the form x-y");
    std::size_t used1 = 0, used2 = 0;
    const std::string lhs = item.substr(0, sep), rhs = item.substr(sep + 1);
    double x = 0.0, y = 0.0;
    try {
      x = std::stod(lhs, &used1);
      y = std::stod(rhs, &used2);
    } catch (const std::exception&) {
      throw std::invalid_argument("chord '" + item + "' has a malformed angle");
    }
    if (lhs.find_first_not_of(' ', used1) != std::string::npos || rhs.find_first_not_of(' ', used2) != std::string::npos)
      throw std::invalid_argument("chord '" + item + "' has trailing characters");
    chords.emplace_back(x, y);
  }
  if (chords.empty()) throw std::invalid_argument("empty chord diagram");
  return ChordDiagram(std::move(chords));
}

}  // namespace cdlab

#endif  // CDLAB_CHORD_DIAGRAM_HPP
