#ifndef CDLAB_SIMPLICIAL_HPP
#define CDLAB_SIMPLICIAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdlab/chain_complex.hpp"
#include "cdlab/f2_matrix.hpp"

namespace cdlab {

/// Strictly increasing vertex tuple.
using Simplex = std::vector<int>;

/// Simplicial complex on vertices 0..n-1, ordered by index. The vertex order
/// is what the Alexander-Whitney cup formula reads.
class OrderedSimplicialComplex {
 public:
  OrderedSimplicialComplex() = default;

  /// Builds the closure of the given simplices under taking faces. Vertex
  /// tuples are sorted; repeated vertices are rejected.
  static OrderedSimplicialComplex from_simplices(int vertex_count, const std::vector<Simplex>& top) {
    OrderedSimplicialComplex c;
    c.vertex_count_ = vertex_count;
    std::vector<std::set<Simplex>> levels;
    for (Simplex s : top) {
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("simplex with a repeated vertex");
      if (s.empty() || s.front() < 0 || s.back() >= vertex_count)
        throw std::invalid_argument("simplex vertex out of range");
      add_with_faces(s, levels);
    }
    for (int v = 0; v < vertex_count; ++v) add_with_faces({v}, levels);
    for (auto& level : levels) c.simplices_.emplace_back(level.begin(), level.end());
    c.reindex();
    return c;
  }

  int vertex_count() const { return vertex_count_; }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }

  const std::vector<Simplex>& simplices(int dim) const {
    static const std::vector<Simplex> none;
    if (dim < 0 || dim > dimension()) return none;
    return simplices_[static_cast<std::size_t>(dim)];
  }
  std::size_t count(int dim) const { return simplices(dim).size(); }

  std::size_t index_of(const Simplex& s) const {
    const int dim = static_cast<int>(s.size()) - 1;
    if (dim < 0 || dim > dimension()) throw std::invalid_argument("simplex of unsupported dimension");
    const auto& idx = index_[static_cast<std::size_t>(dim)];
    const auto it = idx.find(s);
    if (it == idx.end()) throw std::invalid_argument("simplex not in complex");
    return it->second;
  }
  bool contains(const Simplex& s) const {
    const int dim = static_cast<int>(s.size()) - 1;
    if (dim < 0 || dim > dimension()) return false;
    return index_[static_cast<std::size_t>(dim)].count(s) != 0;
  }

  /// Face closure and strictly increasing tuples.
  bool is_valid() const {
    for (int d = 0; d <= dimension(); ++d)
      for (const auto& s : simplices(d)) {
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
        if (d > 0)
          for (std::size_t i = 0; i < s.size(); ++i)
            if (!contains(drop(s, i))) return false;
      }
    return true;
  }

  /// Coboundary matrix from degree p to p+1 (rows: (p+1)-simplices).
  f2::BitMatrix coboundary_matrix(int p) const {
    f2::BitMatrix m(count(p + 1), count(p));
    const auto& upper = simplices(p + 1);
    for (std::size_t r = 0; r < upper.size(); ++r)
      for (std::size_t i = 0; i < upper[r].size(); ++i) m.flip(r, index_of(drop(upper[r], i)));
    return m;
  }

  static Simplex drop(const Simplex& s, std::size_t i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != i) f.push_back(s[k]);
    return f;
  }

 private:
  static void add_with_faces(const Simplex& s, std::vector<std::set<Simplex>>& levels) {
    const std::size_t dim = s.size() - 1;
    if (levels.size() <= dim) levels.resize(dim + 1);
    if (!levels[dim].insert(s).second) return;
    if (dim > 0)
      for (std::size_t i = 0; i < s.size(); ++i) add_with_faces(drop(s, i), levels);
  }

  void reindex() {
    index_.assign(simplices_.size(), {});
    for (std::size_t d = 0; d < simplices_.size(); ++d)
      for (std::size_t i = 0; i < simplices_[d].size(); ++i) index_[d][simplices_[d][i]] = i;
  }

  int vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Mod-2 cochain: one bit per simplex of the given degree.
struct Cochain {
  int degree = 0;
  f2::BitVector values;

  static Cochain zero(const OrderedSimplicialComplex& c, int degree) { return {degree, f2::BitVector(c.count(degree))}; }

  Cochain& operator+=(const Cochain& other) {
    if (other.degree != degree) throw std::invalid_argument("cochain degrees differ");
    values ^= other.values;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

inline Cochain coboundary(const OrderedSimplicialComplex& c, const Cochain& x) {
  if (x.values.size() != c.count(x.degree)) throw std::invalid_argument("cochain does not match complex");
  if (x.degree >= c.dimension()) throw std::invalid_argument("coboundary of a top-degree cochain");
  return {x.degree + 1, c.coboundary_matrix(x.degree).multiply(x.values)};
}

inline bool is_cocycle(const OrderedSimplicialComplex& c, const Cochain& x) {
  if (x.degree >= c.dimension()) return true;
  return coboundary(c, x).values.none();
}

/// Alexander-Whitney cup product: (x u y)(v0..v_{p+q}) = x(v0..vp) y(vp..v_{p+q}).
inline Cochain cup(const OrderedSimplicialComplex& c, const Cochain& x, const Cochain& y) {
  const int p = x.degree;
  const int q = y.degree;
  if (p + q > c.dimension()) throw std::invalid_argument("cup product degree exceeds complex dimension");
  Cochain out = Cochain::zero(c, p + q);
  const auto& top = c.simplices(p + q);
  for (std::size_t i = 0; i < top.size(); ++i) {
    const Simplex& s = top[i];
    const Simplex front(s.begin(), s.begin() + p + 1);
    const Simplex back(s.begin() + p, s.end());
    if (x.values.get(c.index_of(front)) && y.values.get(c.index_of(back))) out.values.set(i);
  }
  return out;
}

/// Evaluation of a cochain on a chain given as a bit set of simplices.
inline bool pairing(const Cochain& x, const f2::BitVector& chain) { return x.values.dot(chain); }

/// Cocycles whose classes form a basis of H^p.
inline std::vector<Cochain> cohomology_basis(const OrderedSimplicialComplex& c, int p) {
  const std::size_t n = c.count(p);
  std::vector<f2::BitVector> cocycles;
  if (p < c.dimension()) {
    cocycles = f2::kernel_basis(c.coboundary_matrix(p));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      f2::BitVector v(n);
      v.set(i);
      cocycles.push_back(std::move(v));
    }
  }
  std::vector<f2::BitVector> image;
  if (p > 0) {
    const f2::BitMatrix dt = c.coboundary_matrix(p - 1).transpose();
    for (std::size_t j = 0; j < dt.rows(); ++j) image.push_back(dt.row(j));
  }
  std::vector<Cochain> basis;
  for (auto& v : f2::independent_modulo(cocycles, image, n)) basis.push_back({p, std::move(v)});
  return basis;
}

/// Cellular view of the simplicial complex; simplices are named v0, v0.3, v0.3.5, ...
inline ChainComplex to_chain_complex(const OrderedSimplicialComplex& c, const std::string& name = "simplicial") {
  auto label = [](const Simplex& s) {
    std::string out = "v";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "." : "") + std::to_string(s[i]);
    return out;
  };
  ChainComplex cc(name);
  for (int d = 0; d <= c.dimension(); ++d)
    for (const auto& s : c.simplices(d)) {
      std::vector<std::string> faces;
      if (d > 0)
        for (std::size_t i = 0; i < s.size(); ++i) faces.push_back(label(OrderedSimplicialComplex::drop(s, i)));
      cc.add_cell(label(s), d, std::move(faces));
    }
  return cc;
}

/// Closed surface with two marked loops generating H_1 and its mod-2
/// fundamental class. loop_v is the cross-section direction, loop_u the fiber.
struct MarkedSurface {
  OrderedSimplicialComplex complex;
  f2::BitVector loop_u;
  f2::BitVector loop_v;
  f2::BitVector fundamental_class;
};

namespace detail {

// Triangulated n x n grid on the unit square with (t,0)~(t,1) and either
// (0,s)~(1,1-s) (twisted) or (0,s)~(1,s). Vertex (i,j) sits at (t,s) = (i/n, j/n)
// and is numbered i*n + j after the identifications, so the vertex order is
// lexicographic in (i, j).
inline MarkedSurface grid_surface(int n, bool twisted) {
  if (n < 3) throw std::invalid_argument("grid surface needs n >= 3");
  auto vertex = [n, twisted](int i, int j) {
    if (i == n) {
      i = 0;
      if (twisted) j = n - j;
    }
    j = ((j % n) + n) % n;
    return i * n + j;
  };

  std::vector<Simplex> triangles;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      triangles.push_back({vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)});
      triangles.push_back({vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)});
    }

  MarkedSurface s;
  s.complex = OrderedSimplicialComplex::from_simplices(n * n, triangles);
  if (s.complex.count(2) != triangles.size())
    throw std::logic_error("grid quotient identified two triangles; not a simplicial complex");

  auto edge = [](int a, int b) { return Simplex{std::min(a, b), std::max(a, b)}; };
  s.loop_u = f2::BitVector(s.complex.count(1));
  s.loop_v = f2::BitVector(s.complex.count(1));
  for (int k = 0; k < n; ++k) {
    s.loop_u.flip(s.complex.index_of(edge(vertex(0, k), vertex(0, k + 1))));
    s.loop_v.flip(s.complex.index_of(edge(vertex(k, 0), vertex(k + 1, 0))));
  }
  s.fundamental_class = f2::BitVector(s.complex.count(2));
  for (std::size_t t = 0; t < s.complex.count(2); ++t) s.fundamental_class.set(t);
  return s;
}

}  // namespace detail

/// Klein bottle as a twisted quotient of an n x n grid (default 4 x 4).
inline MarkedSurface klein_bottle(int n = 4) { return detail::grid_surface(n, true); }

/// Torus on the same grid with the untwisted gluing; control surface.
inline MarkedSurface torus(int n = 4) { return detail::grid_surface(n, false); }

/// Boundary of a chain of simplices of dimension dim, as a bit set of (dim-1)-simplices.
inline f2::BitVector chain_boundary(const OrderedSimplicialComplex& c, int dim, const f2::BitVector& chain) {
  return c.coboundary_matrix(dim - 1).transpose().multiply(chain);
}

/// The 1-cocycle pairing to 1 with loop_u and to 0 with loop_v.
inline Cochain restricted_W(const MarkedSurface& s) {
  const auto& c = s.complex;
  f2::BitMatrix system = c.coboundary_matrix(1);
  system.append_row(s.loop_u);
  system.append_row(s.loop_v);
  f2::BitVector rhs(system.rows());
  rhs.set(system.rows() - 2);
  const auto result = f2::solve(system, rhs);
  if (!result) throw std::runtime_error("no 1-cocycle with the requested loop pairings");
  return {1, result.solution};
}

/// <x u x, [surface]> for a 1-cocycle x.
inline bool cup_square_pairing(const MarkedSurface& s, const Cochain& x) {
  if (x.degree != 1) throw std::invalid_argument("cup_square_pairing expects a 1-cochain");
  if (!is_cocycle(s.complex, x)) throw std::invalid_argument("cup_square_pairing expects a cocycle");
  return pairing(cup(s.complex, x, x), s.fundamental_class);
}

/// Coefficients of a truncated power series over GF(2), index = degree.
using F2Series = std::vector<std::uint8_t>;

inline F2Series series_multiply(const F2Series& a, const F2Series& b, std::size_t max_degree) {
  F2Series out(max_degree + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= max_degree; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j) out[i + j] ^= b[j] & 1u;
  }
  return out;
}

/// Inverse of a series with constant term 1, modulo degree max_degree + 1.
inline F2Series series_inverse(const F2Series& a, std::size_t max_degree) {
  if (a.empty() || (a[0] & 1u) == 0) throw std::invalid_argument("series needs constant term 1 to be invertible");
  F2Series inv(max_degree + 1, 0);
  inv[0] = 1;
  for (std::size_t n = 1; n <= max_degree; ++n) {
    std::uint8_t acc = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc ^= (a[k] & inv[n - k]) & 1u;
    inv[n] = acc;
  }
  return inv;
}

/// total_class raised to an integer power (negative powers invert first),
/// truncated above max_degree. Used for total Stiefel-Whitney classes.
inline F2Series truncated_poly_power(const F2Series& total_class, int power, std::size_t max_degree) {
  if (total_class.empty() || (total_class[0] & 1u) == 0) throw std::invalid_argument("total class must start with 1");
  F2Series base = power < 0 ? series_inverse(total_class, max_degree) : total_class;
  base.resize(max_degree + 1, 0);
  F2Series out(max_degree + 1, 0);
  out[0] = 1;
  for (int k = 0; k < (power < 0 ? -power : power); ++k) out = series_multiply(out, base, max_degree);
  return out;
}

}  // namespace cdlab

#endif  // CDLAB_SIMPLICIAL_HPP
