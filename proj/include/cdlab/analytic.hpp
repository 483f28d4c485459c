#ifndef CDLAB_ANALYTIC_HPP
#define CDLAB_ANALYTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdlab/chord_diagram.hpp"
#include "cdlab/jacobi_svd.hpp"
#include "cdlab/trig_polynomial.hpp"

namespace cdlab {

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Antipodal-derivative determinant

/// h(phi) = f'(phi) g'(phi+pi) - g'(phi) f'(phi+pi), evaluated directly.
inline double bu_determinant(const TrigPolynomial& f, const TrigPolynomial& g, double phi) {
  const TrigPolynomial df = f.derivative();
  const TrigPolynomial dg = g.derivative();
  return df(phi) * dg(phi + pi) - dg(phi) * df(phi + pi);
}

/// h as a trigonometric polynomial. Splitting F = f', G = g' into even and
/// odd harmonics gives h = 2 (F_odd G_even - F_even G_odd), which has only odd
/// harmonics, so h(phi + pi) = -h(phi) holds coefficient by coefficient.
inline TrigPolynomial bu_determinant_polynomial(const TrigPolynomial& f, const TrigPolynomial& g) {
  const TrigPolynomial df = f.derivative();
  const TrigPolynomial dg = g.derivative();
  return 2.0 * (df.odd_part() * dg.even_part() - df.even_part() * dg.odd_part());
}

/// Direction (lambda : mu) on the unit circle, first nonzero coordinate positive.
struct KernelDirection {
  double lambda = 1.0;
  double mu = 0.0;

  static KernelDirection normalized(double l, double m) {
    const double n = std::hypot(l, m);
    if (n == 0.0) throw std::invalid_argument("kernel direction cannot be zero");
    l /= n;
    m /= n;
    if (l < 0.0 || (l == 0.0 && m < 0.0)) {
      l = -l;
      m = -m;
    }
    return {l, m};
  }
};

struct BuRoot {
  double phi = 0.0;  // in [0, pi)
  KernelDirection direction;
};

struct BuResult {
  bool degenerate = false;
  std::string reason;  // set when degenerate
  std::vector<BuRoot> roots;
};

enum class Parity { odd, even, degenerate };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::odd: return "Odd";
    case Parity::even: return "Even";
    case Parity::degenerate: return "Degenerate";
  }
  return "?";
}

/// Relative thresholds for declaring a pair or a sample window degenerate.
inline constexpr double degenerate_rel = 1e-8;

namespace detail {

struct HalfPeriodRoots {
  bool degenerate_window = false;
  std::vector<double> roots;  // in [0, pi), ascending
};

// Offset of the sampling grid as a fraction of one step, so that roots at
// rational multiples of pi do not land on sample points.
inline constexpr double grid_offset = 0.3819660112501051;

inline double wrap_half_period(double r, double tol) {
  r = std::fmod(r, pi);
  if (r < 0.0) r += pi;
  if (pi - r <= 2.0 * tol) r = 0.0;
  return r;
}

// Sign-change roots of an antiperiodic function on one half period,
// bisected to width tol. A run of three or more consecutive samples below
// floor marks a degenerate window.
inline HalfPeriodRoots half_period_roots(const std::function<double(double)>& fn, std::size_t samples, double tol,
                                         double floor) {
  HalfPeriodRoots out;
  const double step = pi / static_cast<double>(samples);
  const double start = -grid_offset * step;
  std::vector<double> xs(samples + 1), vs(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    xs[i] = start + step * static_cast<double>(i);
    vs[i] = fn(xs[i]);
  }

  std::size_t run = 0;
  for (std::size_t i = 0; i <= samples; ++i) {
    run = std::abs(vs[i]) < floor ? run + 1 : 0;
    if (run >= 3) out.degenerate_window = true;
  }

  for (std::size_t i = 0; i < samples; ++i) {
    double lo = xs[i], hi = xs[i + 1];
    double vlo = vs[i], vhi = vs[i + 1];
    if (vlo == 0.0) {
      out.roots.push_back(wrap_half_period(lo, tol));
      continue;
    }
    if (vhi == 0.0) {
      if (i + 1 == samples) out.roots.push_back(wrap_half_period(hi, tol));
      continue;
    }
    if ((vlo < 0.0) == (vhi < 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double vm = fn(mid);
      if (vm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((vm < 0.0) == (vlo < 0.0)) {
        lo = mid;
        vlo = vm;
      } else {
        hi = mid;
      }
    }
    out.roots.push_back(wrap_half_period(0.5 * (lo + hi), tol));
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace detail

/// Certified sign-change roots of h on [0, pi) with the kernel direction of
/// the 2x2 system (lambda f + mu g)'(phi) = (lambda f + mu g)'(phi + pi) = 0.
inline BuResult bu_roots(const TrigPolynomial& f, const TrigPolynomial& g, std::size_t samples = 1024,
                         double tol = 1e-13) {
  if (samples < 8 * (f.degree() + g.degree()) || samples < 8)
    throw std::invalid_argument("bu_roots: too few samples for the degrees involved");

  BuResult out;
  const TrigPolynomial df = f.derivative();
  const TrigPolynomial dg = g.derivative();
  const double scale = df.coefficient_norm() * dg.coefficient_norm();
  const TrigPolynomial h = bu_determinant_polynomial(f, g);
  if (scale == 0.0 || h.coefficient_norm() <= degenerate_rel * scale) {
    out.degenerate = true;
    out.reason = "determinant vanishes identically";
    return out;
  }

  const auto found = detail::half_period_roots([&](double x) { return bu_determinant(f, g, x); }, samples, tol,
                                               degenerate_rel * scale);
  if (found.degenerate_window) {
    out.degenerate = true;
    out.reason = "determinant nearly vanishes on a sample window";
  }
  for (double r : found.roots) {
    const double r1 = df(r), s1 = dg(r);
    const double r2 = df(r + pi), s2 = dg(r + pi);
    const double n1 = std::hypot(r1, s1), n2 = std::hypot(r2, s2);
    if (std::max(n1, n2) <= degenerate_rel * std::sqrt(scale)) {
      out.degenerate = true;
      out.reason = "both derivative rows vanish at a root";
      continue;
    }
    const auto dir = n1 >= n2 ? KernelDirection::normalized(s1, -r1) : KernelDirection::normalized(s2, -r2);
    out.roots.push_back({r, dir});
  }
  return out;
}

inline Parity bu_parity(const TrigPolynomial& f, const TrigPolynomial& g, std::size_t samples = 1024) {
  const BuResult r = bu_roots(f, g, std::max<std::size_t>(samples, 8 * (f.degree() + g.degree())));
  if (r.degenerate) return Parity::degenerate;
  return r.roots.size() % 2 == 1 ? Parity::odd : Parity::even;
}

// ---------------------------------------------------------------------------
// Zeros of the section cut out by a function over the Klein-bottle cycle

struct SectionZero {
  double phi = 0.0;  // in [0, pi)
  ProjectiveReal alpha{0.0};
};

struct SectionZeros {
  bool degenerate = false;
  std::vector<SectionZero> zeros;
};

/// Points gimel(phi, phi + pi; alpha) containing f: roots of
/// f(phi) - f(phi + pi) on [0, pi), with alpha = f'(phi) : f'(phi + pi).
inline SectionZeros section_zeros_on_klein_cycle(const TrigPolynomial& f, std::size_t grid = 1024,
                                                 double tol = 1e-13) {
  SectionZeros out;
  const double scale = std::max(f.coefficient_norm(), 1.0);
  const TrigPolynomial gap = f - f.shifted_by_pi();
  if (gap.coefficient_norm() <= degenerate_rel * scale) {
    out.degenerate = true;
    return out;
  }
  const auto found = detail::half_period_roots([&](double x) { return f(x) - f(x + pi); }, grid, tol,
                                               degenerate_rel * scale);
  if (found.degenerate_window) out.degenerate = true;
  const TrigPolynomial df = f.derivative();
  for (double r : found.roots) {
    const double p = df(r), q = df(r + pi);
    if (std::hypot(p, q) <= degenerate_rel * scale) {
      out.degenerate = true;  // the whole fiber over r contains f
      continue;
    }
    out.zeros.push_back({r, ProjectiveReal(p, q)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monodromy of canonical frames

enum class FrameLoop {
  /// One functional f -> f(p2) - f(p1) over the diameters {p1, p2} of the circle.
  cd1_diameters,
  /// Two functionals f -> f'(p1), f -> f'(p2) over the same diameters.
  gamma_inf_frame,
};

namespace detail {

// Functionals are represented by their values on 1, cos k, sin k (k <= 3).
inline std::vector<TrigPolynomial> probe_basis() {
  std::vector<TrigPolynomial> basis{TrigPolynomial::constant(1.0)};
  for (std::size_t k = 1; k <= 3; ++k) {
    basis.push_back(TrigPolynomial::cos_k(k));
    basis.push_back(TrigPolynomial::sin_k(k));
  }
  return basis;
}

inline Matrix frame_matrix(FrameLoop loop, double p1, double p2) {
  const auto basis = probe_basis();
  const std::size_t rows = loop == FrameLoop::cd1_diameters ? 1 : 2;
  Matrix m(rows, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (loop == FrameLoop::cd1_diameters) {
      m(0, j) = basis[j](p2) - basis[j](p1);
    } else {
      const TrigPolynomial d = basis[j].derivative();
      m(0, j) = d(p1);
      m(1, j) = d(p2);
    }
  }
  return m;
}

}  // namespace detail

/// Transports the canonical frame along the loop of diameters
/// {phi, phi + pi}, phi: 0 -> turns * pi, in `steps` steps. At every step the
/// two labelled base points are matched to the new unordered diameter by
/// nearest position. Returns the sign of det M where end frame = M * start frame.
inline int monodromy_sign(FrameLoop loop, std::size_t steps = 64, int turns = 1) {
  if (turns < 1) throw std::invalid_argument("monodromy_sign: turns must be positive");
  if (steps < 4 * static_cast<std::size_t>(turns)) throw std::invalid_argument("monodromy_sign: too few steps");
  double p1 = 0.0, p2 = pi;
  const double total = pi * static_cast<double>(turns);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double phi = total * static_cast<double>(k) / static_cast<double>(steps);
    const CirclePoint x(phi), y(phi + pi);
    const double keep = CirclePoint::distance(p1, x) + CirclePoint::distance(p2, y);
    const double swap = CirclePoint::distance(p1, y) + CirclePoint::distance(p2, x);
    if (keep <= swap) {
      p1 = x.angle();
      p2 = y.angle();
    } else {
      p1 = y.angle();
      p2 = x.angle();
    }
  }

  const Matrix start = detail::frame_matrix(loop, 0.0, pi);
  const Matrix end = detail::frame_matrix(loop, p1, p2);
  // M = E S^T (S S^T)^{-1}.
  const Matrix gram = start * start.transpose();
  const Matrix cross = end * start.transpose();
  const std::size_t r = gram.rows();
  Matrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<double> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = cross(i, j);
    // Solve gram^T x = row (gram is symmetric).
    if (!solve_linear(gram, row)) throw std::logic_error("monodromy_sign: singular start frame");
    for (std::size_t j = 0; j < r; ++j) m(i, j) = row[j];
  }
  const Matrix residual_check = m * start;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < start.cols(); ++j)
      if (std::abs(residual_check(i, j) - end(i, j)) > 1e-9)
        throw std::logic_error("monodromy_sign: end frame does not span the start fiber");
  const double det = r == 1 ? m(0, 0) : m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return det > 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Degree-one Fourier trivialization

struct TrivializationResult {
  double abs_det = 0.0;
  bool degenerate = true;
};

inline constexpr double trivialization_zero_tol = 1e-10;

/// |det| of the 2x2 matrix with rows (cos x - cos y, sin x - sin y), one row
/// per chord (x, y). Nonzero means no nonzero l1 cos + l2 sin satisfies both
/// chord conditions.
inline TrivializationResult fourier1_trivialization_check(const Chord& c1, const Chord& c2,
                                                          bool marked_point_on_first = false) {
  if (marked_point_on_first && !c1.has_endpoint(CirclePoint(0.0)))
    throw std::invalid_argument("first chord does not end at the marked point");
  auto row = [](const Chord& c) {
    const double x = c.first().angle(), y = c.second().angle();
    return std::pair{std::cos(x) - std::cos(y), std::sin(x) - std::sin(y)};
  };
  const auto [a, b] = row(c1);
  const auto [c, d] = row(c2);
  TrivializationResult out;
  out.abs_det = std::abs(a * d - b * c);
  out.degenerate = out.abs_det <= trivialization_zero_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation of map spaces on chord pairs

/// Coefficient vector of a map triple, components padded to `degree`.
inline std::vector<double> coefficient_vector(const MapTriple& m, std::size_t degree) {
  std::vector<double> v;
  for (const auto& f : m.components) {
    v.push_back(f.a0());
    for (std::size_t k = 1; k <= degree; ++k) {
      v.push_back(f.a(k));
      v.push_back(f.b(k));
    }
  }
  return v;
}

/// Linearly independent family of maps S^1 -> R^3.
class FunctionSubspace {
 public:
  explicit FunctionSubspace(std::vector<MapTriple> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) return;
    std::size_t degree = 0;
    for (const auto& m : basis_)
      for (const auto& f : m.components) degree = std::max(degree, f.degree());
    Matrix coeffs(basis_.size(), 3 * (2 * degree + 1));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto v = coefficient_vector(basis_[i], degree);
      for (std::size_t j = 0; j < v.size(); ++j) coeffs(i, j) = v[j];
    }
    if (numeric_rank(coeffs, 1e-10) != basis_.size())
      throw std::invalid_argument("function subspace basis is not linearly independent");
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<MapTriple>& basis() const { return basis_; }

 private:
  std::vector<MapTriple> basis_;
};

/// Rows (chord i, component c) = f_c(x_i) - f_c(y_i), one column per map.
inline Matrix evaluation_matrix(const Chord& c1, const Chord& c2, std::span<const MapTriple> maps) {
  if (c1.same_as(c2)) throw std::invalid_argument("evaluation_matrix needs two distinct chords");
  Matrix m(6, maps.size());
  const Chord* chords[2] = {&c1, &c2};
  for (std::size_t j = 0; j < maps.size(); ++j)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t c = 0; c < 3; ++c) {
        const auto& f = maps[j].components[c];
        m(3 * i + c, j) = f(chords[i]->first().angle()) - f(chords[i]->second().angle());
      }
  return m;
}

/// Degree-one maps (l1 cos + l2 sin) in each of the three components.
inline FunctionSubspace degree_one_triples() {
  std::vector<MapTriple> basis;
  for (std::size_t c = 0; c < 3; ++c)
    for (int s = 0; s < 2; ++s) {
      MapTriple m;
      m.components[c] = s == 0 ? TrigPolynomial::cos_k(1) : TrigPolynomial::sin_k(1);
      basis.push_back(m);
    }
  return FunctionSubspace(std::move(basis));
}

}  // namespace cdlab

#endif  // CDLAB_ANALYTIC_HPP
