#ifndef CDLAB_DEGENERACY_SCAN_HPP
#define CDLAB_DEGENERACY_SCAN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdlab/analytic.hpp"
#include "cdlab/chord_diagram.hpp"
#include "cdlab/jacobi_svd.hpp"
#include "cdlab/rng.hpp"
#include "cdlab/trig_polynomial.hpp"

namespace cdlab {

/// Grid indices (x1, y1, x2, y2) of a chord pair (x1 y1), (x2 y2), in
/// canonical order: x1 < y1, x2 < y2, (x1, y1) < (x2, y2).
using GridCell = std::array<int, 4>;

struct ScanOptions {
  int grid = 24;
  /// A landing point counts as degenerate when sigma_6 <= tol * sigma_1.
  double tol = 1e-6;
  /// Grid points with sigma_6 / sigma_1 above this are not refined.
  double screen = 0.25;
  int newton_iterations = 40;
};

struct ScanComponent {
  std::size_t size = 0;
  /// Number of grid steps spanned in each of the four parameters.
  std::array<int, 4> extent{};
  /// Parameters spanning at least two grid steps.
  int box_dimension = 0;
};

struct ScanResult {
  int grid = 0;
  double tol = 0.0;
  std::size_t cells_scanned = 0;
  std::size_t cells_refined = 0;
  std::vector<GridCell> flagged;  // sorted
  /// Histogram of local solution-set dimensions at the landing points of
  /// flagged cells.
  std::map<int, std::size_t> landing_dimensions;
  std::vector<ScanComponent> components;  // largest first

  bool nonempty() const { return !flagged.empty(); }
  /// Some component spans >= 2 grid steps in >= 2 parameters.
  bool two_parameter_extent() const {
    return std::any_of(components.begin(), components.end(), [](const ScanComponent& c) { return c.box_dimension >= 2; });
  }
};

namespace detail {

// Values and derivatives of the seven basis maps at one angle:
// value[j][c], slope[j][c].
struct MapJet {
  std::vector<std::array<double, 3>> value;
  std::vector<std::array<double, 3>> slope;
};

class MapEvaluator {
 public:
  explicit MapEvaluator(const std::vector<MapTriple>& maps) : maps_(maps) {
    for (const auto& m : maps_)
      for (const auto& f : m.components) degree_ = std::max(degree_, f.degree());
  }

  std::size_t size() const { return maps_.size(); }

  MapJet jet(double x) const {
    std::vector<double> cs(degree_ + 1), sn(degree_ + 1);
    for (std::size_t k = 0; k <= degree_; ++k) {
      cs[k] = std::cos(static_cast<double>(k) * x);
      sn[k] = std::sin(static_cast<double>(k) * x);
    }
    MapJet out{std::vector<std::array<double, 3>>(maps_.size()), std::vector<std::array<double, 3>>(maps_.size())};
    for (std::size_t j = 0; j < maps_.size(); ++j)
      for (std::size_t c = 0; c < 3; ++c) {
        const TrigPolynomial& f = maps_[j].components[c];
        double v = f.a0(), d = 0.0;
        for (std::size_t k = 1; k <= f.degree(); ++k) {
          const double kk = static_cast<double>(k);
          v += f.a(k) * cs[k] + f.b(k) * sn[k];
          d += kk * (f.b(k) * cs[k] - f.a(k) * sn[k]);
        }
        out.value[j][c] = v;
        out.slope[j][c] = d;
      }
    return out;
  }

  // 6 x n evaluation matrix at endpoint angles t = (x1, y1, x2, y2), plus the
  // jets used for derivatives.
  Matrix evaluation(const std::array<double, 4>& t, std::array<MapJet, 4>* jets = nullptr) const {
    std::array<MapJet, 4> local;
    std::array<MapJet, 4>& j = jets ? *jets : local;
    for (std::size_t e = 0; e < 4; ++e) j[e] = jet(t[e]);
    Matrix m(6, maps_.size());
    for (std::size_t col = 0; col < maps_.size(); ++col)
      for (std::size_t c = 0; c < 3; ++c) {
        m(c, col) = j[0].value[col][c] - j[1].value[col][c];
        m(3 + c, col) = j[2].value[col][c] - j[3].value[col][c];
      }
    return m;
  }

 private:
  const std::vector<MapTriple>& maps_;
  std::size_t degree_ = 0;
};

inline double angle_of(int index, int grid) { return two_pi * static_cast<double>(index) / static_cast<double>(grid); }

// Canonical representative of a grid tuple, or nullopt for degenerate chords
// (coincident endpoints or the same chord twice).
inline std::optional<GridCell> canonical_cell(GridCell t, int grid) {
  for (auto& v : t) v = ((v % grid) + grid) % grid;
  if (t[0] == t[1] || t[2] == t[3]) return std::nullopt;
  if (t[0] > t[1]) std::swap(t[0], t[1]);
  if (t[2] > t[3]) std::swap(t[2], t[3]);
  if (t[0] == t[2] && t[1] == t[3]) return std::nullopt;
  if (std::pair{t[0], t[1]} > std::pair{t[2], t[3]}) {
    std::swap(t[0], t[2]);
    std::swap(t[1], t[3]);
  }
  return t;
}

inline double chord_pair_separation(const std::array<double, 4>& t) {
  auto d = [](double a, double b) { return CirclePoint::distance(CirclePoint(a), CirclePoint(b)); };
  const double same = std::max(d(t[0], t[2]), d(t[1], t[3]));
  const double swapped = std::max(d(t[0], t[3]), d(t[1], t[2]));
  return std::min({d(t[0], t[1]), d(t[2], t[3]), same, swapped});
}

struct NewtonOutcome {
  bool converged = false;
  std::array<double, 4> point{};
  std::vector<double> null_vector;
  double sigma_ratio = 1.0;
};

// r(t, u) = (M(t)^T u, (|u|^2 - 1)/2) and its Jacobian in (t, u).
inline void rank_drop_system(const MapEvaluator& ev, const std::array<double, 4>& t, const std::vector<double>& u,
                             std::vector<double>& r, Matrix& jac) {
  const std::size_t n = ev.size();
  std::array<MapJet, 4> jets;
  const Matrix m = ev.evaluation(t, &jets);
  r.assign(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < 6; ++i) r[j] += m(i, j) * u[i];
  double unorm = 0.0;
  for (double v : u) unorm += v * v;
  r[n] = 0.5 * (unorm - 1.0);

  jac = Matrix(n + 1, 10);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < 3; ++c) {
      jac(j, 0) += u[c] * jets[0].slope[j][c];
      jac(j, 1) -= u[c] * jets[1].slope[j][c];
      jac(j, 2) += u[3 + c] * jets[2].slope[j][c];
      jac(j, 3) -= u[3 + c] * jets[3].slope[j][c];
    }
    for (std::size_t i = 0; i < 6; ++i) jac(j, 4 + i) = m(i, j);
  }
  for (std::size_t i = 0; i < 6; ++i) jac(n, 4 + i) = u[i];
}

// Gauss-Newton with minimum-norm steps on the rank-drop system: 8 equations
// in the 10 unknowns (t, u). Solutions are chord pairs where M has a left
// null vector u, i.e. rank(M) < 6.
inline NewtonOutcome refine_to_rank_drop(const MapEvaluator& ev, std::array<double, 4> t, std::vector<double> u,
                                         int iterations) {
  NewtonOutcome out;
  std::vector<double> r;
  Matrix jac;
  for (int it = 0; it < iterations; ++it) {
    rank_drop_system(ev, t, u, r, jac);
    double rnorm = 0.0;
    for (double v : r) rnorm += v * v;
    if (std::sqrt(rnorm) < 1e-14) break;

    // step = -J^T (J J^T)^{-1} r
    std::vector<double> y = r;
    if (!solve_linear(jac * jac.transpose(), y)) return out;
    for (std::size_t k = 0; k < jac.cols(); ++k) {
      double s = 0.0;
      for (std::size_t e = 0; e < jac.rows(); ++e) s += jac(e, k) * y[e];
      if (k < 4)
        t[k] -= s;
      else
        u[k - 4] -= s;
    }
  }
  const auto sv = singular_values(ev.evaluation(t));
  out.point = t;
  out.null_vector = std::move(u);
  out.sigma_ratio = sv.front() > 0.0 ? sv.back() / sv.front() : 1.0;
  out.converged = true;
  return out;
}

// Dimension of the rank-drop solution set through a landing point: unknowns
// minus the numeric rank of the Jacobian there.
inline int local_dimension(const MapEvaluator& ev, const NewtonOutcome& landing) {
  std::vector<double> r;
  Matrix jac;
  rank_drop_system(ev, landing.point, landing.null_vector, r, jac);
  return static_cast<int>(jac.cols()) - static_cast<int>(numeric_rank(jac, 1e-8));
}

inline std::vector<ScanComponent> components_of(const std::vector<GridCell>& cells, int grid) {
  const std::set<GridCell> flagged(cells.begin(), cells.end());
  std::set<GridCell> seen;
  std::vector<ScanComponent> out;
  for (const auto& start : cells) {
    if (seen.count(start)) continue;
    std::vector<GridCell> stack{start}, members;
    seen.insert(start);
    while (!stack.empty()) {
      const GridCell cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (int code = 0; code < 81; ++code) {
        if (code == 40) continue;  // the zero offset
        GridCell nb = cur;
        int rest = code;
        for (auto& v : nb) {
          v += rest % 3 - 1;
          rest /= 3;
        }
        const auto canon = canonical_cell(nb, grid);
        if (!canon || !flagged.count(*canon) || seen.count(*canon)) continue;
        seen.insert(*canon);
        stack.push_back(*canon);
      }
    }
    ScanComponent comp;
    comp.size = members.size();
    for (std::size_t p = 0; p < 4; ++p) {
      std::set<int> values;
      for (const auto& m : members) values.insert(m[p]);
      comp.extent[p] = static_cast<int>(values.size()) - 1;
      if (comp.extent[p] >= 2) ++comp.box_dimension;
    }
    out.push_back(comp);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size > b.size; });
  return out;
}

}  // namespace detail

/// Scans chord pairs on a grid of the 4-torus of endpoints for pairs where the
/// 6 x 7 evaluation matrix of the subspace drops rank. A grid point is flagged
/// when a rank-drop point lies within one grid step of it (found by Newton
/// refinement from the grid point) and that point is a genuine pair of
/// distinct chords, at least half a grid step away from the collapsed
/// configurations.
inline ScanResult degeneracy_scan(const FunctionSubspace& space, const ScanOptions& opt = {}) {
  if (space.dim() != 7) throw std::invalid_argument("degeneracy_scan expects a 7-dimensional subspace");
  if (opt.grid < 4) throw std::invalid_argument("degeneracy_scan needs grid >= 4");
  const detail::MapEvaluator ev(space.basis());
  const int n = opt.grid;
  const double h = two_pi / static_cast<double>(n);

  ScanResult out;
  out.grid = n;
  out.tol = opt.tol;
  for (int x1 = 0; x1 < n; ++x1)
    for (int y1 = x1 + 1; y1 < n; ++y1)
      for (int x2 = x1; x2 < n; ++x2)
        for (int y2 = x2 + 1; y2 < n; ++y2) {
          if (x2 == x1 && y2 <= y1) continue;
          ++out.cells_scanned;
          const std::array<double, 4> t = {detail::angle_of(x1, n), detail::angle_of(y1, n), detail::angle_of(x2, n),
                                           detail::angle_of(y2, n)};
          const Matrix m = ev.evaluation(t);
          const SvdResult svd = jacobi_svd(m);
          const auto& s = svd.singular_values;
          if (s.front() == 0.0 || s.back() > opt.screen * s.front()) continue;
          ++out.cells_refined;

          std::vector<double> u(6);
          for (std::size_t i = 0; i < 6; ++i) u[i] = svd.right_vectors(i, 5);
          const auto landing = detail::refine_to_rank_drop(ev, t, u, opt.newton_iterations);
          if (!landing.converged || !(landing.sigma_ratio <= opt.tol)) continue;
          double dist = 0.0;
          for (std::size_t e = 0; e < 4; ++e)
            dist = std::max(dist, CirclePoint::distance(CirclePoint(t[e]), CirclePoint(landing.point[e])));
          if (dist > h) continue;
          if (detail::chord_pair_separation(landing.point) < 0.5 * h) continue;
          out.flagged.push_back({x1, y1, x2, y2});
          ++out.landing_dimensions[detail::local_dimension(ev, landing)];
        }
  std::sort(out.flagged.begin(), out.flagged.end());
  out.components = detail::components_of(out.flagged, n);
  return out;
}

/// Fraction of coarse flagged cells whose image on the fine grid lies within
/// one fine step of a fine flagged cell. The fine grid must be a multiple of
/// the coarse one.
inline double refinement_containment(const ScanResult& coarse, const ScanResult& fine) {
  if (coarse.flagged.empty()) return 1.0;
  if (fine.grid % coarse.grid != 0) throw std::invalid_argument("fine grid must refine the coarse grid");
  const int ratio = fine.grid / coarse.grid;
  const std::set<GridCell> fine_set(fine.flagged.begin(), fine.flagged.end());
  std::size_t hit = 0;
  for (const auto& c : coarse.flagged) {
    bool found = false;
    for (int code = 0; code < 81 && !found; ++code) {
      GridCell nb = c;
      int rest = code;
      for (auto& v : nb) {
        v = v * ratio + rest % 3 - 1;
        rest /= 3;
      }
      const auto canon = detail::canonical_cell(nb, fine.grid);
      found = canon && fine_set.count(*canon);
    }
    if (found) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(coarse.flagged.size());
}

/// Random subspace of maps whose components have every coefficient up to
/// `degree` uniform in [-1, 1].
inline FunctionSubspace random_subspace(SplitMix64& rng, std::size_t degree = 3, std::size_t dim = 7) {
  std::vector<MapTriple> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(random_map_triple(rng, degree));
  return FunctionSubspace(std::move(basis));
}

}  // namespace cdlab

#endif  // CDLAB_DEGENERACY_SCAN_HPP
