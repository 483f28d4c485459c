#ifndef CDLAB_REPORT_HPP
#define CDLAB_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cdlab/analytic.hpp"
#include "cdlab/cd_complexes.hpp"
#include "cdlab/chain_complex.hpp"
#include "cdlab/chord_diagram.hpp"
#include "cdlab/degeneracy_scan.hpp"
#include "cdlab/jacobi_svd.hpp"
#include "cdlab/rng.hpp"
#include "cdlab/simplicial.hpp"

namespace cdlab {

enum class Status { pass, fail, degenerate };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::degenerate: return "degenerate";
  }
  return "?";
}

struct ReportEntry {
  std::string statement_id;
  Status status = Status::fail;
  std::string detail;
};

struct RegistryItem {
  const char* statement_id;
  const char* statement;
};

/// Fixed registry; reports list entries in this order.
inline const std::vector<RegistryItem>& report_registry() {
  static const std::vector<RegistryItem> items = {
      {"complex.dd_zero", "the transcribed boundary operators of the 28-cell complex satisfy d o d = 0"},
      {"cd2.betti", "mod-2 Betti numbers of the 28-cell complex are 1 1 1 1 0"},
      {"cd1.homology", "the one-chord complex has Betti numbers 1 1 0, H_1 generated by the chord through the marked point"},
      {"cd2.generators", "Gamma_inf ~ Theta_inf via c_inf; C_inf generates H_3; ep_inf + em_inf generates H_2"},
      {"klein.cup_square", "on the Klein bottle the class pairing (1, 0) with the loops has nonzero cup square"},
      {"sw.polynomial", "(1+W+W^2)^3 = 1+W+W^3 and (1+W+W^2)^-3 = 1+W+W^2 in truncated Z/2 polynomials"},
      {"bu.parity", "the antipodal derivative determinant has an odd number of roots on a half circle"},
      {"klein.section_zero", "cos vanishes on the Klein-bottle cycle exactly once, at (pi/2, -1)"},
      {"monodromy.sign", "both canonical frames reverse orientation around the loop of diameters"},
      {"trivialization.degree1", "degree-one Fourier maps separate crossing chord pairs"},
      {"gimel.chord_resolution", "limit algebras resolve into chord pairs, compatibly with (phi, alpha) ~ (phi + pi, 1/alpha)"},
      {"diagram.rank", "diagram rank equals #endpoints - #components of the endpoint graph"},
      {"f7.degeneracy", "for a generic 7-dimensional map space the degeneracy locus is at least two-dimensional"},
  };
  return items;
}

struct ReportOptions {
  std::uint64_t seed = 1;
  std::size_t bu_pairs = 1000;
  std::size_t crossing_pairs = 1000;
  std::size_t diagrams = 500;
  std::size_t scans = 20;
  int scan_grid = 24;
  /// Replaces the compiled-in 28-cell complex (fault injection, fixtures).
  std::optional<ChainComplex> cd2_override;
  /// When nonempty, only these statement ids are run.
  std::set<std::string> only;
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline std::string join(const std::set<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " + ") + x;
  return s.empty() ? "0" : s;
}

// Independent stream per statement so that resizing one check leaves the
// others unchanged.
inline SplitMix64 stream(std::uint64_t seed, std::size_t index) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return SplitMix64(mix.next());
}

inline ReportEntry check_dd_zero(const ChainComplex& cd2) {
  const auto rep = validate(cd2);
  std::size_t checked = 0;
  for (int d = 2; d <= cd2.top_dim(); ++d) checked += cd2.cells(d).size();
  if (rep.ok()) return {"", Status::pass, "d o d = 0 on all " + std::to_string(checked) + " cells of dimension >= 2"};
  std::string detail;
  for (const auto& v : rep.violations) detail += (detail.empty() ? "" : "; ") + v.cell + ": " + v.message;
  return {"", Status::fail, detail};
}

inline ReportEntry check_cd2_betti(const ChainComplex& cd2) {
  if (!validate(cd2).ok()) return {"", Status::fail, "complex is invalid"};
  std::vector<std::size_t> counts, ranks;
  for (int d = 0; d <= cd2.top_dim(); ++d) counts.push_back(cd2.cells(d).size());
  for (int d = 1; d <= cd2.top_dim(); ++d) ranks.push_back(boundary_rank(cd2, d));
  const auto b = betti(cd2);
  const bool ok = b == std::vector<std::size_t>{1, 1, 1, 1, 0};
  return {"", ok ? Status::pass : Status::fail,
          "cells " + join(counts) + "; ranks d1..d" + std::to_string(cd2.top_dim()) + " " + join(ranks) + "; betti " +
              join(b)};
}

inline ReportEntry check_cd1() {
  const auto bundle = cd1_complex();
  const auto& c = bundle.complex;
  const auto b = betti(c);
  const auto basis = homology_basis(c, 1);
  const Chain& l = bundle.distinguished.at("L_cd1");
  const bool gen = basis.size() == 1 && homologous(c, basis.front(), l) && !is_boundary(c, l);
  const bool ok = b == std::vector<std::size_t>{1, 1, 0} && gen;
  return {"", ok ? Status::pass : Status::fail,
          "betti " + join(b) + "; H_1 generator " + (basis.empty() ? std::string("none") : join(basis.front().support))};
}

inline ReportEntry check_cd2_generators(const NamedComplexBundle& bundle) {
  const auto& c = bundle.complex;
  if (!validate(c).ok()) return {"", Status::fail, "complex is invalid"};
  std::string detail;
  bool ok = true;
  auto note = [&](bool cond, const std::string& what) {
    ok = ok && cond;
    detail += (detail.empty() ? "" : "; ") + what + (cond ? " ok" : " FAILED");
  };
  const Chain gamma = bundle.distinguished.at("Gamma_inf");
  const Chain theta = bundle.distinguished.at("Theta_inf");
  const Chain c3 = bundle.distinguished.at("C_inf");
  const Chain e2 = bundle.distinguished.at("e_inf_sum");

  const Chain diff = gamma + theta;
  const bool via_c = c.has_cell("c_inf") && c.boundary(Chain{2, {"c_inf"}}) == diff;
  note(is_cycle(c, gamma) && is_cycle(c, theta) && homologous(c, gamma, theta) && via_c,
       "d(c_inf) = " + join(diff.support));
  note(!is_boundary(c, gamma), "Gamma_inf nonzero in H_1");

  const auto b = betti(c);
  note(is_cycle(c, c3) && !is_boundary(c, c3) && b.size() > 3 && b[3] == 1, "C_inf generates H_3");
  note(is_cycle(c, e2) && !is_boundary(c, e2) && b.size() > 2 && b[2] == 1, "ep_inf + em_inf generates H_2");
  return {"", ok ? Status::pass : Status::fail, detail};
}

inline ReportEntry check_klein() {
  const MarkedSurface k = klein_bottle();
  const Cochain w = restricted_W(k);
  const bool pu = pairing(w, k.loop_u), pv = pairing(w, k.loop_v);
  const bool sq = cup_square_pairing(k, w);

  const MarkedSurface t = torus();
  const auto basis = cohomology_basis(t.complex, 1);
  bool torus_zero = true;
  for (std::size_t mask = 1; mask < (std::size_t{1} << basis.size()); ++mask) {
    Cochain x = Cochain::zero(t.complex, 1);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1u) x = x + basis[i];
    torus_zero = torus_zero && !cup_square_pairing(t, x);
  }
  const bool ok = pu && !pv && sq && torus_zero && basis.size() == 2;
  return {"", ok ? Status::pass : Status::fail,
          std::string("<W,u> = ") + (pu ? "1" : "0") + ", <W,v> = " + (pv ? "1" : "0") + ", <W^2,[K]> = " +
              (sq ? "1" : "0") + "; torus cup squares " + (torus_zero ? "all 0" : "not all 0")};
}

inline std::string series_text(const F2Series& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    if (!out.empty()) out += "+";
    out += i == 0 ? "1" : i == 1 ? "W" : "W^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

inline ReportEntry check_sw() {
  const F2Series total = {1, 1, 1};
  const auto cube = truncated_poly_power(total, 3, 3);
  const auto inv = truncated_poly_power(total, -3, 2);
  const bool ok = cube == F2Series{1, 1, 0, 1} && inv == F2Series{1, 1, 1};
  return {"", ok ? Status::pass : Status::fail,
          "cube " + series_text(cube) + " (deg <= 3); inverse cube " + series_text(inv) + " (deg <= 2)"};
}

inline ReportEntry check_bu(SplitMix64 rng, std::size_t pairs) {
  std::size_t odd = 0, even = 0, degen = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto f = random_trig_polynomial(rng, 4);
    const auto g = random_trig_polynomial(rng, 4);
    switch (bu_parity(f, g)) {
      case Parity::odd: ++odd; break;
      case Parity::even: ++even; break;
      case Parity::degenerate: ++degen; break;
    }
  }
  const auto ex = bu_roots(TrigPolynomial::cos_k(1), TrigPolynomial::sin_k(2));
  const double expect[3] = {0.0, pi / 4, 3 * pi / 4};
  bool ex_ok = !ex.degenerate && ex.roots.size() == 3;
  for (std::size_t i = 0; ex_ok && i < 3; ++i) ex_ok = std::abs(ex.roots[i].phi - expect[i]) <= 1e-8;
  const bool ok = pairs > 0 && even == 0 && 100 * odd >= 95 * pairs && ex_ok;
  std::string roots;
  for (const auto& r : ex.roots) roots += (roots.empty() ? "" : " ") + fmt(r.phi);
  return {"", ok ? Status::pass : Status::fail,
          std::to_string(pairs) + " pairs of degree 4: Odd " + std::to_string(odd) + ", Even " + std::to_string(even) +
              ", Degenerate " + std::to_string(degen) + "; (cos, sin 2phi) roots " + roots};
}

inline ReportEntry check_section_zero() {
  const auto z = section_zeros_on_klein_cycle(TrigPolynomial::cos_k(1));
  if (z.degenerate) return {"", Status::degenerate, "section of cos is degenerate"};
  const bool ok = z.zeros.size() == 1 && std::abs(z.zeros[0].phi - pi / 2) <= 1e-8 &&
                  z.zeros[0].alpha.same_as(ProjectiveReal(-1.0), 1e-8);
  std::string detail = std::to_string(z.zeros.size()) + " zero(s)";
  for (const auto& s : z.zeros) detail += "; phi = " + fmt(s.phi) + ", alpha = " + fmt(s.alpha.value());
  return {"", ok ? Status::pass : Status::fail, detail};
}

inline ReportEntry check_monodromy() {
  bool ok = true;
  std::string detail;
  for (std::size_t steps : {64, 128, 256, 1000}) {
    const int a = monodromy_sign(FrameLoop::cd1_diameters, steps, 1);
    const int b = monodromy_sign(FrameLoop::gamma_inf_frame, steps, 1);
    const int a2 = monodromy_sign(FrameLoop::cd1_diameters, steps, 2);
    const int b2 = monodromy_sign(FrameLoop::gamma_inf_frame, steps, 2);
    ok = ok && a == -1 && b == -1 && a2 == 1 && b2 == 1;
    if (steps == 64)
      detail = "diameter frame " + std::to_string(a) + ", two-point frame " + std::to_string(b) +
               ", doubled loops " + std::to_string(a2) + " " + std::to_string(b2);
  }
  detail += "; same at 64, 128, 256, 1000 steps";
  return {"", ok ? Status::pass : Status::fail, detail};
}

inline ReportEntry check_trivialization(SplitMix64 rng, std::size_t pairs) {
  double min_cross = std::numeric_limits<double>::infinity();
  std::size_t crossing_fail = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    // Odd draws pin the first chord to the marked point.
    std::vector<double> p(4);
    for (auto& x : p) x = rng.uniform(0.0, two_pi);
    if (i % 2 == 1) p[0] = 0.0;
    std::sort(p.begin(), p.end());
    const Chord c1(p[0], p[2]), c2(p[1], p[3]);
    if (!crossing(c1, c2)) continue;
    const auto r = fourier1_trivialization_check(c1, c2, i % 2 == 1);
    min_cross = std::min(min_cross, r.abs_det);
    if (r.degenerate) ++crossing_fail;
  }
  double max_mirror = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const double axis = rng.uniform(0.0, two_pi);
    const double t1 = rng.uniform(0.01, pi - 0.01);
    double t2 = rng.uniform(0.01, pi - 0.01);
    if (std::abs(t1 - t2) < 1e-3) t2 = t1 > pi / 2 ? t1 - 0.5 : t1 + 0.5;
    const Chord c1(axis + t1, axis - t1), c2(axis + t2, axis - t2);
    max_mirror = std::max(max_mirror, fourier1_trivialization_check(c1, c2).abs_det);
  }
  const bool ok = pairs > 0 && crossing_fail == 0 && max_mirror <= trivialization_zero_tol;
  return {"", ok ? Status::pass : Status::fail,
          std::to_string(pairs) + " crossing pairs, min |det| " + fmt(min_cross) + " (" +
              std::to_string(crossing_fail) + " at or below 1e-10); " + std::to_string(pairs) +
              " mirror pairs, max |det| " + fmt(max_mirror)};
}

inline ReportEntry check_gimel(SplitMix64 rng) {
  std::vector<ProjectiveReal> alphas = {ProjectiveReal(0.0), ProjectiveReal::infinity(), ProjectiveReal(1.0),
                                        ProjectiveReal(-1.0), ProjectiveReal(0.5), ProjectiveReal(-2.0)};
  for (int i = 0; i < 14; ++i) alphas.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const double eps = 0.1;
  std::size_t tested = 0, distinct_fail = 0, invariance_fail = 0;
  for (int k = 0; k < 24; ++k) {
    const double phi = two_pi * k / 24.0 + 0.01;
    for (const auto& a : alphas) {
      ++tested;
      const auto x = chords_for_gimel(phi, a, eps);
      if (x.first.same_as(x.second)) ++distinct_fail;
      if (!same_chord_pair(x, chords_for_gimel(phi + pi, a.inverse(), eps))) ++invariance_fail;
    }
  }
  // Approaching 0 and infinity from either sign.
  double jump = 0.0;
  for (int k = 0; k < 24; ++k) {
    const double phi = two_pi * k / 24.0 + 0.01;
    for (const auto& [centre, lo, hi] : {std::tuple{ProjectiveReal(0.0), ProjectiveReal(-1e-12), ProjectiveReal(1e-12)},
                                         std::tuple{ProjectiveReal::infinity(), ProjectiveReal(1.0, -1e-12),
                                                    ProjectiveReal(1.0, 1e-12)}}) {
      const auto c = chords_for_gimel(phi, centre, eps);
      for (const auto& side : {lo, hi}) {
        const auto s = chords_for_gimel(phi, side, eps);
        double best = std::numeric_limits<double>::infinity();
        for (double tol : {1e-15, 1e-12, 1e-9, 1e-6, 1e-3})
          if (same_chord_pair(c, s, tol)) {
            best = tol;
            break;
          }
        jump = std::max(jump, best);
      }
    }
  }
  const bool ok = distinct_fail == 0 && invariance_fail == 0 && jump <= 1e-9;
  return {"", ok ? Status::pass : Status::fail,
          std::to_string(tested) + " (phi, alpha) samples: " + std::to_string(distinct_fail) + " coincident pairs, " +
              std::to_string(invariance_fail) + " invariance failures (eps 1e-9); endpoint jump across 0 and "
              "infinity <= " + fmt(jump)};
}

/// Rank of the conditions f(x) = f(y) on trig polynomials of degree <= 4,
/// which separate up to 9 points, by numerical SVD.
inline std::size_t numeric_diagram_rank(const ChordDiagram& d) {
  if (d.size() == 0) return 0;
  Matrix m(d.size(), 9);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = d.chords()[i].first().angle(), y = d.chords()[i].second().angle();
    m(i, 0) = 0.0;
    for (int k = 1; k <= 4; ++k) {
      m(i, 2 * k - 1) = std::cos(k * x) - std::cos(k * y);
      m(i, 2 * k) = std::sin(k * x) - std::sin(k * y);
    }
  }
  return numeric_rank(m, 1e-9);
}

inline ChordDiagram random_diagram(SplitMix64& rng) {
  // Points on a pi/8 grid so that shared endpoints are exact.
  std::vector<int> slots(16);
  for (int i = 0; i < 16; ++i) slots[i] = i;
  const std::size_t npts = 2 + rng.below(7);  // 2..8
  for (std::size_t i = 0; i < npts; ++i) std::swap(slots[i], slots[i + rng.below(16 - i)]);
  std::vector<std::pair<int, int>> all;
  for (std::size_t i = 0; i < npts; ++i)
    for (std::size_t j = i + 1; j < npts; ++j) all.emplace_back(slots[i], slots[j]);
  const std::size_t nchords = std::min<std::size_t>(1 + rng.below(6), all.size());
  for (std::size_t i = 0; i < nchords; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  std::vector<Chord> chords;
  for (std::size_t i = 0; i < nchords; ++i) chords.emplace_back(pi / 8 * all[i].first, pi / 8 * all[i].second);
  return ChordDiagram(std::move(chords));
}

inline ReportEntry check_rank(SplitMix64 rng, std::size_t count) {
  std::size_t mismatches = 0;
  std::vector<std::size_t> hist(7, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto d = random_diagram(rng);
    const auto r = rank(d);
    if (r != numeric_diagram_rank(d)) ++mismatches;
    if (r < hist.size()) ++hist[r];
  }
  const bool example = rank(ChordDiagram{{0.0, pi}, {pi / 2, 3 * pi / 2}}) == 2 &&
                       rank(ChordDiagram{{0.0, 2.0}, {2.0, 4.0}, {0.0, 4.0}}) == 2;
  const bool ok = count > 0 && mismatches == 0 && example;
  return {"", ok ? Status::pass : Status::fail,
          std::to_string(count) + " diagrams, " + std::to_string(mismatches) +
              " mismatches against SVD rank; rank histogram 0..6 " + join(hist)};
}

inline ReportEntry check_scan(SplitMix64 rng, std::size_t scans, int grid) {
  std::size_t nonempty = 0, extended = 0;
  std::size_t min_flagged = std::numeric_limits<std::size_t>::max();
  std::map<int, std::size_t> dims;
  ScanOptions opt;
  opt.grid = grid;
  for (std::size_t i = 0; i < scans; ++i) {
    const auto space = random_subspace(rng);
    const auto r = degeneracy_scan(space, opt);
    if (r.nonempty()) ++nonempty;
    if (r.two_parameter_extent()) ++extended;
    min_flagged = std::min(min_flagged, r.flagged.size());
    for (const auto& [d, n] : r.landing_dimensions) dims[d] += n;
  }
  std::string dim_text;
  for (const auto& [d, n] : dims) dim_text += (dim_text.empty() ? "" : ", ") + std::to_string(d) + ": " + std::to_string(n);
  const bool ok = scans > 0 && nonempty == scans && 10 * extended >= 9 * scans;
  return {"", ok ? Status::pass : Status::fail,
          std::to_string(scans) + " subspaces at grid " + std::to_string(grid) + ": nonempty " +
              std::to_string(nonempty) + ", component spanning >= 2 steps in >= 2 parameters " +
              std::to_string(extended) + ", fewest flagged cells " + std::to_string(scans ? min_flagged : 0) +
              "; local solution dimension at landings {" + dim_text +
              "}; grid-extent is a sampled-scale proxy for dimension >= 2"};
}

}  // namespace detail

/// Runs the registered checks in registry order. Deterministic for fixed options.
inline std::vector<ReportEntry> verify_report(const ReportOptions& opt = {}) {
  NamedComplexBundle cd2 = cd2_complex();
  if (opt.cd2_override) cd2.complex = *opt.cd2_override;

  const std::vector<std::function<ReportEntry()>> checks = {
      [&] { return detail::check_dd_zero(cd2.complex); },
      [&] { return detail::check_cd2_betti(cd2.complex); },
      [&] { return detail::check_cd1(); },
      [&] { return detail::check_cd2_generators(cd2); },
      [&] { return detail::check_klein(); },
      [&] { return detail::check_sw(); },
      [&] { return detail::check_bu(detail::stream(opt.seed, 6), opt.bu_pairs); },
      [&] { return detail::check_section_zero(); },
      [&] { return detail::check_monodromy(); },
      [&] { return detail::check_trivialization(detail::stream(opt.seed, 9), opt.crossing_pairs); },
      [&] { return detail::check_gimel(detail::stream(opt.seed, 10)); },
      [&] { return detail::check_rank(detail::stream(opt.seed, 11), opt.diagrams); },
      [&] { return detail::check_scan(detail::stream(opt.seed, 12), opt.scans, opt.scan_grid); },
  };

  std::vector<ReportEntry> out;
  const auto& reg = report_registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (!opt.only.empty() && !opt.only.count(reg[i].statement_id)) continue;
    ReportEntry e;
    try {
      e = checks[i]();
    } catch (const std::exception& ex) {
      e = {"", Status::fail, std::string("error: ") + ex.what()};
    }
    e.statement_id = reg[i].statement_id;
    out.push_back(std::move(e));
  }
  return out;
}

inline bool all_pass(const std::vector<ReportEntry>& report) {
  return std::all_of(report.begin(), report.end(), [](const ReportEntry& e) { return e.status == Status::pass; });
}

}  // namespace cdlab

#endif  // CDLAB_REPORT_HPP
