#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cdlab/degeneracy_scan.hpp"

using cdlab::GridCell;

namespace {

cdlab::FunctionSubspace seeded_space(std::uint64_t seed) {
  cdlab::SplitMix64 rng(seed);
  return cdlab::random_subspace(rng);
}

// Eigen's SVD of the evaluation matrix at endpoint angles t.
double eigen_sigma_ratio(const cdlab::FunctionSubspace& space, const std::array<double, 4>& t) {
  const auto m = cdlab::evaluation_matrix(cdlab::Chord(t[0], t[1]), cdlab::Chord(t[2], t[3]), space.basis());
  Eigen::MatrixXd e(6, 7);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 7; ++c) e(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
  return s(5) / s(0);
}

std::size_t symmetric_difference(const std::vector<GridCell>& a, const std::vector<GridCell>& b) {
  std::vector<GridCell> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

}  // namespace

TEST(CanonicalCell, Ordering) {
  EXPECT_EQ(cdlab::detail::canonical_cell({5, 2, 1, 3}, 12), (GridCell{1, 3, 2, 5}));
  EXPECT_EQ(cdlab::detail::canonical_cell({-1, 2, 13, 3}, 12), (GridCell{1, 3, 2, 11}));
  EXPECT_FALSE(cdlab::detail::canonical_cell({1, 1, 2, 3}, 12).has_value());
  EXPECT_FALSE(cdlab::detail::canonical_cell({1, 4, 4, 1}, 12).has_value());
}

TEST(Components, ExtentAndBoxDimension) {
  std::vector<GridCell> cells;
  for (int a = 0; a < 3; ++a)
    for (int b = 6; b < 9; ++b) cells.push_back({0, a + 3, b, 11});
  cells.push_back({4, 5, 6, 7});  // isolated
  std::sort(cells.begin(), cells.end());
  const auto comps = cdlab::detail::components_of(cells, 12);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].size, 9u);
  EXPECT_EQ(comps[0].extent, (std::array<int, 4>{0, 2, 2, 0}));
  EXPECT_EQ(comps[0].box_dimension, 2);
  EXPECT_EQ(comps[1].size, 1u);
  EXPECT_EQ(comps[1].box_dimension, 0);
}

TEST(Components, WrapAroundTheCircle) {
  // Neighbours across the 0 / grid-1 seam belong to one component.
  const std::vector<GridCell> cells = {{0, 5, 6, 9}, {5, 11, 6, 9}};
  std::vector<GridCell> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(cdlab::detail::components_of(sorted, 12).size(), 1u);
}

TEST(DegeneracyScan, RejectsWrongDimension) {
  cdlab::SplitMix64 rng(91);
  EXPECT_THROW(cdlab::degeneracy_scan(cdlab::random_subspace(rng, 3, 6)), std::invalid_argument);
  auto space = seeded_space(91);
  auto basis = space.basis();
  basis.back() = basis.front();
  EXPECT_THROW(cdlab::FunctionSubspace{basis}, std::invalid_argument);
  cdlab::ScanOptions opt;
  opt.grid = 3;
  EXPECT_THROW(cdlab::degeneracy_scan(space, opt), std::invalid_argument);
}

TEST(DegeneracyScan, NonemptyAndTwoDimensional) {
  const auto space = seeded_space(92);
  const auto r = cdlab::degeneracy_scan(space);
  EXPECT_EQ(r.cells_scanned, 37950u);
  EXPECT_TRUE(r.nonempty());
  EXPECT_TRUE(r.two_parameter_extent());
  EXPECT_TRUE(std::is_sorted(r.flagged.begin(), r.flagged.end()));
  // Every landing point sits on a smooth piece of the locus of dimension 2.
  ASSERT_EQ(r.landing_dimensions.size(), 1u);
  EXPECT_EQ(r.landing_dimensions.begin()->first, 2);
  EXPECT_EQ(r.landing_dimensions.begin()->second, r.flagged.size());
}

TEST(DegeneracyScan, LandingsAreRankDropsByEigen) {
  const auto space = seeded_space(93);
  const cdlab::detail::MapEvaluator ev(space.basis());
  const int n = 24;
  const double h = cdlab::two_pi / n;
  int checked = 0;
  for (int x1 = 0; x1 < n && checked < 40; x1 += 5)
    for (int y1 = x1 + 3; y1 < n && checked < 40; y1 += 4) {
      const std::array<double, 4> t = {x1 * h, y1 * h, (x1 + 2) * h, (y1 + 7) * h};
      const auto m = ev.evaluation(t);
      const auto svd = cdlab::jacobi_svd(m);
      std::vector<double> u(6);
      for (std::size_t i = 0; i < 6; ++i) u[i] = svd.right_vectors(i, 5);
      const auto landing = cdlab::detail::refine_to_rank_drop(ev, t, u, 40);
      if (!landing.converged || landing.sigma_ratio > 1e-6) continue;
      if (cdlab::detail::chord_pair_separation(landing.point) < 0.1) continue;
      ++checked;
      EXPECT_LT(eigen_sigma_ratio(space, landing.point), 1e-8);
    }
  EXPECT_GT(checked, 5);
}

TEST(DegeneracyScan, ZeroToleranceFlagsNothing) {
  cdlab::ScanOptions opt;
  opt.grid = 12;
  opt.tol = 0.0;
  EXPECT_FALSE(cdlab::degeneracy_scan(seeded_space(94), opt).nonempty());
}

TEST(DegeneracyScan, InvariantUnderOrthonormalRecombination) {
  const auto space = seeded_space(95);
  // Random orthogonal 7 x 7 matrix from a QR factorisation.
  std::mt19937_64 gen(95);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) a(i, j) = u(gen);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();

  std::vector<cdlab::MapTriple> rotated(7);
  for (int j = 0; j < 7; ++j)
    for (std::size_t c = 0; c < 3; ++c) {
      cdlab::TrigPolynomial acc;
      for (int i = 0; i < 7; ++i) acc += q(i, j) * space.basis()[static_cast<std::size_t>(i)].components[c];
      rotated[static_cast<std::size_t>(j)].components[c] = acc;
    }
  cdlab::ScanOptions opt;
  opt.grid = 12;
  const auto r1 = cdlab::degeneracy_scan(space, opt);
  const auto r2 = cdlab::degeneracy_scan(cdlab::FunctionSubspace(rotated), opt);
  // Singular values agree to rounding; only cells sitting exactly on the
  // screening or distance thresholds could flip.
  EXPECT_LE(symmetric_difference(r1.flagged, r2.flagged), r1.flagged.size() / 100 + 1);
  EXPECT_EQ(r1.flagged.size() > 0, r2.flagged.size() > 0);
}

TEST(DegeneracyScan, CoarseSetContainedInRefinedNeighbourhood) {
  const auto space = seeded_space(96);
  cdlab::ScanOptions coarse, fine;
  coarse.grid = 12;
  fine.grid = 24;
  const auto rc = cdlab::degeneracy_scan(space, coarse);
  const auto rf = cdlab::degeneracy_scan(space, fine);
  ASSERT_TRUE(rc.nonempty());
  const double rate = cdlab::refinement_containment(rc, rf);
  RecordProperty("containment_rate", std::to_string(rate));
  EXPECT_GE(rate, 0.9);
}
