#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cdlab/simplicial.hpp"

using cdlab::Cochain;
using cdlab::OrderedSimplicialComplex;
using cdlab::Simplex;

namespace {

Cochain random_cochain(std::mt19937_64& gen, const OrderedSimplicialComplex& c, int degree) {
  Cochain x = Cochain::zero(c, degree);
  for (std::size_t i = 0; i < x.values.size(); ++i) x.values.set(i, gen() & 1u);
  return x;
}

Cochain random_cocycle(std::mt19937_64& gen, const OrderedSimplicialComplex& c, int degree) {
  const auto basis = cdlab::f2::kernel_basis(c.coboundary_matrix(degree));
  Cochain x = Cochain::zero(c, degree);
  for (const auto& v : basis)
    if (gen() & 1u) x.values ^= v;
  return x;
}

// Full 3-simplex boundary (a 2-sphere) on 4 vertices.
OrderedSimplicialComplex sphere() {
  return OrderedSimplicialComplex::from_simplices(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// Direct front-face/back-face evaluation of (x u y) on one simplex.
bool cup_on(const OrderedSimplicialComplex& c, const Cochain& x, const Cochain& y, const Simplex& s) {
  const Simplex front(s.begin(), s.begin() + x.degree + 1);
  const Simplex back(s.begin() + x.degree, s.end());
  return x.values.get(c.index_of(front)) && y.values.get(c.index_of(back));
}

}  // namespace

TEST(Simplicial, FaceClosureCounts) {
  const auto s = sphere();
  EXPECT_EQ(s.count(0), 4u);
  EXPECT_EQ(s.count(1), 6u);
  EXPECT_EQ(s.count(2), 4u);
  EXPECT_TRUE(s.is_valid());
  EXPECT_TRUE(s.contains({1, 3}));
  EXPECT_THROW(OrderedSimplicialComplex::from_simplices(3, {{0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(OrderedSimplicialComplex::from_simplices(3, {{0, 5}}), std::invalid_argument);
}

TEST(Simplicial, SphereCohomology) {
  const auto s = sphere();
  EXPECT_EQ(cdlab::cohomology_basis(s, 0).size(), 1u);
  EXPECT_EQ(cdlab::cohomology_basis(s, 1).size(), 0u);
  EXPECT_EQ(cdlab::cohomology_basis(s, 2).size(), 1u);
  EXPECT_EQ(cdlab::betti(cdlab::to_chain_complex(s)), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Simplicial, CoboundarySquaresToZero) {
  std::mt19937_64 gen(31);
  const auto k = cdlab::klein_bottle();
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_cochain(gen, k.complex, 0);
    const auto dx = cdlab::coboundary(k.complex, x);
    EXPECT_TRUE(cdlab::coboundary(k.complex, dx).values.none());
  }
}

TEST(Klein, TriangulationShape) {
  const auto k = cdlab::klein_bottle();
  EXPECT_EQ(k.complex.count(0), 16u);
  EXPECT_EQ(k.complex.count(1), 48u);
  EXPECT_EQ(k.complex.count(2), 32u);
  EXPECT_TRUE(k.complex.is_valid());
  const auto cc = cdlab::to_chain_complex(k.complex, "klein");
  EXPECT_EQ(cdlab::betti(cc), (std::vector<std::size_t>{1, 2, 1}));
  // The two loops are cycles and the sum of all triangles is a mod-2 cycle.
  EXPECT_TRUE(cdlab::chain_boundary(k.complex, 1, k.loop_u).none());
  EXPECT_TRUE(cdlab::chain_boundary(k.complex, 1, k.loop_v).none());
  EXPECT_TRUE(cdlab::chain_boundary(k.complex, 2, k.fundamental_class).none());
  EXPECT_THROW(cdlab::klein_bottle(2), std::invalid_argument);
}

TEST(Klein, RestrictedClassAndCupSquare) {
  const auto k = cdlab::klein_bottle();
  const auto w = cdlab::restricted_W(k);
  EXPECT_TRUE(cdlab::is_cocycle(k.complex, w));
  EXPECT_TRUE(cdlab::pairing(w, k.loop_u));
  EXPECT_FALSE(cdlab::pairing(w, k.loop_v));
  EXPECT_TRUE(cdlab::cup_square_pairing(k, w));
  // Only 1-cocycles are accepted.
  EXPECT_THROW(cdlab::cup_square_pairing(k, Cochain::zero(k.complex, 2)), std::invalid_argument);
}

TEST(Klein, CupSquareIsClassInvariant) {
  std::mt19937_64 gen(32);
  const auto k = cdlab::klein_bottle();
  const auto w = cdlab::restricted_W(k);
  for (int trial = 0; trial < 30; ++trial) {
    const auto shifted = w + cdlab::coboundary(k.complex, random_cochain(gen, k.complex, 0));
    EXPECT_TRUE(cdlab::cup_square_pairing(k, shifted));
  }
}

TEST(Klein, LargerGridAgrees) {
  for (int n : {3, 5, 6}) {
    const auto k = cdlab::klein_bottle(n);
    EXPECT_TRUE(cdlab::cup_square_pairing(k, cdlab::restricted_W(k))) << n;
  }
}

TEST(Torus, EveryCupSquareVanishes) {
  const auto t = cdlab::torus();
  EXPECT_EQ(cdlab::betti(cdlab::to_chain_complex(t.complex)), (std::vector<std::size_t>{1, 2, 1}));
  const auto basis = cdlab::cohomology_basis(t.complex, 1);
  ASSERT_EQ(basis.size(), 2u);
  for (std::size_t mask = 1; mask < 4; ++mask) {
    Cochain x = Cochain::zero(t.complex, 1);
    for (std::size_t i = 0; i < 2; ++i)
      if (mask >> i & 1u) x = x + basis[i];
    EXPECT_FALSE(cdlab::cup_square_pairing(t, x)) << mask;
  }
  // Cup product of the two generators is nonzero on the torus.
  EXPECT_TRUE(cdlab::pairing(cdlab::cup(t.complex, basis[0], basis[1]), t.fundamental_class));
}

TEST(CupProperty, MatchesDirectEvaluation) {
  std::mt19937_64 gen(33);
  const auto k = cdlab::klein_bottle();
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_cochain(gen, k.complex, 1);
    const auto y = random_cochain(gen, k.complex, 1);
    const auto xy = cdlab::cup(k.complex, x, y);
    for (std::size_t i = 0; i < k.complex.count(2); ++i)
      ASSERT_EQ(xy.values.get(i), cup_on(k.complex, x, y, k.complex.simplices(2)[i]));
  }
}

TEST(CupProperty, BilinearAssociativeLeibniz) {
  std::mt19937_64 gen(34);
  const auto s = OrderedSimplicialComplex::from_simplices(5, {{0, 1, 2, 3}, {1, 2, 3, 4}, {0, 2, 4}});
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_cochain(gen, s, 1), b = random_cochain(gen, s, 1), c = random_cochain(gen, s, 1);
    const auto z = random_cochain(gen, s, 0);
    EXPECT_EQ(cdlab::cup(s, a + b, c), cdlab::cup(s, a, c) + cdlab::cup(s, b, c));
    EXPECT_EQ(cdlab::cup(s, a, b + c), cdlab::cup(s, a, b) + cdlab::cup(s, a, c));
    EXPECT_EQ(cdlab::cup(s, cdlab::cup(s, a, b), c), cdlab::cup(s, a, cdlab::cup(s, b, c)));
    EXPECT_EQ(cdlab::cup(s, cdlab::cup(s, z, a), b), cdlab::cup(s, z, cdlab::cup(s, a, b)));
    // d(a u b) = da u b + a u db over GF(2).
    EXPECT_EQ(cdlab::coboundary(s, cdlab::cup(s, z, a)),
              cdlab::cup(s, cdlab::coboundary(s, z), a) + cdlab::cup(s, z, cdlab::coboundary(s, a)));
  }
}

TEST(CupProperty, ProductOfCocyclesIsCocycle) {
  std::mt19937_64 gen(35);
  const auto s = OrderedSimplicialComplex::from_simplices(5, {{0, 1, 2, 3}, {1, 2, 3, 4}});
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_cocycle(gen, s, 1), b = random_cocycle(gen, s, 1);
    EXPECT_TRUE(cdlab::is_cocycle(s, cdlab::cup(s, a, b)));
  }
}

TEST(SwPolynomial, TruncatedPowers) {
  const cdlab::F2Series total = {1, 1, 1};
  EXPECT_EQ(cdlab::truncated_poly_power(total, 3, 3), (cdlab::F2Series{1, 1, 0, 1}));
  EXPECT_EQ(cdlab::truncated_poly_power(total, -3, 2), (cdlab::F2Series{1, 1, 1}));
  EXPECT_EQ(cdlab::truncated_poly_power(total, 0, 2), (cdlab::F2Series{1, 0, 0}));
  EXPECT_THROW(cdlab::truncated_poly_power({0, 1}, 2, 2), std::invalid_argument);
}

TEST(SwPolynomial, InverseTimesSeriesIsOne) {
  std::mt19937_64 gen(36);
  for (int trial = 0; trial < 100; ++trial) {
    cdlab::F2Series a(6);
    a[0] = 1;
    for (std::size_t i = 1; i < a.size(); ++i) a[i] = gen() & 1u;
    const auto inv = cdlab::series_inverse(a, 8);
    cdlab::F2Series one(9, 0);
    one[0] = 1;
    EXPECT_EQ(cdlab::series_multiply(a, inv, 8), one);
    // Power laws: p^3 * p^-3 = 1.
    EXPECT_EQ(cdlab::series_multiply(cdlab::truncated_poly_power(a, 3, 8), cdlab::truncated_poly_power(a, -3, 8), 8),
              one);
  }
}
