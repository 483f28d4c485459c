#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cdlab/chain_complex.hpp"
#include "cdlab/chain_complex_json.hpp"

using cdlab::Chain;
using cdlab::ChainComplex;
using cdlab::ComplexError;

namespace {

std::string name_of(const std::vector<int>& s) {
  std::string out = "s";
  for (int v : s) out += std::to_string(v);
  return out;
}

// Random simplicial complex on 5 vertices, built by face closure here rather
// than through the library, returned as a cellular complex.
ChainComplex random_complex(std::mt19937_64& gen) {
  std::set<std::vector<int>> simplices;
  std::function<void(const std::vector<int>&)> close = [&](const std::vector<int>& s) {
    if (s.empty() || !simplices.insert(s).second) return;
    for (std::size_t i = 0; i < s.size() && s.size() > 1; ++i) {
      auto f = s;
      f.erase(f.begin() + static_cast<long>(i));
      close(f);
    }
  };
  for (int mask = 1; mask < 32; ++mask) {
    std::vector<int> s;
    for (int v = 0; v < 5; ++v)
      if (mask >> v & 1) s.push_back(v);
    if (s.size() <= 4 && gen() % 4 == 0) close(s);
  }
  close({0});
  ChainComplex c("random");
  for (std::size_t d = 1; d <= 4; ++d)
    for (const auto& s : simplices)
      if (s.size() == d) {
        std::vector<std::string> faces;
        if (d > 1)
          for (std::size_t i = 0; i < d; ++i) {
            auto f = s;
            f.erase(f.begin() + static_cast<long>(i));
            faces.push_back(name_of(f));
          }
        c.add_cell(name_of(s), static_cast<int>(d) - 1, faces);
      }
  return c;
}

// Oracle: b_k = log2 |Z_k| - log2 |B_k| by enumerating every chain.
std::vector<std::size_t> brute_betti(const ChainComplex& c) {
  auto chain_of = [&](int k, std::size_t mask) {
    Chain z{k, {}};
    const auto& cells = c.cells(k);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (mask >> i & 1u) z.support.insert(cells[i]);
    return z;
  };
  auto log2 = [](std::size_t n) {
    std::size_t r = 0;
    while ((std::size_t{1} << r) < n) ++r;
    return r;
  };
  std::vector<std::size_t> out;
  for (int k = 0; k <= c.top_dim(); ++k) {
    std::size_t cycles = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.cells(k).size()); ++mask) {
      const Chain z = chain_of(k, mask);
      Chain bd{k - 1, {}};
      for (const auto& cell : z.support)
        for (const auto& f : c.boundary_of(cell))
          if (!bd.support.erase(f)) bd.support.insert(f);
      if (bd.support.empty()) ++cycles;
    }
    std::set<std::set<std::string>> boundaries;
    if (k < c.top_dim())
      for (std::size_t mask = 0; mask < (std::size_t{1} << c.cells(k + 1).size()); ++mask)
        boundaries.insert(c.boundary(chain_of(k + 1, mask)).support);
    else
      boundaries.insert({});
    out.push_back(log2(cycles) - log2(boundaries.size()));
  }
  return out;
}

ChainComplex circle() {
  ChainComplex c("circle");
  c.add_cell("v", 0).add_cell("e", 1, {});
  return c;
}

// Two-vertex, two-edge circle and a disk capping it.
ChainComplex disk() {
  ChainComplex c("disk");
  c.add_cell("p", 0).add_cell("q", 0).add_cell("e1", 1, {"p", "q"}).add_cell("e2", 1, {"p", "q"});
  c.add_cell("D", 2, {"e1", "e2"});
  return c;
}

}  // namespace

TEST(ChainComplex, PointAndCircle) {
  ChainComplex point("point");
  point.add_cell("x", 0);
  EXPECT_EQ(cdlab::betti(point), (std::vector<std::size_t>{1}));
  EXPECT_EQ(cdlab::betti(circle()), (std::vector<std::size_t>{1, 1}));
}

TEST(ChainComplex, DiskIsContractible) {
  const auto c = disk();
  EXPECT_TRUE(cdlab::validate(c).ok());
  EXPECT_EQ(cdlab::betti(c), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(cdlab::euler_characteristic(c), 1);
  const Chain loop{1, {"e1", "e2"}};
  ASSERT_TRUE(cdlab::is_cycle(c, loop));
  EXPECT_TRUE(cdlab::is_boundary(c, loop));
  EXPECT_EQ(cdlab::boundary_preimage(c, loop), (Chain{2, {"D"}}));
}

TEST(ChainComplex, BoundaryMatrixLayout) {
  const auto c = disk();
  const auto d1 = c.boundary_matrix(1);
  ASSERT_EQ(d1.rows(), 2u);
  ASSERT_EQ(d1.cols(), 2u);
  EXPECT_TRUE(d1.get(0, 0) && d1.get(1, 0) && d1.get(0, 1) && d1.get(1, 1));
  EXPECT_EQ(cdlab::boundary_rank(c, 1), 1u);
  EXPECT_EQ(cdlab::boundary_rank(c, 2), 1u);
  EXPECT_EQ(cdlab::boundary_rank(c, 3), 0u);
}

TEST(ChainComplex, ValidateReportsBrokenBoundary) {
  ChainComplex c("broken");
  c.add_cell("p", 0).add_cell("q", 0).add_cell("e1", 1, {"p", "q"}).add_cell("e2", 1, {"p"});
  c.add_cell("D", 2, {"e1", "e2"});
  const auto r = cdlab::validate(c);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().cell, "D");
  EXPECT_THROW(cdlab::betti(c), ComplexError);
}

TEST(ChainComplex, ValidateStructuralErrors) {
  ChainComplex dup("dup");
  dup.add_cell("x", 0).add_cell("x", 0);
  EXPECT_FALSE(cdlab::validate(dup).ok());

  ChainComplex unknown("unknown");
  unknown.add_cell("e", 1, {"nowhere"});
  EXPECT_EQ(cdlab::validate(unknown).violations.at(0).cell, "e");

  ChainComplex wrong_dim("wrong_dim");
  wrong_dim.add_cell("p", 0).add_cell("D", 2, {"p"});
  EXPECT_FALSE(cdlab::validate(wrong_dim).ok());

  ChainComplex repeated("repeated");
  repeated.add_cell("p", 0).add_cell("e", 1, {"p", "p"});
  EXPECT_FALSE(cdlab::validate(repeated).ok());

  EXPECT_THROW(ChainComplex("neg").add_cell("x", -1), ComplexError);
}

TEST(ChainComplex, EmptyComplex) {
  ChainComplex c("empty");
  EXPECT_TRUE(cdlab::validate(c).ok());
  EXPECT_TRUE(cdlab::betti(c).empty());
}

TEST(ChainComplex, HomologousRejectsNonCycles) {
  const auto c = disk();
  EXPECT_THROW(cdlab::homologous(c, Chain{1, {"e1"}}, Chain{1, {"e2"}}), ComplexError);
  EXPECT_THROW(cdlab::is_boundary(c, Chain{1, {"e1"}}), ComplexError);
}

TEST(ChainComplex, HomologyBasisCircle) {
  const auto basis = cdlab::homology_basis(circle(), 1);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (Chain{1, {"e"}}));
}

TEST(ChainComplexProperty, BettiMatchesBruteForce) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_complex(gen);
    ASSERT_TRUE(cdlab::validate(c).ok());
    const auto b = cdlab::betti(c);
    ASSERT_EQ(b, brute_betti(c));
    long alt = 0;
    for (std::size_t k = 0; k < b.size(); ++k) alt += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b[k]);
    EXPECT_EQ(alt, cdlab::euler_characteristic(c));
    for (int k = 0; k <= c.top_dim(); ++k) {
      const auto basis = cdlab::homology_basis(c, k);
      EXPECT_EQ(basis.size(), b[static_cast<std::size_t>(k)]);
      for (const auto& z : basis) {
        EXPECT_TRUE(cdlab::is_cycle(c, z));
        EXPECT_FALSE(cdlab::is_boundary(c, z));
      }
    }
  }
}

TEST(ChainComplexProperty, HomologousIsEquivalence) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_complex(gen);
    const auto b1 = c.top_dim() >= 2 ? c.boundary_matrix(2) : cdlab::f2::BitMatrix(c.cell_count(1), 0);
    // Cycles: kernel of d1 plus random boundaries.
    const auto ker = cdlab::f2::kernel_basis(c.boundary_matrix(1));
    if (ker.empty()) continue;
    std::vector<Chain> zs;
    for (int i = 0; i < 3; ++i) {
      cdlab::f2::BitVector v(c.cell_count(1));
      for (const auto& k : ker)
        if (gen() & 1u) v ^= k;
      zs.push_back(c.to_chain(1, v));
    }
    for (const auto& x : zs) {
      EXPECT_TRUE(cdlab::homologous(c, x, x));
      for (const auto& y : zs) {
        EXPECT_EQ(cdlab::homologous(c, x, y), cdlab::homologous(c, y, x));
        for (const auto& z : zs)
          if (cdlab::homologous(c, x, y) && cdlab::homologous(c, y, z)) {
            EXPECT_TRUE(cdlab::homologous(c, x, z));
          }
      }
    }
    // Adding a boundary never changes the class.
    if (b1.cols() > 0) {
      const Chain bd = c.boundary(Chain{2, {c.cells(2).front()}});
      EXPECT_TRUE(cdlab::homologous(c, zs[0], zs[0] + bd));
    }
  }
}

TEST(ChainComplexJson, RoundTrip) {
  const auto c = disk();
  const auto back = cdlab::complex_from_json(cdlab::complex_to_json(c));
  EXPECT_TRUE(cdlab::same_complex(c, back));
  EXPECT_EQ(back.name(), "disk");
}

TEST(ChainComplexJson, RejectsBadInput) {
  EXPECT_THROW(cdlab::complex_from_json_text("{"), ComplexError);
  EXPECT_THROW(cdlab::complex_from_json_text(R"({"name":"x"})"), ComplexError);
  EXPECT_THROW(cdlab::complex_from_json_text(R"({"name":"x","cells":[{"id":"a","dim":0},{"id":"a","dim":0}]})"),
               ComplexError);
  EXPECT_THROW(cdlab::complex_from_json_text(
                   R"({"name":"x","cells":[{"id":"a","dim":0},{"id":"e","dim":1}],"boundary":{"e":["a","a"]}})"),
               ComplexError);
  EXPECT_THROW(cdlab::complex_from_json_text(R"({"name":"x","cells":[{"id":"a","dim":0}],"boundary":{"b":[]}})"),
               ComplexError);
  EXPECT_THROW(cdlab::load_complex("/nonexistent/file.json"), ComplexError);
}

TEST(ChainComplexJson, MissingBoundaryMeansEmpty) {
  const auto c = cdlab::complex_from_json_text(R"({"name":"x","cells":[{"id":"a","dim":0,"label":"A"}]})");
  EXPECT_TRUE(c.boundary_of("a").empty());
  EXPECT_EQ(cdlab::betti(c), (std::vector<std::size_t>{1}));
}
