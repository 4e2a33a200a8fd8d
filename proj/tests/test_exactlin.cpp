#include "gform/exactlin.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gform;
using namespace gform::exactlin;

namespace {

SparseMat from_rows(std::size_t cols, const std::vector<std::vector<long>>& rows) {
  SparseMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.add(i, j, rows[i][j]);
  return m;
}

// Dense textbook elimination, kept separate from the sparse engine.
std::size_t dense_rank(const SparseMat& m) {
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

SparseMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int density_pct) {
  std::uniform_int_distribution<int> pct(0, 99), val(-3, 3);
  SparseMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density_pct) m.add(i, j, val(rng));
  return m;
}

}  // namespace

TEST(ExactLin, EmptyMatrixHasRankZero) {
  SparseMat m(0, 0);
  EXPECT_EQ(rank(m), 0u);
  EXPECT_EQ(rank_kernel(m).kernel.dim(), 0u);
}

TEST(ExactLin, IdentityRank) {
  EXPECT_EQ(rank(SparseMat::identity(3)), 3u);
  EXPECT_EQ(rank_kernel(SparseMat::identity(3)).kernel.dim(), 0u);
}

TEST(ExactLin, RankOneWithKernel) {
  SparseMat m = from_rows(2, {{1, 2}, {2, 4}});
  RankKernel rk = rank_kernel(m);
  EXPECT_EQ(rk.rank, 1u);
  ASSERT_EQ(rk.kernel.dim(), 1u);
  SparseVec v = rk.kernel.basis()[0];
  // proportional to (2,-1)
  EXPECT_EQ(v.at(0) * Rat(-1), v.at(1) * Rat(2));
  EXPECT_TRUE(m.apply(v).empty());
}

TEST(ExactLin, SolveLinear) {
  SparseMat m = from_rows(2, {{1, 1}, {0, 1}});
  auto x = solve_linear(m, {Rat(3), Rat(1)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);
}

TEST(ExactLin, SolveLinearInconsistent) {
  SparseMat m = from_rows(2, {{1, 1}, {2, 2}});
  EXPECT_FALSE(solve_linear(m, {Rat(1), Rat(3)}).has_value());
}

TEST(ExactLin, SolveLinearFractions) {
  SparseMat m = from_rows(2, {{2, 0}, {0, 3}});
  auto x = solve_linear(m, {Rat(1), Rat(1)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], rat(1, 2));
  EXPECT_EQ((*x)[1], rat(1, 3));
}

TEST(ExactLin, HomologyOfShortComplex) {
  // Q --(1,0)^T--> Q^2 --(0,1)--> Q : homology 0 in the middle.
  SparseMat din = from_rows(1, {{1}, {0}});
  SparseMat dout = from_rows(2, {{0, 1}});
  EXPECT_EQ(homology_dim(din, dout), 0u);
  // Zero differentials: homology is the whole middle.
  EXPECT_EQ(homology_dim(SparseMat(3, 0), SparseMat(0, 3)), 3u);
}

TEST(ExactLin, HomologyRejectsNonComplex) {
  SparseMat din = from_rows(1, {{1}, {1}});
  SparseMat dout = from_rows(2, {{1, 0}});
  EXPECT_THROW(homology_dim(din, dout), InconsistencyError);
  EXPECT_THROW(homology_dim(din, SparseMat(1, 3)), std::invalid_argument);
}

TEST(ExactLinProperty, RankMatchesDenseOracleAndTranspose) {
  std::mt19937 rng(20241);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> dim(0, 7), dens(10, 90);
    SparseMat m = random_matrix(rng, dim(rng), dim(rng), dens(rng));
    const std::size_t r = rank(m);
    EXPECT_EQ(r, dense_rank(m));
    EXPECT_EQ(r, rank(m.transpose()));
    RankKernel rk = rank_kernel(m);
    EXPECT_EQ(rk.rank + rk.kernel.dim(), m.cols());
    for (const auto& v : rk.kernel.basis()) EXPECT_TRUE(m.apply(v).empty());
  }
}

TEST(ExactLinProperty, SolveLinearRoundTrip) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> val(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    SparseMat m = random_matrix(rng, 5, 4, 60);
    SparseVec x0;
    for (std::size_t j = 0; j < 4; ++j) x0.emplace(j, val(rng));
    for (auto it = x0.begin(); it != x0.end();) it = (it->second == 0) ? x0.erase(it) : std::next(it);
    SparseVec b = m.apply(x0);
    std::vector<Rat> rhs(5, Rat(0));
    for (const auto& [i, v] : b) rhs[i] = v;
    auto x = solve_linear(m, rhs);
    ASSERT_TRUE(x.has_value());
    SparseVec xs;
    for (std::size_t j = 0; j < 4; ++j)
      if ((*x)[j] != 0) xs.emplace(j, (*x)[j]);
    EXPECT_EQ(m.apply(xs), b);
  }
}

TEST(ExactLinProperty, HomologyOfConjugatedComplexes) {
  // Build a complex with known homology h in a split basis, then conjugate the
  // middle term by a product of elementary matrices.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> small(0, 3), val(-2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t a = small(rng), h = small(rng), b = small(rng);
    const std::size_t m = a + h + b;
    SparseMat din(m, a), dout(b, m);
    for (std::size_t i = 0; i < a; ++i) din.add(i, i, 1);
    for (std::size_t i = 0; i < b; ++i) dout.add(i, a + h + i, 1);
    SparseMat t = SparseMat::identity(m), tinv = SparseMat::identity(m);
    if (m >= 2) {
      std::uniform_int_distribution<std::size_t> idx(0, m - 1);
      for (int k = 0; k < 6; ++k) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Rat c = val(rng);
        SparseMat e = SparseMat::identity(m), einv = SparseMat::identity(m);
        e.add(i, j, c);
        einv.add(i, j, -c);
        t = e * t;
        tinv = tinv * einv;
      }
    }
    EXPECT_EQ(homology_dim(t * din, dout * tinv), h);
  }
}

TEST(ExactLinProperty, SubspaceReduceIsCanonical) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    SparseMat m = random_matrix(rng, 4, 6, 50);
    std::vector<SparseVec> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    Subspace s = Subspace::span(6, rows);
    EXPECT_EQ(s.dim(), rank(m));
    SparseVec v = random_matrix(rng, 1, 6, 70).row(0);
    SparseVec w = v;
    for (const auto& r : rows) axpy(w, Rat(2), r);
    EXPECT_EQ(s.reduce(v), s.reduce(w));
    for (const auto& r : rows) EXPECT_TRUE(s.contains(r));
  }
}
