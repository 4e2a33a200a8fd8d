#include "gform/polyalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gform;
using namespace gform::polyalg;

namespace {

Poly P(const char* s, std::size_t n) { return parse_poly(s, n); }
Polyvector V(const char* s, std::size_t n) { return parse_polyvector(s, n); }

// All basis polyvectors x^e d_I with |e| <= maxdeg, |I| <= maxk.
std::vector<Polyvector> basis_grid(std::size_t n, int maxdeg, int maxk) {
  std::vector<Polyvector> out;
  for (int k = 0; k <= maxk; ++k)
    for (const auto& idx : index_tuples(n, k))
      for (int d = 0; d <= maxdeg; ++d)
        for (const auto& e : monomials_of_degree(n, d))
          out.push_back(Polyvector::basis(n, idx, Poly::monomial(e)));
  return out;
}

Polyvector random_polyvector(std::mt19937& rng, std::size_t n, int k, int maxdeg) {
  std::uniform_int_distribution<int> val(-3, 3);
  Polyvector v(n, k);
  for (const auto& idx : index_tuples(n, k))
    for (int d = 0; d <= maxdeg; ++d)
      for (const auto& e : monomials_of_degree(n, d)) v.add_term(idx, Poly::monomial(e, val(rng)));
  return v;
}

int sgn_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

TEST(PolyAlg, ApplyDerivationExamples) {
  EXPECT_EQ(apply_derivation(V("d1", 1), P("x1^2", 1)), P("2*x1", 1));
  EXPECT_EQ(apply_derivation(V("x2 d1", 2), P("x2", 2)), Poly(2));
  EXPECT_EQ(apply_derivation(V("x1 d1 + d2", 2), P("x1*x2", 2)), P("x1*x2 + x1", 2));
}

TEST(PolyAlg, WedgeExamples) {
  Polyvector w = wedge(V("d1", 2), V("d2", 2));
  EXPECT_EQ(w.degree(), 2);
  EXPECT_EQ(w.coefficient({0, 1}), Poly(2, 1));
  EXPECT_TRUE(wedge(V("d1", 2), V("d1", 2)).is_zero());
  EXPECT_EQ(wedge(V("x2 d1", 2), V("x1 d2", 2)), V("x1*x2 d1^d2", 2));
  EXPECT_EQ(wedge(V("d2", 2), V("d1", 2)), V("-d1^d2", 2));
}

TEST(PolyAlg, SchoutenExamples) {
  Polyvector v = V("x1*x2 d1 + 3*x2^2 d2", 2);
  EXPECT_TRUE(schouten(v, v).is_zero());
  EXPECT_EQ(schouten(V("d1", 1), V("x1^2", 1)), V("2*x1", 1));
  EXPECT_EQ(schouten(V("d1", 1), V("x1 d1", 1)), V("d1", 1));
  EXPECT_TRUE(schouten(V("x1", 1), V("x1^2", 1)).is_zero());
}

TEST(PolyAlg, TextRoundTrip) {
  Polyvector v = V("3/2*x1^2*x2 d1^d3 - x3 d2^d3 + 1/3 d1^d2", 3);
  EXPECT_EQ(to_string(v), "1/3 d1^d2 + 3/2*x1^2*x2 d1^d3 - x3 d2^d3");
  EXPECT_EQ(parse_polyvector(to_string(v), 3), v);
  EXPECT_EQ(V("d3^d1", 3), V("-d1^d3", 3));
  EXPECT_EQ(to_string(P("0", 2)), "0");
  EXPECT_EQ(to_string(P("-2 + x1", 2)), "-2 + x1");
  EXPECT_THROW(P("x4", 3), std::invalid_argument);
  EXPECT_THROW(P("x1 +", 3), std::invalid_argument);
  EXPECT_THROW(V("d1 + d1^d2", 3), std::invalid_argument);
}

TEST(PolyAlg, VectorFieldBracketIsCommutator) {
  // [v,w](f) = v(w(f)) - w(v(f)), evaluated on monomials.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Polyvector v = random_polyvector(rng, 2, 1, 2), w = random_polyvector(rng, 2, 1, 2);
    Polyvector b = schouten(v, w);
    for (int d = 0; d <= 3; ++d)
      for (const auto& e : monomials_of_degree(2, d)) {
        Poly f = Poly::monomial(e);
        EXPECT_EQ(apply_derivation(b, f),
                  apply_derivation(v, apply_derivation(w, f)) - apply_derivation(w, apply_derivation(v, f)));
      }
  }
}

TEST(PolyAlgGrid, SchoutenOnVectorAndFunctionIsDerivation) {
  auto grid = basis_grid(2, 2, 2);
  for (const auto& v : grid)
    for (const auto& f : grid) {
      if (v.degree() != 1 || f.degree() != 0) continue;
      EXPECT_EQ(schouten(v, f), Polyvector::function(apply_derivation(v, f.as_function())));
      EXPECT_EQ(schouten(f, v), -1 * Polyvector::function(apply_derivation(v, f.as_function())));
    }
}

TEST(PolyAlgGrid, WedgeGradedCommutative) {
  auto grid = basis_grid(2, 2, 2);
  for (const auto& u : grid)
    for (const auto& v : grid)
      EXPECT_EQ(wedge(u, v), Rat(sgn_pow(u.degree() * v.degree())) * wedge(v, u));
}

TEST(PolyAlgGrid, SchoutenAntisymmetry) {
  auto grid = basis_grid(2, 2, 2);
  for (const auto& u : grid)
    for (const auto& v : grid) {
      const int s = -sgn_pow((u.degree() - 1) * (v.degree() - 1));
      EXPECT_EQ(schouten(u, v), Rat(s) * schouten(v, u));
    }
}

TEST(PolyAlgGrid, SchoutenJacobi) {
  auto grid = basis_grid(2, 2, 2);
  for (const auto& p : grid)
    for (const auto& q : grid)
      for (const auto& r : grid) {
        const int s = sgn_pow((p.degree() - 1) * (q.degree() - 1));
        Polyvector lhs = schouten(p, schouten(q, r));
        Polyvector rhs = schouten(schouten(p, q), r) + Rat(s) * schouten(q, schouten(p, r));
        ASSERT_EQ(lhs, rhs) << to_string(p) << " | " << to_string(q) << " | " << to_string(r);
      }
}

TEST(PolyAlgGrid, SchoutenLeibniz) {
  auto grid = basis_grid(2, 2, 2);
  for (const auto& p : grid)
    for (const auto& q : grid)
      for (const auto& r : grid) {
        if (q.degree() + r.degree() > 2) continue;
        const int s = sgn_pow((p.degree() - 1) * q.degree());
        Polyvector lhs = schouten(p, wedge(q, r));
        Polyvector rhs = wedge(schouten(p, q), r) + Rat(s) * wedge(q, schouten(p, r));
        ASSERT_EQ(lhs, rhs) << to_string(p) << " | " << to_string(q) << " | " << to_string(r);
      }
}

TEST(PolyAlgProperty, WedgeAssociativeThreeVariables) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> deg(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    Polyvector a = random_polyvector(rng, 3, deg(rng), 1);
    Polyvector b = random_polyvector(rng, 3, deg(rng), 1);
    Polyvector c = random_polyvector(rng, 3, deg(rng), 1);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}
