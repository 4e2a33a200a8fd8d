#include "gform/hochschild.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gform;
using namespace gform::hochschild;
using polyalg::parse_poly;
using polyalg::parse_polyvector;

namespace {

int sgn_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

Cochain C(const char* s, std::size_t n, int arity_if_zero = 0) { return parse_cochain(s, n, arity_if_zero); }

std::vector<Poly> monomial_args(std::size_t n, int maxdeg) {
  std::vector<Poly> out;
  for (int d = 0; d <= maxdeg; ++d)
    for (const auto& e : polyalg::monomials_of_degree(n, d)) out.push_back(Poly::monomial(e));
  return out;
}

// Calls f on every k-tuple drawn from `pool`.
template <class F>
void for_tuples(const std::vector<Poly>& pool, int k, F&& f) {
  std::vector<Poly> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      f(cur);
      return;
    }
    for (const auto& a : pool) {
      cur.push_back(a);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

// Extensional brace: P{Q1..Qm}(a1..aN) summed over insertion positions.
Poly brace_oracle(const Cochain& p, const std::vector<Cochain>& qs, const std::vector<Poly>& args) {
  const int k = p.arity(), m = static_cast<int>(qs.size());
  Poly total(p.nvars());
  std::vector<int> pos;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pos.size()) == m) {
      std::vector<Poly> pargs;
      std::size_t next = 0;
      long parity = 0;
      int j = 0;
      for (int s = 0; s < k; ++s) {
        if (j < m && pos[j] == s) {
          parity += static_cast<long>(qs[j].shifted()) * static_cast<long>(next);
          std::vector<Poly> qa(args.begin() + next, args.begin() + next + qs[j].arity());
          next += qs[j].arity();
          pargs.push_back(evaluate(qs[j], qa));
          ++j;
        } else {
          pargs.push_back(args[next++]);
        }
      }
      total += evaluate(p, pargs) * Rat(sgn_pow(parity));
      return;
    }
    for (int s = start; s < k; ++s) {
      pos.push_back(s);
      self(self, s + 1);
      pos.pop_back();
    }
  };
  rec(rec, 0);
  return total;
}

Cochain random_cochain(std::mt19937& rng, std::size_t n, int arity, int max_order, int max_coef, int nterms) {
  auto slots = slot_tuples(n, arity, max_order);
  std::vector<Poly> coefs = monomial_args(n, max_coef);
  std::uniform_int_distribution<std::size_t> ps(0, slots.size() - 1), pc(0, coefs.size() - 1);
  std::uniform_int_distribution<int> val(-2, 2);
  Cochain c(n, arity);
  for (int t = 0; t < nterms; ++t) c.add_term(slots[ps(rng)], coefs[pc(rng)] * Rat(val(rng)));
  return c;
}

std::vector<Cochain> grid(std::size_t n, int max_arity, int max_order, int max_coef) {
  std::vector<Cochain> g;
  for (int a = 0; a <= max_arity; ++a) {
    auto b = basis_cochains(n, a, max_order, max_coef);
    g.insert(g.end(), b.begin(), b.end());
  }
  return g;
}

}  // namespace

TEST(Hochschild, EvaluateExamples) {
  EXPECT_EQ(evaluate(C("1 ; 1", 1), {parse_poly("x1^2", 1)}), parse_poly("2*x1", 1));
  Cochain p = C("x2 ; 1,0 | 1,0", 2);
  EXPECT_EQ(evaluate(p, {parse_poly("x1", 2), parse_poly("x1*x2", 2)}), parse_poly("x2^2", 2));
  EXPECT_TRUE(evaluate(p, {Poly(2, 1), parse_poly("x1*x2", 2)}).is_zero());
  EXPECT_THROW(evaluate(p, {Poly(2, 1)}), std::invalid_argument);
  EXPECT_THROW(C("1 ; 0,0", 2), std::invalid_argument);
}

TEST(Hochschild, DifferentialExamples) {
  EXPECT_TRUE(hochschild_d(C("x1^2 + x2 ;", 2)).is_zero());
  EXPECT_TRUE(hochschild_d(C("x1*x2 ; 1,0\nx1 ; 0,1", 2)).is_zero());
  EXPECT_EQ(hochschild_d(C("1 ; 2", 1)), C("-2 ; 1 | 1", 1));
}

TEST(Hochschild, DifferentialMatchesClosedFormulaOnMonomials) {
  std::mt19937 rng(41);
  auto pool = monomial_args(2, 2);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = trial % 3;
    Cochain p = random_cochain(rng, 2, k, 2, 2, 3);
    Cochain dp = hochschild_d(p);
    for_tuples(pool, k + 1, [&](const std::vector<Poly>& a) {
      Poly expect = a[0] * evaluate(p, std::vector<Poly>(a.begin() + 1, a.end()));
      for (int i = 0; i < k; ++i) {
        std::vector<Poly> m(a.begin(), a.begin() + i);
        m.push_back(a[i] * a[i + 1]);
        m.insert(m.end(), a.begin() + i + 2, a.end());
        expect += evaluate(p, m) * Rat(sgn_pow(i + 1));
      }
      expect += evaluate(p, std::vector<Poly>(a.begin(), a.end() - 1)) * a[k] * Rat(sgn_pow(k + 1));
      ASSERT_EQ(evaluate(dp, a), expect);
    });
  }
}

TEST(Hochschild, CupExamples) {
  EXPECT_EQ(cup(C("x1 ;", 1), C("x1^2 ;", 1)), C("x1^3 ;", 1));
  EXPECT_EQ(cup(C("1 ; 1", 1), C("1 ; 1", 1)), C("1 ; 1 | 1", 1));
}

TEST(Hochschild, CupAssociativeByEvaluation) {
  std::mt19937 rng(8);
  auto pool = monomial_args(2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    Cochain p = random_cochain(rng, 2, 1, 2, 1, 2), q = random_cochain(rng, 2, trial % 2, 2, 1, 2),
            r = random_cochain(rng, 2, 1, 1, 1, 2);
    Cochain lhs = cup(cup(p, q), r);
    EXPECT_EQ(lhs, cup(p, cup(q, r)));
    for_tuples(pool, lhs.arity(), [&](const std::vector<Poly>& a) {
      std::vector<Poly> a1(a.begin(), a.begin() + 1), a2(a.begin() + 1, a.begin() + 1 + q.arity()),
          a3(a.begin() + 1 + q.arity(), a.end());
      ASSERT_EQ(evaluate(lhs, a), evaluate(p, a1) * evaluate(q, a2) * evaluate(r, a3));
    });
  }
}

TEST(Hochschild, BraceExamples) {
  EXPECT_EQ(brace(C("x2 ; 1,0", 2), C("x1^2*x2 ;", 2)), C("2*x1*x2^2 ;", 2));
  EXPECT_TRUE(brace(C("x1 ;", 1), C("1 ; 1", 1)).is_zero());
  EXPECT_EQ(brace(C("1 ; 1", 1), C("1 ; 1", 1)), C("1 ; 2", 1));
  EXPECT_TRUE(brace(C("1 ; 1", 1), {C("1 ; 1", 1), C("1 ; 1", 1)}).is_zero());
}

TEST(Hochschild, BraceMatchesEvaluationOracle) {
  std::mt19937 rng(123);
  auto pool = monomial_args(2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain p = random_cochain(rng, 2, 1 + trial % 3, 2, 1, 3);
    std::vector<Cochain> qs;
    const int m = 1 + trial % p.arity();
    for (int j = 0; j < m; ++j) qs.push_back(random_cochain(rng, 2, (trial + j) % 3, 2, 1, 2));
    Cochain b = brace(p, qs);
    if (b.arity() > 3) continue;
    for_tuples(pool, b.arity(), [&](const std::vector<Poly>& a) { ASSERT_EQ(evaluate(b, a), brace_oracle(p, qs, a)); });
  }
}

TEST(Hochschild, BracketExamples) {
  EXPECT_TRUE(gerst_bracket(C("x1 ;", 1), C("x1^2 ;", 1)).is_zero());
  EXPECT_EQ(gerst_bracket(C("1 ; 1", 1), C("x1^2 ;", 1)), C("2*x1 ;", 1));
  EXPECT_EQ(gerst_bracket(C("1 ; 1", 1), C("x1 ; 1", 1)), C("1 ; 1", 1));
}

TEST(Hochschild, BracketMatchesSchoutenInLowDegree) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    polyalg::Polyvector u(2, trial % 2), v(2, (trial / 2) % 2);
    for (auto* w : {&u, &v})
      for (const auto& idx : polyalg::index_tuples(2, w->degree()))
        for (const auto& c : monomial_args(2, 2)) w->add_term(idx, c * Rat(val(rng)));
    EXPECT_EQ(gerst_bracket(hkr(u), hkr(v)), hkr(polyalg::schouten(u, v)));
  }
}

TEST(Hochschild, HkrExamples) {
  EXPECT_EQ(hkr(parse_polyvector("x1^2", 1)), C("x1^2 ;", 1));
  EXPECT_EQ(hkr(parse_polyvector("d1", 2)), C("1 ; 1,0", 2));
  EXPECT_EQ(hkr(parse_polyvector("d1^d2", 2)), C("1/2 ; 1,0 | 0,1\n-1/2 ; 0,1 | 1,0", 2));
}

TEST(Hochschild, TextFormatRoundTrip) {
  Cochain c = C("3/2*x1 + x2 ; 1,0 | 0,2\n-1 ; 1,1 | 1,0", 2);
  EXPECT_EQ(parse_cochain(to_string(c), 2), c);
  EXPECT_EQ(to_string(C("0", 2, 3)), "0");
  EXPECT_EQ(to_string(C("x1 ;", 1)), "x1 ;");
  EXPECT_THROW(C("x1 ; 1 | a", 1), std::invalid_argument);
  EXPECT_THROW(C("x1 ; 1,0", 1), std::invalid_argument);
}

TEST(HochschildGrid, DifferentialSquaresToZero) {
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& p : grid(n, 3, 2, 2)) ASSERT_TRUE(hochschild_d(hochschild_d(p)).is_zero()) << to_string(p);
}

TEST(HochschildGrid, DifferentialIsDerivationOfBracket) {
  // d[P,Q] = (-1)^{|Q|} [dP,Q] + [P,dQ] for the closed-formula d.
  for (std::size_t n = 1; n <= 2; ++n) {
    auto g = grid(n, 3, 2, 2);
    for (const auto& p : g)
      for (const auto& q : g) {
        if (p.arity() + q.arity() > 3) continue;
        Cochain lhs = hochschild_d(gerst_bracket(p, q));
        Cochain rhs = Rat(sgn_pow(q.shifted())) * gerst_bracket(hochschild_d(p), q) + gerst_bracket(p, hochschild_d(q));
        ASSERT_EQ(lhs, rhs) << to_string(p) << " || " << to_string(q);
      }
  }
}

TEST(HochschildGrid, WeightIsPreserved) {
  for (const auto& p : grid(2, 2, 2, 2)) {
    const auto& [s, c] = *p.terms().begin();
    const int w = term_weight(s, c);
    const Cochain dp = hochschild_d(p);
    for (const auto& [s2, c2] : dp.terms())
      for (const auto& [e, v] : c2.terms()) EXPECT_EQ(term_weight(s2, Poly::monomial(e)), w);
  }
}

TEST(HochschildProperty, PreJacobi) {
  std::mt19937 rng(20);
  auto pool = monomial_args(2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain p = random_cochain(rng, 2, 2 + trial % 2, 2, 1, 2);
    Cochain q1 = random_cochain(rng, 2, trial % 3, 2, 1, 2), q2 = random_cochain(rng, 2, (trial / 3) % 2, 2, 1, 2);
    const int s = sgn_pow(static_cast<long>(q1.shifted()) * q2.shifted());
    Cochain assoc12 = brace(brace(p, q1), q2) - brace(p, brace(q1, q2));
    Cochain assoc21 = brace(brace(p, q2), q1) - brace(p, brace(q2, q1));
    Cochain rhs = brace(p, {q1, q2}) + Rat(s) * brace(p, {q2, q1});
    ASSERT_EQ(assoc12, rhs);
    // graded symmetry of the associator
    ASSERT_TRUE((assoc12 - Rat(s) * assoc21).is_zero());
    if (rhs.arity() <= 3)
      for_tuples(pool, rhs.arity(), [&](const std::vector<Poly>& a) {
        ASSERT_EQ(evaluate(assoc12, a), brace_oracle(p, {q1, q2}, a) + Rat(s) * brace_oracle(p, {q2, q1}, a));
      });
  }
}

TEST(HochschildProperty, BracketJacobi) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Cochain p = random_cochain(rng, 2, trial % 3, 2, 2, 2), q = random_cochain(rng, 2, (trial + 1) % 3, 2, 2, 2),
            r = random_cochain(rng, 2, (trial / 3) % 3, 2, 2, 2);
    const int s = sgn_pow(static_cast<long>(p.shifted()) * q.shifted());
    EXPECT_EQ(gerst_bracket(p, gerst_bracket(q, r)),
              gerst_bracket(gerst_bracket(p, q), r) + Rat(s) * gerst_bracket(q, gerst_bracket(p, r)));
  }
}

TEST(HochschildProperty, HomotopySignAuditHasUniqueSurvivor) {
  std::mt19937 rng(17);
  std::vector<std::pair<Cochain, Cochain>> samples;
  for (int trial = 0; trial < 30; ++trial)
    samples.emplace_back(random_cochain(rng, 2, trial % 3, 2, 1, 2), random_cochain(rng, 2, (trial / 3) % 3, 2, 1, 2));
  std::vector<int> survivors;
  for (int choice = 0; choice < kHomotopySignChoices; ++choice) {
    bool ok = true;
    for (const auto& [p, q] : samples)
      if (!homotopy_residual(p, q, choice).is_zero()) {
        ok = false;
        break;
      }
    if (ok) survivors.push_back(choice);
  }
  ASSERT_EQ(survivors.size(), 1u);
  EXPECT_EQ(survivors[0], kHomotopySign);
}

TEST(Hochschild, HkrLandsInCocyclesAndIsInjective) {
  for (int k = 0; k <= 2; ++k)
    for (int w = -k; w <= 2 - k; ++w) {
      std::vector<exactlin::SparseVec> images;
      std::map<std::pair<Slots, Exponent>, std::size_t> index;
      for (const auto& idx : polyalg::index_tuples(2, k))
        for (const auto& e : polyalg::monomials_of_degree(2, w + k)) {
          Cochain h = hkr(polyalg::Polyvector::basis(2, idx, Poly::monomial(e)));
          EXPECT_TRUE(hochschild_d(h).is_zero());
          exactlin::SparseVec v;
          for (const auto& [s, c] : h.terms())
            for (const auto& [m, x] : c.terms()) {
              auto it = index.emplace(std::make_pair(s, m), index.size()).first;
              v.emplace(it->second, x);
            }
          images.push_back(v);
        }
      EXPECT_EQ(exactlin::Subspace::span(index.size(), images).dim(), images.size());
    }
}

TEST(Hochschild, HHDimsExamples) {
  for (int w = -2; w <= 2; ++w) EXPECT_EQ(hh_dims(1, 2, w, 4).dim_hh, 0u);
  EXPECT_EQ(hh_dims(2, 2, -2, 2).dim_hh, 1u);
  EXPECT_EQ(hh_dims(1, 0, 3, 3).dim_hh, 1u);
  EXPECT_TRUE(hh_dims(1, 0, 3, 2).truncated);
}

TEST(Hochschild, HHDimsMatchPolyvectors) {
  for (std::size_t n = 1; n <= 2; ++n)
    for (int k = 0; k <= 2; ++k)
      for (int w = -k; w <= 1; ++w) {
        HHDims d = hh_dims(n, k, w, w + k);
        EXPECT_FALSE(d.truncated);
        EXPECT_EQ(d.dim_hh, polyvector_weight_dim(n, k, w)) << n << " " << k << " " << w;
        EXPECT_EQ(d.dim_hh, d.dim_cocycles - d.dim_coboundaries);
      }
}

TEST(Hochschild, HkrClassesSpanCohomology) {
  for (std::size_t n = 1; n <= 2; ++n)
    for (int k = 0; k <= static_cast<int>(n) + 1; ++k)
      for (int w = -k; w <= 2; ++w) EXPECT_EQ(hkr_class_rank(n, k, w), hh_dims(n, k, w, w + k).dim_hh) << n << k << w;
}
