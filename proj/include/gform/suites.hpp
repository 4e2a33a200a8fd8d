#ifndef GFORM_SUITES_HPP
#define GFORM_SUITES_HPP

// Verification suites shared by the command-line driver and the acceptance
// runner. Every suite is deterministic for a fixed configuration.

#include "gform/cooperadic.hpp"
#include "gform/exactlin.hpp"
#include "gform/formality.hpp"
#include "gform/hochschild.hpp"
#include "gform/polyalg.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace gform {
namespace suites {

using nlohmann::json;

struct RunConfig {
  int vars = 2;
  int max_weight = 2;
  int max_arity = 3;
  int max_factors = 3;
  int max_word_len = 3;
  int max_coef_deg = 2;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hkr",  "schouten", "braces",   "xi",  "sigma",
                                              "obstruction", "cobar", "harrison", "witt"};
  return names;
}

struct SuiteResult {
  std::string suite;
  json budget = json::object();
  std::size_t checked = 0;
  std::vector<std::string> failures;
  json dims = json::object();

  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) failures.push_back(what);
  }
  /// Same, with the message built only on failure.
  template <class F>
  void expect_lazy(bool cond, F&& what) {
    ++checked;
    if (!cond) failures.push_back(what());
  }
  void absorb(const formality::CheckReport& r, const std::string& prefix) {
    checked += r.checked;
    for (const auto& f : r.failures) failures.push_back(prefix + f);
  }
  bool ok() const { return failures.empty(); }

  json to_json() const {
    return json{{"suite", suite}, {"budget", budget}, {"checked", checked}, {"failures", failures}, {"dims", dims}};
  }
};

namespace detail {

inline formality::XiBudget xi_budget(const RunConfig& c) { return {c.max_factors, c.max_word_len, c.max_coef_deg}; }

inline json xi_budget_json(const RunConfig& c) {
  return json{{"vars", c.vars}, {"max_factors", c.max_factors}, {"max_word_len", c.max_word_len},
              {"max_coef_deg", c.max_coef_deg}};
}

inline hochschild::Cochain random_cochain(std::mt19937_64& rng, std::size_t n, int arity, int max_order,
                                          int max_coef, int nterms) {
  const auto slots = hochschild::slot_tuples(n, arity, max_order);
  std::vector<polyalg::Poly> coefs;
  for (int d = 0; d <= max_coef; ++d)
    for (const auto& e : polyalg::monomials_of_degree(n, d)) coefs.push_back(polyalg::Poly::monomial(e));
  std::uniform_int_distribution<std::size_t> ps(0, slots.size() - 1), pc(0, coefs.size() - 1);
  std::uniform_int_distribution<int> val(-2, 2);
  hochschild::Cochain c(n, arity);
  for (int t = 0; t < nterms; ++t) c.add_term(slots[ps(rng)], coefs[pc(rng)] * Rat(val(rng)));
  return c;
}

inline int sgn_pow(long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace detail

// ---------------------------------------------------------------------------

inline SuiteResult run_hkr(const RunConfig& c) {
  SuiteResult r;
  r.suite = "hkr";
  r.budget = json{{"vars", c.vars}, {"max_arity", c.max_arity}, {"max_weight", c.max_weight}};
  const std::size_t n = static_cast<std::size_t>(c.vars);
  json rows = json::array();
  for (int k = 0; k <= std::min(c.max_arity, c.vars + 1); ++k)
    for (int w = -k; w <= c.max_weight; ++w) {
      const auto d = hochschild::hh_dims(n, k, w, w + k);
      const std::size_t pv = hochschild::polyvector_weight_dim(n, k, w);
      const std::size_t rank = hochschild::hkr_class_rank(n, k, w);
      const std::string tag = "k=" + std::to_string(k) + " w=" + std::to_string(w);
      r.expect(!d.truncated, "truncated " + tag);
      r.expect(d.dim_hh == pv, "dim HH != dim V " + tag);
      r.expect(rank == d.dim_hh, "hkr classes do not span " + tag);
      rows.push_back(json{{"arity", k}, {"weight", w}, {"hh", d.dim_hh}, {"polyvectors", pv},
                          {"hkr_rank", rank}, {"cocycles", d.dim_cocycles}, {"coboundaries", d.dim_coboundaries}});
    }
  r.dims["hh"] = rows;
  return r;
}

inline SuiteResult run_schouten(const RunConfig& c) {
  using polyalg::Polyvector;
  SuiteResult r;
  r.suite = "schouten";
  r.budget = json{{"vars", c.vars}, {"max_coef_deg", c.max_coef_deg}, {"max_degree", 2}};
  json pools = json::object();
  auto eq = [](const Polyvector& a, const Polyvector& b) { return (a - b).is_zero(); };
  for (std::size_t n = 1; n <= static_cast<std::size_t>(c.vars); ++n) {
    std::vector<Polyvector> pool;
    for (int k = 0; k <= std::min<int>(n, 2); ++k)
      for (const auto& idx : polyalg::index_tuples(n, k))
        for (int d = 0; d <= c.max_coef_deg; ++d)
          for (const auto& e : polyalg::monomials_of_degree(n, d))
            pool.push_back(Polyvector::basis(n, idx, polyalg::Poly::monomial(e)));
    pools[std::to_string(n)] = pool.size();
    for (const auto& p : pool)
      for (const auto& q : pool) {
        const int sp = p.degree() - 1, sq = q.degree() - 1;
        auto tag = [&] { return polyalg::to_string(p) + " , " + polyalg::to_string(q); };
        r.expect_lazy(eq(polyalg::schouten(p, q), polyalg::schouten(q, p) * Rat(-detail::sgn_pow(sp * sq))),
                      [&] { return "antisymmetry " + tag(); });
        r.expect_lazy(eq(polyalg::wedge(p, q), polyalg::wedge(q, p) * Rat(detail::sgn_pow(p.degree() * q.degree()))),
                      [&] { return "wedge commutativity " + tag(); });
        for (const auto& s : pool) {
          const Polyvector jac = polyalg::schouten(p, polyalg::schouten(q, s)) -
                                 polyalg::schouten(polyalg::schouten(p, q), s) -
                                 polyalg::schouten(q, polyalg::schouten(p, s)) * Rat(detail::sgn_pow(sp * sq));
          r.expect_lazy(jac.is_zero(), [&] { return "Jacobi " + tag() + " , " + polyalg::to_string(s); });
          const Polyvector leib = polyalg::schouten(p, polyalg::wedge(q, s)) -
                                  polyalg::wedge(polyalg::schouten(p, q), s) -
                                  polyalg::wedge(q, polyalg::schouten(p, s)) * Rat(detail::sgn_pow(sp * q.degree()));
          r.expect_lazy(leib.is_zero(), [&] { return "Leibniz " + tag() + " , " + polyalg::to_string(s); });
        }
      }
  }
  r.dims["pool"] = pools;
  return r;
}

inline SuiteResult run_braces(const RunConfig& c) {
  using hochschild::Cochain;
  SuiteResult r;
  r.suite = "braces";
  r.budget = json{{"vars", c.vars}, {"max_arity", c.max_arity}, {"max_order", 2}, {"max_coef_deg", c.max_coef_deg},
                  {"seed", c.seed}};
  std::size_t grid_size = 0, jacobi_triples = 0;
  const int A = c.max_arity;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(c.vars); ++n) {
    std::vector<Cochain> grid;
    for (int a = 0; a <= A; ++a) {
      auto b = hochschild::basis_cochains(n, a, 2, c.max_coef_deg);
      grid.insert(grid.end(), b.begin(), b.end());
    }
    const std::size_t G = grid.size();
    grid_size += G;
    auto ar = [&](std::size_t i) { return grid[i].arity(); };
    auto sh = [&](std::size_t i) { return static_cast<long>(grid[i].shifted()); };
    const std::string nt = "n=" + std::to_string(n) + " ";

    for (const auto& p : grid)
      r.expect_lazy(hochschild::hochschild_d(hochschild::hochschild_d(p)).is_zero(), [&] { return nt + "d^2 " + hochschild::to_string(p); });

    // brackets of grid pairs i <= j, as far as the Jacobi triples need them
    std::vector<Cochain> pair(G * (G + 1) / 2);
    auto slot = [&](std::size_t i, std::size_t j) -> Cochain& { return pair[j * (j + 1) / 2 + i]; };
    for (std::size_t j = 0; j < G; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        if (ar(i) + ar(j) <= A + 2) slot(i, j) = hochschild::gerst_bracket(grid[i], grid[j]);

    for (std::size_t j = 0; j < G; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (ar(i) + ar(j) > A + 1) continue;
        const Cochain swapped = hochschild::gerst_bracket(grid[j], grid[i]);
        r.expect_lazy(swapped == Rat(-detail::sgn_pow(sh(i) * sh(j))) * slot(i, j), [&] {
          return nt + "antisymmetry " + hochschild::to_string(grid[i]) + " || " + hochschild::to_string(grid[j]);
        });
      }

    for (const auto& p : grid)
      for (const auto& q : grid) {
        if (p.arity() + q.arity() > A) continue;
        const Cochain lhs = hochschild::hochschild_d(hochschild::gerst_bracket(p, q));
        const Cochain rhs = Rat(detail::sgn_pow(q.shifted())) *
                                hochschild::gerst_bracket(hochschild::hochschild_d(p), q) +
                            hochschild::gerst_bracket(p, hochschild::hochschild_d(q));
        r.expect_lazy(lhs == rhs, [&] {
          return nt + "derivation " + hochschild::to_string(p) + " || " + hochschild::to_string(q);
        });
      }

    // The bracket is graded antisymmetric by construction (checked above on
    // the grid), so the Jacobiator is totally graded antisymmetric and sorted
    // triples cover every ordering.
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = i; j < G; ++j)
        for (std::size_t k = j; k < G; ++k) {
          const int out = ar(i) + ar(j) + ar(k) - 2;
          if (out > A || out < 0) continue;
          ++jacobi_triples;
          const Cochain lhs = hochschild::gerst_bracket(grid[i], slot(j, k));
          const Cochain rhs = hochschild::gerst_bracket(slot(i, j), grid[k]) +
                              Rat(detail::sgn_pow(sh(i) * sh(j))) * hochschild::gerst_bracket(grid[j], slot(i, k));
          r.expect_lazy(lhs == rhs, [&] {
            return nt + "Jacobi " + hochschild::to_string(grid[i]) + " || " + hochschild::to_string(grid[j]) +
                   " || " + hochschild::to_string(grid[k]);
          });
        }
  }
  // higher pre-Jacobi and homotopy commutativity on random triples
  std::mt19937_64 rng(c.seed);
  const std::size_t n = static_cast<std::size_t>(c.vars);
  std::vector<std::pair<Cochain, Cochain>> samples;
  for (int t = 0; t < 20; ++t) {
    const Cochain p = detail::random_cochain(rng, n, 2 + t % 2, 2, 1, 2);
    const Cochain q1 = detail::random_cochain(rng, n, t % 3, 2, 1, 2);
    const Cochain q2 = detail::random_cochain(rng, n, (t / 3) % 2, 2, 1, 2);
    const int s = detail::sgn_pow(static_cast<long>(q1.shifted()) * q2.shifted());
    const Cochain assoc = hochschild::brace(hochschild::brace(p, q1), q2) - hochschild::brace(p, hochschild::brace(q1, q2));
    r.expect(assoc == hochschild::brace(p, {q1, q2}) + Rat(s) * hochschild::brace(p, {q2, q1}),
             "pre-Jacobi trial " + std::to_string(t));
    const Cochain assoc21 = hochschild::brace(hochschild::brace(p, q2), q1) - hochschild::brace(p, hochschild::brace(q2, q1));
    r.expect((assoc - Rat(s) * assoc21).is_zero(), "associator symmetry trial " + std::to_string(t));
    r.expect(hochschild::homotopy_residual(q1, p, hochschild::kHomotopySign).is_zero(),
             "homotopy trial " + std::to_string(t));
    samples.emplace_back(q1, p);
    samples.emplace_back(q2, q1);
  }
  std::vector<int> survivors;
  for (int choice = 0; choice < hochschild::kHomotopySignChoices; ++choice) {
    bool alive = true;
    for (const auto& [p, q] : samples)
      if (!hochschild::homotopy_residual(p, q, choice).is_zero()) {
        alive = false;
        break;
      }
    if (alive) survivors.push_back(choice);
  }
  r.expect(survivors.size() == 1 && survivors[0] == hochschild::kHomotopySign, "homotopy sign table not unique");
  r.dims["grid_size"] = grid_size;
  r.dims["jacobi_triples"] = jacobi_triples;
  r.dims["homotopy_survivors"] = survivors;
  r.dims["homotopy_candidates"] = hochschild::kHomotopySignChoices;
  return r;
}

inline SuiteResult run_xi(const RunConfig& c) {
  SuiteResult r;
  r.suite = "xi";
  r.budget = detail::xi_budget_json(c);
  json sizes = json::object();
  for (int n = 1; n <= c.vars; ++n) {
    r.absorb(formality::xi_check(static_cast<std::size_t>(n), detail::xi_budget(c)), "n=" + std::to_string(n) + " ");
    sizes[std::to_string(n)] = formality::xi_basis(static_cast<std::size_t>(n), detail::xi_budget(c)).size();
  }
  r.dims["basis_size"] = sizes;
  return r;
}

inline SuiteResult run_sigma(const RunConfig& c) {
  SuiteResult r;
  r.suite = "sigma";
  r.budget = detail::xi_budget_json(c);
  for (int n = 1; n <= c.vars; ++n)
    r.absorb(formality::verify_sigma_chain_map(static_cast<std::size_t>(n), detail::xi_budget(c)),
             "n=" + std::to_string(n) + " ");
  int survivors = 0;
  for (int h : {-1, 1})
    for (int b : {-1, 1})
      if (formality::verify_sigma_chain_map(1, {2, 2, 1}, {h, b}).ok()) ++survivors;
  r.expect(survivors == 1, "Xi sign pair not unique");
  r.dims["sign_survivors"] = survivors;
  return r;
}

inline SuiteResult run_obstruction(const RunConfig& c) {
  SuiteResult r;
  r.suite = "obstruction";
  const std::size_t n = static_cast<std::size_t>(std::max(c.vars, 3));
  r.budget = json{{"vars", n}, {"seed", c.seed}, {"instances", 6}};
  for (auto [which, name] : {std::pair{formality::Obstruction::VFF, "vff"}, std::pair{formality::Obstruction::VFV, "vfv"}}) {
    const auto res = formality::obstruction_solve(which, c.seed, 6, n);
    r.expect(res.unique(), std::string(name) + " solution not unique");
    const auto deg = formality::obstruction_solve(which, c.seed, 6, n, true);
    r.dims[name] = json{{"unknowns", res.unknowns}, {"rows", res.rows}, {"rank", res.rank},
                        {"solution", res.unique() ? json::array({0, 0}) : json(nullptr)},
                        {"degenerate_rank", deg.rank}, {"degenerate_unique", deg.unique()}};
  }
  return r;
}

inline SuiteResult run_cobar(const RunConfig& c) {
  SuiteResult r;
  r.suite = "cobar";
  const formality::XiBudget pair_budget{2, 2, std::min(c.max_coef_deg, 1)};
  r.budget = detail::xi_budget_json(c);
  r.budget["max_leaves"] = 4;
  r.budget["pair_budget"] = json{{"max_factors", 2}, {"max_word_len", 2}, {"max_coef_deg", pair_budget.max_coef_deg}};
  r.budget["seed"] = c.seed;
  for (int n = 1; n <= c.vars; ++n) {
    formality::XiCobar cb(static_cast<std::size_t>(n), 4);
    const std::string tag = "n=" + std::to_string(n) + " ";
    r.absorb(formality::cobar_check(cb, detail::xi_budget(c)), tag);
    r.absorb(formality::nu_chain_check(cb, detail::xi_budget(c), pair_budget, c.seed), tag);
    r.absorb(formality::nu2_chain_check(static_cast<std::size_t>(n), detail::xi_budget(c)), tag);
  }
  int survivors = 0;
  const auto basis = formality::xi_basis(1, {2, 2, 1});
  for (int p : {1, -1})
    for (int b : {1, -1})
      for (int t1 : {0, 1})
        for (int t2 : {0, 1}) {
          formality::XiCobar cb(1, 4, formality::CobarSigns{1, p, b, t1, t2});
          bool alive = true;
          for (const auto& x : basis) {
            const auto dg = cb.d_generator(cb.gen_id(x));
            alive = alive && cb.d(dg).empty() && cb.nu(dg).is_zero();
          }
          survivors += alive;
        }
  r.expect(survivors == 1, "cobar sign table not unique");
  r.dims["sign_survivors"] = survivors;
  return r;
}

inline SuiteResult run_harrison(const RunConfig& c) {
  SuiteResult r;
  r.suite = "harrison";
  const int weight_cap = std::max(c.max_weight, 1);
  r.budget = json{{"vars", c.vars}, {"weight_cap", weight_cap}, {"length_cap", c.max_word_len}};
  json rows = json::array();
  for (const auto& row : formality::harrison_window(static_cast<std::size_t>(c.vars), weight_cap, c.max_word_len)) {
    json h = json::object();
    for (const auto& [k, d] : row.homology) h[std::to_string(k)] = d;
    rows.push_back(json{{"weight", row.weight}, {"complete", row.complete}, {"homology", h},
                        {"dim_A", row.expected_h0}});
    if (!row.complete) continue;
    for (const auto& [k, d] : row.homology)
      r.expect(d == (k == 0 ? row.expected_h0 : 0u),
               "weight " + std::to_string(row.weight) + " degree " + std::to_string(k));
  }
  r.dims["window"] = rows;
  return r;
}

inline SuiteResult run_witt(const RunConfig& c) {
  using cooperadic::Letter;
  using cooperadic::Word;
  SuiteResult r;
  r.suite = "witt";
  r.budget = json{{"alphabet", 3}, {"length", 4}};
  (void)c;
  json table = json::array();
  for (std::size_t q = 1; q <= 3; ++q) {
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < q; ++i) letters.push_back(Letter::function({static_cast<int>(i) + 1}));
    for (std::size_t l = 1; l <= 4; ++l) {
      // rank of lie_normalize over all words of length l
      std::map<Word, std::size_t> coords;
      std::vector<exactlin::SparseVec> images;
      std::vector<std::size_t> digits(l, 0);
      while (true) {
        Word w;
        for (auto d : digits) w.push_back(letters[d]);
        exactlin::SparseVec v;
        for (const auto& [u, x] : cooperadic::lie_normalize(cooperadic::single(w), cooperadic::Grading::V))
          v.emplace(coords.emplace(u, coords.size()).first->second, x);
        images.push_back(v);
        std::size_t i = 0;
        while (i < l && ++digits[i] == q) digits[i++] = 0;
        if (i == l) break;
      }
      const std::size_t rank = exactlin::Subspace::span(coords.size() + 1, images).dim();
      const std::size_t witt = cooperadic::witt_dim(q, l);
      r.expect(rank == witt, "q=" + std::to_string(q) + " l=" + std::to_string(l));
      table.push_back(json{{"alphabet", q}, {"length", l}, {"rank", rank}, {"witt", witt}});
    }
  }
  r.dims["lyndon"] = table;
  // reconstruct inverts (head, cobracket) on all normal words of length <= 4
  const std::vector<Letter> mixed{Letter::function({1}), Letter::function({2}), Letter::derivation({0}, 0)};
  std::size_t words = 0;
  for (auto g : {cooperadic::Grading::V, cooperadic::Grading::W}) {
    Word cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (!cur.empty())
        for (const auto& w : cooperadic::normal_words(cur, g)) {
          const cooperadic::WordSum head = w.size() == 1 ? cooperadic::single(w) : cooperadic::WordSum{};
          r.expect(cooperadic::reconstruct(head, cooperadic::cobracket(cooperadic::single(w), g), g) ==
                       cooperadic::single(w),
                   "reconstruct " + cooperadic::to_string(w));
          ++words;
        }
      if (cur.size() == 4) return;
      for (std::size_t i = from; i < mixed.size(); ++i) {
        cur.push_back(mixed[i]);
        rec(i);
        cur.pop_back();
      }
    };
    rec(0);
  }
  r.dims["reconstructed_words"] = words;
  return r;
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& c) {
  if (name == "hkr") return run_hkr(c);
  if (name == "schouten") return run_schouten(c);
  if (name == "braces") return run_braces(c);
  if (name == "xi") return run_xi(c);
  if (name == "sigma") return run_sigma(c);
  if (name == "obstruction") return run_obstruction(c);
  if (name == "cobar") return run_cobar(c);
  if (name == "harrison") return run_harrison(c);
  if (name == "witt") return run_witt(c);
  throw std::invalid_argument("unknown suite: " + name);
}

/// Report for a whole run: suites in registry order.
inline json run_report(const RunConfig& c, std::vector<SuiteResult>* results = nullptr) {
  json out = json::array();
  for (const auto& name : suite_names()) {
    if (!c.suites.empty() && std::find(c.suites.begin(), c.suites.end(), name) == c.suites.end()) continue;
    SuiteResult r = run_suite(name, c);
    out.push_back(r.to_json());
    if (results) results->push_back(std::move(r));
  }
  return out;
}

}  // namespace suites
}  // namespace gform

#endif  // GFORM_SUITES_HPP
