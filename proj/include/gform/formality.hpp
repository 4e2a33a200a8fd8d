#ifndef GFORM_FORMALITY_HPP
#define GFORM_FORMALITY_HPP

// The sub-coalgebra Xi(A) of the bar construction, its codifferential and
// cobracket, the values of the Hochschild codifferential on Xi(A), the
// obstruction systems for the ternary values, the free Gerstenhaber algebra
// on Xi(A) with its cobar differential and the comparison maps to polyvector
// fields.
//
// A Xi monomial y_1...y_k is a graded-symmetric product of normal Lie words
// X_i (grading W) carrying at most one derivation letter each. The factor
// y = s^{-1} X has degree |X| - 1. As a generator of the cobar construction
// the monomial has degree sum |y_i| + 2, so a single letter <a> sits in the
// polyvector degree of a.

#include "gform/cooperadic.hpp"
#include "gform/exactlin.hpp"
#include "gform/hochschild.hpp"
#include "gform/polyalg.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gform {
namespace formality {

using cooperadic::Grading;
using cooperadic::Letter;
using cooperadic::SymMono;
using cooperadic::SymPair;
using cooperadic::SymPairSum;
using cooperadic::SymSum;
using cooperadic::Word;
using cooperadic::WordSum;
using hochschild::Cochain;
using polyalg::Exponent;
using polyalg::Poly;
using polyalg::Polyvector;

using XiMonomial = SymMono;
using XiSum = SymSum;

struct XiBudget {
  int max_factors = 3;
  int max_word_len = 3;
  int max_coef_deg = 2;
};

/// Integer W-degree of a word: sum of (|a| - 1).
inline int word_degree(const Word& w) {
  int d = 0;
  for (const auto& a : w) d += a.degree() - 1;
  return d;
}

/// Parity of the factor s^{-1} X.
inline int xi_factor_parity(const Word& w) { return ((word_degree(w) - 1) % 2 + 2) % 2; }

/// Degree of the monomial as a cobar generator.
inline int xi_degree(const XiMonomial& m) {
  int d = 2;
  for (const auto& w : m) d += word_degree(w) - 1;
  return d;
}

inline int letter_count(const XiMonomial& m) {
  int l = 0;
  for (const auto& w : m) l += static_cast<int>(w.size());
  return l;
}

/// Increasing filtration: total number of letters minus one.
inline int filtration(const XiMonomial& m) { return letter_count(m) - 1; }

inline int coef_degree(const Word& w) {
  int d = 0;
  for (const auto& a : w) d += polyalg::total_degree(a.mono);
  return d;
}

inline int coef_degree(const XiMonomial& m) {
  int d = 0;
  for (const auto& w : m) d += coef_degree(w);
  return d;
}

/// Every factor carries at most one derivation letter.
inline bool satisfies_constraint(const XiMonomial& m) {
  for (const auto& w : m)
    if (cooperadic::derivation_count(w) > 1) return false;
  return true;
}

inline bool satisfies_constraint(const XiSum& s) {
  for (const auto& [m, c] : s)
    if (!satisfies_constraint(m)) return false;
  return true;
}

/// Letters of coefficient degree <= max_coef_deg, functions first. The unit
/// function is part of the alphabet unless `with_unit` is false.
inline std::vector<Letter> alphabet(std::size_t n, int max_coef_deg, bool with_unit = true) {
  std::vector<Letter> out;
  for (int d = with_unit ? 0 : 1; d <= max_coef_deg; ++d)
    for (const auto& e : polyalg::monomials_of_degree(n, d)) out.push_back(Letter::function(e));
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d <= max_coef_deg; ++d)
      for (const auto& e : polyalg::monomials_of_degree(n, d))
        out.push_back(Letter::derivation(e, static_cast<int>(i)));
  std::sort(out.begin(), out.end());
  return out;
}

/// Normal words (grading W) with at most one derivation letter inside the
/// word budget, ordered by length then word order.
inline std::vector<Word> xi_words(std::size_t n, int max_word_len, int max_coef_deg, bool with_unit = true) {
  const auto letters = alphabet(n, max_coef_deg, with_unit);
  std::vector<Word> out;
  Word cur;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int deg, int ders) {
    if (!cur.empty())
      for (const auto& w : cooperadic::normal_words(cur, Grading::W)) out.push_back(w);
    if (static_cast<int>(cur.size()) == max_word_len) return;
    for (std::size_t i = from; i < letters.size(); ++i) {
      const int d = deg + polyalg::total_degree(letters[i].mono);
      const int e = ders + (letters[i].kind == Letter::Derivation);
      if (d > max_coef_deg || e > 1) continue;
      cur.push_back(letters[i]);
      rec(i, d, e);
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// Monomial basis of the truncated Xi(A): products of at most max_factors
/// words, total coefficient degree <= max_coef_deg, odd factors not
/// repeated. Ordered by letter count, factor count, then monomial.
inline std::vector<XiMonomial> xi_basis(std::size_t n, const XiBudget& b, bool with_unit = true) {
  if (b.max_factors < 1 || b.max_word_len < 1 || b.max_coef_deg < 0)
    throw std::invalid_argument("xi_basis: budgets must be positive");
  auto words = xi_words(n, b.max_word_len, b.max_coef_deg, with_unit);
  std::sort(words.begin(), words.end());
  std::vector<XiMonomial> out;
  XiMonomial cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int deg) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == b.max_factors) return;
    for (std::size_t i = from; i < words.size(); ++i) {
      const int d = deg + coef_degree(words[i]);
      if (d > b.max_coef_deg) continue;
      if (!cur.empty() && cur.back() == words[i] && xi_factor_parity(words[i])) continue;
      cur.push_back(words[i]);
      rec(i, d);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const XiMonomial& a, const XiMonomial& c) {
    const auto ka = std::make_tuple(letter_count(a), a.size());
    const auto kc = std::make_tuple(letter_count(c), c.size());
    return ka != kc ? ka < kc : a < c;
  });
  return out;
}

// ---------------------------------------------------------------------------
// The codifferential of Xi(A)

/// Signs of the two parts of the codifferential:
///   d = harrison * sum_i (-1)^{|y_1|+..+|y_{i-1}|} (Harrison d on factor i)
///     + bracket  * sum_{i<j} kappa_ij (-1)^{|X_i|} s^{-1}[X_i, X_j] * rest
/// with kappa_ij the Koszul sign of moving y_i y_j to the front.
struct XiSigns {
  int harrison = -1;
  int bracket = -1;
};

inline void add_sorted(XiSum& out, XiMonomial m, const Rat& c) {
  const int s = cooperadic::sym_sort(m, xi_factor_parity);
  if (s != 0) cooperadic::add_to(out, m, s > 0 ? c : Rat(-c));
}

inline XiSum xi_d(const XiMonomial& m, const XiSigns& sg = {}) {
  XiSum out;
  const std::size_t k = m.size();
  std::vector<int> par(k), prefix(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    par[i] = xi_factor_parity(m[i]);
    prefix[i + 1] = prefix[i] + par[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    const int s = (prefix[i] % 2 ? -1 : 1) * sg.harrison;
    for (const auto& [w, c] : cooperadic::harrison_d(cooperadic::single(m[i]))) {
      XiMonomial r(m);
      r[i] = w;
      add_sorted(out, std::move(r), c * s);
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const int kappa = par[i] * prefix[i] + par[j] * (prefix[j] - par[i]);
      const int s = ((kappa + word_degree(m[i])) % 2 ? -1 : 1) * sg.bracket;
      XiMonomial rest;
      for (std::size_t l = 0; l < k; ++l)
        if (l != i && l != j) rest.push_back(m[l]);
      for (const auto& [w, c] : cooperadic::bialgebra_bracket_words(m[i], m[j])) {
        XiMonomial r{w};
        r.insert(r.end(), rest.begin(), rest.end());
        add_sorted(out, std::move(r), c * s);
      }
    }
  return out;
}

inline XiSum xi_d(const XiSum& s, const XiSigns& sg = {}) {
  XiSum out;
  for (const auto& [m, c] : s) cooperadic::add_all(out, xi_d(m, sg), c);
  return out;
}

// ---------------------------------------------------------------------------
// Cobracket and coproduct of Xi(A)

/// Koszul sign of reordering items with the given parities into `order`
/// (order[t] = index of the item placed at position t).
inline int reorder_sign(const std::vector<int>& parity, const std::vector<std::size_t>& order) {
  int s = 0;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b]) s += parity[order[a]] * parity[order[b]];
  return s % 2 ? -1 : 1;
}

/// Cobracket of a Xi monomial: the Lie cobracket of one factor, split
/// s^{-1}X -> (-1)^{|X'|} s^{-1}X' (x) s^{-1}X'', with the remaining factors
/// distributed over both sides (co-Leibniz). The odd cobracket passes the
/// factors before it with a Koszul sign.
inline SymPairSum xi_cobracket(const XiMonomial& m) {
  SymPairSum out;
  const std::size_t k = m.size();
  std::vector<int> par(k);
  int prefix = 0;
  for (std::size_t i = 0; i < k; ++i) par[i] = xi_factor_parity(m[i]);
  for (std::size_t i = 0; i < k; ++i) {
    const auto cob = cooperadic::cobracket(cooperadic::single(m[i]), Grading::W);
    std::vector<std::size_t> others;
    for (std::size_t l = 0; l < k; ++l)
      if (l != i) others.push_back(l);
    for (const auto& [p, c] : cob) {
      const int base = (prefix % 2 ? -1 : 1) * (word_degree(p.first) % 2 ? -1 : 1);
      // items: factors of m with y_i replaced by (y', y''); y' keeps index i,
      // y'' gets index k.
      std::vector<int> ip(par);
      ip[i] = xi_factor_parity(p.first);
      ip.push_back(xi_factor_parity(p.second));
      for (unsigned long mask = 0; mask < (1ul << others.size()); ++mask) {
        // position sequence before reordering: 0..i, k, i+1..k-1
        std::vector<std::size_t> before;
        for (std::size_t l = 0; l < k; ++l) {
          before.push_back(l);
          if (l == i) before.push_back(k);
        }
        std::vector<std::size_t> target{i};
        for (std::size_t t = 0; t < others.size(); ++t)
          if (mask & (1ul << t)) target.push_back(others[t]);
        target.push_back(k);
        for (std::size_t t = 0; t < others.size(); ++t)
          if (!(mask & (1ul << t))) target.push_back(others[t]);
        std::vector<std::size_t> rank(k + 1);
        for (std::size_t t = 0; t < before.size(); ++t) rank[before[t]] = t;
        std::vector<std::size_t> order;
        for (auto idx : target) order.push_back(rank[idx]);
        std::vector<int> bp;
        for (auto idx : before) bp.push_back(ip[idx]);
        int s = base * reorder_sign(bp, order);
        XiMonomial left{p.first}, right{p.second};
        for (std::size_t t = 0; t < others.size(); ++t)
          (mask & (1ul << t) ? left : right).push_back(m[others[t]]);
        s *= cooperadic::sym_sort(left, xi_factor_parity);
        s *= cooperadic::sym_sort(right, xi_factor_parity);
        if (s != 0) cooperadic::add_to(out, {left, right}, s > 0 ? c : Rat(-c));
      }
    }
    prefix += par[i];
  }
  return out;
}

inline SymPairSum xi_coproduct(const XiMonomial& m) { return cooperadic::sym_coproduct(m, xi_factor_parity); }

// ---------------------------------------------------------------------------
// Values of the Hochschild codifferential on Xi(A)

inline Cochain letter_cochain(const Letter& a) { return hochschild::hkr(a.payload()); }

inline int cochain_arity(const XiMonomial& m) { return std::max(0, xi_degree(m) + 1); }

/// m restricted to Xi(A): nonzero only on binary data.
///   <P1><P2>  -> (-1)^{|P1|} [P1,P2]_G
///   <P1,P2>   -> (-1)^{|P1|} P1 . P2
/// with |P| the cochain degree; single letters go to their Hochschild
/// differential (zero on A + Der(A)).
inline Cochain sigma_m_value(const XiMonomial& m, std::size_t n) {
  const int letters = letter_count(m);
  if (m.size() == 1 && letters == 1) return hochschild::hochschild_d(letter_cochain(m[0][0]));
  if (m.size() == 2 && letters == 2) {
    const Letter& a = m[0][0];
    Cochain r = hochschild::gerst_bracket(letter_cochain(a), letter_cochain(m[1][0]));
    return a.degree() % 2 ? r * Rat(-1) : r;
  }
  if (m.size() == 1 && letters == 2) {
    const Letter& a = m[0][0];
    Cochain r = hochschild::cup(letter_cochain(a), letter_cochain(m[0][1]));
    return a.degree() % 2 ? r * Rat(-1) : r;
  }
  return Cochain(n, cochain_arity(m));
}

/// Single-letter part of a Xi sum, embedded as a cochain.
inline Cochain corestriction_cochain(const XiSum& s, std::size_t n, int arity) {
  Cochain r(n, arity);
  for (const auto& [m, c] : s)
    if (m.size() == 1 && m[0].size() == 1) r += letter_cochain(m[0][0]) * c;
  return r;
}

struct CheckReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) failures.push_back(what);
  }
};

/// Structure constants on all letter pairs of the alphabet, then exact
/// agreement of sigma_m_value with the corestricted codifferential of Xi(A)
/// on every basis monomial.
inline CheckReport verify_sigma_chain_map(std::size_t n, const XiBudget& b, const XiSigns& sg = {}) {
  CheckReport rep;
  const auto letters = alphabet(n, b.max_coef_deg, true);
  for (const auto& a : letters)
    for (const auto& c : letters) {
      const Polyvector pa = a.payload(), pc = c.payload();
      const Cochain ca = letter_cochain(a), cc = letter_cochain(c);
      const std::string tag = cooperadic::to_string(a) + " , " + cooperadic::to_string(c);
      rep.expect(hochschild::gerst_bracket(ca, cc) == hochschild::hkr(polyalg::schouten(pa, pc)),
                 "bracket: " + tag);
      const Cochain w = hochschild::hkr(polyalg::wedge(pa, pc));
      if (a.degree() + c.degree() < 2) {
        rep.expect(hochschild::cup(ca, cc) == w, "cup: " + tag);
      } else {
        rep.expect((hochschild::cup(ca, cc) - hochschild::cup(cc, ca)) * Rat(1, 2) == w, "cup: " + tag);
      }
    }
  for (const auto& m : xi_basis(n, b, true)) {
    const int ar = cochain_arity(m);
    rep.expect(sigma_m_value(m, n) == corestriction_cochain(xi_d(m, sg), n, ar),
               "sigma: " + cooperadic::to_string(m));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Obstruction systems for the ternary values of m

enum class Obstruction { VFF, VFV };

struct ObstructionResult {
  Obstruction which = Obstruction::VFF;
  std::size_t unknowns = 2;
  std::size_t instances = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::vector<std::vector<Rat>> solutions;  // basis of the solution space
  bool unique() const { return rank == unknowns; }
};

namespace detail {

inline Poly random_poly(std::mt19937_64& rng, std::size_t n, int max_deg, std::size_t used_vars) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly p(n);
  for (int d = 0; d <= max_deg; ++d)
    for (const auto& e : polyalg::monomials_of_degree(n, d)) {
      bool inside = true;
      for (std::size_t i = used_vars; i < n; ++i) inside = inside && e[i] == 0;
      const int c = coef(rng);
      if (inside && c != 0) p.add_term(e, Rat(c));
    }
  return p;
}

inline Cochain random_function(std::mt19937_64& rng, std::size_t n, std::size_t used) {
  return Cochain::function(random_poly(rng, n, 2, used));
}

inline Cochain random_derivation(std::mt19937_64& rng, std::size_t n, std::size_t used, int max_deg) {
  Polyvector v(n, 1);
  for (std::size_t i = 0; i < used; ++i) v.add_term({static_cast<int>(i)}, random_poly(rng, n, max_deg, used));
  return hochschild::hkr(v);
}

inline Poly as_poly(const Cochain& c) {
  if (c.is_zero()) return Poly(c.nvars());
  if (c.arity() != 0) throw std::invalid_argument("as_poly: cochain of positive arity");
  return c.terms().begin()->second;
}

using Ansatz = std::vector<Cochain>;  // one arity-0 cochain per unknown

inline Ansatz add(Ansatz a, const Ansatz& b, int s) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s > 0 ? b[i] : b[i] * Rat(-1);
  return a;
}

/// m<v, f1, f2> = alpha f1 v(f2) + beta f2 v(f1).
inline Ansatz m_vff(const Cochain& v, const Cochain& f1, const Cochain& f2) {
  using hochschild::brace;
  using hochschild::cup;
  return {cup(f1, brace(v, f2)), cup(f2, brace(v, f1))};
}

/// m(<v1, f> v2) = mu v2(v1(f)) + nu v1(v2(f)).
inline Ansatz m_vfv(const Cochain& v1, const Cochain& f, const Cochain& v2) {
  using hochschild::brace;
  return {brace(v2, brace(v1, f)), brace(v1, brace(v2, f))};
}

/// Corestricted M^2 = 0 on <v, f1, f2, f3>.
inline Ansatz vff_identity(const Cochain& v, const Cochain& f1, const Cochain& f2, const Cochain& f3) {
  using hochschild::cup;
  Ansatz lhs = m_vff(v, f1, f2);
  for (auto& c : lhs) c = cup(f3, c);
  lhs = add(lhs, m_vff(cup(f1, v), f2, f3), -1);
  lhs = add(lhs, m_vff(v, cup(f1, f2), f3), +1);
  lhs = add(lhs, m_vff(v, f1, cup(f2, f3)), -1);
  return lhs;
}

/// Corestricted M^2 = 0 on <v1, f> v2 v3.
inline Ansatz vfv_identity(const Cochain& v1, const Cochain& f, const Cochain& v2, const Cochain& v3) {
  using hochschild::brace;
  using hochschild::gerst_bracket;
  auto half = [&](const Cochain& a, const Cochain& b) {
    Ansatz r = m_vfv(v1, f, b);
    for (auto& c : r) c = brace(a, c);
    r = add(r, m_vfv(gerst_bracket(v1, a), f, b), +1);
    r = add(r, m_vfv(v1, brace(b, f), a), +1);
    return r;
  };
  return add(half(v2, v3), half(v3, v2), -1);
}

}  // namespace detail

/// Assembles the linear system imposed on the ansatz coefficients by
/// `instances` random data sets over n variables. Degenerate data use only
/// the first variable and constant-coefficient derivations.
inline ObstructionResult obstruction_solve(Obstruction which, std::uint64_t seed, std::size_t instances = 6,
                                           std::size_t n = 3, bool degenerate = false) {
  std::mt19937_64 rng(seed);
  const std::size_t used = degenerate ? 1 : n;
  const int vdeg = degenerate ? 0 : 1;
  ObstructionResult res;
  res.which = which;
  res.instances = instances;
  std::vector<exactlin::SparseVec> rows;
  for (std::size_t t = 0; t < instances; ++t) {
    detail::Ansatz eq;
    if (which == Obstruction::VFF) {
      auto v = detail::random_derivation(rng, n, used, vdeg);
      auto f1 = detail::random_function(rng, n, used);
      auto f2 = detail::random_function(rng, n, used);
      auto f3 = detail::random_function(rng, n, used);
      eq = detail::vff_identity(v, f1, f2, f3);
    } else {
      auto v1 = detail::random_derivation(rng, n, used, vdeg);
      auto f = detail::random_function(rng, n, used);
      auto v2 = detail::random_derivation(rng, n, used, vdeg);
      auto v3 = detail::random_derivation(rng, n, used, vdeg);
      eq = detail::vfv_identity(v1, f, v2, v3);
    }
    std::map<Exponent, exactlin::SparseVec> by_mono;
    for (std::size_t u = 0; u < eq.size(); ++u) {
      const Poly p = detail::as_poly(eq[u]);
      for (const auto& [e, c] : p.terms()) by_mono[e].emplace(u, c);
    }
    for (auto& [e, r] : by_mono) rows.push_back(std::move(r));
  }
  exactlin::SparseMat mat(rows.size(), res.unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, c] : rows[i]) mat.add(i, j, c);
  res.rows = rows.size();
  auto rk = exactlin::rank_kernel(mat);
  res.rank = rk.rank;
  for (const auto& v : rk.kernel.basis()) {
    std::vector<Rat> x(res.unknowns, Rat(0));
    for (const auto& [j, c] : v) x[j] = c;
    res.solutions.push_back(std::move(x));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Free Gerstenhaber algebras

/// Free Gerstenhaber algebra on graded generators of type Key: graded
/// symmetric products of Lie elements, the Lie part realized inside the
/// tensor algebra on the suspended generators (bracket of degree -1, so a
/// Lie element with leaves g_1..g_k has shifted degree sum (|g_i| - 1)).
/// Each multiset of leaves carries a basis of bracket trees chosen greedily
/// in a fixed order; elements are stored in that basis.
template <class Key>
class FreeGerst {
 public:
  using Seq = std::vector<int>;
  using Tensor = std::map<Seq, Rat>;
  using Mono = std::vector<int>;  // sorted Lie basis ids
  using Elem = std::map<Mono, Rat>;

  struct Lie {
    Seq leaves;  // sorted generator ids
    int gen = -1;
    int left = -1, right = -1;
    int shifted = 0;
    Tensor expansion;
  };

  explicit FreeGerst(std::size_t max_leaves = 4) : max_leaves_(max_leaves) {}

  std::size_t max_leaves() const { return max_leaves_; }

  int intern(const Key& k, int degree) {
    auto it = gen_ids_.find(k);
    if (it != gen_ids_.end()) {
      if (gen_degree_[it->second] != degree) throw std::invalid_argument("FreeGerst: generator degree changed");
      return it->second;
    }
    const int id = static_cast<int>(keys_.size());
    keys_.push_back(k);
    gen_degree_.push_back(degree);
    gen_ids_.emplace(k, id);
    return id;
  }

  const Key& key(int gen) const { return keys_.at(gen); }
  int gen_degree(int gen) const { return gen_degree_.at(gen); }
  std::size_t generator_count() const { return keys_.size(); }

  const Lie& lie(int id) const { return lies_.at(id); }
  int lie_degree(int id) const { return lies_.at(id).shifted + 1; }

  int mono_degree(const Mono& m) const {
    int d = 0;
    for (int id : m) d += lie_degree(id);
    return d;
  }

  std::size_t leaf_count(const Mono& m) const {
    std::size_t l = 0;
    for (int id : m) l += lies_[id].leaves.size();
    return l;
  }

  static void add(Elem& e, const Mono& m, const Rat& c) {
    if (sgn(c) == 0) return;
    auto it = e.find(m);
    if (it == e.end()) {
      e.emplace(m, c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) e.erase(it);
    }
  }

  static void add_all(Elem& e, const Elem& f, const Rat& c = 1) {
    for (const auto& [m, x] : f) add(e, m, c * x);
  }

  /// Basis of the Lie part on a sorted multiset of generators.
  const std::vector<int>& lie_basis(const Seq& leaves) {
    auto it = blocks_.find(leaves);
    if (it != blocks_.end()) return it->second;
    if (leaves.size() > max_leaves_) throw std::length_error("FreeGerst: leaf budget exceeded");
    std::vector<int> ids;
    if (leaves.size() == 1) {
      Lie l;
      l.leaves = leaves;
      l.gen = leaves[0];
      l.shifted = gen_degree_[leaves[0]] - 1;
      l.expansion.emplace(leaves, Rat(1));
      ids.push_back(static_cast<int>(lies_.size()));
      lies_.push_back(std::move(l));
    } else {
      std::map<Seq, std::size_t> coords;
      Seq arr(leaves);
      do coords.emplace(arr, coords.size());
      while (std::next_permutation(arr.begin(), arr.end()));
      exactlin::Echelon ech(coords.size());
      std::set<std::pair<Seq, Seq>> seen;
      const std::size_t k = leaves.size();
      for (unsigned long mask = 1; mask + 1 < (1ul << k); ++mask) {
        Seq a, b;
        for (std::size_t i = 0; i < k; ++i) (mask & (1ul << i) ? a : b).push_back(leaves[i]);
        if (!seen.insert({a, b}).second) continue;
        const std::vector<int> ba = lie_basis(a), bb = lie_basis(b);
        for (int x : ba)
          for (int y : bb) {
            Tensor t = commutator(lies_[x].expansion, lies_[y].expansion, lies_[x].shifted * lies_[y].shifted);
            exactlin::SparseVec v;
            for (const auto& [s, c] : t) v.emplace(coords.at(s), c);
            if (v.empty() || ech.contains(v)) continue;
            ech.insert(v);
            Lie l;
            l.leaves = leaves;
            l.left = x;
            l.right = y;
            l.shifted = lies_[x].shifted + lies_[y].shifted;
            l.expansion = std::move(t);
            ids.push_back(static_cast<int>(lies_.size()));
            lies_.push_back(std::move(l));
          }
      }
    }
    return blocks_.emplace(leaves, std::move(ids)).first->second;
  }

  Elem generator(int gen) {
    Elem e;
    add(e, Mono{lie_basis(Seq{gen})[0]}, 1);
    return e;
  }

  Elem lie_elem(int id) const {
    Elem e;
    add(e, Mono{id}, 1);
    return e;
  }

  /// Sorts a sequence of Lie ids with the Koszul sign; 0 if an odd element
  /// repeats.
  int sort_mono(Mono& m) const {
    int sign = 1;
    for (std::size_t i = 1; i < m.size(); ++i)
      for (std::size_t j = i; j > 0 && m[j - 1] >= m[j]; --j) {
        const bool oa = lie_degree(m[j - 1]) % 2 != 0, ob = lie_degree(m[j]) % 2 != 0;
        if (m[j - 1] == m[j]) {
          if (oa) return 0;
          break;
        }
        std::swap(m[j - 1], m[j]);
        if (oa && ob) sign = -sign;
      }
    return sign;
  }

  Elem product(const Elem& a, const Elem& b) {
    Elem out;
    for (const auto& [x, c] : a)
      for (const auto& [y, d] : b) {
        Mono m(x);
        m.insert(m.end(), y.begin(), y.end());
        if (leaf_count(m) > max_leaves_) throw std::length_error("FreeGerst: leaf budget exceeded");
        const int s = sort_mono(m);
        if (s != 0) add(out, m, s > 0 ? c * d : Rat(-(c * d)));
      }
    return out;
  }

  /// Bracket of two Lie basis elements, expressed in the basis.
  Elem lie_bracket(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = bracket_cache_.find(key);
    if (it != bracket_cache_.end()) return it->second;
    Seq leaves(lies_[x].leaves);
    leaves.insert(leaves.end(), lies_[y].leaves.begin(), lies_[y].leaves.end());
    std::sort(leaves.begin(), leaves.end());
    Tensor t = commutator(lies_[x].expansion, lies_[y].expansion, lies_[x].shifted * lies_[y].shifted);
    Elem out = express(leaves, t);
    bracket_cache_.emplace(key, out);
    return out;
  }

  Elem bracket(const Elem& a, const Elem& b) {
    Elem out;
    for (const auto& [x, c] : a)
      for (const auto& [y, d] : b) add_all(out, mono_bracket(x, y), c * d);
    return out;
  }

  /// Extends generator images to the derivation of degree +1.
  Elem derivation(const Elem& e, const std::function<Elem(int)>& on_gen) {
    Elem out;
    for (const auto& [m, c] : e) {
      int prefix = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        Elem left, right;
        add(left, Mono(m.begin(), m.begin() + static_cast<long>(i)), 1);
        add(right, Mono(m.begin() + static_cast<long>(i) + 1, m.end()), 1);
        Elem t = product(product(left, lie_derivation(m[i], on_gen)), right);
        add_all(out, t, prefix % 2 ? Rat(-c) : c);
        prefix += lie_degree(m[i]);
      }
    }
    return out;
  }

  /// Gerstenhaber-algebra map to polyvector fields determined by the images
  /// of the generators.
  Polyvector evaluate(const Elem& e, std::size_t n, const std::function<Polyvector(int)>& on_gen) const {
    Polyvector out(n, 0);
    std::map<int, Polyvector> memo;
    std::function<Polyvector(int)> lie_value = [&](int id) -> Polyvector {
      auto it = memo.find(id);
      if (it != memo.end()) return it->second;
      const Lie& l = lies_[id];
      Polyvector v = l.gen >= 0 ? on_gen(l.gen) : polyalg::schouten(lie_value(l.left), lie_value(l.right));
      memo.emplace(id, v);
      return v;
    };
    for (const auto& [m, c] : e) {
      Polyvector p = Polyvector::function(Poly::monomial(Exponent(n, 0)));
      for (int id : m) p = polyalg::wedge(p, lie_value(id));
      if (!p.is_zero()) out += p * c;
    }
    return out;
  }

  /// All basis monomials whose leaves are drawn from `gens` with at most
  /// `budget` leaves in total, ordered by leaf count then monomial.
  std::vector<Mono> basis(const std::vector<int>& gens, std::size_t budget) {
    std::vector<int> lies;
    Seq cur;
    std::vector<int> sorted_gens(gens);
    std::sort(sorted_gens.begin(), sorted_gens.end());
    sorted_gens.erase(std::unique(sorted_gens.begin(), sorted_gens.end()), sorted_gens.end());
    const std::vector<int> g = sorted_gens;
    std::function<void(std::size_t)> rec_g = [&](std::size_t from) {
      if (!cur.empty())
        for (int id : lie_basis(cur)) lies.push_back(id);
      if (cur.size() == budget) return;
      for (std::size_t i = from; i < g.size(); ++i) {
        cur.push_back(g[i]);
        rec_g(i);
        cur.pop_back();
      }
    };
    rec_g(0);
    std::sort(lies.begin(), lies.end());
    std::vector<Mono> out;
    Mono m;
    std::function<void(std::size_t, std::size_t)> rec_m = [&](std::size_t from, std::size_t leaves) {
      if (!m.empty()) out.push_back(m);
      for (std::size_t i = from; i < lies.size(); ++i) {
        const std::size_t l = leaves + lies_[lies[i]].leaves.size();
        if (l > budget) continue;
        if (!m.empty() && m.back() == lies[i] && lie_degree(lies[i]) % 2) continue;
        m.push_back(lies[i]);
        rec_m(i, l);
        m.pop_back();
      }
    };
    rec_m(0, 0);
    std::stable_sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) {
      const std::size_t la = leaf_count(a), lb = leaf_count(b);
      return la != lb ? la < lb : a < b;
    });
    return out;
  }

  std::string to_string(const Mono& m, const std::function<std::string(const Key&)>& show) const {
    std::string s;
    for (int id : m) s += lie_text(id, show);
    return s.empty() ? "1" : s;
  }

  std::string to_string(const Elem& e, const std::function<std::string(const Key&)>& show) const {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : e) {
      if (!out.empty()) out += " + ";
      if (c != 1) out += c.get_str() + "*";
      out += to_string(m, show);
    }
    return out;
  }

 private:
  static Tensor commutator(const Tensor& a, const Tensor& b, int parity) {
    Tensor t;
    auto put = [&](Seq s, const Rat& c) {
      auto it = t.find(s);
      if (it == t.end()) {
        t.emplace(std::move(s), c);
      } else {
        it->second += c;
        if (sgn(it->second) == 0) t.erase(it);
      }
    };
    for (const auto& [x, c] : a)
      for (const auto& [y, d] : b) {
        Seq xy(x), yx(y);
        xy.insert(xy.end(), y.begin(), y.end());
        yx.insert(yx.end(), x.begin(), x.end());
        put(xy, c * d);
        put(yx, parity % 2 ? c * d : Rat(-(c * d)));
      }
    return t;
  }

  Elem express(const Seq& leaves, const Tensor& t) {
    Elem out;
    if (t.empty()) return out;
    const auto& ids = lie_basis(leaves);
    std::map<Seq, std::size_t> rows;
    for (int id : ids)
      for (const auto& [s, c] : lies_[id].expansion) rows.emplace(s, rows.size());
    for (const auto& [s, c] : t) rows.emplace(s, rows.size());
    exactlin::SparseMat mat(rows.size(), ids.size());
    for (std::size_t j = 0; j < ids.size(); ++j)
      for (const auto& [s, c] : lies_[ids[j]].expansion) mat.add(rows.at(s), j, c);
    std::vector<Rat> rhs(rows.size(), Rat(0));
    for (const auto& [s, c] : t) rhs[rows.at(s)] = c;
    auto sol = exactlin::solve_linear(mat, rhs);
    if (!sol) throw InconsistencyError("FreeGerst: tensor outside the Lie part");
    for (std::size_t j = 0; j < ids.size(); ++j) add(out, Mono{ids[j]}, (*sol)[j]);
    return out;
  }

  // [x1..xa, y1..yb] by the Leibniz rules of a bracket of degree -1.
  Elem mono_bracket(const Mono& x, const Mono& y) {
    Elem out;
    if (x.empty() || y.empty()) return out;
    if (x.size() == 1) {
      int prefix = 0;
      for (std::size_t j = 0; j < y.size(); ++j) {
        Elem left, right;
        add(left, Mono(y.begin(), y.begin() + static_cast<long>(j)), 1);
        add(right, Mono(y.begin() + static_cast<long>(j) + 1, y.end()), 1);
        Elem t = product(product(left, lie_bracket(x[0], y[j])), right);
        add_all(out, t, (lies_[x[0]].shifted * prefix) % 2 ? -1 : 1);
        prefix += lie_degree(y[j]);
      }
      return out;
    }
    const Mono x1{x[0]}, rest(x.begin() + 1, x.end());
    Elem ex1, erest;
    add(ex1, x1, 1);
    add(erest, rest, 1);
    add_all(out, product(ex1, mono_bracket(rest, y)));
    const int s = (mono_degree(rest) * (mono_degree(y) - 1)) % 2 ? -1 : 1;
    add_all(out, product(mono_bracket(x1, y), erest), s);
    return out;
  }

  Elem lie_derivation(int id, const std::function<Elem(int)>& on_gen) {
    const Lie& l = lies_[id];
    if (l.gen >= 0) return on_gen(l.gen);
    const int left = l.left, right = l.right, sl = lies_[left].shifted;
    Elem out = bracket(lie_derivation(left, on_gen), lie_elem(right));
    add_all(out, bracket(lie_elem(left), lie_derivation(right, on_gen)), sl % 2 ? -1 : 1);
    return out;
  }

  std::string lie_text(int id, const std::function<std::string(const Key&)>& show) const {
    const Lie& l = lies_[id];
    if (l.gen >= 0) return "{" + show(keys_[l.gen]) + "}";
    return "[" + lie_text(l.left, show) + "," + lie_text(l.right, show) + "]";
  }

  std::size_t max_leaves_;
  std::vector<Key> keys_;
  std::vector<int> gen_degree_;
  std::map<Key, int> gen_ids_;
  std::deque<Lie> lies_;
  std::map<Seq, std::vector<int>> blocks_;
  std::map<std::pair<int, int>, Elem> bracket_cache_;
};

// ---------------------------------------------------------------------------
// The cobar construction on Xi(A)

/// Signs of the three parts of the cobar differential on a generator c:
///   d g(c) = differential * g(d_Xi c)
///          + product * 1/2 sum (-1)^{product_twist |c'|} g(c') g(c'')  over the Xi-cobracket
///          + bracket * 1/2 sum (-1)^{bracket_twist |c'|} [g(c'), g(c'')] over the coproduct
struct CobarSigns {
  int differential = 1;
  int product = 1;
  int bracket = -1;
  int product_twist = 0;
  int bracket_twist = 1;
};

class XiCobar {
 public:
  using Alg = FreeGerst<XiMonomial>;
  using Elem = Alg::Elem;
  using Mono = Alg::Mono;

  XiCobar(std::size_t n, std::size_t max_leaves = 4, CobarSigns sg = {}, XiSigns xs = {})
      : n_(n), alg_(max_leaves), sg_(sg), xs_(xs) {}

  std::size_t nvars() const { return n_; }
  Alg& algebra() { return alg_; }

  int gen_id(const XiMonomial& c) { return alg_.intern(c, xi_degree(c)); }
  Elem gen(const XiMonomial& c) { return alg_.generator(gen_id(c)); }

  Elem d_generator(int g) {
    auto it = dgen_.find(g);
    if (it != dgen_.end()) return it->second;
    const XiMonomial c = alg_.key(g);
    Elem out;
    for (const auto& [m, x] : xi_d(c, xs_)) Alg::add_all(out, gen(m), x * sg_.differential);
    const Rat half(1, 2);
    for (const auto& [p, x] : xi_cobracket(c)) {
      const int tw = sg_.product_twist * xi_degree(p.first) % 2 ? -1 : 1;
      Alg::add_all(out, alg_.product(gen(p.first), gen(p.second)), x * half * (sg_.product * tw));
    }
    for (const auto& [p, x] : xi_coproduct(c)) {
      const int tw = sg_.bracket_twist * xi_degree(p.first) % 2 ? -1 : 1;
      Alg::add_all(out, alg_.bracket(gen(p.first), gen(p.second)), x * half * (sg_.bracket * tw));
    }
    dgen_.emplace(g, out);
    return out;
  }

  Elem d(const Elem& e) {
    return alg_.derivation(e, [this](int g) { return d_generator(g); });
  }

  /// Corestriction of a generator: the single letter of <a>, else zero.
  Polyvector corestriction(int g) const {
    const XiMonomial& c = alg_.key(g);
    if (c.size() == 1 && c[0].size() == 1) return c[0][0].payload();
    return Polyvector(n_, xi_degree(c));
  }

  /// nu: the Gerstenhaber map to polyvector fields sending a generator to
  /// its corestriction.
  Polyvector nu(const Elem& e) const {
    return alg_.evaluate(e, n_, [this](int g) { return corestriction(g); });
  }

  std::string to_string(const Elem& e) const {
    return alg_.to_string(e, [](const XiMonomial& m) { return cooperadic::to_string(m); });
  }

 private:
  std::size_t n_;
  Alg alg_;
  CobarSigns sg_;
  XiSigns xs_;
  std::map<int, Elem> dgen_;
};

/// Free Gerstenhaber basis on the given generators up to `budget` leaves.
inline std::vector<XiCobar::Mono> cobar_build(XiCobar& cb, const std::vector<XiMonomial>& generators,
                                              std::size_t budget) {
  std::vector<int> ids;
  for (const auto& c : generators) ids.push_back(cb.gen_id(c));
  return cb.algebra().basis(ids, budget);
}

// ---------------------------------------------------------------------------
// Bar construction of polyvector fields and eta

/// A letter of the bar construction on V(A): a basis polyvector x^e d_I.
struct PvLetter {
  Exponent mono;
  polyalg::IndexTuple idx;
  friend bool operator<(const PvLetter& a, const PvLetter& b) {
    return std::tie(a.idx, a.mono) < std::tie(b.idx, b.mono);
  }
  friend bool operator==(const PvLetter& a, const PvLetter& b) { return a.mono == b.mono && a.idx == b.idx; }
  int degree() const { return static_cast<int>(idx.size()); }
};

using PvWord = std::vector<PvLetter>;
using PvMonomial = std::vector<PvWord>;

inline int pv_degree(const PvMonomial& m) {
  int d = 2;
  for (const auto& w : m) {
    for (const auto& a : w) d += a.degree() - 1;
    d -= 1;
  }
  return d;
}

inline PvLetter iota(const Letter& a) {
  if (a.kind == Letter::Function) return {a.mono, {}};
  return {a.mono, {a.index}};
}

inline PvMonomial iota(const XiMonomial& m) {
  PvMonomial out;
  for (const auto& w : m) {
    PvWord v;
    for (const auto& a : w) v.push_back(iota(a));
    out.push_back(v);
  }
  return out;
}

class BarCobar {
 public:
  using Alg = FreeGerst<PvMonomial>;
  using Elem = Alg::Elem;

  explicit BarCobar(std::size_t n, std::size_t max_leaves = 4) : n_(n), alg_(max_leaves) {}

  Alg& algebra() { return alg_; }
  int gen_id(const PvMonomial& c) { return alg_.intern(c, pv_degree(c)); }

  Polyvector corestriction(int g) const {
    const PvMonomial& c = alg_.key(g);
    if (c.size() == 1 && c[0].size() == 1)
      return Polyvector::basis(n_, c[0][0].idx, Poly::monomial(c[0][0].mono));
    return Polyvector(n_, pv_degree(c));
  }

  /// eta: generators to their corestriction, extended by wedge and Schouten.
  Polyvector eta(const Elem& e) const {
    return alg_.evaluate(e, n_, [this](int g) { return corestriction(g); });
  }

 private:
  std::size_t n_;
  Alg alg_;
};

/// Omega(iota): rebuilds an element of the cobar construction on Xi(A) over
/// the image generators in the bar construction on V(A).
inline BarCobar::Elem omega_iota(XiCobar& xc, BarCobar& bc, const XiCobar::Elem& e) {
  auto& src = xc.algebra();
  auto& dst = bc.algebra();
  std::map<int, BarCobar::Elem> memo;
  std::function<BarCobar::Elem(int)> lie_image = [&](int id) -> BarCobar::Elem {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto& l = src.lie(id);
    BarCobar::Elem r = l.gen >= 0 ? dst.generator(bc.gen_id(iota(src.key(l.gen))))
                                  : dst.bracket(lie_image(l.left), lie_image(l.right));
    memo.emplace(id, r);
    return r;
  };
  BarCobar::Elem out;
  for (const auto& [m, c] : e) {
    BarCobar::Elem t;
    BarCobar::Alg::add(t, {}, 1);
    for (int id : m) t = dst.product(t, lie_image(id));
    BarCobar::Alg::add_all(out, t, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// nu_1 and nu_2

/// nu_1: collapses the cocommutative bar layer. A generator with one factor
/// X goes to the commutative generator X, longer generators to zero; trees
/// go to the Lie bialgebra bracket, products to products.
inline SymSum nu1(XiCobar& xc, const XiCobar::Elem& e) {
  auto& alg = xc.algebra();
  std::map<int, WordSum> memo;
  std::function<WordSum(int)> lie_image = [&](int id) -> WordSum {
    auto it = memo.find(id);
    if (it != memo.end()) return it->second;
    const auto& l = alg.lie(id);
    WordSum r;
    if (l.gen >= 0) {
      const XiMonomial& c = alg.key(l.gen);
      if (c.size() == 1) r = cooperadic::single(c[0]);
    } else {
      r = cooperadic::bialgebra_bracket(lie_image(l.left), lie_image(l.right));
    }
    memo.emplace(id, r);
    return r;
  };
  SymSum out;
  for (const auto& [m, c] : e) {
    SymSum t;
    cooperadic::add_to(t, SymMono{}, c);
    for (int id : m) {
      SymSum next;
      for (const auto& [w, x] : lie_image(id))
        for (const auto& [sm, y] : t) {
          SymMono r(sm);
          r.push_back(w);
          add_sorted(next, r, x * y);
        }
      t = std::move(next);
    }
    cooperadic::add_all(out, t);
  }
  return out;
}

/// nu_2: single-letter generators to their letter, longer words to zero,
/// extended multiplicatively.
inline Polyvector nu2(const SymSum& s, std::size_t n) {
  Polyvector out(n, 0);
  for (const auto& [m, c] : s) {
    Polyvector p = Polyvector::function(Poly::monomial(Exponent(n, 0)));
    bool zero = false;
    for (const auto& w : m) {
      if (w.size() != 1) {
        zero = true;
        break;
      }
      p = polyalg::wedge(p, w[0].payload());
    }
    if (!zero && !p.is_zero()) out += p * c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite checkers

/// d^2 = 0, the one-derivation constraint and filtration lowering for the
/// codifferential, cobracket and coproduct on every basis monomial.
inline CheckReport xi_check(std::size_t n, const XiBudget& b) {
  CheckReport rep;
  for (const auto& m : xi_basis(n, b)) {
    const std::string tag = cooperadic::to_string(m);
    const XiSum d = xi_d(m);
    rep.expect(satisfies_constraint(d), "constraint: " + tag);
    bool drop = true;
    for (const auto& [r, c] : d) drop = drop && filtration(r) == filtration(m) - 1;
    rep.expect(drop, "filtration d: " + tag);
    rep.expect(xi_d(d).empty(), "d^2: " + tag);
    bool cdrop = true;
    for (const auto& [p, c] : xi_cobracket(m)) cdrop = cdrop && filtration(p.first) + filtration(p.second) == filtration(m) - 1;
    for (const auto& [p, c] : xi_coproduct(m)) cdrop = cdrop && filtration(p.first) + filtration(p.second) == filtration(m) - 1;
    rep.expect(cdrop, "filtration cobracket: " + tag);
  }
  return rep;
}

/// d^2 = 0 and homogeneity of the cobar differential on every generator.
inline CheckReport cobar_check(XiCobar& cb, const XiBudget& b) {
  CheckReport rep;
  for (const auto& c : xi_basis(cb.nvars(), b)) {
    const int g = cb.gen_id(c);
    const auto dg = cb.d_generator(g);
    bool hom = true;
    for (const auto& [m, x] : dg) hom = hom && cb.algebra().mono_degree(m) == xi_degree(c) + 1;
    const std::string tag = cooperadic::to_string(c);
    rep.expect(hom, "degree: " + tag);
    rep.expect(cb.d(dg).empty(), "d^2: " + tag);
  }
  return rep;
}

/// nu kills differentials, respects products and brackets on generator
/// pairs, agrees with eta o Omega(iota) and with nu_2 o nu_1; random
/// three-leaf elements are included. Pairs are drawn from the generators
/// inside `pair_budget`.
inline CheckReport nu_chain_check(XiCobar& cb, const XiBudget& b, const XiBudget& pair_budget,
                                  std::uint64_t seed, std::size_t trials = 20) {
  CheckReport rep;
  const std::size_t n = cb.nvars();
  auto& alg = cb.algebra();
  BarCobar bc(n, alg.max_leaves());
  auto compare = [&](const XiCobar::Elem& e, const std::string& tag) {
    const Polyvector v = cb.nu(e);
    rep.expect(cb.nu(cb.d(e)).is_zero(), "nu d: " + tag);
    rep.expect(bc.eta(omega_iota(cb, bc, e)) == v, "eta omega(iota): " + tag);
    rep.expect(nu2(nu1(cb, e), n) == v, "nu2 nu1: " + tag);
  };
  const auto gens = xi_basis(n, b);
  for (const auto& c : gens) compare(cb.gen(c), cooperadic::to_string(c));
  const auto small = xi_basis(n, pair_budget);
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = i; j < small.size(); ++j) {
      const auto a = cb.gen(small[i]), c = cb.gen(small[j]);
      const std::string tag = cooperadic::to_string(small[i]) + " , " + cooperadic::to_string(small[j]);
      const auto prod = alg.product(a, c), br = alg.bracket(a, c);
      rep.expect(cb.nu(prod) == polyalg::wedge(cb.nu(a), cb.nu(c)), "nu product: " + tag);
      rep.expect(cb.nu(br) == polyalg::schouten(cb.nu(a), cb.nu(c)), "nu bracket: " + tag);
      compare(prod, "product " + tag);
      compare(br, "bracket " + tag);
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  std::uniform_int_distribution<int> shape(0, 3), coef(1, 5);
  for (std::size_t t = 0; t < trials && !small.empty(); ++t) {
    XiCobar::Elem e;
    for (int s = 0; s < 2; ++s) {
      const auto g1 = cb.gen(small[pick(rng)]), g2 = cb.gen(small[pick(rng)]), g3 = cb.gen(small[pick(rng)]);
      XiCobar::Elem x;
      switch (shape(rng)) {
        case 0: x = alg.product(alg.product(g1, g2), g3); break;
        case 1: x = alg.product(alg.bracket(g1, g2), g3); break;
        case 2: x = alg.bracket(alg.bracket(g1, g2), g3); break;
        default: x = alg.bracket(alg.product(g1, g2), g3); break;
      }
      XiCobar::Alg::add_all(e, x, Rat(coef(rng)));
    }
    compare(e, "random element " + std::to_string(t));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Harrison window: Omega_comm(B_Lambda-colie(A_+)) in low weight

/// d g(X) = g(b' X) + product_sign * 1/2 sum (-1)^{|X'|} g(X') g(X'') over
/// the Lie cobracket, extended as a derivation; g(X) has degree
/// 1 - length(X).
inline SymSum harrison_cobar_d(const SymMono& m, int product_sign = -1) {
  SymSum out;
  int prefix = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Rat s = prefix % 2 ? -1 : 1;
    auto put = [&](SymMono head, const Rat& c) {
      SymMono r(m.begin(), m.begin() + static_cast<long>(i));
      r.insert(r.end(), head.begin(), head.end());
      r.insert(r.end(), m.begin() + static_cast<long>(i) + 1, m.end());
      add_sorted(out, r, c);
    };
    for (const auto& [w, c] : cooperadic::harrison_d(cooperadic::single(m[i]))) put({w}, s * c);
    for (const auto& [p, c] : cooperadic::cobracket(cooperadic::single(m[i]), Grading::W)) {
      const Rat tw = word_degree(p.first) % 2 ? -product_sign : product_sign;
      put({p.first, p.second}, s * c * tw * Rat(1, 2));
    }
    prefix += xi_factor_parity(m[i]);
  }
  return out;
}

inline SymSum harrison_cobar_d(const SymSum& s, int product_sign = -1) {
  SymSum out;
  for (const auto& [m, c] : s) cooperadic::add_all(out, harrison_cobar_d(m, product_sign), c);
  return out;
}

struct WindowRow {
  int weight = 0;
  bool complete = true;
  std::map<int, std::size_t> homology;  // cohomological degree -> dim
  std::size_t expected_h0 = 0;
};

/// Homology of the weight pieces (weight = total coefficient degree) over
/// the letters of A_+ = span of nonconstant monomials.
inline std::vector<WindowRow> harrison_window(std::size_t n, int weight_cap, int length_cap) {
  std::vector<WindowRow> out;
  std::vector<Word> words;
  for (const auto& w : xi_words(n, length_cap, weight_cap, false))
    if (cooperadic::derivation_count(w) == 0) words.push_back(w);
  std::sort(words.begin(), words.end());
  for (int w = 1; w <= weight_cap; ++w) {
    WindowRow row;
    row.weight = w;
    row.complete = length_cap >= w;
    row.expected_h0 = polyalg::monomials_of_degree(n, w).size();
    std::map<int, std::vector<SymMono>> by_deg;
    SymMono cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int weight) {
      if (weight == w) {
        int deg = 0;
        for (const auto& x : cur) deg += 1 - static_cast<int>(x.size());
        by_deg[deg].push_back(cur);
        return;
      }
      for (std::size_t i = from; i < words.size(); ++i) {
        const int nw = weight + coef_degree(words[i]);
        if (nw > w) continue;
        if (!cur.empty() && cur.back() == words[i] && xi_factor_parity(words[i])) continue;
        cur.push_back(words[i]);
        rec(i, nw);
        cur.pop_back();
      }
    };
    rec(0, 0);
    auto matrix = [&](int k) {
      const auto& src = by_deg[k];
      const auto& dst = by_deg[k + 1];
      std::map<SymMono, std::size_t> rows;
      for (std::size_t i = 0; i < dst.size(); ++i) rows.emplace(dst[i], i);
      exactlin::SparseMat mat(dst.size(), src.size());
      for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [m, c] : harrison_cobar_d(src[j])) {
          auto it = rows.find(m);
          if (it == rows.end())
            throw InconsistencyError("harrison_window: differential leaves the window: " + cooperadic::to_string(m));
          mat.add(it->second, j, c);
        }
      return mat;
    };
    const int lo = by_deg.empty() ? 0 : by_deg.begin()->first;
    for (int k = lo; k <= 0; ++k) row.homology[k] = exactlin::homology_dim(matrix(k - 1), matrix(k));
    out.push_back(std::move(row));
  }
  return out;
}

/// nu_2 kills the Harrison-cobar differential of single words over
/// A + Der(A) inside the budget.
inline CheckReport nu2_chain_check(std::size_t n, const XiBudget& b, int product_sign = -1) {
  CheckReport rep;
  for (const auto& w : xi_words(n, b.max_word_len, b.max_coef_deg, true))
    rep.expect(nu2(harrison_cobar_d(SymMono{w}, product_sign), n).is_zero(), "nu2 d: " + cooperadic::to_string(w));
  return rep;
}

}  // namespace formality
}  // namespace gform

#endif  // GFORM_FORMALITY_HPP
