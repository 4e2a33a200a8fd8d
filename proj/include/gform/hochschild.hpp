#ifndef GFORM_HOCHSCHILD_HPP
#define GFORM_HOCHSCHILD_HPP

// Normalized Hochschild cochains of A = Q[x1..xn] realized as
// polydifferential operators
//   P(a1..ak) = sum coef * d^{alpha_1} a1 * ... * d^{alpha_k} ak
// with every slot multi-index alpha_i nonzero.
//
// Degrees: a cochain is graded by its arity k; inside braces and the
// Gerstenhaber bracket the shifted degree |P| = k - 1 is used.

#include "gform/exactlin.hpp"
#include "gform/polyalg.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gform {
namespace hochschild {

using polyalg::Exponent;
using polyalg::Poly;
using polyalg::Polyvector;
using MultiIndex = Exponent;
using Slots = std::vector<MultiIndex>;

inline bool is_zero_index(const MultiIndex& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t nvars, int arity) : nvars_(nvars), arity_(arity) {}

  static Cochain function(const Poly& f) {
    Cochain c(f.nvars(), 0);
    c.add_term({}, f);
    return c;
  }
  static Cochain term(const Poly& coef, const Slots& slots) {
    Cochain c(coef.nvars(), static_cast<int>(slots.size()));
    c.add_term(slots, coef);
    return c;
  }

  std::size_t nvars() const { return nvars_; }
  int arity() const { return arity_; }
  /// Shifted degree arity - 1.
  int shifted() const { return arity_ - 1; }
  const std::map<Slots, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Slots& slots, const Poly& coef) {
    if (static_cast<int>(slots.size()) != arity_) throw std::invalid_argument("Cochain: slot count != arity");
    for (const auto& s : slots) {
      if (s.size() != nvars_) throw std::invalid_argument("Cochain: multi-index length != nvars");
      if (is_zero_index(s)) throw std::invalid_argument("Cochain: zero slot multi-index (not normalized)");
    }
    if (coef.nvars() != nvars_) throw std::invalid_argument("Cochain: coefficient nvars mismatch");
    if (coef.is_zero()) return;
    auto it = terms_.find(slots);
    if (it == terms_.end()) {
      terms_.emplace(slots, coef);
    } else {
      it->second += coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// add_term without validation; the caller guarantees normalized slots of
  /// the right arity and length.
  void accumulate(const Slots& slots, const Poly& coef) {
    if (coef.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(slots, coef);
    if (!fresh) {
      it->second += coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Cochain& operator+=(const Cochain& o) {
    check(o);
    for (const auto& [s, c] : o.terms_) accumulate(s, c);
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    check(o);
    for (const auto& [s, c] : o.terms_) accumulate(s, -c);
    return *this;
  }
  Cochain& operator*=(const Rat& k) {
    if (sgn(k) == 0) terms_.clear();
    for (auto& [s, c] : terms_) c *= k;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(Cochain a, const Rat& k) { return a *= k; }
  friend Cochain operator*(const Rat& k, Cochain a) { return a *= k; }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    if (a.is_zero() && b.is_zero()) return a.nvars_ == b.nvars_;
    return a.nvars_ == b.nvars_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Cochain& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Cochain: nvars mismatch");
    if (o.arity_ != arity_) {
      if (o.is_zero()) return;
      if (!is_zero()) throw std::invalid_argument("Cochain: adding different arities");
      arity_ = o.arity_;
    }
  }

  std::size_t nvars_ = 0;
  int arity_ = 0;
  std::map<Slots, Poly> terms_;
};

inline Poly evaluate(const Cochain& p, const std::vector<Poly>& args) {
  if (static_cast<int>(args.size()) != p.arity()) throw std::invalid_argument("evaluate: arity mismatch");
  Poly r(p.nvars());
  for (const auto& [slots, coef] : p.terms()) {
    Poly t = coef;
    for (std::size_t i = 0; i < slots.size() && !t.is_zero(); ++i) t = t * args[i].partial(slots[i]);
    r += t;
  }
  return r;
}

namespace detail {

inline const Rat& factorial(int n) {
  static const std::vector<Rat> table = [] {
    std::vector<Rat> t{Rat(1)};
    for (int i = 1; i <= 24; ++i) {
      Rat next = t.back() * i;
      t.push_back(next);
    }
    return t;
  }();
  if (n >= static_cast<int>(table.size())) throw std::out_of_range("factorial: argument outside table");
  return table[std::max(n, 0)];
}

inline long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// All ways to write alpha = gamma_0 + ... + gamma_{parts-1}, with the
/// multinomial weight prod_i alpha_i! / prod gamma_{l,i}!.
template <class F>
void distribute(const MultiIndex& alpha, int parts, F&& f) {
  if (parts <= 0) throw std::invalid_argument("distribute: parts must be positive");
  const std::size_t n = alpha.size();
  std::vector<MultiIndex> gamma(parts, MultiIndex(n, 0));
  auto rec = [&](auto&& self, std::size_t var, int part, int left, long w) -> void {
    if (var == n) {
      f(gamma, Rat(w));
      return;
    }
    if (part == parts - 1) {
      gamma[part][var] = left;
      self(self, var + 1, 0, var + 1 < n ? alpha[var + 1] : 0, w);
      return;
    }
    for (int g = 0; g <= left; ++g) {
      gamma[part][var] = g;
      self(self, var, part + 1, left - g, w * binomial(left, g));
    }
  };
  rec(rec, 0, 0, n == 0 ? 0 : alpha[0], 1L);
}

inline MultiIndex add(MultiIndex a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline int sign_of_parity(long p) { return (p % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Hochschild coboundary, by its closed formula
///   a0 P(a1..ak) + sum_i (-1)^{i+1} P(.., a_i a_{i+1}, ..) + (-1)^{k+1} P(a0..a_{k-1}) a_k.
/// Terms with a zero slot are collected separately and must cancel.
inline Cochain hochschild_d(const Cochain& p) {
  const int k = p.arity();
  const std::size_t n = p.nvars();
  std::map<Slots, Poly> raw;
  auto put = [&](Slots s, const Poly& c) {
    auto it = raw.find(s);
    if (it == raw.end()) {
      if (!c.is_zero()) raw.emplace(std::move(s), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) raw.erase(it);
    }
  };
  const MultiIndex zero(n, 0);
  for (const auto& [slots, coef] : p.terms()) {
    Slots s0{zero};
    s0.insert(s0.end(), slots.begin(), slots.end());
    put(s0, coef);
    for (int i = 0; i < k; ++i) {
      const Rat sign = detail::sign_of_parity(i + 1);
      detail::distribute(slots[i], 2, [&](const std::vector<MultiIndex>& g, const Rat& w) {
        Slots s(slots.begin(), slots.begin() + i);
        s.push_back(g[0]);
        s.push_back(g[1]);
        s.insert(s.end(), slots.begin() + i + 1, slots.end());
        put(s, coef * (sign * w));
      });
    }
    Slots sk(slots);
    sk.push_back(zero);
    put(sk, coef * Rat(detail::sign_of_parity(k + 1)));
  }
  Cochain r(n, k + 1);
  for (const auto& [s, c] : raw) {
    if (std::any_of(s.begin(), s.end(), is_zero_index))
      throw InconsistencyError("hochschild_d: unnormalized terms failed to cancel");
    r.add_term(s, c);
  }
  return r;
}

inline Cochain cup(const Cochain& p, const Cochain& q) {
  if (p.nvars() != q.nvars()) throw std::invalid_argument("cup: nvars mismatch");
  Cochain r(p.nvars(), p.arity() + q.arity());
  for (const auto& [sp, cp] : p.terms())
    for (const auto& [sq, cq] : q.terms()) {
      Slots s(sp);
      s.insert(s.end(), sq.begin(), sq.end());
      r.add_term(s, cp * cq);
    }
  return r;
}

/// Brace P{Q1..Qm}: order-preserving insertions of the Q_j into distinct
/// argument slots of P. The sign is (-1)^{sum_j |Q_j| * (number of arguments
/// of the result preceding the block of Q_j)} with |Q| = arity(Q) - 1.
inline Cochain brace(const Cochain& p, const std::vector<Cochain>& qs) {
  const std::size_t n = p.nvars();
  for (const auto& q : qs)
    if (q.nvars() != n) throw std::invalid_argument("brace: nvars mismatch");
  const int m = static_cast<int>(qs.size());
  int out_arity = p.arity() - m;
  for (const auto& q : qs) out_arity += q.arity();
  Cochain r(n, std::max(out_arity, 0));
  if (m > p.arity()) return r;
  if (m == 0) return p;

  for (const auto& [pslots, pcoef] : p.terms()) {
    const int k = p.arity();
    Slots cur;
    auto rec = [&](auto&& self, int s, int j, const Poly& coef, long parity) -> void {
      if (coef.is_zero()) return;
      if (s == k) {
        if (j == m) r.accumulate(cur, detail::sign_of_parity(parity) > 0 ? coef : -coef);
        return;
      }
      // remaining slots must be able to host the remaining insertions
      if (k - s > m - j) {
        cur.push_back(pslots[s]);
        self(self, s + 1, j, coef, parity);
        cur.pop_back();
      }
      if (j < m) {
        const Cochain& q = qs[j];
        const long par2 = parity + static_cast<long>(q.shifted()) * static_cast<long>(cur.size());
        const int r_ar = q.arity();
        for (const auto& [qslots, qcoef] : q.terms()) {
          detail::distribute(pslots[s], r_ar + 1, [&](const std::vector<MultiIndex>& g, const Rat& w) {
            Poly c2 = coef * qcoef.partial(g[0]);
            if (c2.is_zero()) return;
            c2 *= w;
            const std::size_t mark = cur.size();
            for (int l = 0; l < r_ar; ++l) cur.push_back(detail::add(qslots[l], g[l + 1]));
            self(self, s + 1, j + 1, c2, par2);
            cur.resize(mark);
          });
        }
      }
    };
    rec(rec, 0, 0, pcoef, 0);
  }
  return r;
}

inline Cochain brace(const Cochain& p, const Cochain& q) { return brace(p, std::vector<Cochain>{q}); }

/// [P,Q]_G = P{Q} - (-1)^{|P||Q|} Q{P} in shifted degrees.
inline Cochain gerst_bracket(const Cochain& p, const Cochain& q) {
  const long e = static_cast<long>(p.shifted()) * q.shifted();
  Cochain a = brace(p, q), b = brace(q, p);
  return detail::sign_of_parity(e) > 0 ? a - b : a + b;
}

/// HKR map p d_{i1}^..^d_{ik} -> (1/k!) sum_sigma sgn(sigma) (p; e_{i_sigma(1)}, .., e_{i_sigma(k)}).
inline Cochain hkr(const Polyvector& u) {
  const std::size_t n = u.nvars();
  const int k = u.degree();
  Cochain r(n, k);
  const Rat norm = 1 / detail::factorial(k);
  for (const auto& [idx, coef] : u.terms()) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if (perm[a] > perm[b]) ++inversions;
      Slots s;
      for (int a = 0; a < k; ++a) {
        MultiIndex e(n, 0);
        e[idx[perm[a]]] = 1;
        s.push_back(e);
      }
      r.add_term(s, coef * (norm * detail::sign_of_parity(inversions)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return r;
}

/// Internal weight deg(coefficient) - sum |slot| of a single term.
inline int term_weight(const Slots& s, const Poly& c) {
  int w = c.degree();
  for (const auto& a : s) w -= polyalg::total_degree(a);
  return w;
}

// ---------------------------------------------------------------------------
// Finite bases

/// All slot tuples of the given arity with nonzero multi-indices, each of
/// order <= max_order, in lexicographic order.
inline std::vector<Slots> slot_tuples(std::size_t n, int arity, int max_order) {
  std::vector<MultiIndex> singles;
  for (int o = 1; o <= max_order; ++o)
    for (const auto& e : polyalg::monomials_of_degree(n, o)) singles.push_back(e);
  std::sort(singles.begin(), singles.end());
  std::vector<Slots> out;
  Slots cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == arity) {
      out.push_back(cur);
      return;
    }
    for (const auto& s : singles) {
      cur.push_back(s);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// All slot tuples of the given arity whose total order is exactly `total`.
inline std::vector<Slots> slot_tuples_of_total(std::size_t n, int arity, int total) {
  std::vector<Slots> out;
  Slots cur;
  auto rec = [&](auto&& self, int left) -> void {
    const int remaining = arity - static_cast<int>(cur.size());
    if (remaining == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int o = 1; o <= left - (remaining - 1); ++o)
      for (const auto& e : polyalg::monomials_of_degree(n, o)) {
        cur.push_back(e);
        self(self, left - o);
        cur.pop_back();
      }
  };
  if (arity == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  rec(rec, total);
  return out;
}

/// Basis cochains (x^e; slots) with coefficient degree <= max_coef_deg and
/// slot orders <= max_order.
inline std::vector<Cochain> basis_cochains(std::size_t n, int arity, int max_order, int max_coef_deg) {
  std::vector<Cochain> out;
  for (const auto& s : slot_tuples(n, arity, max_order))
    for (int d = 0; d <= max_coef_deg; ++d)
      for (const auto& e : polyalg::monomials_of_degree(n, d)) out.push_back(Cochain::term(Poly::monomial(e), s));
  return out;
}

struct HHDims {
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::size_t dim_hh = 0;
  bool truncated = false;
};

namespace detail {

/// Basis of the arity-k cochains with coefficient monomials of degree d and
/// slot total order d - w.
inline std::vector<std::pair<Slots, Exponent>> piece_basis(std::size_t n, int k, int w, int d) {
  std::vector<std::pair<Slots, Exponent>> out;
  if (k < 0 || d < 0 || d - w < 0) return out;
  for (const auto& s : slot_tuples_of_total(n, k, d - w))
    for (const auto& e : polyalg::monomials_of_degree(n, d)) out.emplace_back(s, e);
  return out;
}

inline exactlin::SparseMat d_matrix(std::size_t n, int k, int w, int d) {
  auto src = piece_basis(n, k, w, d);
  auto dst = piece_basis(n, k + 1, w, d);
  std::map<std::pair<Slots, Exponent>, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index.emplace(dst[i], i);
  exactlin::SparseMat m(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    Cochain img = hochschild_d(Cochain::term(Poly::monomial(src[j].second), src[j].first));
    for (const auto& [s, c] : img.terms())
      for (const auto& [e, v] : c.terms()) m.add(index.at({s, e}), j, v);
  }
  return m;
}

}  // namespace detail

/// Dimensions of cocycles, coboundaries and cohomology in the (arity k,
/// weight w) piece, over coefficient degrees 0..degree_budget. The
/// differential keeps the coefficient, so the piece splits into finite
/// subcomplexes by coefficient degree. Classes live at coefficient degree
/// w + k; a smaller budget is reported as truncated.
inline HHDims hh_dims(std::size_t n, int k, int w, int degree_budget) {
  if (k < 0) throw std::invalid_argument("hh_dims: negative arity");
  HHDims r;
  r.truncated = degree_budget < w + k;
  for (int d = std::max(0, w); d <= degree_budget; ++d) {
    exactlin::SparseMat din = k > 0 ? detail::d_matrix(n, k - 1, w, d)
                                    : exactlin::SparseMat(detail::piece_basis(n, 0, w, d).size(), 0);
    exactlin::SparseMat dout = detail::d_matrix(n, k, w, d);
    const std::size_t middle = dout.cols();
    const std::size_t rk_out = exactlin::rank(dout);
    const std::size_t rk_in = exactlin::rank(din);
    r.dim_cocycles += middle - rk_out;
    r.dim_coboundaries += rk_in;
    r.dim_hh += exactlin::homology_dim(din, dout);
  }
  return r;
}

/// Rank of the span of the HKR images of the weight-w polyvectors of degree
/// k modulo coboundaries. Equals dim HH^{k,w} exactly when the HKR classes
/// span cohomology.
inline std::size_t hkr_class_rank(std::size_t n, int k, int w) {
  const int d = w + k;
  if (k < 0 || d < 0) return 0;
  const auto basis = detail::piece_basis(n, k, w, d);
  std::map<std::pair<Slots, Exponent>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<exactlin::SparseVec> boundaries;
  if (k > 0) {
    const exactlin::SparseMat din = detail::d_matrix(n, k - 1, w, d).transpose();
    for (std::size_t j = 0; j < din.rows(); ++j) boundaries.push_back(din.row(j));
  }
  std::vector<exactlin::SparseVec> all(boundaries);
  for (const auto& idx : polyalg::index_tuples(n, k))
    for (const auto& e : polyalg::monomials_of_degree(n, d)) {
      const Cochain h = hkr(Polyvector::basis(n, idx, Poly::monomial(e)));
      exactlin::SparseVec v;
      for (const auto& [s, c] : h.terms())
        for (const auto& [m, x] : c.terms()) v.emplace(index.at({s, m}), x);
      all.push_back(std::move(v));
    }
  return exactlin::Subspace::span(basis.size(), all).dim() - exactlin::Subspace::span(basis.size(), boundaries).dim();
}

/// Dimension of the weight-w part of V^k(A): monomial coefficients of
/// degree w + k times C(n, k).
inline std::size_t polyvector_weight_dim(std::size_t n, int k, int w) {
  if (k < 0 || w + k < 0) return 0;
  return polyalg::monomials_of_degree(n, w + k).size() * polyalg::index_tuples(n, k).size();
}

// ---------------------------------------------------------------------------
// Text format: one term per line, `coef ; slot1 | slot2 | ...`, multi-indices
// as comma lists. The zero cochain prints as `0`.

inline std::string to_string(const Cochain& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [slots, coef] : c.terms()) {
    if (!out.empty()) out += "\n";
    out += polyalg::to_string(coef) + " ;";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      out += (i == 0) ? " " : " | ";
      for (std::size_t j = 0; j < slots[i].size(); ++j) {
        if (j) out += ",";
        out += std::to_string(slots[i][j]);
      }
    }
  }
  return out;
}

inline Cochain parse_cochain(std::string_view text, std::size_t nvars, int arity_if_zero = 0) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  std::string all(text);
  if (trim(all) == "0") return Cochain(nvars, arity_if_zero);
  std::istringstream in(all);
  std::string line;
  Cochain r;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto semi = line.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("parse_cochain: missing ';'");
    Poly coef = polyalg::parse_poly(line.substr(0, semi), nvars);
    std::string rest = trim(line.substr(semi + 1));
    Slots slots;
    if (!rest.empty()) {
      std::istringstream ss(rest);
      std::string slot;
      while (std::getline(ss, slot, '|')) {
        MultiIndex a;
        std::istringstream sv(trim(slot));
        std::string num;
        while (std::getline(sv, num, ',')) {
          num = trim(num);
          if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("parse_cochain: bad multi-index entry");
          a.push_back(std::stoi(num));
        }
        if (a.size() != nvars) throw std::invalid_argument("parse_cochain: multi-index length != nvars");
        slots.push_back(a);
      }
    }
    if (first) {
      r = Cochain(nvars, static_cast<int>(slots.size()));
      first = false;
    }
    r.add_term(slots, coef);
  }
  if (first) throw std::invalid_argument("parse_cochain: empty input");
  return r;
}

// ---------------------------------------------------------------------------
// Sign audit for the homotopy between P u Q and Q u P.
//
// Candidates are indexed by choice in [0, 1024): bit 9 picks the orientation
// of the commutator (0: P u Q - (-1)^{k1 k2} Q u P, 1: Q u P - (-1)^{k1 k2} P u Q),
// and three 3-bit fields give the coefficients of d(P{Q}), (dP){Q}, P{dQ}.
// A 3-bit field o encodes (-1)^{o&1} * (-1)^{k1 [o&2]} * (-1)^{k2 [o&4]}.

inline constexpr int kHomotopySignChoices = 1024;

namespace detail {

inline int homotopy_coeff(int o, int k1, int k2) {
  int p = (o & 1) + ((o & 2) ? k1 : 0) + ((o & 4) ? k2 : 0);
  return sign_of_parity(p);
}

}  // namespace detail

/// Commutator side of the homotopy identity for the given orientation bit.
inline Cochain cup_commutator(const Cochain& p, const Cochain& q, bool swapped) {
  const Rat s = detail::sign_of_parity(static_cast<long>(p.arity()) * q.arity());
  return swapped ? cup(q, p) - s * cup(p, q) : cup(p, q) - s * cup(q, p);
}

/// Residual (commutator minus homotopy expression) for one candidate choice.
inline Cochain homotopy_residual(const Cochain& p, const Cochain& q, int choice) {
  const int k1 = p.arity(), k2 = q.arity();
  Cochain lhs = cup_commutator(p, q, (choice >> 9) & 1);
  Cochain a = hochschild_d(brace(p, q));
  Cochain b = brace(hochschild_d(p), q);
  Cochain c = brace(p, hochschild_d(q));
  Cochain rhs = Rat(detail::homotopy_coeff(choice & 7, k1, k2)) * a +
                Rat(detail::homotopy_coeff((choice >> 3) & 7, k1, k2)) * b +
                Rat(detail::homotopy_coeff((choice >> 6) & 7, k1, k2)) * c;
  return lhs - rhs;
}

/// The frozen choice, found by the audit to be the unique survivor:
///   Q u P - (-1)^{k1 k2} P u Q = (-1)^{k2} d(P{Q}) + (dP){Q} - (-1)^{k2} P{dQ}.
inline constexpr int kHomotopySign = (1 << 9) | (5 << 6) | (0 << 3) | 4;

}  // namespace hochschild
}  // namespace gform

#endif  // GFORM_HOCHSCHILD_HPP
