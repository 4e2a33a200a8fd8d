#ifndef GFORM_COOPERADIC_HPP
#define GFORM_COOPERADIC_HPP

// Word calculus for cofree coalgebras over the alphabet A + Sigma Der(A):
// shuffles with Koszul signs, the cofree Lie coalgebra as tensor words modulo
// shuffles (normal words = Lyndon words for even alphabets), its cobracket,
// reconstruction from (corestriction, cobracket), the Lie bialgebra bracket
// extending the Schouten bracket of letters, the Harrison bar differential and
// the cocommutative layer.
//
// Gradings. A letter has a housed degree |a|: 0 for functions, 1 for
// derivations. Two Koszul parities are in use:
//   Grading::V  parity |a|      (plain letters)
//   Grading::W  parity |a| - 1  (desuspended letters, as inside the bar
//                                construction: functions odd, derivations even)

#include "gform/exactlin.hpp"
#include "gform/polyalg.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gform {
namespace cooperadic {

using polyalg::Exponent;
using polyalg::Poly;
using polyalg::Polyvector;

struct Letter {
  enum Kind : int { Function = 0, Derivation = 1 };
  Kind kind = Function;
  Exponent mono;  // coefficient monomial
  int index = -1; // derivation direction, -1 for functions

  static Letter function(const Exponent& e) { return {Function, e, -1}; }
  static Letter derivation(const Exponent& e, int i) { return {Derivation, e, i}; }

  std::size_t nvars() const { return mono.size(); }
  int degree() const { return kind == Derivation ? 1 : 0; }

  /// Functions (graded-lex on the monomial) before derivations (by
  /// direction, then graded-lex on the coefficient).
  auto key() const {
    return std::make_tuple(static_cast<int>(kind), index, polyalg::total_degree(mono), mono);
  }
  friend bool operator<(const Letter& a, const Letter& b) { return a.key() < b.key(); }
  friend bool operator==(const Letter& a, const Letter& b) { return a.key() == b.key(); }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }

  /// The letter as a polyvector of degree 0 or 1.
  Polyvector payload() const {
    if (kind == Function) return Polyvector::function(Poly::monomial(mono));
    return Polyvector::basis(mono.size(), {index}, Poly::monomial(mono));
  }
};

enum class Grading { V, W };

inline int parity(const Letter& a, Grading g) {
  return g == Grading::V ? a.degree() : (a.degree() + 1) % 2;
}

using Word = std::vector<Letter>;
using WordSum = std::map<Word, Rat>;

inline int word_parity(const Word& w, Grading g) {
  int p = 0;
  for (const auto& a : w) p += parity(a, g);
  return p % 2;
}

inline int derivation_count(const Word& w) {
  int c = 0;
  for (const auto& a : w) c += (a.kind == Letter::Derivation);
  return c;
}

inline void add_to(WordSum& s, const Word& w, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = s.find(w);
  if (it == s.end()) {
    s.emplace(w, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) s.erase(it);
  }
}

inline void add_to(WordSum& s, const WordSum& t, const Rat& c = 1) {
  for (const auto& [w, x] : t) add_to(s, w, c * x);
}

inline WordSum scaled(WordSum s, const Rat& c) {
  if (sgn(c) == 0) return {};
  for (auto& [w, x] : s) x *= c;
  return s;
}

inline WordSum single(const Word& w, const Rat& c = 1) {
  WordSum s;
  add_to(s, w, c);
  return s;
}

inline std::size_t max_length(const WordSum& s) {
  std::size_t m = 0;
  for (const auto& [w, c] : s) m = std::max(m, w.size());
  return m;
}

// ---------------------------------------------------------------------------
// Text

inline std::string to_string(const Letter& a) {
  std::string m = polyalg::detail::monomial_text(a.mono);
  if (a.kind == Letter::Function) return m.empty() ? "1" : m;
  std::string d = "d" + std::to_string(a.index + 1);
  return m.empty() ? d : m + " " + d;
}

inline std::string to_string(const Word& w) {
  std::string s = "<";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += to_string(w[i]);
  }
  return s + ">";
}

inline std::string to_string(const WordSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : s) {
    Rat a = c;
    const bool neg = sgn(a) < 0;
    if (neg) a = -a;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (a != 1) out += a.get_str() + "*";
    out += to_string(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shuffles

/// u .sh v with Koszul signs: a letter of v jumping over a letter of u
/// contributes (-1)^{parity * parity}.
inline WordSum shuffle(const Word& u, const Word& v, Grading g) {
  WordSum out;
  Word cur;
  cur.reserve(u.size() + v.size());
  std::vector<int> suffix_u(u.size() + 1, 0);
  for (std::size_t i = u.size(); i-- > 0;) suffix_u[i] = suffix_u[i + 1] + parity(u[i], g);
  auto rec = [&](auto&& self, std::size_t i, std::size_t j, int sign) -> void {
    if (i == u.size() && j == v.size()) {
      add_to(out, cur, Rat(sign));
      return;
    }
    if (i < u.size()) {
      cur.push_back(u[i]);
      self(self, i + 1, j, sign);
      cur.pop_back();
    }
    if (j < v.size()) {
      cur.push_back(v[j]);
      const int s = (parity(v[j], g) * suffix_u[i]) % 2 ? -sign : sign;
      self(self, i, j + 1, s);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0, 1);
  return out;
}

inline WordSum shuffle(const WordSum& a, const WordSum& b, Grading g) {
  WordSum out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_to(out, shuffle(u, v, g), x * y);
  return out;
}

// ---------------------------------------------------------------------------
// Lyndon words and Witt numbers

/// Strictly smaller than each proper rotation.
inline bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + static_cast<long>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
    if (!(w < rot)) return false;
  }
  return true;
}

inline long mobius(long n) {
  long m = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

/// Number of Lyndon words of length l over q letters: (1/l) sum_{d|l} mu(d) q^{l/d}.
inline std::size_t witt_dim(std::size_t q, std::size_t l) {
  if (q < 1 || l < 1) throw std::invalid_argument("witt_dim: q and l must be positive");
  mpz_class total = 0;
  for (std::size_t d = 1; d <= l; ++d) {
    if (l % d) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), q, l / d);
    total += mobius(static_cast<long>(d)) * p;
  }
  return static_cast<std::size_t>(mpz_class(total / static_cast<unsigned long>(l)).get_ui());
}

// ---------------------------------------------------------------------------
// The shuffle quotient, one multiset of letters at a time

namespace detail {

/// All distinct arrangements of a multiset given as a sorted word.
inline std::vector<Word> arrangements(Word sorted) {
  std::vector<Word> out;
  std::sort(sorted.begin(), sorted.end());
  do {
    out.push_back(sorted);
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return out;
}

/// Sub-multisets of a sorted word (as sorted words), including empty and full.
inline std::vector<std::pair<Word, Word>> splits(const Word& sorted) {
  std::vector<std::pair<Letter, int>> groups;
  for (const auto& a : sorted) {
    if (!groups.empty() && groups.back().first == a) {
      ++groups.back().second;
    } else {
      groups.emplace_back(a, 1);
    }
  }
  std::vector<std::pair<Word, Word>> out;
  Word left, right;
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == groups.size()) {
      out.emplace_back(left, right);
      return;
    }
    const auto& [a, n] = groups[g];
    for (int k = 0; k <= n; ++k) {
      for (int i = 0; i < k; ++i) left.push_back(a);
      for (int i = k; i < n; ++i) right.push_back(a);
      self(self, g + 1);
      left.resize(left.size() - k);
      right.resize(right.size() - (n - k));
    }
  };
  rec(rec, 0);
  return out;
}

/// The shuffle subspace in one multidegree. Coordinates index the
/// arrangements in descending order, so the reduced echelon pivots are the
/// lexicographically largest words and the free coordinates (normal words)
/// are the Lyndon words when all letters are even.
struct LieBlock {
  std::vector<Word> words;  // descending
  std::map<Word, std::size_t> index;
  exactlin::Subspace shuffles;
  std::vector<Word> normal;  // ascending

  exactlin::SparseVec to_vec(const WordSum& s) const {
    exactlin::SparseVec v;
    for (const auto& [w, c] : s) v.emplace(index.at(w), c);
    return v;
  }
  WordSum from_vec(const exactlin::SparseVec& v) const {
    WordSum s;
    for (const auto& [i, c] : v) s.emplace(words[i], c);
    return s;
  }
};

inline std::shared_ptr<const LieBlock> build_block(const Word& sorted, Grading g) {
  auto b = std::make_shared<LieBlock>();
  b->words = arrangements(sorted);
  std::reverse(b->words.begin(), b->words.end());
  for (std::size_t i = 0; i < b->words.size(); ++i) b->index.emplace(b->words[i], i);
  std::vector<exactlin::SparseVec> gens;
  for (const auto& [left, right] : splits(sorted)) {
    if (left.empty() || right.empty() || left.size() > right.size()) continue;
    for (const auto& u : arrangements(left))
      for (const auto& v : arrangements(right)) gens.push_back(b->to_vec(shuffle(u, v, g)));
  }
  b->shuffles = exactlin::Subspace::span(b->words.size(), gens);
  std::vector<bool> pivot(b->words.size(), false);
  for (auto p : b->shuffles.pivots()) pivot[p] = true;
  for (std::size_t i = b->words.size(); i-- > 0;)
    if (!pivot[i]) b->normal.push_back(b->words[i]);
  return b;
}

}  // namespace detail

inline Word sorted_letters(Word w) {
  std::sort(w.begin(), w.end());
  return w;
}

/// Cached shuffle-quotient data for the multiset of `w`. Safe to call
/// concurrently; each block is built once.
inline std::shared_ptr<const detail::LieBlock> lie_block(const Word& w, Grading g) {
  static std::mutex mu;
  static std::map<std::pair<int, Word>, std::shared_ptr<const detail::LieBlock>> cache;
  const auto key = std::make_pair(static_cast<int>(g), sorted_letters(w));
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto b = detail::build_block(key.second, g);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, b).first->second;
}

/// Normal words (basis of the Lie coalgebra) in the multidegree of `w`.
inline const std::vector<Word>& normal_words(const Word& multiset, Grading g) {
  return lie_block(multiset, g)->normal;
}

/// Class modulo shuffles, written in normal words.
inline WordSum lie_normalize(const WordSum& s, Grading g) {
  std::map<Word, WordSum> groups;
  for (const auto& [w, c] : s) add_to(groups[sorted_letters(w)], w, c);
  WordSum out;
  for (const auto& [m, part] : groups) {
    auto b = lie_block(m, g);
    add_to(out, b->from_vec(b->shuffles.reduce(b->to_vec(part))));
  }
  return out;
}

inline bool is_normal(const WordSum& s, Grading g) {
  for (const auto& [w, c] : s) {
    const auto& nw = normal_words(w, g);
    if (!std::binary_search(nw.begin(), nw.end(), w)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cobracket and reconstruction

using WordPair = std::pair<Word, Word>;
using PairSum = std::map<WordPair, Rat>;

inline void add_to(PairSum& s, const WordPair& p, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = s.find(p);
  if (it == s.end()) {
    s.emplace(p, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) s.erase(it);
  }
}

inline PairSum tensor(const WordSum& a, const WordSum& b, const Rat& c = 1) {
  PairSum out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_to(out, {u, v}, c * x * y);
  return out;
}

inline void add_all(PairSum& s, const PairSum& t, const Rat& c = 1) {
  for (const auto& [p, x] : t) add_to(s, p, c * x);
}

inline std::string to_string(const PairSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : s) {
    if (!out.empty()) out += " + ";
    out += "(" + c.get_str() + ")" + to_string(p.first) + "(x)" + to_string(p.second);
  }
  return out;
}

/// delta = (pi (x) pi)(Delta' - tau Delta') with Delta' the reduced
/// deconcatenation and tau(a (x) b) = (-1)^{|a||b|} b (x) a. Well defined on
/// shuffle classes; the output factors are normal words.
inline PairSum cobracket(const WordSum& s, Grading g) {
  PairSum raw;
  for (const auto& [w, c] : s)
    for (std::size_t i = 1; i < w.size(); ++i) {
      Word a(w.begin(), w.begin() + static_cast<long>(i)), b(w.begin() + static_cast<long>(i), w.end());
      add_to(raw, {a, b}, c);
      const bool odd = word_parity(a, g) * word_parity(b, g) % 2;
      add_to(raw, {b, a}, odd ? c : -c);
    }
  PairSum out;
  std::map<Word, WordSum> memo;
  auto norm = [&](const Word& w) -> const WordSum& {
    auto it = memo.find(w);
    if (it == memo.end()) it = memo.emplace(w, lie_normalize(single(w), g)).first;
    return it->second;
  };
  for (const auto& [p, c] : raw) add_all(out, tensor(norm(p.first), norm(p.second), c));
  return out;
}

/// The unique Lie-coalgebra element z with single-letter part `head` and
/// cobracket `cob`. The cobracket is injective on words of length >= 2, so
/// z is solved for one multidegree at a time; data outside the image of the
/// cobracket raise InconsistencyError.
inline WordSum reconstruct(const WordSum& head, const PairSum& cob, Grading g) {
  WordSum out;
  for (const auto& [w, c] : head) {
    if (w.size() != 1) throw std::invalid_argument("reconstruct: head must consist of single letters");
    add_to(out, w, c);
  }
  std::map<Word, PairSum> groups;
  for (const auto& [p, c] : cob) {
    Word m(p.first);
    m.insert(m.end(), p.second.begin(), p.second.end());
    add_to(groups[sorted_letters(m)], p, c);
  }
  for (const auto& [m, target] : groups) {
    const auto& unknowns = normal_words(m, g);
    std::vector<PairSum> images;
    std::map<WordPair, std::size_t> rows;
    for (const auto& u : unknowns) {
      images.push_back(cobracket(single(u), g));
      for (const auto& [p, c] : images.back()) rows.emplace(p, rows.size());
    }
    for (const auto& [p, c] : target)
      if (!rows.count(p)) throw InconsistencyError("reconstruct: cobracket data outside the image");
    exactlin::SparseMat mat(rows.size(), unknowns.size());
    for (std::size_t j = 0; j < images.size(); ++j)
      for (const auto& [p, c] : images[j]) mat.add(rows.at(p), j, c);
    std::vector<Rat> rhs(rows.size(), Rat(0));
    for (const auto& [p, c] : target) rhs[rows.at(p)] = c;
    auto sol = exactlin::solve_linear(mat, rhs);
    if (!sol) throw InconsistencyError("reconstruct: inconsistent cobracket data");
    for (std::size_t j = 0; j < unknowns.size(); ++j) add_to(out, unknowns[j], (*sol)[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Letter brackets and the Lie bialgebra bracket (grading W)

/// Letters of a degree-0 or degree-1 polyvector.
inline WordSum letters_of(const Polyvector& p) {
  WordSum out;
  if (p.is_zero()) return out;
  if (p.degree() > 1) throw std::invalid_argument("letters_of: polyvector degree > 1");
  for (const auto& [idx, coef] : p.terms())
    for (const auto& [e, c] : coef.terms())
      add_to(out, Word{idx.empty() ? Letter::function(e) : Letter::derivation(e, idx[0])}, c);
  return out;
}

/// [a,b]_W = s^{-1}[a,b]_SN on single letters.
inline WordSum letter_bracket(const Letter& a, const Letter& b) {
  return letters_of(polyalg::schouten(a.payload(), b.payload()));
}

namespace detail {

inline std::mutex& bracket_mutex() {
  static std::mutex m;
  return m;
}
inline std::map<WordPair, WordSum>& bracket_cache() {
  static std::map<WordPair, WordSum> c;
  return c;
}

}  // namespace detail

inline WordSum bialgebra_bracket(const WordSum& x, const WordSum& y);

/// z . (A (x) B) = [z,A] (x) B + (-1)^{|z||A|} A (x) [z,B].
inline PairSum bracket_action(const Word& z, const PairSum& t) {
  const Grading g = Grading::W;
  PairSum out;
  for (const auto& [p, c] : t) {
    add_all(out, tensor(bialgebra_bracket(single(z), single(p.first)), single(p.second)), c);
    const bool odd = word_parity(z, g) * word_parity(p.first, g) % 2;
    add_all(out, tensor(single(p.first), bialgebra_bracket(single(z), single(p.second))), odd ? -c : c);
  }
  return out;
}

/// Bracket of two normal words: on single letters the Schouten bracket;
/// otherwise the unique element with zero corestriction and cobracket
///   delta[X,Y] = X . delta Y - (-1)^{|X||Y|} Y . delta X.
inline WordSum bialgebra_bracket_words(const Word& x, const Word& y) {
  {
    std::lock_guard<std::mutex> lock(detail::bracket_mutex());
    auto it = detail::bracket_cache().find({x, y});
    if (it != detail::bracket_cache().end()) return it->second;
  }
  const Grading g = Grading::W;
  WordSum r;
  if (x.size() == 1 && y.size() == 1) {
    r = letter_bracket(x[0], y[0]);
  } else {
    PairSum cob = bracket_action(x, cobracket(single(y), g));
    const bool odd = word_parity(x, g) * word_parity(y, g) % 2;
    add_all(cob, bracket_action(y, cobracket(single(x), g)), odd ? Rat(1) : Rat(-1));
    r = reconstruct({}, cob, g);
  }
  std::lock_guard<std::mutex> lock(detail::bracket_mutex());
  detail::bracket_cache().emplace(WordPair{x, y}, r);
  return r;
}

inline WordSum bialgebra_bracket(const WordSum& x, const WordSum& y) {
  WordSum out;
  for (const auto& [u, a] : x)
    for (const auto& [v, b] : y) add_to(out, bialgebra_bracket_words(u, v), a * b);
  return out;
}

// ---------------------------------------------------------------------------
// Harrison bar differential (grading W)

/// Product in A + Der(A) with A Der(A) = Der(A) A = Der(A) and Der Der = 0.
inline Letter letter_product(const Letter& a, const Letter& b) {
  if (a.kind == Letter::Derivation && b.kind == Letter::Derivation)
    throw std::invalid_argument("letter_product: two derivation letters");
  Exponent e(a.mono);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.mono[i];
  if (a.kind == Letter::Derivation) return Letter::derivation(e, a.index);
  if (b.kind == Letter::Derivation) return Letter::derivation(e, b.index);
  return Letter::function(e);
}

/// b' = sum_i (-1)^{s(w_1)+..+s(w_{i-1})} (.., m~(w_i, w_{i+1}), ..) with
/// m~(a,b) = (-1)^{s(a)} s^{-1}(ab), s the W-parity. Words with two or more
/// derivation letters are rejected.
inline WordSum harrison_d(const WordSum& s) {
  const Grading g = Grading::W;
  WordSum raw;
  for (const auto& [w, c] : s) {
    if (derivation_count(w) > 1) throw std::invalid_argument("harrison_d: more than one derivation letter");
    int prefix = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const int sa = parity(w[i], g);
      Word m(w.begin(), w.begin() + static_cast<long>(i));
      m.push_back(letter_product(w[i], w[i + 1]));
      m.insert(m.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      add_to(raw, m, ((prefix + sa) % 2) ? -c : c);
      prefix += sa;
    }
  }
  return lie_normalize(raw, g);
}

// ---------------------------------------------------------------------------
// The cocommutative layer: graded-symmetric monomials in Lie words

using SymMono = std::vector<Word>;
using SymSum = std::map<SymMono, Rat>;
using FactorParity = int (*)(const Word&);

inline void add_to(SymSum& s, const SymMono& m, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = s.find(m);
  if (it == s.end()) {
    s.emplace(m, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) s.erase(it);
  }
}

inline void add_all(SymSum& s, const SymSum& t, const Rat& c = 1) {
  for (const auto& [m, x] : t) add_to(s, m, c * x);
}

/// Sorts the factors; returns the Koszul sign of the sort, or 0 when an odd
/// factor repeats.
inline int sym_sort(SymMono& m, FactorParity fp) {
  int sign = 1;
  for (std::size_t i = 1; i < m.size(); ++i)
    for (std::size_t j = i; j > 0 && !(m[j - 1] < m[j]); --j) {
      const bool odd_a = fp(m[j - 1]) % 2, odd_b = fp(m[j]) % 2;
      if (m[j - 1] == m[j]) {
        if (odd_a) return 0;
        break;
      }
      std::swap(m[j - 1], m[j]);
      if (odd_a && odd_b) sign = -sign;
    }
  return sign;
}

inline int sym_parity(const SymMono& m, FactorParity fp) {
  int p = 0;
  for (const auto& w : m) p += fp(w);
  return ((p % 2) + 2) % 2;
}

using SymPair = std::pair<SymMono, SymMono>;
using SymPairSum = std::map<SymPair, Rat>;

inline void add_to(SymPairSum& s, const SymPair& p, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = s.find(p);
  if (it == s.end()) {
    s.emplace(p, c);
  } else {
    it->second += c;
    if (sgn(it->second) == 0) s.erase(it);
  }
}

/// Reduced coproduct: sum over nonempty proper subsets S of factor
/// positions of (factors in S) (x) (the rest), with the Koszul sign of moving
/// S to the front. Repeated factors give multinomial multiplicities.
inline SymPairSum sym_coproduct(const SymMono& m, FactorParity fp) {
  SymPairSum out;
  const std::size_t k = m.size();
  if (k < 2) return out;
  for (unsigned long mask = 1; mask + 1 < (1ul << k); ++mask) {
    SymMono left, right;
    int sign = 1;
    int right_odd = 0;  // odd factors already passed into the right part
    for (std::size_t i = 0; i < k; ++i) {
      const int p = fp(m[i]) % 2 ? 1 : 0;
      if (mask & (1ul << i)) {
        left.push_back(m[i]);
        if (p && (right_odd % 2)) sign = -sign;
      } else {
        right.push_back(m[i]);
        right_odd += p;
      }
    }
    add_to(out, {left, right}, Rat(sign));
  }
  return out;
}

inline SymPairSum sym_coproduct(const SymSum& s, FactorParity fp) {
  SymPairSum out;
  for (const auto& [m, c] : s)
    for (const auto& [p, x] : sym_coproduct(m, fp)) add_to(out, p, c * x);
  return out;
}

inline std::string to_string(const SymMono& m) {
  std::string s;
  for (const auto& w : m) s += to_string(w);
  return s.empty() ? "()" : s;
}

inline std::string to_string(const SymSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : s) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += c.get_str() + "*";
    out += to_string(m);
  }
  return out;
}

}  // namespace cooperadic
}  // namespace gform

#endif  // GFORM_COOPERADIC_HPP
