#ifndef GFORM_POLYALG_HPP
#define GFORM_POLYALG_HPP

// The polynomial algebra A = Q[x1..xn], and polyvector fields
// V(A) = S_A(Sigma Der A) with the wedge product and the Schouten-Nijenhuis
// bracket.
//
// Sign convention: a polyvector of degree k has shifted degree k-1, and
//   [P,Q] = sum_i  P<d/dxi_i . d_i Q  -  (-1)^{(p-1)(q-1)} Q<d/dxi_i . d_i P
// where xi_i stands for the odd symbol of d_i, "<d/dxi_i" is the right
// derivative and "d_i" differentiates the coefficients. With this choice
// [v,f] = v(f), [v,w] is the commutator of vector fields, and
//   [P,Q]   = -(-1)^{(p-1)(q-1)} [Q,P]
//   [P,QR]  = [P,Q]R + (-1)^{(p-1)q} Q[P,R].

#include "gform/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gform {
namespace polyalg {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

/// Sparse polynomial with rational coefficients; no zero terms are stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Rat& c) : nvars_(nvars) {
    if (sgn(c) != 0) terms_.emplace(Exponent(nvars, 0), c);
  }

  static Poly monomial(const Exponent& e, const Rat& c = 1) {
    Poly p(e.size());
    p.add_term(e, c);
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i) {
    Exponent e(nvars, 0);
    e.at(i) = 1;
    return monomial(e);
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Rat coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(const Exponent& e, const Rat& c) {
    if (e.size() != nvars_) throw std::invalid_argument("Poly: exponent length != nvars");
    if (sgn(c) == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// d/dx_i
  Poly derivative(std::size_t i) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(i) == 0) continue;
      Exponent f(e);
      f[i] -= 1;
      r.add_term(f, c * e[i]);
    }
    return r;
  }

  /// Mixed partial derivative d^alpha.
  Poly partial(const Exponent& alpha) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
      bool kills = false;
      for (std::size_t i = 0; i < nvars_ && !kills; ++i) kills = alpha[i] > e[i];
      if (kills) continue;
      Exponent f(e);
      Rat k = c;
      bool zero = false;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (alpha[i] > e[i]) {
          zero = true;
          break;
        }
        for (int j = 0; j < alpha[i]; ++j) k *= (e[i] - j);
        f[i] -= alpha[i];
      }
      if (!zero) r.add_term(f, k);
    }
    return r;
  }

 private:
  void check(const Poly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Poly: nvars mismatch");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Rat> terms_;
};

/// Strictly increasing tuple of derivation indices (0-based).
using IndexTuple = std::vector<int>;

/// Sorts `idx` in place; returns the sign of the sorting permutation, or 0
/// when an index repeats.
inline int sort_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

/// Homogeneous polyvector of degree k: sum over index tuples of
/// coefficient * d_{i1} ^ ... ^ d_{ik}.
class Polyvector {
 public:
  Polyvector() = default;
  Polyvector(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static Polyvector function(const Poly& f) {
    Polyvector p(f.nvars(), 0);
    p.add_term({}, f);
    return p;
  }
  static Polyvector basis(std::size_t nvars, IndexTuple idx, const Poly& coeff) {
    const int k = static_cast<int>(idx.size());
    int s = sort_sign(idx);
    Polyvector p(nvars, k);
    if (s != 0) p.add_term(idx, coeff * Rat(s));
    return p;
  }
  /// The coordinate vector field d_i.
  static Polyvector coordinate(std::size_t nvars, int i) {
    return basis(nvars, {i}, Poly(nvars, 1));
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::map<IndexTuple, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly coefficient(const IndexTuple& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Poly(nvars_) : it->second;
  }

  /// Degree-0 polyvector as a polynomial.
  Poly as_function() const {
    if (degree_ != 0) throw std::invalid_argument("Polyvector::as_function: degree != 0");
    return coefficient({});
  }

  void add_term(const IndexTuple& idx, const Poly& c) {
    if (static_cast<int>(idx.size()) != degree_)
      throw std::invalid_argument("Polyvector: index tuple length != degree");
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i - 1] >= idx[i]) throw std::invalid_argument("Polyvector: indices not strictly increasing");
    if (c.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_.emplace(idx, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polyvector& operator+=(const Polyvector& o) {
    check(o);
    for (const auto& [i, c] : o.terms_) add_term(i, c);
    return *this;
  }
  Polyvector& operator-=(const Polyvector& o) {
    check(o);
    for (const auto& [i, c] : o.terms_) add_term(i, -c);
    return *this;
  }
  Polyvector& operator*=(const Rat& s) {
    if (sgn(s) == 0) terms_.clear();
    for (auto& [i, c] : terms_) c *= s;
    return *this;
  }
  friend Polyvector operator+(Polyvector a, const Polyvector& b) { return a += b; }
  friend Polyvector operator-(Polyvector a, const Polyvector& b) { return a -= b; }
  friend Polyvector operator*(Polyvector a, const Rat& s) { return a *= s; }
  friend Polyvector operator*(const Rat& s, Polyvector a) { return a *= s; }

  friend Polyvector operator*(const Poly& f, const Polyvector& v) {
    Polyvector r(v.nvars_, v.degree_);
    for (const auto& [i, c] : v.terms_) r.add_term(i, f * c);
    return r;
  }

  friend bool operator==(const Polyvector& a, const Polyvector& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Right derivative with respect to the odd symbol of d_i.
  Polyvector odd_derivative(int i) const {
    Polyvector r(nvars_, degree_ - 1);
    for (const auto& [idx, c] : terms_) {
      for (std::size_t m = 0; m < idx.size(); ++m) {
        if (idx[m] != i) continue;
        IndexTuple rest(idx);
        rest.erase(rest.begin() + static_cast<long>(m));
        const bool odd = ((idx.size() - 1 - m) % 2) == 1;
        r.add_term(rest, odd ? -c : c);
      }
    }
    return r;
  }

  /// Coefficientwise d/dx_i.
  Polyvector coefficient_derivative(std::size_t i) const {
    Polyvector r(nvars_, degree_);
    for (const auto& [idx, c] : terms_) r.add_term(idx, c.derivative(i));
    return r;
  }

 private:
  void check(const Polyvector& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Polyvector: nvars mismatch");
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
      throw std::invalid_argument("Polyvector: adding different degrees");
    if (is_zero() && o.degree_ != degree_) degree_ = o.degree_;
  }

  std::size_t nvars_ = 0;
  int degree_ = 0;
  std::map<IndexTuple, Poly> terms_;
};

inline Poly apply_derivation(const Polyvector& v, const Poly& f) {
  if (v.degree() != 1) throw std::invalid_argument("apply_derivation: polyvector degree != 1");
  if (v.nvars() != f.nvars()) throw std::invalid_argument("apply_derivation: nvars mismatch");
  Poly r(f.nvars());
  for (const auto& [idx, c] : v.terms()) r += c * f.derivative(static_cast<std::size_t>(idx[0]));
  return r;
}

inline Polyvector wedge(const Polyvector& u, const Polyvector& v) {
  if (u.nvars() != v.nvars()) throw std::invalid_argument("wedge: nvars mismatch");
  Polyvector r(u.nvars(), u.degree() + v.degree());
  for (const auto& [iu, cu] : u.terms())
    for (const auto& [iv, cv] : v.terms()) {
      IndexTuple idx(iu);
      idx.insert(idx.end(), iv.begin(), iv.end());
      int s = sort_sign(idx);
      if (s == 0) continue;
      r.add_term(idx, (cu * cv) * Rat(s));
    }
  return r;
}

inline Polyvector schouten(const Polyvector& u, const Polyvector& v) {
  if (u.nvars() != v.nvars()) throw std::invalid_argument("schouten: nvars mismatch");
  const int p = u.degree(), q = v.degree();
  Polyvector r(u.nvars(), p + q - 1);
  if (p + q == 0) return r;
  const bool odd = ((p - 1) * (q - 1)) % 2 != 0;
  for (std::size_t i = 0; i < u.nvars(); ++i) {
    const int ii = static_cast<int>(i);
    if (p > 0) r += wedge(u.odd_derivative(ii), v.coefficient_derivative(i));
    if (q > 0) {
      Polyvector t = wedge(v.odd_derivative(ii), u.coefficient_derivative(i));
      if (odd) r += t; else r -= t;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text format: terms like `3/2*x1^2*x2 d1^d3`, variables and derivations
// 1-based, terms joined by " + " / " - ".

namespace detail {

inline std::string monomial_text(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

inline std::string dpart_text(const IndexTuple& idx) {
  std::string s;
  for (std::size_t m = 0; m < idx.size(); ++m) {
    if (m) s += "^";
    s += "d" + std::to_string(idx[m] + 1);
  }
  return s;
}

/// Appends one signed term; `body` is the monomial/derivation text (may be empty).
inline void append_term(std::string& out, Rat c, const std::string& body) {
  const bool neg = sgn(c) < 0;
  if (neg) c = -c;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (body.empty()) {
    out += c.get_str();
  } else if (c == 1) {
    out += body;
  } else {
    out += c.get_str();
    out += (body[0] == 'd') ? " " : "*";
    out += body;
  }
}

}  // namespace detail

inline std::string to_string(const Poly& p) {
  std::string out;
  for (const auto& [e, c] : p.terms()) detail::append_term(out, c, detail::monomial_text(e));
  return out.empty() ? "0" : out;
}

inline std::string to_string(const Polyvector& v) {
  std::string out;
  for (const auto& [idx, c] : v.terms())
    for (const auto& [e, k] : c.terms()) {
      std::string mono = detail::monomial_text(e);
      std::string d = detail::dpart_text(idx);
      std::string body = mono.empty() ? d : (d.empty() ? mono : mono + " " + d);
      detail::append_term(out, k, body);
    }
  return out.empty() ? "0" : out;
}

namespace detail {

class Parser {
 public:
  Parser(std::string_view s, std::size_t nvars) : s_(s), nvars_(nvars) {}

  /// Parses a sum of terms; all terms must carry the same derivation degree
  /// (except that an empty input yields degree `fallback_degree`).
  Polyvector parse(int fallback_degree) {
    std::vector<std::pair<IndexTuple, Poly>> terms;
    skip();
    if (pos_ == s_.size()) throw std::invalid_argument("parse: empty input");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      Rat sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(sign));
    }
    int degree = terms.empty() ? fallback_degree : static_cast<int>(terms.front().first.size());
    Polyvector v(nvars_, degree);
    for (auto& [idx, c] : terms) {
      if (static_cast<int>(idx.size()) != degree) fail("mixed polyvector degrees");
      int s = sort_sign(idx);
      if (s != 0) v.add_term(idx, c * Rat(s));
    }
    return v;
  }

 private:
  std::pair<IndexTuple, Poly> parse_term(Rat coeff) {
    Exponent e(nvars_, 0);
    IndexTuple idx;
    bool any = false;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      char c = peek();
      if (c == '*' || c == '^') {
        if (!any) fail("dangling operator");
        ++pos_;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (c == 'x') {
        ++pos_;
        std::size_t i = parse_index();
        int power = 1;
        skip();
        if (pos_ < s_.size() && peek() == '^' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[next_nonspace(pos_ + 1)]))) {
          pos_ = next_nonspace(pos_ + 1);
          power = static_cast<int>(parse_uint());
        }
        e[i] += power;
      } else if (c == 'd') {
        ++pos_;
        idx.push_back(static_cast<int>(parse_index()));
      } else {
        break;
      }
      any = true;
    }
    if (!any) fail("empty term");
    return {idx, Poly::monomial(e, coeff)};
  }

  std::size_t next_nonspace(std::size_t p) const {
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p;
  }
  void skip() { pos_ = next_nonspace(pos_); }
  char peek() const { return s_[pos_]; }

  unsigned long parse_uint() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }
  std::size_t parse_index() {
    unsigned long i = parse_uint();
    if (i < 1 || i > nvars_) fail("variable index out of range");
    return i - 1;
  }
  Rat parse_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("bad fraction");
    }
    Rat r(std::string(s_.substr(start, pos_ - start)));
    if (r.get_den() == 0) fail("zero denominator");
    r.canonicalize();
    return r;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view s_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polyvector parse_polyvector(std::string_view text, std::size_t nvars) {
  return detail::Parser(text, nvars).parse(0);
}

inline Poly parse_poly(std::string_view text, std::size_t nvars) {
  Polyvector v = parse_polyvector(text, nvars);
  if (v.degree() != 0) throw std::invalid_argument("parse_poly: derivation symbols in a polynomial");
  return v.as_function();
}

/// All monomial exponents in `nvars` variables of total degree exactly `d`,
/// in ascending lexicographic order.
inline std::vector<Exponent> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

/// All strictly increasing k-subsets of {0..n-1}.
inline std::vector<IndexTuple> index_tuples(std::size_t n, int k) {
  std::vector<IndexTuple> out;
  IndexTuple cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < static_cast<int>(n); ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace polyalg
}  // namespace gform

#endif  // GFORM_POLYALG_HPP
