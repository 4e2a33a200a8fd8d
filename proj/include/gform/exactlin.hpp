#ifndef GFORM_EXACTLIN_HPP
#define GFORM_EXACTLIN_HPP

// Exact sparse linear algebra over the rationals: echelon forms, rank,
// kernels, homology dimensions and linear solves.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gform {

/// Rationals are GMP rationals; every arithmetic result is kept canonical
/// (reduced, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Raised when a computation detects that its inputs violate a structural
/// invariant (non-complex, inconsistent reconstruction data, ...). The CLI maps
/// this to exit status 3.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exactlin {

using SparseVec = std::map<std::size_t, Rat>;

inline void axpy(SparseVec& y, const Rat& a, const SparseVec& x) {
  if (sgn(a) == 0) return;
  for (const auto& [j, v] : x) {
    auto it = y.find(j);
    if (it == y.end()) {
      y.emplace(j, a * v);
    } else {
      it->second += a * v;
      if (sgn(it->second) == 0) y.erase(it);
    }
  }
}

class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, const Rat& v) {
    if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseMat::add: index out of range");
    if (sgn(v) == 0) return;
    auto& row = rows_[r];
    auto it = row.find(c);
    if (it == row.end()) {
      row.emplace(c, v);
    } else {
      it->second += v;
      if (sgn(it->second) == 0) row.erase(it);
    }
  }

  Rat at(std::size_t r, std::size_t c) const {
    auto it = rows_.at(r).find(c);
    return it == rows_[r].end() ? Rat(0) : it->second;
  }

  const SparseVec& row(std::size_t r) const { return rows_.at(r); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool is_zero() const { return nnz() == 0; }

  SparseMat transpose() const {
    SparseMat t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace(i, v);
    return t;
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (std::size_t i = 0; i < rows(); ++i) {
      Rat acc = 0;
      for (const auto& [j, v] : rows_[i]) {
        auto it = x.find(j);
        if (it != x.end()) acc += v * it->second;
      }
      if (sgn(acc) != 0) y.emplace(i, acc);
    }
    return y;
  }

  friend SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("SparseMat product: shape mismatch");
    SparseMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [k, v] : a.rows_[i]) axpy(c.rows_[i], v, b.rows_[k]);
    return c;
  }

  static SparseMat identity(std::size_t n) {
    SparseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
    return m;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVec> rows_;
};

/// Incremental row echelon form. Rows are inserted one at a time and reduced
/// against the existing pivots; the leading column of a surviving row becomes
/// its pivot. `rref()` back-substitutes to the reduced form.
class Echelon {
 public:
  explicit Echelon(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduces `v` against the pivots, leaving only free coordinates (and pivot
  /// coordinates of pivots inserted later than `v` was built against).
  SparseVec reduce(SparseVec v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      Rat factor = -it->second;
      axpy(v, factor, p->second);
      it = v.upper_bound(col);
    }
    return v;
  }

  /// Inserts `v`; returns true iff it was independent of the current span.
  bool insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const std::size_t lead = v.begin()->first;
    if (lead >= ambient_) throw std::out_of_range("Echelon::insert: index out of range");
    Rat inv = 1 / v.begin()->second;
    for (auto& [j, x] : v) x *= inv;
    pivots_.emplace(lead, std::move(v));
    reduced_ = false;
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Brings the stored rows to reduced row-echelon form.
  void rref() {
    if (reduced_) return;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t col = it->first;
      for (auto& [c, row] : pivots_) {
        if (c >= col) break;
        auto e = row.find(col);
        if (e != row.end()) {
          Rat factor = -e->second;
          axpy(row, factor, it->second);
        }
      }
    }
    reduced_ = true;
  }

  const std::map<std::size_t, SparseVec>& pivot_rows() const { return pivots_; }

 private:
  std::size_t ambient_;
  std::map<std::size_t, SparseVec> pivots_;
  bool reduced_ = true;
};

/// A linear subspace of Q^ambient, stored as a reduced row-echelon basis with
/// strictly increasing pivot columns.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ech_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vectors) {
    Subspace s(ambient);
    for (const auto& v : vectors) s.ech_.insert(v);
    s.ech_.rref();
    return s;
  }

  std::size_t ambient_dim() const { return ech_.ambient_dim(); }
  std::size_t dim() const { return ech_.rank(); }

  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> b;
    for (const auto& [c, row] : ech_.pivot_rows()) b.push_back(row);
    return b;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& [c, row] : ech_.pivot_rows()) p.push_back(c);
    return p;
  }

  bool contains(const SparseVec& v) const { return ech_.contains(v); }

  /// Canonical representative of v modulo this subspace (all pivot
  /// coordinates eliminated).
  SparseVec reduce(const SparseVec& v) const { return ech_.reduce(v); }

 private:
  Echelon ech_;
};

namespace detail {

/// Row order used for elimination: sparsest rows first, ties by index.
inline std::vector<std::size_t> sparsity_order(const SparseMat& m) {
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.row(a).size() < m.row(b).size();
  });
  return order;
}

}  // namespace detail

struct RankKernel {
  std::size_t rank = 0;
  Subspace kernel;
};

inline std::size_t rank(const SparseMat& m) {
  Echelon e(m.cols());
  for (auto i : detail::sparsity_order(m)) e.insert(m.row(i));
  return e.rank();
}

inline RankKernel rank_kernel(const SparseMat& m) {
  Echelon e(m.cols());
  for (auto i : detail::sparsity_order(m)) e.insert(m.row(i));
  e.rref();
  const auto& piv = e.pivot_rows();
  std::vector<SparseVec> kernel;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (piv.count(j)) continue;
    SparseVec v;
    v.emplace(j, 1);
    for (const auto& [c, row] : piv) {
      auto it = row.find(j);
      if (it != row.end()) v.emplace(c, -it->second);
    }
    kernel.push_back(std::move(v));
  }
  return {e.rank(), Subspace::span(m.cols(), kernel)};
}

/// dim ker(d_out) - rank(d_in) for the middle term of d_out . d_in.
inline std::size_t homology_dim(const SparseMat& d_in, const SparseMat& d_out) {
  if (d_out.cols() != d_in.rows())
    throw std::invalid_argument("homology_dim: middle dimensions disagree");
  if (!(d_out * d_in).is_zero()) throw InconsistencyError("homology_dim: d_out * d_in != 0");
  const std::size_t middle = d_out.cols();
  const std::size_t ker = middle - rank(d_out);
  const std::size_t im = rank(d_in);
  return ker - im;
}

inline std::optional<std::vector<Rat>> solve_linear(const SparseMat& m, const std::vector<Rat>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve_linear: rhs length != rows");
  const std::size_t n = m.cols();
  Echelon e(n + 1);
  for (auto i : detail::sparsity_order(m)) {
    SparseVec row = m.row(i);
    if (sgn(rhs[i]) != 0) row.emplace(n, rhs[i]);
    e.insert(std::move(row));
  }
  if (e.pivot_rows().count(n)) return std::nullopt;
  e.rref();
  std::vector<Rat> x(n, Rat(0));
  for (const auto& [c, row] : e.pivot_rows()) {
    auto it = row.find(n);
    if (it != row.end()) x[c] = it->second;
  }
  return x;
}

}  // namespace exactlin
}  // namespace gform

#endif  // GFORM_EXACTLIN_HPP
