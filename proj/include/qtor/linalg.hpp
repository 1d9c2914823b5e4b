#pragma once

// Sparse and dense matrices over exact scalars, with Gaussian elimination over
// fields.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtor/exactnum.hpp"

namespace qtor {

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(const QScalar& x) { return x.is_zero(); }
inline bool scalar_is_zero(const CycScalar& x) { return x.is_zero(); }
inline std::string scalar_str(const Rational& x) { return x.get_str(); }
inline std::string scalar_str(const QScalar& x) { return x.str(); }
inline std::string scalar_str(const CycScalar& x) { return x.str(); }

/// Column-major sparse matrix; S{} is the zero scalar.
template <class S>
class SparseMatrix {
 public:
  using Column = std::map<int, S>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}

  static SparseMatrix identity(int n, const S& one) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.cols_[i][i] = one;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  const Column& col(int c) const { return cols_.at(static_cast<std::size_t>(c)); }

  S get(int r, int c) const {
    const auto& cc = col(c);
    auto it = cc.find(r);
    return it == cc.end() ? S{} : it->second;
  }
  void set(int r, int c, S v) {
    check(r, c);
    auto& cc = cols_[static_cast<std::size_t>(c)];
    if (scalar_is_zero(v))
      cc.erase(r);
    else
      cc[r] = std::move(v);
  }
  void add(int r, int c, const S& v) {
    check(r, c);
    if (scalar_is_zero(v)) return;
    auto& cc = cols_[static_cast<std::size_t>(c)];
    auto [it, fresh] = cc.try_emplace(r, v);
    if (!fresh) {
      it->second = it->second + v;
      if (scalar_is_zero(it->second)) cc.erase(it);
    }
  }

  bool is_zero() const {
    for (const auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) {
    same_shape(a, b);
    for (int c = 0; c < b.cols(); ++c)
      for (const auto& [r, v] : b.col(c)) a.add(r, c, v);
    return a;
  }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) {
    same_shape(a, b);
    for (int c = 0; c < b.cols(); ++c)
      for (const auto& [r, v] : b.col(c)) a.add(r, c, v * Rational(-1));
    return a;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const S& s) {
    SparseMatrix out(a.rows(), a.cols());
    for (int c = 0; c < a.cols(); ++c)
      for (const auto& [r, v] : a.col(c)) out.set(r, c, v * s);
    return out;
  }
  SparseMatrix scaled(const Rational& s) const {
    SparseMatrix out(rows(), cols());
    for (int c = 0; c < cols(); ++c)
      for (const auto& [r, v] : col(c)) out.set(r, c, v * s);
    return out;
  }
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("matrix product shape mismatch");
    SparseMatrix out(a.rows(), b.cols());
    for (int c = 0; c < b.cols(); ++c)
      for (const auto& [k, bv] : b.col(c))
        for (const auto& [r, av] : a.col(k)) out.add(r, c, av * bv);
    return out;
  }
  bool operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) return false;
    for (int c = 0; c < cols(); ++c) {
      const auto &x = col(c), &y = o.col(c);
      if (x.size() != y.size()) return false;
      for (auto i = x.begin(), j = y.begin(); i != x.end(); ++i, ++j)
        if (i->first != j->first || !scalar_is_zero(i->second - j->second)) return false;
    }
    return true;
  }
  bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

  /// a (x) b with index (i, j) -> i * b.rows() + j.
  friend SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ca = 0; ca < a.cols(); ++ca)
      for (const auto& [ra, va] : a.col(ca))
        for (int cb = 0; cb < b.cols(); ++cb)
          for (const auto& [rb, vb] : b.col(cb))
            out.set(ra * b.rows() + rb, ca * b.cols() + cb, va * vb);
    return out;
  }

  /// Image of basis vector c.
  const Column& apply_basis(int c) const { return col(c); }
  Column apply(const Column& v) const {
    Column out;
    for (const auto& [k, x] : v)
      for (const auto& [r, a] : col(k)) {
        auto [it, fresh] = out.try_emplace(r, a * x);
        if (!fresh) it->second = it->second + a * x;
      }
    for (auto it = out.begin(); it != out.end();)
      it = scalar_is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols())
      throw RangeError("matrix index (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
  }
  static void same_shape(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("matrix shape mismatch");
  }
  int rows_ = 0;
  std::vector<Column> cols_;
};

template <class S>
using DenseMatrix = std::vector<std::vector<S>>;

template <class S>
DenseMatrix<S> to_dense(const SparseMatrix<S>& m) {
  DenseMatrix<S> d(static_cast<std::size_t>(m.rows()), std::vector<S>(static_cast<std::size_t>(m.cols())));
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.col(c)) d[r][c] = v;
  return d;
}

template <class S>
SparseMatrix<S> to_sparse(const DenseMatrix<S>& d, int cols = -1) {
  const int rows = static_cast<int>(d.size());
  if (cols < 0) cols = rows ? static_cast<int>(d[0].size()) : 0;
  SparseMatrix<S> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, d[r][c]);
  return m;
}

/// Reduced row echelon form in place; returns pivot columns.
template <class Field>
std::vector<int> rref(const Field& F, DenseMatrix<typename Field::Scalar>& a) {
  using S = typename Field::Scalar;
  std::vector<int> pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && F.is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const S inv = F.divide(F.one(), a[r][c]);
    for (int k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || F.is_zero(a[i][c])) continue;
      const S f = a[i][c];
      for (int k = c; k < cols; ++k) a[i][k] = a[i][k] - f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Field>
int rank(const Field& F, DenseMatrix<typename Field::Scalar> a) {
  return static_cast<int>(rref(F, a).size());
}

/// Basis of {x : a x = 0}, as column vectors.
template <class Field>
std::vector<std::vector<typename Field::Scalar>> nullspace(const Field& F,
                                                           DenseMatrix<typename Field::Scalar> a,
                                                           int cols) {
  using S = typename Field::Scalar;
  if (a.empty()) {
    std::vector<std::vector<S>> out;
    for (int j = 0; j < cols; ++j) {
      std::vector<S> v(static_cast<std::size_t>(cols), F.zero());
      v[j] = F.one();
      out.push_back(v);
    }
    return out;
  }
  const auto piv = rref(F, a);
  std::vector<bool> is_piv(static_cast<std::size_t>(cols), false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<S>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<S> v(static_cast<std::size_t>(cols), F.zero());
    v[f] = F.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.zero() - a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

template <class Field>
std::optional<DenseMatrix<typename Field::Scalar>> inverse(const Field& F,
                                                           const DenseMatrix<typename Field::Scalar>& a) {
  using S = typename Field::Scalar;
  const int n = static_cast<int>(a.size());
  DenseMatrix<S> aug(static_cast<std::size_t>(n), std::vector<S>(static_cast<std::size_t>(2 * n), F.zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = F.one();
  }
  const auto piv = rref(F, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<S> inv(static_cast<std::size_t>(n), std::vector<S>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

template <class S>
DenseMatrix<S> mat_mul(const DenseMatrix<S>& a, const DenseMatrix<S>& b, const S& zero) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  DenseMatrix<S> out(n, std::vector<S>(m, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (scalar_is_zero(a[i][t])) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][t] * b[t][j];
    }
  return out;
}

template <class S>
bool mat_equal(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!scalar_is_zero(a[i][j] - b[i][j])) return false;
  }
  return true;
}

}  // namespace qtor
