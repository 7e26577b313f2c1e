// Dense integer matrices with Smith and Hermite normal forms.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace minact {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

namespace detail {

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in matrix arithmetic");
  return r;
}

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in matrix arithmetic");
  return r;
}

// Floor division and the matching nonnegative remainder.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose columns are the given vectors, each of length `rows`.
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const { return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Int v) { return v == 0; });
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Int aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = detail::checked_add(c(i, j), detail::checked_mul(aik, b(k, j)));
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector r(a.rows_, 0);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) r[i] = detail::checked_add(r[i], detail::checked_mul(a(i, k), v[k]));
    return r;
  }

  // Elementary operations. Row ops act on the left, column ops on the right.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, Int factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) = detail::checked_add((*this)(dst, j), detail::checked_mul(factor, (*this)(src, j)));
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, Int factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) = detail::checked_add((*this)(i, dst), detail::checked_mul(factor, (*this)(i, src)));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct SmithDecomposition {
  IntMatrix U;  // rows x rows, unimodular
  IntMatrix D;  // rows x cols, diagonal with d1 | d2 | ...
  IntMatrix V;  // cols x cols, unimodular

  /// Diagonal entries d_0 .. d_{min(rows,cols)-1}, zeros included.
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// U * M * V = D with U, V unimodular and D in Smith normal form.
/// The reduction is fully deterministic (pivot choice is smallest |entry|,
/// ties broken by row-major position).
inline SmithDecomposition smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithDecomposition out{IntMatrix::identity(m), M, IntMatrix::identity(n)};
  IntMatrix& U = out.U;
  IntMatrix& D = out.D;
  IntMatrix& V = out.V;

  auto row_op = [&](std::size_t dst, std::size_t src, Int f) {
    D.add_row(dst, src, f);
    U.add_row(dst, src, f);
  };
  auto col_op = [&](std::size_t dst, std::size_t src, Int f) {
    D.add_col(dst, src, f);
    V.add_col(dst, src, f);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Bring the smallest nonzero entry of the trailing block to (t, t).
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!best || std::abs(D(i, j)) < std::abs(D(best->first, best->second)))) best = {{i, j}};
      if (!best) return out;
      D.swap_rows(t, best->first);
      U.swap_rows(t, best->first);
      D.swap_cols(t, best->second);
      V.swap_cols(t, best->second);

      bool dirty = false;
      const Int p = D(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_op(i, t, -detail::floor_div(D(i, t), p));
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_op(j, t, -detail::floor_div(D(t, j), p));
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column t are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % p != 0) {
            offender = i;
            break;
          }
      if (offender) {
        row_op(t, *offender, 1);
        continue;
      }
      if (p < 0) {
        D.negate_row(t);
        U.negate_row(t);
      }
      break;
    }
  }
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `gens`.
/// Returns only the nonzero rows; pivots are positive and entries above each
/// pivot are reduced into [0, pivot). Equal lattices give equal results.
inline IntMatrix hermite_rows(const IntMatrix& gens) {
  IntMatrix A = gens;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < m; ++i)
        if (A(i, j) != 0 && (!best || std::abs(A(i, j)) < std::abs(A(*best, j)))) best = i;
      if (!best) break;
      A.swap_rows(r, *best);
      bool dirty = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (A(i, j) == 0) continue;
        A.add_row(i, r, -detail::floor_div(A(i, j), A(r, j)));
        if (A(i, j) != 0) dirty = true;
      }
      if (!dirty) break;
    }
    if (A(r, j) == 0) continue;
    if (A(r, j) < 0) A.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) A.add_row(i, r, -detail::floor_div(A(i, j), A(r, j)));
    pivot_cols.push_back(j);
    ++r;
  }
  IntMatrix H(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) = A(i, j);
  return H;
}

using Rational = boost::rational<Int>;

/// Inverse over the rationals; throws if singular.
inline std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = M.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = M(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].numerator() == 0) ++p;
    if (p == n) throw std::domain_error("singular matrix");
    std::swap(a[p], a[c]);
    const Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].numerator() == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

/// Inverse of a unimodular matrix, as an integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& M) {
  auto q = rational_inverse(M);
  IntMatrix out(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (q[i][j].denominator() != 1) throw std::domain_error("matrix is not unimodular");
      out(i, j) = q[i][j].numerator();
    }
  return out;
}

/// Exact determinant via fraction-free Bareiss elimination.
inline Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix a = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
        a(i, j) = static_cast<Int>(v / prev);
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace minact
