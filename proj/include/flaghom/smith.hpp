#pragma once

// Dense integer matrices and Smith normal form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flaghom {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) data_.insert(data_.end(), row.begin(), row.end());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = U((*this)(r, c));
    return out;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r].assign(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    return out;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;

// (rows x k) * (k x cols).
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto v = a(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += v * b(k, j);
    }
  return out;
}

struct SmithForm {
  std::vector<BigInt> invariant_factors;  // d_1 | d_2 | ..., all positive
  std::size_t rank = 0;
};

namespace detail {

struct SmithOverflow {};

inline std::int64_t sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t p, r;
  if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r)) throw SmithOverflow{};
  return r;
}
inline BigInt sub_mul(const BigInt& a, const BigInt& q, const BigInt& b) { return a - q * b; }

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw SmithOverflow{};
  return r;
}
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }

template <class T>
T abs_value(const T& v) {
  return v < 0 ? T(-v) : v;
}

// Unimodular row/column reduction pivoting on the smallest nonzero entry.
template <class T>
SmithForm smith_impl(Matrix<T> a) {
  const std::size_t R = a.rows(), C = a.cols();
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    if (x != y)
      for (std::size_t c = 0; c < C; ++c) std::swap(a(x, c), a(y, c));
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x != y)
      for (std::size_t r = 0; r < R; ++r) std::swap(a(r, x), a(r, y));
  };

  SmithForm out;
  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a(i, j) != 0 && (!found || abs_value(a(i, j)) < abs_value(a(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        const T q = a(i, t) / a(t, t);
        for (std::size_t c = t; c < C; ++c) a(i, c) = sub_mul(a(i, c), q, a(t, c));
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        const T q = a(t, j) / a(t, t);
        for (std::size_t r = t; r < R; ++r) a(r, j) = sub_mul(a(r, j), q, a(r, t));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; promote it.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (a(i, t) != 0 && abs_value(a(i, t)) < abs_value(a(bi, bj))) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(t, j) != 0 && abs_value(a(t, j)) < abs_value(a(bi, bj))) { bi = t; bj = j; }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Pivot must divide the remaining block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            for (std::size_t c = t; c < C; ++c) a(t, c) = add(a(t, c), a(i, c));
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    out.invariant_factors.push_back(BigInt(abs_value(a(t, t))));
  }
  out.rank = t;
  return out;
}

}  // namespace detail

// Machine integers first; restarts in arbitrary precision on overflow.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  try {
    return detail::smith_impl(m);
  } catch (const detail::SmithOverflow&) {
    return detail::smith_impl(m.cast<BigInt>());
  }
}

inline SmithForm smith_normal_form(const Matrix<BigInt>& m) { return detail::smith_impl(m); }

inline std::size_t rank_mod2(const IntMatrix& m) {
  std::vector<std::vector<bool>> rows(m.rows(), std::vector<bool>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = (m(r, c) % 2) != 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t k = c; k < m.cols(); ++k) rows[r][k] = rows[r][k] != rows[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace flaghom
