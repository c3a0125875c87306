#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "addcomb/error.hpp"

namespace addcomb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using BigVector = std::vector<BigInt>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const BigVector& row) {
    require(row.size() == cols_, ErrorCode::InvalidParams, "row width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Fraction-free Gauss-Jordan elimination (Bareiss). On return the first rank rows hold
/// an integer reduced echelon form in which every pivot equals the same value and all
/// other entries of pivot columns are zero; every entry stays a minor of the input, so
/// each division below is exact. Returns the pivot columns.
inline std::vector<std::size_t> bareiss_rref(IntMatrix& m) {
  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    const BigInt pivot = m(r, c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const BigInt factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == c) continue;
        m(i, j) = (pivot * m(i, j) - factor * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = pivot;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t exact_rank(IntMatrix m) { return bareiss_rref(m).size(); }

/// Divide by the gcd of the entries and make the first nonzero entry positive.
inline void make_primitive(BigVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  auto first = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
  if (first == v.end()) return;
  if (*first < 0) g = -g;
  for (auto& x : v) x /= g;
}

/// Integer basis of {x : m x = 0}, one vector per free column.
inline std::vector<BigVector> integer_nullspace(IntMatrix m) {
  const auto pivots = bareiss_rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BigVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BigVector v(n, 0);
    // Every pivot equals D, so pivot row i reads D x_{p_i} + m(i, free) x_free = 0.
    const BigInt d = pivots.empty() ? BigInt(1) : m(0, pivots[0]);
    v[free] = d;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical integer basis of the span of the given vectors: reduced echelon rows,
/// each scaled to a primitive vector with positive pivot. Equal spans give equal output.
inline std::vector<BigVector> canonical_row_basis(const std::vector<BigVector>& rows, std::size_t width) {
  IntMatrix m(0, width);
  for (const auto& r : rows) m.append_row(r);
  const auto pivots = bareiss_rref(m);
  std::vector<BigVector> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    BigVector v(width);
    for (std::size_t j = 0; j < width; ++j) v[j] = m(i, j);
    make_primitive(v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace addcomb
