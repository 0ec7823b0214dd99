#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace slc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix.
template <typename T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, T(0)) {}

  T& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * cols + j];
  }
};

struct FloatRank {
  int rank = 0;
  double sigma_max = 0.0;
  double threshold = 0.0;
  // NaN when there is no such singular value.
  double smallest_accepted = std::numeric_limits<double>::quiet_NaN();
  double largest_rejected = std::numeric_limits<double>::quiet_NaN();
};

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

/// Numerical rank: singular values above tol * sigma_max * max(rows, cols).
inline FloatRank float_rank(const Matrix<double>& m, double tol) {
  FloatRank out;
  if (m.rows == 0 || m.cols == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  const Eigen::VectorXd& s = svd.singularValues();
  out.sigma_max = s.size() ? s(0) : 0.0;
  out.threshold = tol * out.sigma_max * std::max(m.rows, m.cols);
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > out.threshold && out.sigma_max > 0.0) {
      ++out.rank;
      out.smallest_accepted = s(i);
    } else if (std::isnan(out.largest_rejected)) {
      out.largest_rejected = s(i);
    }
  }
  return out;
}

/// Orthonormal basis of the right null space, as columns of the returned
/// matrix (cols x nullity).
inline Eigen::MatrixXd float_null_space(const Matrix<double>& m, double tol) {
  if (m.rows == 0) return Eigen::MatrixXd::Identity(m.cols, m.cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
  const FloatRank r = float_rank(m, tol);
  const Eigen::MatrixXd& V = svd.matrixV();
  return V.rightCols(m.cols - r.rank);
}

/// Fraction-free (Bareiss) elimination rank over the integers. The matrix is
/// consumed.
inline int bareiss_rank(Matrix<BigInt> a) {
  int rank = 0;
  BigInt prev = 1;
  for (int col = 0; col < a.cols && rank < a.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < a.rows; ++i) {
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < a.cols; ++j) std::swap(a(pivot, j), a(rank, j));
    for (int i = rank + 1; i < a.rows; ++i) {
      for (int j = col + 1; j < a.cols; ++j)
        a(i, j) = (a(rank, col) * a(i, j) - a(i, col) * a(rank, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return rank;
}

/// Scales each row of a rational matrix by the lcm of its denominators.
inline Matrix<BigInt> clear_denominators(const Matrix<Rational>& m) {
  Matrix<BigInt> out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i) {
    BigInt l = 1;
    for (int j = 0; j < m.cols; ++j) l = boost::multiprecision::lcm(l, denominator(m(i, j)));
    for (int j = 0; j < m.cols; ++j) out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
  }
  return out;
}

inline int exact_rank(const Matrix<Rational>& m) { return bareiss_rank(clear_denominators(m)); }

/// Null-space basis over the rationals via reduced row echelon form. Each
/// basis vector has a 1 in one free column.
inline std::vector<std::vector<Rational>> exact_null_space(Matrix<Rational> a) {
  std::vector<int> pivot_cols;
  int row = 0;
  for (int col = 0; col < a.cols && row < a.rows; ++col) {
    int pivot = -1;
    for (int i = row; i < a.rows; ++i) {
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < a.cols; ++j) std::swap(a(pivot, j), a(row, j));
    const Rational inv = 1 / a(row, col);
    for (int j = col; j < a.cols; ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (int j = col; j < a.cols; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(a.cols, 0);
  for (int c : pivot_cols) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace slc
