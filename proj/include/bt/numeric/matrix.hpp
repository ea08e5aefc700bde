#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "bt/error.hpp"
#include "bt/numeric/scalar.hpp"
#include "bt/numeric/scalar_json.hpp"

namespace bt::numeric {

/// Dense row-major matrix over a scalar backend. Column vectors are n×1
/// matrices. K^n is a right K-module: matrices act on the left and scalars
/// multiply vectors on the right (see right_scaled).
template <class S>
class Matrix {
 public:
  using Scalar = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("matrix data size does not match its shape");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix column(std::vector<S> entries) {
    const std::size_t n = entries.size();
    return Matrix(n, 1, std::move(entries));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<S>& data() const { return data_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  /// Entry i of a column vector.
  const S& operator[](std::size_t i) const { return data_[i]; }
  S& operator[](std::size_t i) { return data_[i]; }

  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matmul: inner dimensions differ");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const S& x = a(i, l);
        if (ScalarOps<S>::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (ScalarOps<S>::is_zero(b(l, j))) continue;
          out(i, j) += x * b(l, j);
        }
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix conj_transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = ScalarOps<S>::conj((*this)(i, j));
    return out;
  }

  /// Every entry x replaced by x·s (right scalar action).
  Matrix right_scaled(const S& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = x * s;
    return out;
  }
  /// Every entry x replaced by s·x.
  Matrix left_scaled(const S& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = s * x;
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& x) { return ScalarOps<S>::is_zero(x); });
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <class S>
Matrix<FloatOf<S>> to_float(const Matrix<S>& m) {
  std::vector<FloatOf<S>> data;
  data.reserve(m.data().size());
  for (const auto& x : m.data()) data.push_back(ScalarOps<S>::to_float(x));
  return Matrix<FloatOf<S>>(m.rows(), m.cols(), std::move(data));
}

/// Converts entrywise between backends through a conversion callable.
template <class T, class S, class Fn>
Matrix<T> convert(const Matrix<S>& m, Fn&& fn) {
  std::vector<T> data;
  data.reserve(m.data().size());
  for (const auto& x : m.data()) data.push_back(fn(x));
  return Matrix<T>(m.rows(), m.cols(), std::move(data));
}

/// Largest entrywise magnitude of a - b, evaluated in floating point.
template <class S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shapes differ");
  double out = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    S d = a.data()[i] - b.data()[i];
    out = std::max(out, ScalarOps<S>::magnitude(d));
  }
  return out;
}

/// Canonical text of all entries; equal matrices give equal keys.
template <class S>
std::string key(const Matrix<S>& m) {
  std::string out = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  for (const auto& x : m.data()) {
    out += '|';
    out += ScalarOps<S>::str(x);
  }
  return out;
}

template <class S>
Json matrix_to_json(const Matrix<S>& m) {
  Json entries = Json::array();
  for (const auto& x : m.data()) entries.push_back(ScalarJson<S>::write(x));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <class S>
Matrix<S> matrix_from_json(const Json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<S> data;
  for (const auto& e : j.at("entries")) data.push_back(ScalarJson<S>::read(e));
  return Matrix<S>(rows, cols, std::move(data));
}

}  // namespace bt::numeric
