#pragma once

#include "tiltlab/ring.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tiltlab {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major dense matrix over a single element type. Zero-row and
/// zero-column shapes are valid and denote zero maps.
template <class T>
class Dense {
 public:
  using value_type = T;
  using ring_type = typename ring_for<T>::type;

  Dense() = default;
  Dense(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, ring_type::zero()) {}

  static Dense identity(std::size_t n) {
    Dense out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = ring_type::one();
    return out;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  [[nodiscard]] const std::vector<T>& data() const { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const T& factor) {
    if (ring_type::is_zero(factor)) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const T& factor) {
    if (ring_type::is_zero(factor)) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
  }
  void scale_row(std::size_t r, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= factor;
  }
  void scale_col(std::size_t c, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= factor;
  }

  friend bool operator==(const Dense& a, const Dense& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// A matrix tagged with its ring. All binary operations reject operands over
/// different rings with RingMismatch and incompatible shapes with
/// DimensionMismatch.
class Matrix {
 public:
  using Storage = std::variant<Dense<Integer>, Dense<Polynomial>>;

  Matrix() : data_(Dense<Integer>{}) {}
  explicit Matrix(Dense<Integer> m) : data_(std::move(m)) {}
  explicit Matrix(Dense<Polynomial> m) : data_(std::move(m)) {}

  static Matrix zero(RingTag ring, std::size_t rows, std::size_t cols);
  static Matrix identity(RingTag ring, std::size_t n);
  /// Integer matrix from row lists; all rows must have equal length.
  static Matrix integers(std::initializer_list<std::initializer_list<long>> rows);
  static Matrix integers(std::size_t rows, std::size_t cols, const std::vector<long>& row_major);
  static Matrix from_elements(RingTag ring, std::size_t rows, std::size_t cols, const std::vector<Element>& row_major);
  /// A column vector.
  static Matrix column(RingTag ring, const std::vector<Element>& entries);
  static Matrix diagonal(RingTag ring, std::size_t rows, std::size_t cols, const std::vector<Element>& diag);

  [[nodiscard]] RingTag ring() const;
  [[nodiscard]] std::size_t rows() const;
  [[nodiscard]] std::size_t cols() const;
  [[nodiscard]] bool empty() const { return rows() == 0 || cols() == 0; }
  [[nodiscard]] Element at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Element& value);

  template <class T>
  [[nodiscard]] const Dense<T>& as() const {
    return std::get<Dense<T>>(data_);
  }
  template <class T>
  Dense<T>& as() {
    return std::get<Dense<T>>(data_);
  }
  [[nodiscard]] const Storage& storage() const { return data_; }
  Storage& storage() { return data_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  [[nodiscard]] Matrix scaled(const Element& factor) const;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  [[nodiscard]] Matrix row_range(std::size_t row0, std::size_t nrows) const { return block(row0, 0, nrows, cols()); }
  [[nodiscard]] Matrix col_range(std::size_t col0, std::size_t ncols) const { return block(0, col0, rows(), ncols); }
  [[nodiscard]] Matrix select_rows(const std::vector<std::size_t>& idx) const;
  [[nodiscard]] Matrix select_cols(const std::vector<std::size_t>& idx) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& value);

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix block_diag(const Matrix& a, const Matrix& b);
  /// vec(A X B) = kronecker(B^T, A) vec(X) with column-major vec.
  static Matrix kronecker(const Matrix& a, const Matrix& b);
  /// Column-major vectorisation and its inverse.
  [[nodiscard]] Matrix vec() const;
  static Matrix unvec(const Matrix& column, std::size_t rows, std::size_t cols);

  [[nodiscard]] std::string to_string() const;

 private:
  Storage data_;
};

void require_same_ring(const Matrix& a, const Matrix& b, const char* what);

}  // namespace tiltlab
