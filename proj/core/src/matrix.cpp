#include "tiltlab/matrix.hpp"

#include <sstream>

namespace tiltlab {
namespace {

template <class F>
Matrix visit_same(const Matrix& a, const Matrix& b, const char* what, F&& f) {
  require_same_ring(a, b, what);
  return std::visit(
      [&](const auto& x) -> Matrix {
        using D = std::decay_t<decltype(x)>;
        return Matrix(f(x, std::get<D>(b.storage())));
      },
      a.storage());
}

template <class T>
Dense<T> multiply(const Dense<T>& a, const Dense<T>& b) {
  using R = typename ring_for<T>::type;
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Dense<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (R::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <class T, class Op>
Dense<T> entrywise(const Dense<T>& a, const Dense<T>& b, Op op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("entrywise op: shapes differ");
  Dense<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = op(a(i, j), b(i, j));
  return out;
}

template <class T>
T element_as(const Element& e) {
  if (!std::holds_alternative<T>(e)) throw RingMismatch("element ring does not match matrix ring");
  return std::get<T>(e);
}

}  // namespace

void require_same_ring(const Matrix& a, const Matrix& b, const char* what) {
  if (a.ring() != b.ring())
    throw RingMismatch(std::string(what) + ": operands over " + std::string(to_string(a.ring())) + " and " +
                       std::string(to_string(b.ring())));
}

Matrix Matrix::zero(RingTag ring, std::size_t rows, std::size_t cols) {
  if (ring == RingTag::Integers) return Matrix(Dense<Integer>(rows, cols));
  return Matrix(Dense<Polynomial>(rows, cols));
}

Matrix Matrix::identity(RingTag ring, std::size_t n) {
  if (ring == RingTag::Integers) return Matrix(Dense<Integer>::identity(n));
  return Matrix(Dense<Polynomial>::identity(n));
}

Matrix Matrix::integers(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t nrows = rows.size();
  const std::size_t ncols = nrows == 0 ? 0 : rows.begin()->size();
  Dense<Integer> out(nrows, ncols);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != ncols) throw DimensionMismatch("ragged integer matrix literal");
    std::size_t j = 0;
    for (long v : row) out(i, j++) = v;
    ++i;
  }
  return Matrix(std::move(out));
}

Matrix Matrix::integers(std::size_t rows, std::size_t cols, const std::vector<long>& row_major) {
  if (row_major.size() != rows * cols) throw DimensionMismatch("integer matrix: entry count differs from shape");
  Dense<Integer> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = row_major[i * cols + j];
  return Matrix(std::move(out));
}

Matrix Matrix::from_elements(RingTag ring, std::size_t rows, std::size_t cols, const std::vector<Element>& row_major) {
  if (row_major.size() != rows * cols) throw DimensionMismatch("matrix: entry count differs from shape");
  Matrix out = zero(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, row_major[i * cols + j]);
  return out;
}

Matrix Matrix::column(RingTag ring, const std::vector<Element>& entries) {
  return from_elements(ring, entries.size(), 1, entries);
}

Matrix Matrix::diagonal(RingTag ring, std::size_t rows, std::size_t cols, const std::vector<Element>& diag) {
  Matrix out = zero(ring, rows, cols);
  for (std::size_t k = 0; k < diag.size(); ++k) out.set(k, k, diag[k]);
  return out;
}

RingTag Matrix::ring() const {
  return std::holds_alternative<Dense<Integer>>(data_) ? RingTag::Integers : RingTag::RationalPolynomials;
}

std::size_t Matrix::rows() const {
  return std::visit([](const auto& m) { return m.rows(); }, data_);
}

std::size_t Matrix::cols() const {
  return std::visit([](const auto& m) { return m.cols(); }, data_);
}

Element Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows() || j >= cols()) throw std::out_of_range("matrix index out of range");
  return std::visit([&](const auto& m) -> Element { return m(i, j); }, data_);
}

void Matrix::set(std::size_t i, std::size_t j, const Element& value) {
  if (i >= rows() || j >= cols()) throw std::out_of_range("matrix index out of range");
  std::visit(
      [&](auto& m) {
        using T = typename std::decay_t<decltype(m)>::value_type;
        m(i, j) = element_as<T>(value);
      },
      data_);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  return visit_same(a, b, "matrix product", [](const auto& x, const auto& y) { return multiply(x, y); });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  return visit_same(a, b, "matrix sum",
                    [](const auto& x, const auto& y) { return entrywise(x, y, [](auto& u, auto& v) { return u + v; }); });
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return visit_same(a, b, "matrix difference",
                    [](const auto& x, const auto& y) { return entrywise(x, y, [](auto& u, auto& v) { return u - v; }); });
}

Matrix operator-(const Matrix& a) { return Matrix::zero(a.ring(), a.rows(), a.cols()) - a; }

bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

Matrix Matrix::scaled(const Element& factor) const {
  return std::visit(
      [&](const auto& m) -> Matrix {
        using T = typename std::decay_t<decltype(m)>::value_type;
        const T f = element_as<T>(factor);
        auto out = m;
        for (std::size_t i = 0; i < out.rows(); ++i) out.scale_row(i, f);
        return Matrix(std::move(out));
      },
      data_);
}

bool Matrix::is_zero() const {
  return std::visit(
      [](const auto& m) {
        using R = typename std::decay_t<decltype(m)>::ring_type;
        for (const auto& v : m.data())
          if (!R::is_zero(v)) return false;
        return true;
      },
      data_);
}

bool Matrix::is_identity() const {
  return rows() == cols() && *this == identity(ring(), rows());
}

Matrix Matrix::transpose() const {
  return std::visit(
      [](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(m.cols(), m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
        return Matrix(std::move(out));
      },
      data_);
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows() || col0 + ncols > cols()) throw DimensionMismatch("block out of range");
  return std::visit(
      [&](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
          for (std::size_t j = 0; j < ncols; ++j) out(i, j) = m(row0 + i, col0 + j);
        return Matrix(std::move(out));
      },
      data_);
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  return std::visit(
      [&](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(idx.size(), m.cols());
        for (std::size_t i = 0; i < idx.size(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(idx[i], j);
        return Matrix(std::move(out));
      },
      data_);
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  return std::visit(
      [&](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(m.rows(), idx.size());
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(i, idx[j]);
        return Matrix(std::move(out));
      },
      data_);
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& value) {
  require_same_ring(*this, value, "set_block");
  if (row0 + value.rows() > rows() || col0 + value.cols() > cols()) throw DimensionMismatch("set_block out of range");
  std::visit(
      [&](auto& m) {
        using D = std::decay_t<decltype(m)>;
        const D& v = std::get<D>(value.data_);
        for (std::size_t i = 0; i < v.rows(); ++i)
          for (std::size_t j = 0; j < v.cols(); ++j) m(row0 + i, col0 + j) = v(i, j);
      },
      data_);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "hstack");
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
  Matrix out = zero(a.ring(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "vstack");
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
  Matrix out = zero(a.ring(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "block_diag");
  Matrix out = zero(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

Matrix Matrix::kronecker(const Matrix& a, const Matrix& b) {
  return visit_same(a, b, "kronecker", [](const auto& x, const auto& y) {
    using D = std::decay_t<decltype(x)>;
    using R = typename D::ring_type;
    D out(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (R::is_zero(x(i, j))) continue;
        for (std::size_t k = 0; k < y.rows(); ++k)
          for (std::size_t l = 0; l < y.cols(); ++l) out(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
      }
    return out;
  });
}

Matrix Matrix::vec() const {
  return std::visit(
      [](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(m.rows() * m.cols(), 1);
        for (std::size_t j = 0; j < m.cols(); ++j)
          for (std::size_t i = 0; i < m.rows(); ++i) out(j * m.rows() + i, 0) = m(i, j);
        return Matrix(std::move(out));
      },
      data_);
}

Matrix Matrix::unvec(const Matrix& column, std::size_t rows, std::size_t cols) {
  if (column.cols() != 1 || column.rows() != rows * cols) throw DimensionMismatch("unvec: wrong length");
  return std::visit(
      [&](const auto& m) -> Matrix {
        std::decay_t<decltype(m)> out(rows, cols);
        for (std::size_t j = 0; j < cols; ++j)
          for (std::size_t i = 0; i < rows; ++i) out(i, j) = m(j * rows + i, 0);
        return Matrix(std::move(out));
      },
      column.storage());
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols(); ++j) out << (j ? ", " : "") << element_to_string(at(i, j));
    out << "]";
  }
  out << "] (" << rows() << "x" << cols() << ")";
  return out.str();
}

}  // namespace tiltlab
