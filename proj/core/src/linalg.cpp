#include "tiltlab/linalg.hpp"

#include <algorithm>

namespace tiltlab {
namespace {

template <class T>
struct DenseSmith {
  Dense<T> U, D, V, U_inv, V_inv;
  std::size_t rank = 0;
};

template <class T>
class SmithReducer {
  using R = typename ring_for<T>::type;

 public:
  explicit SmithReducer(const Dense<T>& m)
      : m_(m.rows()),
        n_(m.cols()),
        s_{Dense<T>::identity(m.rows()), m, Dense<T>::identity(m.cols()), Dense<T>::identity(m.rows()),
           Dense<T>::identity(m.cols()), 0} {}

  DenseSmith<T> run() {
    std::size_t t = 0;
    const std::size_t limit = std::min(m_, n_);
    while (t < limit) {
      auto pivot = min_norm_entry(t);
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      for (;;) {
        if (!clear_cross(t)) {
          auto p = min_norm_on_cross(t);
          swap_rows(t, p.first);
          swap_cols(t, p.second);
          continue;
        }
        if (auto bad = non_divisible_entry(t)) {
          row_op(t, bad->first, -R::one());  // row t += row i
          continue;
        }
        break;
      }
      const T u = R::normalizing_unit(s_.D(t, t));
      s_.D.scale_row(t, u);
      s_.U.scale_row(t, u);
      s_.U_inv.scale_col(t, R::unit_inverse(u));
      ++t;
    }
    s_.rank = t;
    return std::move(s_);
  }

 private:
  // row[target] -= q * row[source]
  void row_op(std::size_t target, std::size_t source, const T& q) {
    T neg = -q;
    s_.D.add_row_multiple(target, source, neg);
    s_.U.add_row_multiple(target, source, neg);
    s_.U_inv.add_col_multiple(source, target, q);
  }
  // col[target] -= q * col[source]
  void col_op(std::size_t target, std::size_t source, const T& q) {
    T neg = -q;
    s_.D.add_col_multiple(target, source, neg);
    s_.V.add_col_multiple(target, source, neg);
    s_.V_inv.add_row_multiple(source, target, q);
  }
  void swap_rows(std::size_t a, std::size_t b) {
    s_.D.swap_rows(a, b);
    s_.U.swap_rows(a, b);
    s_.U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    s_.D.swap_cols(a, b);
    s_.V.swap_cols(a, b);
    s_.V_inv.swap_rows(a, b);
  }

  std::optional<std::pair<std::size_t, std::size_t>> min_norm_entry(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j) {
        const T& v = s_.D(i, j);
        if (R::is_zero(v)) continue;
        if (!best || R::norm_less(v, s_.D(best->first, best->second))) best = {i, j};
      }
    return best;
  }

  std::pair<std::size_t, std::size_t> min_norm_on_cross(std::size_t t) const {
    std::pair<std::size_t, std::size_t> best{t, t};
    for (std::size_t j = t; j < n_; ++j)
      if (!R::is_zero(s_.D(t, j)) && (R::is_zero(s_.D(best.first, best.second)) ||
                                      R::norm_less(s_.D(t, j), s_.D(best.first, best.second))))
        best = {t, j};
    for (std::size_t i = t + 1; i < m_; ++i)
      if (!R::is_zero(s_.D(i, t)) && R::norm_less(s_.D(i, t), s_.D(best.first, best.second))) best = {i, t};
    return best;
  }

  // Euclidean reduction of row t and column t against the pivot. Returns true
  // when both are cleared apart from the pivot itself.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    const T pivot = s_.D(t, t);
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (R::is_zero(s_.D(i, t))) continue;
      auto qr = R::divmod(s_.D(i, t), pivot);
      row_op(i, t, qr.first);
      if (!R::is_zero(s_.D(i, t))) clean = false;
    }
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (R::is_zero(s_.D(t, j))) continue;
      auto qr = R::divmod(s_.D(t, j), pivot);
      col_op(j, t, qr.first);
      if (!R::is_zero(s_.D(t, j))) clean = false;
    }
    return clean;
  }

  std::optional<std::pair<std::size_t, std::size_t>> non_divisible_entry(std::size_t t) const {
    const T& pivot = s_.D(t, t);
    for (std::size_t i = t + 1; i < m_; ++i)
      for (std::size_t j = t + 1; j < n_; ++j)
        if (!R::divides(pivot, s_.D(i, j))) return std::pair{i, j};
    return std::nullopt;
  }

  std::size_t m_, n_;
  DenseSmith<T> s_;
};

template <class T>
std::optional<Dense<T>> solve_dense(const Dense<T>& a, const Dense<T>& b) {
  using R = typename ring_for<T>::type;
  if (a.rows() != b.rows()) throw DimensionMismatch("solve_lift: A and B have different row counts");
  auto s = SmithReducer<T>(a).run();
  // D * Y = U * B, X = V * Y.
  Dense<T> c(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t k = 0; k < b.rows(); ++k) {
      if (R::is_zero(s.U(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += s.U(i, k) * b(k, j);
    }
  Dense<T> y(a.cols(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i < s.rank) {
        if (!R::divides(s.D(i, i), c(i, j))) return std::nullopt;
        y(i, j) = R::exact_div(c(i, j), s.D(i, i));
      } else if (!R::is_zero(c(i, j))) {
        return std::nullopt;
      }
    }
  Dense<T> x(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t k = 0; k < s.rank; ++k) {
      if (R::is_zero(s.V(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) += s.V(i, k) * y(k, j);
    }
  return x;
}

}  // namespace

std::vector<Element> SmithForm::diagonal() const {
  std::vector<Element> out;
  out.reserve(rank);
  for (std::size_t k = 0; k < rank; ++k) out.push_back(D.at(k, k));
  return out;
}

SmithForm smith_normal_form(const Matrix& m) {
  return std::visit(
      [](const auto& dense) {
        using T = typename std::decay_t<decltype(dense)>::value_type;
        auto s = SmithReducer<T>(dense).run();
        return SmithForm{Matrix(std::move(s.U)), Matrix(std::move(s.D)), Matrix(std::move(s.V)),
                         Matrix(std::move(s.U_inv)), Matrix(std::move(s.V_inv)), s.rank};
      },
      m.storage());
}

std::optional<Matrix> solve_lift(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b, "solve_lift");
  return std::visit(
      [&](const auto& dense) -> std::optional<Matrix> {
        using D = std::decay_t<decltype(dense)>;
        auto x = solve_dense(dense, std::get<D>(b.storage()));
        if (!x) return std::nullopt;
        return Matrix(std::move(*x));
      },
      a.storage());
}

Matrix kernel_matrix(const Matrix& a) {
  auto s = smith_normal_form(a);
  return s.V.col_range(s.rank, a.cols() - s.rank);
}

Matrix left_kernel_matrix(const Matrix& a) { return kernel_matrix(a.transpose()).transpose(); }

std::size_t rank(const Matrix& a) { return smith_normal_form(a).rank; }

std::vector<Element> invariant_factors(const Matrix& a) { return smith_normal_form(a).diagonal(); }

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto s = smith_normal_form(a);
  if (s.rank != a.rows()) return std::nullopt;
  for (const auto& d : s.diagonal())
    if (!element_is_unit(d)) return std::nullopt;
  // D is the identity after normalisation, so A^{-1} = V * U.
  return s.V * s.U;
}

// ---------------------------------------------------------- MatrixEquations

std::size_t MatrixEquations::add_unknown(std::size_t rows, std::size_t cols) {
  unknowns_.push_back({rows, cols, unknown_total_});
  unknown_total_ += rows * cols;
  return unknowns_.size() - 1;
}

std::size_t MatrixEquations::add_equation(std::size_t rows, std::size_t cols) {
  equations_.push_back({rows, cols, equation_total_});
  rhs_.emplace_back();
  equation_total_ += rows * cols;
  return equations_.size() - 1;
}

void MatrixEquations::set_rhs(std::size_t equation, const Matrix& rhs) {
  const auto& e = equations_.at(equation);
  if (rhs.rows() != e.rows || rhs.cols() != e.cols) throw DimensionMismatch("equation rhs has the wrong shape");
  rhs_[equation] = rhs;
}

void MatrixEquations::add_term(std::size_t equation, const Matrix& left, std::size_t unknown, const Matrix& right) {
  const auto& e = equations_.at(equation);
  const auto& u = unknowns_.at(unknown);
  if (left.rows() != e.rows || left.cols() != u.rows || right.rows() != u.cols || right.cols() != e.cols)
    throw DimensionMismatch("equation term has incompatible shapes");
  terms_.push_back({equation, left, unknown, right});
}

void MatrixEquations::add_left(std::size_t equation, const Matrix& left, std::size_t unknown) {
  add_term(equation, left, unknown, Matrix::identity(ring_, unknowns_.at(unknown).cols));
}

void MatrixEquations::add_right(std::size_t equation, std::size_t unknown, const Matrix& right) {
  add_term(equation, Matrix::identity(ring_, unknowns_.at(unknown).rows), unknown, right);
}

Matrix MatrixEquations::coefficient_matrix() const {
  Matrix out = Matrix::zero(ring_, equation_total_, unknown_total_);
  for (const auto& t : terms_) {
    const auto& e = equations_[t.equation];
    const auto& u = unknowns_[t.unknown];
    Matrix blk = Matrix::kronecker(t.right.transpose(), t.left);
    Matrix current = out.block(e.offset, u.offset, blk.rows(), blk.cols());
    out.set_block(e.offset, u.offset, current + blk);
  }
  return out;
}

Matrix MatrixEquations::rhs_vector() const {
  Matrix out = Matrix::zero(ring_, equation_total_, 1);
  for (std::size_t k = 0; k < equations_.size(); ++k)
    if (rhs_[k]) out.set_block(equations_[k].offset, 0, rhs_[k]->vec());
  return out;
}

std::vector<Matrix> MatrixEquations::split(const Matrix& column) const {
  std::vector<Matrix> out;
  out.reserve(unknowns_.size());
  for (const auto& u : unknowns_)
    out.push_back(Matrix::unvec(column.block(u.offset, 0, u.rows * u.cols, 1), u.rows, u.cols));
  return out;
}

std::optional<std::vector<Matrix>> MatrixEquations::solve() const {
  auto x = solve_lift(coefficient_matrix(), rhs_vector());
  if (!x) return std::nullopt;
  return split(*x);
}

}  // namespace tiltlab
