#pragma once

#include "tiltlab/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tiltlab {

/// U * M * V = D with U, V invertible and D diagonal with d1 | d2 | ... .
/// The inverses of U and V are tracked alongside so that callers never need
/// to invert a unimodular matrix after the fact.
struct SmithForm {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inv;
  Matrix V_inv;
  std::size_t rank = 0;

  /// The first `rank` diagonal entries, in canonical associate form.
  [[nodiscard]] std::vector<Element> diagonal() const;
};

/// Pivot rule: minimal Euclidean norm over the active submatrix, first hit in
/// row-major order. Deterministic, so transforms are reproducible.
SmithForm smith_normal_form(const Matrix& m);

/// Some X with A * X = B, or nullopt when the system has no solution over the
/// ring.
std::optional<Matrix> solve_lift(const Matrix& a, const Matrix& b);

/// Columns form a basis of {x : A x = 0}. Full column rank; possibly zero
/// columns.
Matrix kernel_matrix(const Matrix& a);

/// Rows form a basis of {y : y A = 0}.
Matrix left_kernel_matrix(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Nonzero invariant factors of `a` (canonical associates, units included).
std::vector<Element> invariant_factors(const Matrix& a);

/// Inverse of a square matrix that is invertible over its ring, else nullopt.
std::optional<Matrix> inverse(const Matrix& a);

/// Assembles a linear system in several unknown matrices,
///   sum_k  L_k * X_{u_k} * R_k  = C_e   for each equation e,
/// vectorises it column-major and solves it with solve_lift.
class MatrixEquations {
 public:
  explicit MatrixEquations(RingTag ring) : ring_(ring) {}

  std::size_t add_unknown(std::size_t rows, std::size_t cols);
  std::size_t add_equation(std::size_t rows, std::size_t cols);
  void set_rhs(std::size_t equation, const Matrix& rhs);
  /// Adds left * X * right to the equation.
  void add_term(std::size_t equation, const Matrix& left, std::size_t unknown, const Matrix& right);
  /// Adds left * X.
  void add_left(std::size_t equation, const Matrix& left, std::size_t unknown);
  /// Adds X * right.
  void add_right(std::size_t equation, std::size_t unknown, const Matrix& right);

  [[nodiscard]] Matrix coefficient_matrix() const;
  [[nodiscard]] Matrix rhs_vector() const;
  [[nodiscard]] std::size_t unknown_count() const { return unknown_total_; }
  [[nodiscard]] std::size_t unknown_offset(std::size_t unknown) const { return unknowns_.at(unknown).offset; }
  /// Splits a solution column into the unknown matrices.
  [[nodiscard]] std::vector<Matrix> split(const Matrix& column) const;
  [[nodiscard]] std::optional<std::vector<Matrix>> solve() const;

 private:
  struct Shape {
    std::size_t rows, cols, offset;
  };
  struct Term {
    std::size_t equation;
    Matrix left;
    std::size_t unknown;
    Matrix right;
  };
  RingTag ring_;
  std::vector<Shape> unknowns_;
  std::vector<Shape> equations_;
  std::vector<std::optional<Matrix>> rhs_;
  std::vector<Term> terms_;
  std::size_t unknown_total_ = 0;
  std::size_t equation_total_ = 0;
};

}  // namespace tiltlab
