#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace afrel {

// Dense row-major matrix of doubles. Sizes here are desk scale (tens to a
// few thousand rows), so no blocking or BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transposed(std::span<const double> x) const;
  Matrix transposed() const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Leading eigenpair of a nonnegative matrix. `vector` is nonnegative with
// unit 1-norm; residual is ||M x - lambda x||_inf / ||x||_inf.
struct PowerIteration {
  double lambda = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Power iteration from the uniform vector with 1-norm normalization each
// step. Stops once successive eigenvalue estimates differ by less than
// tol * max(1, lambda) and the iterate moved by less than tol in the max
// norm. Throws NoConvergence when max_iter is exhausted. The caller is
// responsible for primitivity.
PowerIteration power_iterate(const Matrix& m, double tol, std::size_t max_iter,
                             bool transpose = false);

}  // namespace afrel
