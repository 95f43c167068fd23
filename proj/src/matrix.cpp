#include "afrel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "afrel/error.hpp"

namespace afrel {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) invalid_input("matrix rows have unequal lengths");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    const double* row = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> Matrix::apply_transposed(std::span<const double> x) const {
  std::vector<double> y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) y[j] += row[j] * x[i];
  }
  return y;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

PowerIteration power_iterate(const Matrix& m, double tol, std::size_t max_iter, bool transpose) {
  if (!m.is_square() || m.rows() == 0) invalid_input("power iteration needs a nonempty square matrix");
  const std::size_t n = m.rows();
  auto step = [&](std::span<const double> x) { return transpose ? m.apply_transposed(x) : m.apply(x); };

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double previous = -1.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::vector<double> y = step(x);
    double lambda = 0.0;
    for (double v : y) lambda += v;
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      no_convergence("power iteration collapsed (eigenvalue estimate " + std::to_string(lambda) + ")");
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= lambda;
      moved = std::max(moved, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    const bool settled = std::abs(lambda - previous) < tol * std::max(1.0, lambda) && moved < tol;
    previous = lambda;
    if (!settled) continue;

    PowerIteration out;
    const std::vector<double> mx = step(x);
    out.lambda = 0.0;
    for (double v : mx) out.lambda += v;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = mx[i] - out.lambda * x[i];
    out.residual = max_abs(r) / max_abs(x);
    out.vector = std::move(x);
    out.iterations = it;
    return out;
  }
  no_convergence("power iteration did not converge within " + std::to_string(max_iter) + " iterations");
}

}  // namespace afrel
