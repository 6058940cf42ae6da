#include "mxc/linsolve.hpp"

#include <stdexcept>

namespace mxc {

std::optional<GRVector> solve_exact(GRMatrix a, GRVector b) {
  const std::size_t rows = a.size();
  if (rows != b.size()) throw std::invalid_argument("solve_exact: shape mismatch");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    GaussianRational inv = GaussianRational(1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      GaussianRational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;  // inconsistent

  GRVector x(cols, GaussianRational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

QMatrix nullspace(QMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();

  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = Rational(1) / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }

  QMatrix basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] != -1) continue;
    QVector v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t k = 0; k < cols; ++k)
      if (pivot_of_col[k] != -1) v[k] = -a[static_cast<std::size_t>(pivot_of_col[k])][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace mxc
