#include "lyricnet/numcore/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lyricnet/errors.hpp"

namespace lyricnet::numcore {

namespace {

std::string dims(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, float fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<float>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<float> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::row_vector(std::span<const float> values) {
  return Matrix(1, values.size(), std::vector<float>(values.begin(), values.end()));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0f;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matmul: " + dims(a) + " * " + dims(b));
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  Matrix out(n, m);
  std::vector<double> acc(m);
  const float* bd = b.values().data();
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const float* ar = a.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const double av = ar[p];
      if (av == 0.0) continue;
      const float* br = bd + p * m;
      for (std::size_t j = 0; j < m; ++j) acc[j] += av * static_cast<double>(br[j]);
    }
    float* orow = out.row(i).data();
    for (std::size_t j = 0; j < m; ++j) orow[j] = static_cast<float>(acc[j]);
  }
  return out;
}

Matrix matmul_bt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError("matmul_bt: " + dims(a) + " * T(" + dims(b) + ")");
  return matmul(a, b.transposed());
}

Matrix matmul_at(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("matmul_at: T(" + dims(a) + ") * " + dims(b));
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  std::vector<double> acc(k * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float* ar = a.row(i).data();
    const float* br = b.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const double av = ar[p];
      if (av == 0.0) continue;
      double* accr = acc.data() + p * m;
      for (std::size_t j = 0; j < m; ++j) accr[j] += av * static_cast<double>(br[j]);
    }
  }
  Matrix out(k, m);
  float* od = out.values().data();
  for (std::size_t i = 0; i < acc.size(); ++i) od[i] = static_cast<float>(acc[i]);
  return out;
}

void add_row_broadcast(Matrix& m, std::span<const float> row) {
  if (row.size() != m.cols()) throw ShapeError("add_row_broadcast: width " + std::to_string(row.size()) + " vs " + dims(m));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    float* mr = m.row(r).data();
    for (std::size_t c = 0; c < m.cols(); ++c) mr[c] += row[c];
  }
}

std::vector<float> column_sums(const Matrix& m) {
  std::vector<double> acc(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const float* mr = m.row(r).data();
    for (std::size_t c = 0; c < m.cols(); ++c) acc[c] += mr[c];
  }
  return std::vector<float>(acc.begin(), acc.end());
}

void hadamard_inplace(Matrix& m, const Matrix& other) {
  if (m.rows() != other.rows() || m.cols() != other.cols()) {
    throw ShapeError("hadamard: " + dims(m) + " vs " + dims(other));
  }
  auto a = m.values();
  auto b = other.values();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

void axpy_inplace(Matrix& y, float alpha, const Matrix& x) {
  if (y.rows() != x.rows() || y.cols() != x.cols()) throw ShapeError("axpy: " + dims(y) + " vs " + dims(x));
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += alpha * xv[i];
}

Matrix select_rows(const Matrix& m, std::span<const std::size_t> indices) {
  Matrix out(indices.size(), m.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= m.rows()) throw ShapeError("select_rows: index " + std::to_string(indices[i]) + " out of " + dims(m));
    auto src = m.row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

Matrix hconcat(std::span<const Matrix* const> blocks) {
  if (blocks.empty()) return Matrix();
  const std::size_t rows = blocks.front()->rows();
  std::size_t cols = 0;
  for (const Matrix* b : blocks) {
    if (b->rows() != rows) throw ShapeError("hconcat: row count " + std::to_string(b->rows()) + " vs " + std::to_string(rows));
    cols += b->cols();
  }
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    float* dst = out.row(r).data();
    for (const Matrix* b : blocks) {
      auto src = b->row(r);
      dst = std::copy(src.begin(), src.end(), dst);
    }
  }
  return out;
}

Matrix column_slice(const Matrix& m, std::size_t first, std::size_t count) {
  if (first + count > m.cols()) throw ShapeError("column_slice out of range for " + dims(m));
  Matrix out(m.rows(), count);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r).subspan(first, count);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

bool all_finite(std::span<const float> v) {
  for (float x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

bool all_finite(const Matrix& m) { return all_finite(m.values()); }

}  // namespace lyricnet::numcore
