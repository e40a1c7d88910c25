#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace lyricnet::numcore {

// Row-major 32-bit dense matrix. All reductions in this module accumulate
// in 64-bit before rounding back to float.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, float fill = 0.0f);
  Matrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  static Matrix from_rows(std::initializer_list<std::initializer_list<float>> rows);
  static Matrix row_vector(std::span<const float> values);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  float& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  float operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<float> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const float> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<float> values() noexcept { return data_; }
  std::span<const float> values() const noexcept { return data_; }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

// a · b
Matrix matmul(const Matrix& a, const Matrix& b);
// a · bᵀ
Matrix matmul_bt(const Matrix& a, const Matrix& b);
// aᵀ · b
Matrix matmul_at(const Matrix& a, const Matrix& b);

void add_row_broadcast(Matrix& m, std::span<const float> row);
std::vector<float> column_sums(const Matrix& m);
void hadamard_inplace(Matrix& m, const Matrix& other);
void axpy_inplace(Matrix& y, float alpha, const Matrix& x);

Matrix select_rows(const Matrix& m, std::span<const std::size_t> indices);
// Horizontal concatenation; all blocks must share a row count.
Matrix hconcat(std::span<const Matrix* const> blocks);
Matrix column_slice(const Matrix& m, std::size_t first, std::size_t count);

bool all_finite(const Matrix& m);
bool all_finite(std::span<const float> v);

}  // namespace lyricnet::numcore
