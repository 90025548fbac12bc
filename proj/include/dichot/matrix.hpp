#pragma once

#include <cstddef>
#include <vector>

namespace dichot {

/// Dense row-major matrix.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Reverses both row and column order: the ascending/descending flip.
  Matrix reversed() const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(rows_ - 1 - i, cols_ - 1 - j) = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

} // namespace dichot
