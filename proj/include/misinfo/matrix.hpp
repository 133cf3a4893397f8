#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace misinfo {

// Dense row-major matrix of doubles. The numeric kernels operate on this
// type; it stays deliberately minimal.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  double* row(std::size_t i) { return data.data() + i * cols; }
  const double* row(std::size_t i) const { return data.data() + i * cols; }

  std::size_t size() const { return data.size(); }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }

  bool operator==(const Matrix& other) const = default;
};

}  // namespace misinfo
