#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace medslot {

// Dense row-major array of 64-bit floats, rank 1 or 2. Scalars use shape {1}.
class Array {
 public:
  Array() = default;
  explicit Array(std::vector<std::size_t> shape);  // zero-filled
  Array(std::vector<std::size_t> shape, std::vector<double> data);

  static Array scalar(double v) { return Array({1}, {v}); }
  static Array zeros_like(const Array& other) { return Array(other.shape_); }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }
  bool is_scalar() const { return data_.size() == 1; }

  // 2-D accessors; rank-1 arrays behave as a single row.
  std::size_t rows() const { return shape_.size() == 2 ? shape_[0] : 1; }
  std::size_t cols() const { return shape_.size() == 2 ? shape_[1] : (shape_.empty() ? 0 : shape_[0]); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  bool same_shape(const Array& other) const { return shape_ == other.shape_; }
  bool all_finite() const;
  void fill(double v);

  std::string shape_str() const;

  friend bool operator==(const Array&, const Array&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

// out = a · b with optional transposes; shapes checked. Backed by Eigen.
Array matmul(const Array& a, const Array& b, bool transpose_a = false, bool transpose_b = false);

// Accumulating version: out += a · b. Shapes must already agree.
void matmul_accumulate(Array& out, const Array& a, const Array& b, bool transpose_a = false,
                       bool transpose_b = false);

double global_norm(const std::vector<const Array*>& arrays);

void throw_shape_mismatch(const Array& a, const Array& b, const char* op);

}  // namespace medslot
