#include "medslot/array.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Core>

#include "medslot/errors.hpp"

namespace medslot {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

void validate_shape(const std::vector<std::size_t>& shape) {
  if (shape.empty() || shape.size() > 2) throw ShapeMismatch("array rank must be 1 or 2");
  for (std::size_t d : shape)
    if (d == 0) throw ShapeMismatch("array dimensions must be >= 1");
}

using MatrixMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using MutableMatrixMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

MatrixMap map_of(const Array& a) {
  return MatrixMap(a.data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
}

}  // namespace

Array::Array(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  validate_shape(shape_);
  data_.assign(shape_product(shape_), 0.0);
}

Array::Array(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  validate_shape(shape_);
  if (shape_product(shape_) != data_.size())
    throw ShapeMismatch("data length " + std::to_string(data_.size()) + " does not match shape " + shape_str());
}

bool Array::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Array::fill(double v) { data_.assign(data_.size(), v); }

std::string Array::shape_str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape_.size(); ++i) os << (i ? "x" : "") << shape_[i];
  os << ')';
  return os.str();
}

void throw_shape_mismatch(const Array& a, const Array& b, const char* op) {
  throw ShapeMismatch(std::string(op) + ": incompatible shapes " + a.shape_str() + " and " + b.shape_str());
}

Array matmul(const Array& a, const Array& b, bool transpose_a, bool transpose_b) {
  const std::size_t ar = transpose_a ? a.cols() : a.rows();
  const std::size_t ac = transpose_a ? a.rows() : a.cols();
  const std::size_t br = transpose_b ? b.cols() : b.rows();
  const std::size_t bc = transpose_b ? b.rows() : b.cols();
  if (ac != br) throw_shape_mismatch(a, b, "matmul");

  Array out({ar, bc});
  matmul_accumulate(out, a, b, transpose_a, transpose_b);
  return out;
}

void matmul_accumulate(Array& out, const Array& a, const Array& b, bool transpose_a, bool transpose_b) {
  const std::size_t ar = transpose_a ? a.cols() : a.rows();
  const std::size_t ac = transpose_a ? a.rows() : a.cols();
  const std::size_t br = transpose_b ? b.cols() : b.rows();
  const std::size_t bc = transpose_b ? b.rows() : b.cols();
  if (ac != br) throw_shape_mismatch(a, b, "matmul");
  if (out.rows() != ar || out.cols() != bc) throw_shape_mismatch(out, a, "matmul output");

  MutableMatrixMap result(out.data(), static_cast<Eigen::Index>(ar), static_cast<Eigen::Index>(bc));
  auto lhs = map_of(a);
  auto rhs = map_of(b);
  if (!transpose_a && !transpose_b)
    result.noalias() += lhs * rhs;
  else if (transpose_a && !transpose_b)
    result.noalias() += lhs.transpose() * rhs;
  else if (!transpose_a && transpose_b)
    result.noalias() += lhs * rhs.transpose();
  else
    result.noalias() += lhs.transpose() * rhs.transpose();
}

double global_norm(const std::vector<const Array*>& arrays) {
  double sum = 0.0;
  for (const Array* a : arrays)
    for (std::size_t i = 0; i < a->size(); ++i) sum += (*a)[i] * (*a)[i];
  return std::sqrt(sum);
}

}  // namespace medslot
