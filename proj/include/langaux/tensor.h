// Copyright 2026 The langaux Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LANGAUX_TENSOR_H_
#define LANGAUX_TENSOR_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace langaux {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major array of doubles with an optional gradient buffer.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<double> data);

  static Tensor Vector(std::vector<double> data);
  static Tensor Matrix(int rows, int cols, std::vector<double> data);
  static Tensor Zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
  static Tensor Scalar(double value) { return Tensor({1}, {value}); }

  const std::vector<int> &shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int64_t size() const { return static_cast<int64_t>(data_.size()); }
  // Rank-1 tensors are a single row.
  int rows() const {
    if (shape_.size() == 2) return shape_[0];
    return RowsSlow();
  }
  int cols() const {
    if (shape_.size() == 2) return shape_[1];
    return ColsSlow();
  }

  double &operator[](int64_t i) { return data_[i]; }
  double operator[](int64_t i) const { return data_[i]; }
  double &at(int r, int c) { return data_[static_cast<int64_t>(r) * cols() + c]; }
  double at(int r, int c) const {
    return data_[static_cast<int64_t>(r) * cols() + c];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(int r) const {
    return std::span<const double>(data_).subspan(
        static_cast<size_t>(r) * cols(), cols());
  }
  std::vector<double> &values() { return data_; }
  const std::vector<double> &values() const { return data_; }

  bool has_grad() const { return !grad_.empty(); }
  std::vector<double> &grad() { return grad_; }
  const std::vector<double> &grad() const { return grad_; }
  // Allocates a zeroed gradient buffer if none exists.
  void EnsureGrad();
  void ZeroGrad();
  void DropGrad() { grad_.clear(); }

  std::string ShapeString() const;
  bool SameShape(const Tensor &other) const { return shape_ == other.shape_; }

 private:
  int RowsSlow() const;
  int ColsSlow() const;

  std::vector<int> shape_;
  std::vector<double> data_;
  std::vector<double> grad_;
};

}  // namespace langaux

#endif  // LANGAUX_TENSOR_H_
