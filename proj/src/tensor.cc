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

#include "langaux/tensor.h"

#include <algorithm>
#include <functional>
#include <numeric>

namespace langaux {
namespace {

int64_t Product(const std::vector<int> &shape) {
  int64_t n = 1;
  for (int d : shape) {
    if (d < 0) throw ShapeError("negative dimension");
    n *= d;
  }
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<int> shape)
    : shape_(std::move(shape)), data_(Product(shape_), 0.0) {}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (Product(shape_) != static_cast<int64_t>(data_.size())) {
    throw ShapeError("data length " + std::to_string(data_.size()) +
                     " does not match shape " + ShapeString());
  }
}

Tensor Tensor::Vector(std::vector<double> data) {
  const int n = static_cast<int>(data.size());
  return Tensor({n}, std::move(data));
}

Tensor Tensor::Matrix(int rows, int cols, std::vector<double> data) {
  return Tensor({rows, cols}, std::move(data));
}

int Tensor::RowsSlow() const {
  if (rank() == 1) return 1;
  if (rank() == 2) return shape_[0];
  throw ShapeError("rows() needs a rank-1 or rank-2 tensor, got " +
                   ShapeString());
}

int Tensor::ColsSlow() const {
  if (rank() == 1) return shape_[0];
  if (rank() == 2) return shape_[1];
  throw ShapeError("cols() needs a rank-1 or rank-2 tensor, got " +
                   ShapeString());
}

void Tensor::EnsureGrad() {
  if (grad_.size() != data_.size()) grad_.assign(data_.size(), 0.0);
}

void Tensor::ZeroGrad() {
  if (!grad_.empty()) std::fill(grad_.begin(), grad_.end(), 0.0);
}

std::string Tensor::ShapeString() const {
  std::string s = "[";
  for (size_t i = 0; i < shape_.size(); ++i) {
    if (i > 0) s += " x ";
    s += std::to_string(shape_[i]);
  }
  return s + "]";
}

}  // namespace langaux
