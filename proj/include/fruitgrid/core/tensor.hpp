#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace fruitgrid {

// Dense row-major tensor of doubles. Shapes are small (at most a few
// thousand elements), so everything is by-value and heap-backed.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)), data(numel(shape), 0.0) {}

  static int64_t numel(const std::vector<int>& s) {
    int64_t n = 1;
    for (int d : s) n *= d;
    return s.empty() ? 0 : n;
  }

  int64_t size() const { return static_cast<int64_t>(data.size()); }
  bool empty() const { return data.empty(); }
  int ndim() const { return static_cast<int>(shape.size()); }
  int dim(int i) const { return shape[static_cast<size_t>(i)]; }

  double* ptr() { return data.data(); }
  const double* ptr() const { return data.data(); }

  double& operator()(int i) {
    assert(ndim() == 1);
    return data[static_cast<size_t>(i)];
  }
  double operator()(int i) const {
    assert(ndim() == 1);
    return data[static_cast<size_t>(i)];
  }
  double& operator()(int i, int j) {
    assert(ndim() == 2);
    return data[static_cast<size_t>(i) * shape[1] + j];
  }
  double operator()(int i, int j) const {
    assert(ndim() == 2);
    return data[static_cast<size_t>(i) * shape[1] + j];
  }
  double& operator()(int c, int i, int j) {
    assert(ndim() == 3);
    return data[(static_cast<size_t>(c) * shape[1] + i) * shape[2] + j];
  }
  double operator()(int c, int i, int j) const {
    assert(ndim() == 3);
    return data[(static_cast<size_t>(c) * shape[1] + i) * shape[2] + j];
  }

  // start of channel c for a 3-d tensor
  double* plane(int c) {
    assert(ndim() == 3);
    return data.data() + static_cast<size_t>(c) * shape[1] * shape[2];
  }
  const double* plane(int c) const {
    assert(ndim() == 3);
    return data.data() + static_cast<size_t>(c) * shape[1] * shape[2];
  }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }
  double sum() const;
  bool all_finite() const;
  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  bool operator==(const Tensor& o) const { return shape == o.shape && data == o.data; }
};

std::string shape_str(const std::vector<int>& shape);

}  // namespace fruitgrid
